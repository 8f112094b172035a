use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{function}: pole at nonpositive integer {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("{function}: argument out of domain: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    #[error("node count {n} outside the supported range {min}..={max}")]
    SizeLimit { n: usize, min: usize, max: usize },

    #[error("1 - γλ = {value:e} is not positive (eigenvalue {eigenvalue:e}); discretization is unreliable")]
    NonPositiveFactor { eigenvalue: f64, value: f64 },

    #[error("Toeplitz factorization hit non-positive pivot {pivot:e} at row {row}")]
    NonPositivePivot { row: usize, pivot: f64 },

    #[error("eigensolver failure: {0}")]
    Eigen(String),

    #[error("Painlevé trajectory blew up at t = {t}: |component| = {magnitude:e}")]
    BlowUp { t: f64, magnitude: f64 },

    #[error("ODE step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },
}
