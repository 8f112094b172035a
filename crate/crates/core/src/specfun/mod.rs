//! Complex special functions shared by every route.

mod barnes;
mod bessel;
pub(crate) mod dd;
mod gamma;
mod kummer;

pub use barnes::{barnes_g_log_pair, ln_barnes_g};
pub use bessel::{bessel_j01, BesselOrder};
pub use gamma::{gamma, log_gamma, EULER_GAMMA};
pub use kummer::{
    kummer_asymptotic, kummer_m, kummer_m_deriv, kummer_series, MAX_ARGUMENT as KUMMER_MAX_ARGUMENT,
    SERIES_RADIUS as KUMMER_SERIES_RADIUS,
};

pub(crate) use gamma::ln_gamma_real;
