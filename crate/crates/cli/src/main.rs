use std::io::Write;
use std::process::ExitCode;

use chgdet::asymptotics::{counting_refs, log_asym_det, CountingRefs};
use chgdet::fredholm::{log_det_at, log_det_converged};
use chgdet::painleve::{log_det_via_h, pv_integrate, DEFAULT_T0};
use chgdet::stats::{counting_summary, default_nodes};
use chgdet::toeplitz::scaling_limit_check;
use chgdet::KernelParams;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const SCHEMA: u32 = 1;

/// Deformed Fredholm determinants of the confluent hypergeometric kernel.
#[derive(Parser)]
#[command(name = "chgdet", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// ln det(I − γK_s) by one route
    Det(DetArgs),
    /// Several routes over a list of s; gaps are taken against the first route
    Compare(CompareArgs),
    /// Counting statistics of the unthinned process on (−s, s)
    Stats(StatsArgs),
    /// Painlevé trajectory from t0 to t = 4s
    Painleve(PainleveArgs),
    /// Toeplitz ratios ln D_n(2s/n) − ln D_n(0) for n = 16, 32, … up to --nodes
    Toeplitz(ToeplitzArgs),
}

#[derive(Args)]
struct Kernel {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Imaginary part b of β = ib
    #[arg(long = "beta-im", allow_negative_numbers = true)]
    beta_im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Route {
    Quadrature,
    Asymptotic,
    Painleve,
    Toeplitz,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct DetArgs {
    #[command(flatten)]
    kernel: Kernel,
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    /// Fixed node count (quadrature) or matrix order (toeplitz, default 256)
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Route::Quadrature)]
    route: Route,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    kernel: Kernel,
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long = "s-list", value_delimiter = ',', required = true)]
    s_list: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "quadrature,asymptotic")]
    routes: Vec<Route>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    kernel: Kernel,
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    #[arg(long)]
    nodes: Option<usize>,
    /// csv prints the distribution of N(s)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct PainleveArgs {
    #[command(flatten)]
    kernel: Kernel,
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ToeplitzArgs {
    #[command(flatten)]
    kernel: Kernel,
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    /// Largest matrix order
    #[arg(long, default_value_t = 256)]
    nodes: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<chgdet::Error> for Failure {
    fn from(e: chgdet::Error) -> Self {
        match e {
            chgdet::Error::InvalidParameter { name, value, reason } => {
                Failure::Usage(format!("invalid value {value} for --{}: {reason}", name.replace('_', "-")))
            }
            chgdet::Error::SizeLimit { n, min, max } => {
                Failure::Usage(format!("invalid value {n} for --nodes: must lie in {min}..={max} (even for quadrature)"))
            }
            other => Failure::Numeric(other.to_string()),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Numeric(format!("writing CSV: {e}"))
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Serialize, Default)]
struct Meta {
    #[serde(skip_serializing_if = "Option::is_none")]
    n_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    est_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    imag_residue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_toeplitz: Option<usize>,
}

#[derive(Serialize)]
struct RouteReport {
    schema: u32,
    route: Route,
    params: KernelParams,
    s: f64,
    value: f64,
    meta: Meta,
}

fn params(k: &Kernel, gamma: f64) -> Outcome<KernelParams> {
    Ok(KernelParams::new(k.alpha, k.beta_im, gamma)?)
}

fn run_route(route: Route, p: &KernelParams, s: f64, nodes: Option<usize>, tol: f64) -> Outcome<RouteReport> {
    let mut meta = Meta::default();
    let value = match route {
        Route::Quadrature => match nodes {
            Some(n) => {
                meta.n_used = Some(n);
                log_det_at(p, s, p.gamma, n)?
            }
            None => {
                let r = log_det_converged(p, s, p.gamma, tol)?;
                meta.n_used = Some(r.n_used);
                meta.tol = Some(tol);
                meta.est_err = Some(r.est_err);
                r.value
            }
        },
        Route::Asymptotic => {
            let b = log_asym_det(p, s)?;
            meta.c = Some(b.c);
            b.total
        }
        Route::Painleve => {
            let v = log_det_via_h(p, s, DEFAULT_T0, tol)?;
            meta.tol = Some(tol);
            meta.t0 = Some(v.t0);
            meta.imag_residue = Some(v.imag_residue);
            meta.steps = Some(v.steps);
            v.value
        }
        Route::Toeplitz => {
            let n = nodes.unwrap_or(256);
            meta.n_toeplitz = Some(n);
            scaling_limit_check(p, s, n)?
        }
    };
    if !value.is_finite() {
        return Err(Failure::Numeric(format!("{route:?} route produced a non-finite value")));
    }
    Ok(RouteReport {
        schema: SCHEMA,
        route,
        params: *p,
        s,
        value,
        meta,
    })
}

fn json<T: Serialize>(v: &T) -> Outcome<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Numeric(format!("encoding JSON: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn csv_table<T: Serialize>(rows: &[T]) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Numeric(format!("writing CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV of numbers is UTF-8"))
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct DetRow {
    route: Route,
    alpha: f64,
    beta_im: f64,
    gamma: f64,
    s: f64,
    value: f64,
    n_used: String,
    tol: String,
    est_err: String,
    t0: String,
    n_toeplitz: String,
}

impl From<&RouteReport> for DetRow {
    fn from(r: &RouteReport) -> Self {
        DetRow {
            route: r.route,
            alpha: r.params.alpha,
            beta_im: r.params.b,
            gamma: r.params.gamma,
            s: r.s,
            value: r.value,
            n_used: r.meta.n_used.map(|n| n.to_string()).unwrap_or_default(),
            tol: opt(r.meta.tol),
            est_err: opt(r.meta.est_err),
            t0: opt(r.meta.t0),
            n_toeplitz: r.meta.n_toeplitz.map(|n| n.to_string()).unwrap_or_default(),
        }
    }
}

fn cmd_det(a: &DetArgs) -> Outcome<String> {
    let p = params(&a.kernel, a.gamma)?;
    let r = run_route(a.route, &p, a.s, a.nodes, a.tol)?;
    match a.format {
        Format::Json => json(&r),
        Format::Csv => csv_table(&[DetRow::from(&r)]),
    }
}

#[derive(Serialize)]
struct CompareRow {
    s: f64,
    route: Route,
    value: f64,
    /// |value − value of the first route| at the same s
    gap: f64,
    /// gap·s, reported for the asymptotic route
    gap_times_s: Option<f64>,
}

#[derive(Serialize)]
struct CompareReport {
    schema: u32,
    params: KernelParams,
    reference: Route,
    rows: Vec<CompareRow>,
}

fn cmd_compare(a: &CompareArgs) -> Outcome<String> {
    let p = params(&a.kernel, a.gamma)?;
    let reference = a.routes[0];
    // One thread per s; rows keep input order.
    let per_s: Vec<Outcome<Vec<RouteReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = a
            .s_list
            .iter()
            .map(|&s| scope.spawn(move || a.routes.iter().map(|&r| run_route(r, &p, s, a.nodes, a.tol)).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("route thread panicked")).collect()
    });
    let mut rows = Vec::new();
    for reports in per_s {
        let reports = reports?;
        let base = reports[0].value;
        for r in reports {
            let gap = (r.value - base).abs();
            rows.push(CompareRow {
                s: r.s,
                route: r.route,
                value: r.value,
                gap,
                gap_times_s: (r.route == Route::Asymptotic && reference != Route::Asymptotic).then_some(gap * r.s),
            });
        }
    }
    match a.format {
        Format::Json => json(&CompareReport {
            schema: SCHEMA,
            params: p,
            reference,
            rows,
        }),
        Format::Csv => csv_table(&rows),
    }
}

#[derive(Serialize)]
struct StatsGaps {
    mean_gap: f64,
    var_gap: f64,
}

#[derive(Serialize)]
struct StatsReport {
    schema: u32,
    alpha: f64,
    beta_im: f64,
    s: f64,
    n_quad: usize,
    n_eigen: usize,
    e_n: f64,
    var_n: f64,
    ks_normal: f64,
    ks_raw: f64,
    refs: Option<CountingRefs>,
    gaps: Option<StatsGaps>,
    pmf: Vec<f64>,
}

#[derive(Serialize)]
struct PmfRow {
    k: usize,
    pmf: f64,
}

fn cmd_stats(a: &StatsArgs) -> Outcome<String> {
    let p = params(&a.kernel, 0.0)?;
    let n = a.nodes.unwrap_or_else(|| default_nodes(a.s.abs()));
    let sum = counting_summary(&p, a.s, n)?;
    let refs = counting_refs(p.alpha, a.s).ok();
    let gaps = refs.map(|r| StatsGaps {
        mean_gap: (sum.e_n - r.mu).abs(),
        var_gap: (sum.var_n - r.sigma2 - r.var_const).abs(),
    });
    match a.format {
        Format::Json => json(&StatsReport {
            schema: SCHEMA,
            alpha: p.alpha,
            beta_im: p.b,
            s: sum.s,
            n_quad: sum.n_quad,
            n_eigen: sum.n_eigen,
            e_n: sum.e_n,
            var_n: sum.var_n,
            ks_normal: sum.ks_normal,
            ks_raw: sum.ks_raw,
            refs,
            gaps,
            pmf: sum.pmf,
        }),
        Format::Csv => {
            let rows: Vec<PmfRow> = sum.pmf.iter().enumerate().map(|(k, &pmf)| PmfRow { k, pmf }).collect();
            csv_table(&rows)
        }
    }
}

#[derive(Serialize)]
struct TrajectoryRow {
    t: f64,
    u1_re: f64,
    u1_im: f64,
    u2_re: f64,
    u2_im: f64,
    v1_re: f64,
    v1_im: f64,
    v2_re: f64,
    v2_im: f64,
    #[serde(rename = "H_re")]
    h_re: f64,
    #[serde(rename = "H_im")]
    h_im: f64,
}

#[derive(Serialize)]
struct TrajectoryReport {
    schema: u32,
    params: KernelParams,
    t0: f64,
    tol: f64,
    rows: Vec<TrajectoryRow>,
}

fn cmd_painleve(a: &PainleveArgs) -> Outcome<String> {
    let p = params(&a.kernel, a.gamma)?;
    if !(a.s > 0.0 && a.s <= 50.0) {
        return Err(Failure::Usage(format!("invalid value {} for --s: need 0 < s <= 50", a.s)));
    }
    let traj = pv_integrate(&p, DEFAULT_T0, 4.0 * a.s, a.tol)?;
    let rows: Vec<TrajectoryRow> = traj
        .states
        .iter()
        .zip(&traj.hamiltonians)
        .map(|(s, h)| TrajectoryRow {
            t: s.t,
            u1_re: s.u1.re,
            u1_im: s.u1.im,
            u2_re: s.u2.re,
            u2_im: s.u2.im,
            v1_re: s.v1.re,
            v1_im: s.v1.im,
            v2_re: s.v2.re,
            v2_im: s.v2.im,
            h_re: h.re,
            h_im: h.im,
        })
        .collect();
    match a.format {
        Format::Json => json(&TrajectoryReport {
            schema: SCHEMA,
            params: p,
            t0: traj.t0,
            tol: traj.tol,
            rows,
        }),
        Format::Csv => csv_table(&rows),
    }
}

#[derive(Serialize)]
struct RatioRow {
    n: usize,
    arc_t: f64,
    log_ratio: f64,
    /// |log_ratio − quadrature log-det|
    gap: f64,
}

#[derive(Serialize)]
struct RatioReport {
    schema: u32,
    params: KernelParams,
    s: f64,
    quadrature: f64,
    rows: Vec<RatioRow>,
}

fn cmd_toeplitz(a: &ToeplitzArgs) -> Outcome<String> {
    let p = params(&a.kernel, a.gamma)?;
    let quad = log_det_converged(&p, a.s, p.gamma, a.tol)?.value;
    let mut orders: Vec<usize> = std::iter::successors(Some(16usize), |n| Some(2 * n))
        .take_while(|&n| n < a.nodes)
        .filter(|&n| 2.0 * a.s / (n as f64) < std::f64::consts::PI)
        .collect();
    orders.push(a.nodes);
    let mut rows = Vec::with_capacity(orders.len());
    for n in orders {
        let v = scaling_limit_check(&p, a.s, n)?;
        rows.push(RatioRow {
            n,
            arc_t: 2.0 * a.s / n as f64,
            log_ratio: v,
            gap: (v - quad).abs(),
        });
    }
    match a.format {
        Format::Json => json(&RatioReport {
            schema: SCHEMA,
            params: p,
            s: a.s,
            quadrature: quad,
            rows,
        }),
        Format::Csv => csv_table(&rows),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let out = match &cli.cmd {
        Command::Det(a) => cmd_det(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Painleve(a) => cmd_painleve(a),
        Command::Toeplitz(a) => cmd_toeplitz(a),
    };
    match out {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
