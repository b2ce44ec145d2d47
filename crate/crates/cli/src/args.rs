use clap::{Args, ColorChoice, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qbarnes_core::{QParam, TRule, TruncationPolicy, Weights};

use crate::complex::parse_complex;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "qbarnes",
    version,
    about = "Barnes multiple zeta functions, their q-analogues and the q-gamma function",
    color = ColorChoice::Never
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Run the identity suites.
    Verify(VerifyArgs),
    /// Tabulate a q -> 1 limit against the classical value.
    Sweep(SweepArgs),
    /// Scan for poles of zeta^(nu)_{q,r}(s, z).
    Poles(PolesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Hurwitz,
    Barnes,
    Qzeta,
    QzetaNu,
    Qgamma,
    GammaQ,
    SpecialValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Route {
    /// Binomial continuation, with the ladder for Re(z) <= 0.
    #[default]
    Auto,
    Direct,
    Qbinom,
    Reduce,
    Em,
    Ladder,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Truncation {
    /// Cap on series terms (overrides QBARNES_MAX_TERMS).
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    /// Absolute tolerance for series tails and quadrature.
    #[arg(long, global = true, value_parser = parse_tol)]
    pub tol: Option<f64>,
}

impl Truncation {
    pub fn apply(&self, base: TruncationPolicy) -> TruncationPolicy {
        let mut p = base;
        if let Some(n) = self.max_terms {
            p = p.with_max_terms(n);
        }
        if let Some(t) = self.tol {
            p = p.with_tol(t);
        }
        p
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[arg(long, default_value = "1", value_parser = parse_r)]
    pub r: usize,
    #[arg(long, value_parser = parse_q)]
    pub q: Option<QParam>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub t: Option<Complex64>,
    #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    #[arg(long, default_value_t = 1)]
    pub nu: usize,
    /// Special value index: s = -m.
    #[arg(long)]
    pub m: Option<usize>,
    /// Comma-separated positive weights, one per dimension.
    #[arg(long, value_parser = parse_weights)]
    pub weights: Option<Weights>,
    #[arg(long, value_enum, default_value_t)]
    pub route: Route,
    /// Euler-Maclaurin depth for hurwitz and barnes.
    #[arg(long, default_value_t = 10)]
    pub depth: usize,
    /// Euler-Maclaurin order N of the em route.
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    /// Continuation depth M of the em route.
    #[arg(long = "M", default_value_t = 4)]
    pub m_cont: usize,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
    /// Print log Gamma~_q instead of Gamma~_q.
    #[arg(long)]
    pub log: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[command(flatten)]
    pub truncation: Truncation,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Grid size of the randomized suites.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Restrict gauss-legendre to one multiplier.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Restrict gauss-legendre to one q.
    #[arg(long, value_parser = parse_q)]
    pub q: Option<QParam>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[command(flatten)]
    pub truncation: Truncation,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "1", value_parser = parse_r)]
    pub r: usize,
    /// t = s - nu.
    #[arg(long, conflicts_with = "phi")]
    pub nu: Option<usize>,
    /// t = phi(s), written like "s-0.5", "2s-1" or "-s".
    #[arg(long, value_parser = parse_rule, allow_hyphen_values = true)]
    pub phi: Option<TRule>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Complex64,
    #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    #[arg(long, value_parser = parse_weights)]
    pub weights: Option<Weights>,
    /// Grid q = 1 - 2^-k starts at this k.
    #[arg(long, default_value_t = 3)]
    pub k_min: i32,
    /// Last k of the grid [default: 13, or 10 with --dterms].
    #[arg(long)]
    pub k_max: Option<i32>,
    /// Tabulate the D-terms of the Euler-Maclaurin continuation instead.
    #[arg(long)]
    pub dterms: bool,
    #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub t: Complex64,
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
    #[arg(long = "M", default_value_t = 4)]
    pub m: usize,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[command(flatten)]
    pub truncation: Truncation,
}

#[derive(Debug, Args)]
pub struct PolesArgs {
    #[arg(long, default_value = "1", value_parser = parse_r)]
    pub r: usize,
    #[arg(long, value_parser = parse_q)]
    pub q: QParam,
    #[arg(long, default_value_t = 1)]
    pub nu: usize,
    #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    #[arg(long, value_parser = parse_weights)]
    pub weights: Option<Weights>,
    /// First integer s of the real-axis scan.
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub s_min: i64,
    /// Last integer s [default: r + nu + 1].
    #[arg(long, allow_hyphen_values = true)]
    pub s_max: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[command(flatten)]
    pub truncation: Truncation,
}

pub fn parse_q(text: &str) -> Result<QParam, String> {
    let v: f64 = text.trim().parse().map_err(|_| format!("cannot read {text:?} as a real number"))?;
    QParam::new(v).map_err(|e| e.to_string())
}

pub fn parse_r(text: &str) -> Result<usize, String> {
    match text.trim().parse::<usize>() {
        Ok(r) if r >= 1 => Ok(r),
        _ => Err(format!("r must be an integer >= 1, got {text:?}")),
    }
}

pub fn parse_weights(text: &str) -> Result<Weights, String> {
    let w = text
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot read weight {x:?}"))
        })
        .collect::<Result<Vec<f64>, String>>()?;
    Weights::new(w).map_err(|e| e.to_string())
}

fn parse_rule(text: &str) -> Result<TRule, String> {
    text.parse::<TRule>().map_err(|e| e.to_string())
}

fn parse_tol(text: &str) -> Result<f64, String> {
    match text.trim().parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got {text:?}")),
    }
}
