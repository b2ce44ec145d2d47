//! Named identity suites, each a list of residual-vs-tolerance checks.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num::rational::BigRational;
use num::ToPrimitive;
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classical::{hurwitz_em, EMConfig};
use crate::error::{Error, Result};
use crate::qgamma::{
    c_q, gamma_q_euler, gauss_legendre_check, ln_qgamma_integer, q_lerch_residual, qgamma,
    QGammaContext,
};
use crate::qnum::{
    bernoulli_poly_coeffs, q_binomial_exact, q_composition_sum, q_number, q_vandermonde_sum,
    QParam,
};
use crate::qzeta::{
    qzeta_binomial_ac, qzeta_direct, qzeta_nu, qzeta_qbinom, qzeta_reduce, qzeta_special_value,
    qzeta1_em, ContinuationParams, Weights,
};
use crate::special::gamma;
use crate::types::{ComplexValue, TruncationPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    QBinom,
    Hurwitz,
    RouteEquiv,
    LadderZqr,
    SpecialValues,
    EmConsistency,
    QGammaOne,
    Tgqn,
    QGammaLadder,
    LogConvexity,
    GaussLegendre,
    QGammaLimit,
    QLerch,
    EulerConstant,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::QBinom,
        Suite::Hurwitz,
        Suite::RouteEquiv,
        Suite::LadderZqr,
        Suite::SpecialValues,
        Suite::EmConsistency,
        Suite::QGammaOne,
        Suite::Tgqn,
        Suite::QGammaLadder,
        Suite::LogConvexity,
        Suite::GaussLegendre,
        Suite::QGammaLimit,
        Suite::QLerch,
        Suite::EulerConstant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::QBinom => "qbinom",
            Suite::Hurwitz => "hurwitz",
            Suite::RouteEquiv => "route-equiv",
            Suite::LadderZqr => "ladder-zqr",
            Suite::SpecialValues => "special-values",
            Suite::EmConsistency => "em-consistency",
            Suite::QGammaOne => "qgamma-one",
            Suite::Tgqn => "tgqn",
            Suite::QGammaLadder => "qgamma-ladder",
            Suite::LogConvexity => "log-convexity",
            Suite::GaussLegendre => "gauss-legendre",
            Suite::QGammaLimit => "qgamma-limit",
            Suite::QLerch => "q-lerch",
            Suite::EulerConstant => "euler-constant",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == text)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Config(format!("unknown suite {text:?}; known: {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Number of grid points for the randomized suites.
    pub points: usize,
    /// Restricts gauss-legendre to one multiplier.
    pub n: Option<usize>,
    /// Restricts gauss-legendre to one `q`.
    pub q: Option<f64>,
    pub policy: TruncationPolicy,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 7,
            points: 100,
            n: None,
            q: None,
            policy: TruncationPolicy::default(),
        }
    }
}

/// One comparison. `residual` is `NaN` when the evaluation itself failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub inputs: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, inputs: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            inputs: inputs.into(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            note: None,
        }
    }

    /// A check that failed to evaluate, or passed/failed on a non-numeric condition.
    pub fn flag(name: impl Into<String>, inputs: impl Into<String>, passed: bool, note: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            inputs: inputs.into(),
            residual: if passed { 0.0 } else { f64::NAN },
            tolerance: 0.0,
            passed,
            note: Some(note.into()),
        }
    }

    fn from_result(name: &str, inputs: String, residual: Result<f64>, tolerance: f64) -> Self {
        match residual {
            Ok(r) => Check::new(name, inputs, r, tolerance),
            Err(e) => Check::flag(name, inputs, false, e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    let checks = match suite {
        Suite::QBinom => qbinom_checks(15, 15, 12, 5),
        Suite::Hurwitz => hurwitz_checks(),
        Suite::RouteEquiv => route_equiv_checks(opts),
        Suite::LadderZqr => ladder_checks(opts),
        Suite::SpecialValues => special_value_checks(opts),
        Suite::EmConsistency => em_consistency_checks(opts),
        Suite::QGammaOne => qgamma_one_checks(),
        Suite::Tgqn => tgqn_checks(),
        Suite::QGammaLadder => qgamma_ladder_checks(opts),
        Suite::LogConvexity => log_convexity_checks(),
        Suite::GaussLegendre => gauss_legendre_checks(opts),
        Suite::QGammaLimit => qgamma_limit_checks(),
        Suite::QLerch => q_lerch_checks(opts),
        Suite::EulerConstant => euler_constant_checks(),
    };
    SuiteReport { suite, checks }
}

fn cfmt(z: ComplexValue) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn sci_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", items.join(", "))
}

fn qp(q: f64) -> QParam {
    QParam::new(q).expect("suite q values lie in (0, 1)")
}

/// Sum of `q^d [m-1+d, m-1]_q` against `[m+l, m]_q`, and the composition sum
/// against `q^n [n+r-1, r-1]_q`, as exact polynomials.
pub fn qbinom_checks(l_max: i64, m_max: i64, n_max: i64, r_max: i64) -> Vec<Check> {
    let mut out = Vec::new();
    for l in 0..=l_max {
        for m in 1..=m_max {
            let inputs = format!("l={l} m={m}");
            let check = match (q_vandermonde_sum(l, m), q_binomial_exact(m + l, m)) {
                (Ok(a), Ok(b)) => Check::flag("q-binom1", inputs, a == b, "exact polynomial equality"),
                (Err(e), _) | (_, Err(e)) => Check::flag("q-binom1", inputs, false, e.to_string()),
            };
            out.push(check);
        }
    }
    for n in 0..=n_max {
        for r in 1..=r_max {
            let inputs = format!("n={n} r={r}");
            let rhs = q_binomial_exact(n + r - 1, r - 1).map(|p| p.shift(n as usize));
            let check = match (q_composition_sum(n, r), rhs) {
                (Ok(a), Ok(b)) => Check::flag("q-binom2", inputs, a == b, "exact polynomial equality"),
                (Err(e), _) | (_, Err(e)) => Check::flag("q-binom2", inputs, false, e.to_string()),
            };
            out.push(check);
        }
    }
    out
}

fn bernoulli_poly_value(n: usize, z: f64) -> Result<f64> {
    let coeffs: Vec<BigRational> = bernoulli_poly_coeffs(n)?;
    Ok(coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN)))
}

fn hurwitz_checks() -> Vec<Check> {
    let cfg = EMConfig::default();
    let c = |re: f64| Complex64::new(re, 0.0);
    let one = c(1.0);
    let mut out = vec![
        Check::from_result(
            "zeta(2,1)",
            "s=2 z=1".into(),
            hurwitz_em(c(2.0), one, &cfg).map(|v| (v.value - PI * PI / 6.0).norm()),
            1e-10,
        ),
        Check::from_result(
            "zeta(-1,1)",
            "s=-1 z=1".into(),
            hurwitz_em(c(-1.0), one, &cfg).and_then(|v| {
                let oracle = -bernoulli_poly_value(2, 1.0)? / 2.0;
                Ok((v.value - oracle).norm())
            }),
            1e-8,
        ),
    ];
    for k in 0..10 {
        let z = Complex64::new(0.15 + 0.45 * k as f64, 0.3 * (k % 3) as f64 - 0.3);
        out.push(Check::from_result(
            "zeta(0,z)",
            format!("s=0 z={}", cfmt(z)),
            hurwitz_em(c(0.0), z, &cfg).map(|v| (v.value - (0.5 - z)).norm()),
            1e-10,
        ));
    }
    out
}

/// One point of the route-equivalence grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoutePoint {
    pub r: usize,
    pub q: f64,
    pub s: ComplexValue,
    pub t: ComplexValue,
    pub z: ComplexValue,
}

impl fmt::Display for RoutePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} q={} s={} t={} z={}",
            self.r,
            self.q,
            cfmt(self.s),
            cfmt(self.t),
            cfmt(self.z)
        )
    }
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Deterministic grid: `r <= 3`, `q` in {0.3, 0.5, 0.9}, `Re(t) > r - 1`,
/// `Re(z) > 0`, complex `s` with `Re(s)` in [-1, 3].
pub fn route_grid(seed: u64, count: usize) -> Vec<RoutePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qs = [0.3, 0.5, 0.9];
    (0..count)
        .map(|k| {
            let r = 1 + k % 3;
            let q = qs[(k / 3) % 3];
            let mut u = |lo: f64, hi: f64| round6(rng.random_range(lo..hi));
            let s = Complex64::new(u(-1.0, 3.0), u(-1.5, 1.5));
            let t = Complex64::new(r as f64 - 1.0 + u(0.8, 2.5), u(-1.0, 1.0));
            let z = Complex64::new(u(0.3, 2.0), u(-1.0, 1.0));
            RoutePoint { r, q, s, t, z }
        })
        .collect()
}

/// Values of the four routes at one point: direct, q-binomial, reduction, binomial.
pub fn route_values(p: &RoutePoint, policy: &TruncationPolicy) -> Result<[ComplexValue; 4]> {
    let q = qp(p.q);
    let w = Weights::ones(p.r);
    let one = Weights::ones(1);
    let direct = qzeta_direct(p.r, q, p.s, p.t, p.z, &w, policy)?.value;
    let qbinom = qzeta_qbinom(p.r, q, p.s, p.t, p.z, policy)?.value;
    let reduced = qzeta_reduce(p.r, q, p.s, p.t, p.z, |s, t, z| {
        qzeta_direct(1, q, s, t, z, &one, policy)
    })?
    .value;
    let binomial = qzeta_binomial_ac(p.r, q, p.s, p.t, p.z, &w, policy)?.value;
    Ok([direct, qbinom, reduced, binomial])
}

fn max_pairwise(v: &[ComplexValue]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            worst = worst.max((v[i] - v[j]).norm());
        }
    }
    worst
}

fn route_equiv_checks(opts: &SuiteOptions) -> Vec<Check> {
    route_grid(opts.seed, opts.points)
        .par_iter()
        .map(|p| {
            Check::from_result(
                "route-equiv",
                p.to_string(),
                route_values(p, &opts.policy).map(|v| max_pairwise(&v)),
                1e-9,
            )
        })
        .collect()
}

fn ladder_checks(opts: &SuiteOptions) -> Vec<Check> {
    let grid = route_grid(opts.seed ^ 0x1add, opts.points.min(30));
    grid.par_iter()
        .map(|p| {
            let q = qp(p.q);
            let residual = (|| {
                let d = |r: usize, z: ComplexValue| -> Result<ComplexValue> {
                    if r == 0 {
                        Ok((-p.s * q_number(q, z).ln()).exp())
                    } else {
                        Ok(qzeta_direct(r, q, p.s, p.t, z, &Weights::ones(r), &opts.policy)?.value)
                    }
                };
                let lhs = d(p.r, p.z)?;
                let rhs = q.pow(p.t - (p.r as f64 - 1.0)) * d(p.r, p.z + 1.0)? + d(p.r - 1, p.z)?;
                Ok((lhs - rhs).norm())
            })();
            Check::from_result("ladder-zqr", p.to_string(), residual, 1e-12)
        })
        .collect()
}

/// `zeta^(nu)_{q,r}(s, z)` at `s -> -m`: symmetric averages at offsets
/// `1e-3` and `1e-4`, Richardson-combined to remove the `h^2` term.
pub fn special_value_limit(
    r: usize,
    q: QParam,
    m: usize,
    z: ComplexValue,
    nu: usize,
    weights: &Weights,
    policy: &TruncationPolicy,
) -> Result<ComplexValue> {
    let f = |h: f64| -> Result<ComplexValue> {
        let s = Complex64::new(-(m as f64) + h, 0.0);
        Ok(qzeta_nu(r, q, s, z, nu, weights, policy)?.value)
    };
    let d1 = 0.5 * (f(1e-3)? + f(-1e-3)?);
    let d2 = 0.5 * (f(1e-4)? + f(-1e-4)?);
    Ok((100.0 * d2 - d1) / 99.0)
}

fn special_value_checks(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let z = Complex64::new(1.0, 0.0);
    for weights in [vec![1.0], vec![1.0, 1.0], vec![1.0, 2.0]] {
        let r = weights.len();
        let w = Weights::new(weights.clone()).expect("positive weights");
        for nu in 1..=2 {
            for m in 0..=1 {
                for qv in [0.5, 0.9] {
                    let q = qp(qv);
                    let residual = qzeta_special_value(r, q, m, z, nu, &w).and_then(|sv| {
                        Ok((special_value_limit(r, q, m, z, nu, &w, &opts.policy)? - sv).norm())
                    });
                    out.push(Check::from_result(
                        "special-value",
                        format!("r={r} w={weights:?} nu={nu} m={m} q={qv} z=1"),
                        residual,
                        1e-6,
                    ));
                }
            }
        }
    }
    out
}

/// Points with `Re(t)` in (-2, 0) off the integers, `r = 1`.
pub fn em_grid(seed: u64) -> Vec<(f64, ComplexValue, ComplexValue, ComplexValue)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe3);
    (0..10)
        .map(|k| {
            let q = if k % 2 == 0 { 0.5 } else { 0.7 };
            let mut u = |lo: f64, hi: f64| round6(rng.random_range(lo..hi));
            let t_re = -2.0 + (k / 2) as f64 * 0.4 + u(0.1, 0.3);
            let t = Complex64::new(t_re, u(-0.5, 0.5));
            let s = Complex64::new(u(-1.0, 3.0), u(-1.0, 1.0));
            let z = Complex64::new(u(0.5, 2.0), u(-0.5, 0.5));
            (q, s, t, z)
        })
        .collect()
}

fn em_consistency_checks(opts: &SuiteOptions) -> Vec<Check> {
    let cp = ContinuationParams::new(1, 4, 50).expect("valid depths");
    em_grid(opts.seed)
        .par_iter()
        .map(|&(qv, s, t, z)| {
            let q = qp(qv);
            let residual = qzeta1_em(q, s, t, z, &cp).and_then(|em| {
                let b = qzeta_binomial_ac(1, q, s, t, z, &Weights::ones(1), &opts.policy)?;
                Ok((em.value - b.value).norm())
            });
            Check::from_result(
                "em-vs-binomial",
                format!("q={qv} s={} t={} z={} N=1 M=4 n_max=50", cfmt(s), cfmt(t), cfmt(z)),
                residual,
                1e-6,
            )
        })
        .collect()
}

fn qgamma_one_checks() -> Vec<Check> {
    [0.1, 0.3, 0.5, 0.9, 0.99, 0.9999]
        .iter()
        .map(|&qv| {
            let residual = QGammaContext::new(qp(qv))
                .and_then(|ctx| qgamma(&ctx, Complex64::new(1.0, 0.0)))
                .map(|g| (g - 1.0).norm());
            // exactly one: zero tolerance
            Check::from_result("qgamma(1)", format!("q={qv}"), residual, 0.0)
        })
        .collect()
}

fn tgqn_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for qv in [0.3, 0.5, 0.9] {
        let ctx = QGammaContext::new(qp(qv));
        for n in 1..=8usize {
            let residual = ctx.as_ref().map_err(Clone::clone).and_then(|ctx| {
                let got = ctx.ln_qgamma(Complex64::new(n as f64 + 1.0, 0.0))?;
                let want = ln_qgamma_integer(ctx.q(), n);
                // relative error of the value from the difference of logarithms
                Ok(crate::qnum::cexpm1(got - want).norm())
            });
            out.push(Check::from_result("tgqn", format!("q={qv} n={n}"), residual, 1e-10));
        }
    }
    out
}

fn qgamma_ladder_checks(opts: &SuiteOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9a);
    let mut out = Vec::new();
    for qv in [0.2, 0.5, 0.9] {
        let ctx = QGammaContext::new(qp(qv)).expect("q in range");
        for _ in 0..10 {
            let z = Complex64::new(
                round6(rng.random_range(0.05..4.95)),
                round6(rng.random_range(-1.0..1.0)),
            );
            let residual = (|| {
                let q = ctx.q();
                let qmz = q.pow(-z);
                let lhs = ctx.ln_qgamma(z + 1.0)?;
                let rhs = qmz * (qmz * q_number(q, z)).ln() + ctx.ln_qgamma(z)?;
                Ok(crate::qnum::cexpm1(lhs - rhs).norm())
            })();
            out.push(Check::from_result(
                "qgamma-ladder",
                format!("q={qv} z={}", cfmt(z)),
                residual,
                1e-10,
            ));
        }
    }
    out
}

fn log_convexity_checks() -> Vec<Check> {
    let h = 0.05;
    let mut out = Vec::new();
    for qv in [0.2, 0.5, 0.9] {
        let residual = QGammaContext::new(qp(qv)).and_then(|ctx| {
            let f = |z: f64| ctx.ln_qgamma(Complex64::new(z + 1.0, 0.0)).map(|v| v.re);
            let mut worst = f64::INFINITY;
            for k in 0..=200 {
                let z = k as f64 * h;
                worst = worst.min(f(z - h)? - 2.0 * f(z)? + f(z + h)?);
            }
            // report how far below zero the smallest second difference dips
            Ok((-worst).max(0.0))
        });
        out.push(Check::from_result(
            "log-convexity",
            format!("q={qv} z in [0, 10] step {h}"),
            residual,
            1e-9,
        ));
    }
    out
}

fn gauss_legendre_checks(opts: &SuiteOptions) -> Vec<Check> {
    let ns: Vec<usize> = opts.n.map(|n| vec![n]).unwrap_or_else(|| vec![1, 2, 3]);
    let cases: Vec<(f64, f64)> = match opts.q {
        Some(q) => vec![(q, 1.0), (q, 0.7), (q, 2.3)],
        None => vec![(0.5, 1.0), (0.8, 0.7), (0.3, 2.3), (0.9, 0.45)],
    };
    let mut out = Vec::new();
    for &n in &ns {
        for &(qv, z) in &cases {
            let residual = QParam::new(qv)
                .and_then(|q| gauss_legendre_check(q, n, Complex64::new(z, 0.0)));
            out.push(Check::from_result(
                "gauss-legendre",
                format!("N={n} q={qv} z={z}"),
                residual,
                if n <= 2 { 1e-10 } else { 1e-9 },
            ));
        }
    }
    out
}

fn qgamma_limit_checks() -> Vec<Check> {
    [0.5, 1.5, 2.5]
        .iter()
        .map(|&z| {
            let zc = Complex64::new(z, 0.0);
            let gaps: Result<Vec<f64>> = (|| {
                let target = gamma(zc)?;
                (1..=4)
                    .map(|k| {
                        let ctx = QGammaContext::new(qp(1.0 - 10f64.powi(-k)))?;
                        Ok((qgamma(&ctx, zc)? - target).norm())
                    })
                    .collect()
            })();
            match gaps {
                Ok(g) => Check::flag(
                    "qgamma-limit",
                    format!("z={z} q=1-10^-k k=1..4"),
                    g.windows(2).all(|w| w[1] < w[0]),
                    format!("gaps {}", sci_list(&g)),
                ),
                Err(e) => Check::flag("qgamma-limit", format!("z={z}"), false, e.to_string()),
            }
        })
        .collect()
}

fn q_lerch_checks(opts: &SuiteOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x1e7c);
    (0..20)
        .map(|_| {
            let qv = round6(rng.random_range(0.1..0.95));
            let z = Complex64::new(
                round6(rng.random_range(0.2..3.0)),
                round6(rng.random_range(-1.0..1.0)),
            );
            let residual = QGammaContext::new(qp(qv)).and_then(|ctx| q_lerch_residual(&ctx, z));
            Check::from_result("q-lerch", format!("q={qv} z={}", cfmt(z)), residual, 1e-10)
        })
        .collect()
}

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn euler_constant_checks() -> Vec<Check> {
    let one = Complex64::new(1.0, 0.0);
    let mut out = vec![Check::from_result(
        "gamma_q(1)",
        "q=0.9999".into(),
        gamma_q_euler(qp(0.9999), one, &TruncationPolicy::default())
            .map(|g| (g - EULER_GAMMA).norm()),
        5e-3,
    )];
    let cs: Result<Vec<f64>> = [0.9, 0.99, 0.999, 0.9999]
        .iter()
        .map(|&q| c_q(qp(q), one).map(|c| c.norm()))
        .collect();
    out.push(match cs {
        Ok(cs) => Check::flag(
            "C_q(1) -> 0",
            "q=0.9,0.99,0.999,0.9999",
            cs.windows(2).all(|w| w[1] < w[0]) && cs[cs.len() - 1] < 1e-3,
            format!("|C_q(1)| {}", sci_list(&cs)),
        ),
        Err(e) => Check::flag("C_q(1) -> 0", "", false, e.to_string()),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn grid_is_deterministic_and_in_region() {
        let a = route_grid(7, 100);
        assert_eq!(a, route_grid(7, 100));
        assert_ne!(a, route_grid(8, 100));
        for p in &a {
            assert!(p.r <= 3 && p.t.re > p.r as f64 - 1.0 && p.z.re > 0.0);
        }
        assert!(a.iter().any(|p| p.s.im != 0.0));
    }

    #[test]
    fn small_suites_pass() {
        let opts = SuiteOptions::default();
        for s in [Suite::Hurwitz, Suite::QGammaOne, Suite::Tgqn, Suite::QLerch, Suite::EulerConstant] {
            let rep = run_suite(s, &opts);
            assert!(rep.passed(), "{s}: {:?}", rep.first_failure());
        }
        let small = qbinom_checks(4, 4, 4, 3);
        assert!(small.iter().all(|c| c.passed));
    }

    #[test]
    fn failure_carries_inputs() {
        let c = Check::new("x", "q=0.5", 1.0, 1e-3);
        assert!(!c.passed);
        let rep = SuiteReport {
            suite: Suite::Hurwitz,
            checks: vec![Check::new("ok", "", 0.0, 1.0), c.clone()],
        };
        assert_eq!(rep.first_failure(), Some(&c));
    }
}
