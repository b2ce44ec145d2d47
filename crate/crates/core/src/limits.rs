//! The q -> 1 experiments: limit sweeps, D-term limits and weighted probes.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::classical::{barnes_r1_scaled, barnes_zeta, em_remainder, EMConfig};
use crate::error::{Error, Result};
use crate::qnum::{bernoulli_f64, rising_factorial, QParam};
use crate::qzeta::{em_parts, qzeta_binomial_ac, qzeta_nu, ContinuationParams, Weights};
use crate::types::{ComplexValue, TruncationPolicy};

/// Gap scale a converging sweep must reach: the final gap is below ten times this.
pub const TARGET_TOL: f64 = 1e-3;

/// Term cap for sweeps; near `q = 1` the binomial series needs `~ 40/(1-q)` terms.
pub const SWEEP_MAX_TERMS: usize = 5_000_000;

/// `q = 1 - 2^-k` for `k` in `lo..=hi`.
pub fn dyadic_grid(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|k| 1.0 - 2f64.powi(-k)).collect()
}

pub fn default_grid() -> Vec<f64> {
    dyadic_grid(3, 13)
}

pub fn sweep_policy() -> TruncationPolicy {
    let base = TruncationPolicy::from_env();
    if std::env::var_os("QBARNES_MAX_TERMS").is_some() {
        base
    } else {
        base.with_max_terms(SWEEP_MAX_TERMS)
    }
}

/// How `t` follows `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TRule {
    /// `t = s - nu`.
    Shift(usize),
    /// `t = a s + b`.
    Affine { a: f64, b: f64 },
}

impl TRule {
    pub fn apply(&self, s: ComplexValue) -> ComplexValue {
        match *self {
            TRule::Shift(nu) => s - nu as f64,
            TRule::Affine { a, b } => s * a + b,
        }
    }
}

impl fmt::Display for TRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TRule::Shift(nu) => write!(f, "s-{nu}"),
            TRule::Affine { a, b } => {
                match a {
                    1.0 => f.write_str("s")?,
                    -1.0 => f.write_str("-s")?,
                    a => write!(f, "{a}s")?,
                }
                match b {
                    0.0 => Ok(()),
                    b if b < 0.0 => write!(f, "-{}", -b),
                    b => write!(f, "+{b}"),
                }
            }
        }
    }
}

impl FromStr for TRule {
    type Err = Error;

    /// Accepts `[a]s[(+|-)b]`, e.g. `s-0.5`, `2s-1`, `0.5*s+2`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot read t-rule {text:?}; expected e.g. \"s-0.5\" or \"2s-1\""));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let pos = compact.find('s').ok_or_else(bad)?;
        let (head, tail) = (&compact[..pos], &compact[pos + 1..]);
        let head = head.strip_suffix('*').unwrap_or(head);
        let a = match head {
            "" | "+" => 1.0,
            "-" => -1.0,
            h => h.parse::<f64>().map_err(|_| bad())?,
        };
        let b = if tail.is_empty() {
            0.0
        } else {
            if !tail.starts_with(['+', '-']) {
                return Err(bad());
            }
            tail.parse::<f64>().map_err(|_| bad())?
        };
        if !a.is_finite() || !b.is_finite() {
            return Err(bad());
        }
        if a == 1.0 && b <= -1.0 && b.fract() == 0.0 {
            return Ok(TRule::Shift((-b) as usize));
        }
        Ok(TRule::Affine { a, b })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub q_grid: Vec<f64>,
    pub r: usize,
    pub s: ComplexValue,
    pub z: ComplexValue,
    pub weights: Weights,
    pub rule: TRule,
}

impl SweepSpec {
    pub fn new(r: usize, s: ComplexValue, z: ComplexValue, rule: TRule) -> Self {
        SweepSpec {
            q_grid: default_grid(),
            r,
            s,
            z,
            weights: Weights::ones(r),
            rule,
        }
    }

    pub fn with_grid(mut self, q_grid: Vec<f64>) -> Self {
        self.q_grid = q_grid;
        self
    }

    pub fn with_weights(mut self, weights: Weights) -> Self {
        self.weights = weights;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.q_grid.is_empty() {
            return Err(Error::Config("empty q grid".into()));
        }
        for q in &self.q_grid {
            QParam::new(*q)?;
        }
        if self.q_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("q grid must be strictly increasing".into()));
        }
        if self.weights.r() != self.r {
            return Err(Error::Config(format!(
                "{} weights given for r = {}",
                self.weights.r(),
                self.r
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Converging,
    Diverging,
    Inconclusive,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Converging => "converging",
            Classification::Diverging => "diverging",
            Classification::Inconclusive => "inconclusive",
        })
    }
}

/// One grid point; a pole or other failure leaves `value` empty and fills `note`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub q: f64,
    pub value: Option<ComplexValue>,
    pub gap: Option<f64>,
    pub note: Option<String>,
    /// The failure was a pole of the q-side.
    pub pole: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub target: ComplexValue,
    pub points: Vec<SweepPoint>,
    pub classification: Classification,
    /// Least-squares slope of `log gap` against `-log(1-q)`: positive means the gap grows.
    pub slope: Option<f64>,
}

impl SweepReport {
    pub fn final_gap(&self) -> Option<f64> {
        self.points.iter().rev().find_map(|p| p.gap)
    }
}

/// Classical `zeta_r(s, z; w)` where this crate can compute it.
pub fn classical_target(r: usize, s: ComplexValue, z: ComplexValue, weights: &Weights) -> Result<ComplexValue> {
    let cfg = EMConfig::default();
    if weights.is_unit() {
        return Ok(barnes_zeta(r, s, z, &[cfg])?.value);
    }
    if r == 1 {
        return Ok(barnes_r1_scaled(s, z, weights.as_slice()[0], &cfg)?.value);
    }
    Err(Error::domain(
        "classical_target",
        "no classical evaluator for r > 1 with non-unit weights",
    ))
}

fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|(q, g)| (-(1.0 - q).ln(), g.max(f64::MIN_POSITIVE).ln()))
        .collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Classifies `(q, gap)` pairs, already restricted to points that evaluated.
pub fn classify(points: &[(f64, f64)], target_tol: f64) -> (Classification, Option<f64>) {
    let slope = fit_slope(points);
    if points.len() < 3 {
        return (Classification::Inconclusive, slope);
    }
    let tail = &points[points.len() - 3..];
    let decreasing = tail.windows(2).all(|w| w[1].1 < w[0].1);
    if decreasing && tail[2].1 < 10.0 * target_tol {
        return (Classification::Converging, slope);
    }
    match slope {
        Some(m) if m > 0.0 => (Classification::Diverging, slope),
        _ => (Classification::Inconclusive, slope),
    }
}

fn q_side(spec: &SweepSpec, q: QParam, policy: &TruncationPolicy) -> Result<ComplexValue> {
    let v = match spec.rule {
        TRule::Shift(nu) => qzeta_nu(spec.r, q, spec.s, spec.z, nu, &spec.weights, policy)?,
        TRule::Affine { .. } => qzeta_binomial_ac(
            spec.r,
            q,
            spec.s,
            spec.rule.apply(spec.s),
            spec.z,
            &spec.weights,
            policy,
        )?,
    };
    Ok(v.value)
}

/// Evaluates the q-side over the grid and compares with the classical value.
pub fn limit_sweep(spec: &SweepSpec, policy: &TruncationPolicy) -> Result<SweepReport> {
    spec.validate()?;
    let target = classical_target(spec.r, spec.s, spec.z, &spec.weights)?;
    let points: Vec<SweepPoint> = spec
        .q_grid
        .par_iter()
        .map(|&qv| {
            let q = QParam::new(qv).expect("grid validated");
            match q_side(spec, q, policy) {
                Ok(v) => SweepPoint {
                    q: qv,
                    value: Some(v),
                    gap: Some((v - target).norm()),
                    note: None,
                    pole: false,
                },
                Err(e) => SweepPoint {
                    q: qv,
                    value: None,
                    gap: None,
                    pole: e.is_pole(),
                    note: Some(e.to_string()),
                },
            }
        })
        .collect();
    let valid: Vec<(f64, f64)> = points.iter().filter_map(|p| p.gap.map(|g| (p.q, g))).collect();
    let (classification, slope) = classify(&valid, TARGET_TOL);
    Ok(SweepReport {
        target,
        points,
        classification,
        slope,
    })
}

/// The three D-terms at one `q` with their `q -> 1` targets. `d3` is the
/// residual `zeta_q - lead - half - D1 - D2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DTermRow {
    pub q: f64,
    pub d1: ComplexValue,
    pub d2: ComplexValue,
    pub d3: ComplexValue,
    /// `D3` evaluated from its own quadrature, for comparison with the residual.
    pub d3_direct: ComplexValue,
    /// Combined error estimate of the Fourier-truncated `D2` and `D3`.
    pub fourier_err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DTermReport {
    pub n: usize,
    pub m: usize,
    pub targets: [ComplexValue; 3],
    pub rows: Vec<DTermRow>,
}

impl DTermReport {
    /// `|D^i - lim D^i|` per row, `i = 0, 1, 2` for D1, D2, D3.
    pub fn gaps(&self, i: usize) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| {
                let v = [r.d1, r.d2, r.d3][i];
                (v - self.targets[i]).norm()
            })
            .collect()
    }

    pub fn decreasing(&self, i: usize) -> bool {
        self.gaps(i).windows(2).all(|w| w[1] < w[0])
    }
}

/// `sum_{k=lo}^{hi} B_{k+1}/(k+1)! (s)_k z^(-s-k)`.
fn bernoulli_block(s: ComplexValue, z: ComplexValue, lo: usize, hi: usize) -> Result<ComplexValue> {
    let lz = z.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in lo..=hi {
        let fact: f64 = (1..=k + 1).map(|i| i as f64).product();
        let b = bernoulli_f64(k + 1)?;
        if b != 0.0 {
            acc += b / fact * rising_factorial(s, k) * (-(s + k as f64) * lz).exp();
        }
    }
    Ok(acc)
}

/// Tabulates `D1`, `D2`, `D3` of the Euler-Maclaurin continuation of
/// `zeta_q(s, t, z)` against their classical limits.
pub fn dterm_limit_check(
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    cp: &ContinuationParams,
    q_grid: &[f64],
) -> Result<DTermReport> {
    if z.re <= 0.0 {
        return Err(Error::domain("dterm_limit_check", format!("Re(z) = {} <= 0", z.re)));
    }
    let targets = [
        bernoulli_block(s, z, 1, cp.n)?,
        bernoulli_block(s, z, cp.n + 1, cp.m)?,
        em_remainder(s, z, &EMConfig::with_depth(cp.m))?.value,
    ];
    let policy = cp.policy.with_max_terms(cp.policy.max_terms.max(SWEEP_MAX_TERMS));
    let rows: Result<Vec<DTermRow>> = q_grid
        .par_iter()
        .map(|&qv| {
            let q = QParam::new(qv)?;
            let parts = em_parts(q, s, t, z, cp)?;
            let full = qzeta_binomial_ac(1, q, s, t, z, &Weights::ones(1), &policy)?.value;
            Ok(DTermRow {
                q: qv,
                d1: parts.d1,
                d2: parts.d2.value,
                d3: full - parts.lead.value - parts.half - parts.d1 - parts.d2.value,
                d3_direct: parts.d3.value,
                fourier_err: parts.d2.abs_err + parts.d3.abs_err,
            })
        })
        .collect();
    Ok(DTermReport {
        n: cp.n,
        m: cp.m,
        targets,
        rows: rows?,
    })
}

/// `sum (n . w + z)^(-s)` over the lattice `n >= 0` for `Re(s) > r`, cut at
/// `n . w < L` with the cut-off region replaced by its two-term lattice-count
/// density `x^(r-1)/((r-1)! prod w) + x^(r-2) (sum w)/(2 (r-2)! prod w)`.
pub fn lattice_sum(s: ComplexValue, z: ComplexValue, weights: &Weights, points_budget: f64) -> Result<ComplexValue> {
    const OP: &str = "lattice_sum";
    let w = weights.as_slice();
    let r = w.len();
    if s.re <= r as f64 {
        return Err(Error::domain(OP, format!("Re(s) = {} <= r = {r}", s.re)));
    }
    if z.re <= 0.0 {
        return Err(Error::domain(OP, format!("Re(z) = {} <= 0", z.re)));
    }
    let prod: f64 = w.iter().product();
    let rfact: f64 = (1..=r).map(|k| k as f64).product();
    let cut = (points_budget * rfact * prod).powf(1.0 / r as f64);

    fn walk(w: &[f64], acc_x: f64, cut: f64, s: ComplexValue, z: ComplexValue, out: &mut ComplexValue) {
        let (first, rest) = (w[0], &w[1..]);
        let mut x = acc_x;
        while x < cut {
            if rest.is_empty() {
                *out += (-s * (z + x).ln()).exp();
            } else {
                walk(rest, x, cut, s, z, out);
            }
            x += first;
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    walk(w, 0.0, cut, s, z, &mut sum);

    // int_L^inf x^k (x+z)^(-s) dx = sum_i binom(k,i) (-z)^(k-i) (L+z)^(i+1-s)/(s-i-1)
    let moment = |k: usize| -> ComplexValue {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut binom = 1.0;
        for i in 0..=k {
            acc += binom * (-z).powu((k - i) as u32) * (((i + 1) as f64 - s) * (z + cut).ln()).exp()
                / (s - (i + 1) as f64);
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        acc
    };
    let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>();
    let mut tail = moment(r - 1) / (fact(r - 1) * prod);
    if r >= 2 {
        tail += moment(r - 2) * w.iter().sum::<f64>() / (2.0 * fact(r - 2) * prod);
    }
    Ok(sum + tail)
}

/// One row of the weighted probe.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub s: ComplexValue,
    /// Classical lattice sum when `Re(s) > r`; `None` means the rows carry a
    /// Cauchy diagnostic instead of a comparison.
    pub target: Option<ComplexValue>,
    pub values: Vec<(f64, Option<ComplexValue>)>,
    /// `|value - target|` or, without a target, `|value(q_k) - value(q_{k-1})|`.
    pub diagnostics: Vec<Option<f64>>,
}

/// Evidence tables for weighted `zeta^(nu)_{q,r}` as `q -> 1`; never a verdict.
pub fn conjecture_probe(
    weights: &Weights,
    nu: usize,
    s_list: &[ComplexValue],
    z: ComplexValue,
    q_grid: &[f64],
    policy: &TruncationPolicy,
) -> Result<Vec<ProbeRow>> {
    let r = weights.r();
    if r < 2 || weights.is_unit() {
        return Err(Error::domain(
            "conjecture_probe",
            "the probe is for r >= 2 with non-unit weights",
        ));
    }
    s_list
        .iter()
        .map(|&s| {
            let target = if s.re > r as f64 {
                Some(lattice_sum(s, z, weights, 2e6)?)
            } else {
                None
            };
            let values: Vec<(f64, Option<ComplexValue>)> = q_grid
                .par_iter()
                .map(|&qv| {
                    let v = QParam::new(qv)
                        .and_then(|q| qzeta_nu(r, q, s, z, nu, weights, policy))
                        .ok()
                        .map(|e| e.value);
                    (qv, v)
                })
                .collect();
            let diagnostics = match target {
                Some(tv) => values.iter().map(|(_, v)| v.map(|v| (v - tv).norm())).collect(),
                None => std::iter::once(None)
                    .chain(values.windows(2).map(|w| match (w[0].1, w[1].1) {
                        (Some(a), Some(b)) => Some((b - a).norm()),
                        _ => None,
                    }))
                    .collect(),
            };
            Ok(ProbeRow {
                s,
                target,
                values,
                diagnostics,
            })
        })
        .collect()
}
