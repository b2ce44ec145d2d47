//! Value carriers shared by every evaluator.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

/// Complex double; every zeta and gamma value is one of these.
pub type ComplexValue = Complex64;

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    HurwitzDirect,
    HurwitzEulerMaclaurin,
    BarnesStirling,
    BarnesLadder,
    BarnesScaled,
    QZetaDirect,
    QZetaQBinomial,
    QZetaReduction,
    QZetaEulerMaclaurin,
    QZetaBinomial,
    QZetaLadder,
    SpecialValue,
    IncompleteBetaDirect,
    IncompleteBetaContinued,
    QZetaTildeSeries,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::HurwitzDirect => "hurwitz-direct",
            Method::HurwitzEulerMaclaurin => "hurwitz-euler-maclaurin",
            Method::BarnesStirling => "barnes-stirling",
            Method::BarnesLadder => "barnes-ladder",
            Method::BarnesScaled => "barnes-r1-scaled",
            Method::QZetaDirect => "qzeta-direct",
            Method::QZetaQBinomial => "qzeta-qbinomial",
            Method::QZetaReduction => "qzeta-reduction",
            Method::QZetaEulerMaclaurin => "qzeta-euler-maclaurin",
            Method::QZetaBinomial => "qzeta-binomial",
            Method::QZetaLadder => "qzeta-ladder",
            Method::SpecialValue => "special-value",
            Method::IncompleteBetaDirect => "incomplete-beta-direct",
            Method::IncompleteBetaContinued => "incomplete-beta-continued",
            Method::QZetaTildeSeries => "qzeta-tilde-series",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A value together with an absolute error estimate and the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub abs_err: f64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: ComplexValue, abs_err: f64, method: Method) -> Self {
        EvalResult {
            value,
            abs_err,
            method,
        }
    }

    pub fn with_method(self, method: Method) -> Self {
        EvalResult { method, ..self }
    }

    pub fn scale(self, factor: ComplexValue) -> Self {
        EvalResult {
            value: self.value * factor,
            abs_err: self.abs_err * factor.norm(),
            method: self.method,
        }
    }
}

/// Tolerances and caps for every infinite sum and integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Absolute tolerance on the truncated tail of a series.
    pub abs_tol: f64,
    /// Absolute tolerance handed to adaptive quadrature.
    pub quad_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Hard cap on adaptive quadrature subdivisions.
    pub max_subdivisions: usize,
}

/// Environment variable overriding [`TruncationPolicy::max_terms`].
pub const MAX_TERMS_ENV: &str = "QBARNES_MAX_TERMS";

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            abs_tol: 1e-12,
            quad_tol: 1e-12,
            max_terms: 100_000,
            max_subdivisions: 4_000,
        }
    }
}

impl TruncationPolicy {
    /// Default policy with `max_terms` taken from `QBARNES_MAX_TERMS` when set.
    pub fn from_env() -> Self {
        let mut policy = TruncationPolicy::default();
        if let Some(cap) = std::env::var(MAX_TERMS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            policy.max_terms = cap;
        }
        policy
    }

    pub fn with_tol(self, tol: f64) -> Self {
        TruncationPolicy {
            abs_tol: tol,
            quad_tol: tol,
            ..self
        }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        TruncationPolicy { max_terms, ..self }
    }
}
