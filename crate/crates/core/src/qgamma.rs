//! The q-gamma function attached to the q-Hurwitz zeta by zeta regularization.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qnum::{cexpm1, is_nonpositive_integer, q_number, QParam};
use crate::qzeta::{qzeta_direct, qzeta_nu, Weights};
use crate::types::{ComplexValue, EvalResult, Method, TruncationPolicy};

const SERIES_TOL: f64 = 1e-17;
const SERIES_CAP: usize = 10_000_000;

/// `zeta~_q(s, z) = q^(z(s-1)) zeta^(1)_q(s, z)`.
pub fn qzeta_tilde(
    q: QParam,
    s: ComplexValue,
    z: ComplexValue,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    let factor = (z * (s - 1.0) * q.ln()).exp();
    if s.re > 1.0 && z.re > 0.0 {
        let v = qzeta_direct(1, q, s, s - 1.0, z, &Weights::ones(1), policy)?;
        return Ok(v.scale(factor).with_method(Method::QZetaTildeSeries));
    }
    Ok(qzeta_nu(1, q, s, z, 1, &Weights::ones(1), policy)?.scale(factor))
}

/// Sums `f(n)` for `n >= start` where `|f(n)| <= bound(n)` and `bound` decays
/// at least geometrically with ratio `rho`.
fn geometric_series(
    op: &'static str,
    start: usize,
    rho: f64,
    mut f: impl FnMut(usize) -> (ComplexValue, f64),
) -> Result<ComplexValue> {
    let mut acc = Complex64::new(0.0, 0.0);
    let tail_factor = 1.0 / (1.0 - rho);
    for n in start..start + SERIES_CAP {
        let (term, bound) = f(n);
        acc += term;
        if bound * tail_factor < SERIES_TOL * acc.norm().max(1.0) {
            return Ok(acc);
        }
    }
    Err(Error::Convergence {
        op,
        terms: SERIES_CAP,
        bound: rho,
    })
}

fn require_right_half(op: &'static str, z: ComplexValue) -> Result<()> {
    if z.re > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("Re(z) = {} <= 0", z.re)))
    }
}

/// Taylor coefficient of `s` at `s = 0` of `zeta~_q(s, z)`.
pub fn a1(q: QParam, z: ComplexValue) -> Result<ComplexValue> {
    const OP: &str = "a1";
    require_right_half(OP, z)?;
    let (qv, lq) = (q.value(), q.ln());
    let rho = qv.powf(z.re);
    let series = geometric_series(OP, 2, rho, |n| {
        let m = (n - 1) as f64;
        let denom = n as f64 * -(m * lq).exp_m1();
        let term = (z * (m * lq)).exp() / denom;
        (term, term.norm())
    })?;
    let q1z = (-(z - 1.0) * lq).exp();
    let l1q = (-qv).ln_1p();
    Ok(series - z + 0.5 + (1.0 - z * (1.0 - qv)) / (1.0 - qv).powi(2) * q1z * lq
        - (q1z / (1.0 - qv) + 1.0 / lq) * l1q)
}

/// Immutable per-`q` state: the normalization `a_1(1; q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QGammaContext {
    q: QParam,
    a1_one: ComplexValue,
}

impl QGammaContext {
    pub fn new(q: QParam) -> Result<Self> {
        Ok(QGammaContext {
            q,
            a1_one: a1(q, Complex64::new(1.0, 0.0))?,
        })
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn a1_one(&self) -> ComplexValue {
        self.a1_one
    }

    /// `log Gamma~_q(z)`; the principal branch is used through the ladder.
    pub fn ln_qgamma(&self, z: ComplexValue) -> Result<ComplexValue> {
        const OP: &str = "qgamma";
        if z.re > 0.0 {
            return ln_qgamma_right(self.q, z);
        }
        if is_nonpositive_integer(z) {
            return Err(Error::pole(OP, z, "q^(-z)[z]_q vanishes"));
        }
        // Gamma~(z) = (q^(-z)[z]_q)^(-q^(-z)) Gamma~(z+1)
        let shifts = (1.0 - z.re).floor() as usize;
        let mut acc = ln_qgamma_right(self.q, z + shifts as f64)?;
        for k in 0..shifts {
            let w = z + k as f64;
            let qmw = self.q.pow(-w);
            let base = qmw * q_number(self.q, w);
            if base.im == 0.0 && base.re < 0.0 {
                return Err(Error::Branch { op: OP, base });
            }
            if base.norm() == 0.0 {
                return Err(Error::pole(OP, z, "q^(-z)[z]_q vanishes"));
            }
            acc -= qmw * base.ln();
        }
        Ok(acc)
    }
}

/// Closed form of `log Gamma~_q(z)` for `Re(z) > 0`, written in `u = z - 1`
/// so that it vanishes identically at `z = 1`.
fn ln_qgamma_right(q: QParam, z: ComplexValue) -> Result<ComplexValue> {
    let (qv, lq) = (q.value(), q.ln());
    let u = z - 1.0;
    let h = 1.0 - qv;
    let rho = qv.powf(z.re.min(1.0));
    let series = geometric_series("qgamma", 2, rho, |n| {
        let m = (n - 1) as f64;
        // q^(z m) - q^m = q^m (q^(u m) - 1)
        let qm = (m * lq).exp();
        let num = qm * cexpm1(u * (m * lq));
        let denom = n as f64 * -(m * lq).exp_m1();
        let bound = ((z.re * m * lq).exp() + qm) / denom;
        (num / denom, bound)
    })?;
    // q^(1-z) - 1
    let e = cexpm1(-u * lq);
    let lead = (e * qv - (1.0 + e) * h * u) / (h * h) * lq;
    let last = -e / h * (-qv).ln_1p();
    Ok(series - u + lead + last)
}

/// `Gamma~_q(z)`.
pub fn qgamma(ctx: &QGammaContext, z: ComplexValue) -> Result<ComplexValue> {
    Ok(ctx.ln_qgamma(z)?.exp())
}

/// `(Gamma~_q'/Gamma~_q)(z)` for `Re(z) > 0`, the exact derivative of the closed form.
pub fn qgamma_log_deriv(ctx: &QGammaContext, z: ComplexValue) -> Result<ComplexValue> {
    const OP: &str = "qgamma_log_deriv";
    require_right_half(OP, z)?;
    let q = ctx.q;
    let (qv, lq) = (q.value(), q.ln());
    let h = 1.0 - qv;
    let rho = qv.powf(z.re);
    let series = geometric_series(OP, 1, rho, |n| {
        let nf = n as f64;
        let denom = -(nf * lq).exp_m1();
        let term = nf / (nf + 1.0) * (z * (nf * lq)).exp() / denom;
        (term, term.norm())
    })?;
    let q1z = (-(z - 1.0) * lq).exp();
    Ok(lq * series - 1.0 - (h + (1.0 - h * z) * lq) / (h * h) * q1z * lq
        + lq / h * q1z * (-qv).ln_1p())
}

/// `gamma_q(z)`, the constant term of `zeta~_q(s, z)` at `s = 1`.
pub fn gamma_q_euler(q: QParam, z: ComplexValue, _policy: &TruncationPolicy) -> Result<ComplexValue> {
    const OP: &str = "gamma_q_euler";
    require_right_half(OP, z)?;
    let (qv, lq) = (q.value(), q.ln());
    let h = 1.0 - qv;
    let series = geometric_series(OP, 1, qv.powf(z.re), |n| {
        let nf = n as f64;
        let term = (z * (nf * lq)).exp() * h / -(nf * lq).exp_m1();
        (term, term.norm())
    })?;
    Ok(series + h * (-z + 0.5 - (-qv).ln_1p() / lq))
}

/// `C_q(z)`: what remains of `gamma_q(z)` after the log-derivative term.
pub fn c_q(q: QParam, z: ComplexValue) -> Result<ComplexValue> {
    const OP: &str = "c_q";
    require_right_half(OP, z)?;
    let (qv, lq) = (q.value(), q.ln());
    let h = 1.0 - qv;
    let l1q = (-qv).ln_1p();
    let series = geometric_series(OP, 1, qv.powf(z.re), |n| {
        let nf = n as f64;
        let term = (z * (nf * lq)).exp() * h / (-(nf * lq).exp_m1() * (nf + 1.0));
        (term, term.norm())
    })?;
    let q1z = (-(z - 1.0) * lq).exp();
    Ok(series + q1z + lq / h * (1.0 - h * z) * q1z + h / lq - q1z * l1q - h / lq * l1q
        + (-z + 0.5) * h)
}

/// `|gamma_q(z) + ((q-1)/ln q)(Gamma~'/Gamma~)(z) - C_q(z)|`.
pub fn q_lerch_residual(ctx: &QGammaContext, z: ComplexValue) -> Result<f64> {
    let q = ctx.q;
    let g = gamma_q_euler(q, z, &TruncationPolicy::default())?;
    let d = qgamma_log_deriv(ctx, z)?;
    let c = c_q(q, z)?;
    Ok((g + (q.value() - 1.0) / q.ln() * d - c).norm())
}

/// Relative residual of the q-Gauss-Legendre multiplication formula.
pub fn gauss_legendre_check(q: QParam, n: usize, z: ComplexValue) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("gauss_legendre_check", "N must be at least 1"));
    }
    let ctx = QGammaContext::new(q)?;
    let ctx_n = QGammaContext::new(q.power(n as u32)?)?;
    let nf = n as f64;
    let mut lhs = q_number(q, 1.0 - nf * z) * q_number(q, Complex64::new(nf, 0.0)).ln()
        + ctx.ln_qgamma(nf * z)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let kf = k as f64 / nf;
        if k > 0 {
            lhs += ctx_n.ln_qgamma(Complex64::new(kf, 0.0))?;
        }
        rhs += ctx_n.ln_qgamma(z + kf)?;
    }
    Ok(cexpm1(lhs - rhs).norm())
}

/// `eta_q(z)`, whose nonnegativity gives log-convexity of `Gamma~_q(z+1)`.
pub fn eta_q(q: QParam, z: f64) -> f64 {
    let (qv, lq) = (q.value(), q.ln());
    let h = 1.0 - qv;
    lq * (1.0 - h * (z + 1.0)) - h * (-qv).ln_1p() + 2.0 * h
}

/// Right side of `Gamma~_q(n+1) = q^(-sum k q^-k) prod [k]_q^(q^-k)`, as a logarithm.
pub fn ln_qgamma_integer(q: QParam, n: usize) -> f64 {
    let lq = q.ln();
    (1..=n)
        .map(|k| {
            let kf = k as f64;
            let w = (-kf * lq).exp();
            -kf * w * lq + w * q_number(q, Complex64::new(kf, 0.0)).re.ln()
        })
        .sum()
}
