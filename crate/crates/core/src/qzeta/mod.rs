//! q-analogues of the Barnes zeta function,
//! `zeta_{q,r}(s, t, z; w) = sum_n q^(sum n_i w_i (t-i+1)) / [n.w + z]_q^s`,
//! and every route used to evaluate and continue them.

mod binomial;
mod direct;
mod em;
mod ladder;
mod polys;

pub use binomial::{qzeta_binomial_ac, qzeta_nu, qzeta_special_value};
pub use direct::{qzeta_direct, qzeta_qbinom};
pub use em::{
    dterm_d1, dterm_d2, em_parts, leibniz_coeffs, qzeta1_em, ContinuationParams, EmParts,
    LeibnizCoeffs,
};
pub use ladder::qzeta_ladder;
pub use polys::{qbarnes_polys, qzeta_reduce, QBarnesPolys};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qnum::{principal_pow_neg, q_number, QParam};
use crate::types::ComplexValue;

/// Positive weights `(w_1, ..., w_r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::domain("weights", "r must be at least 1"));
        }
        if let Some(bad) = w.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::domain("weights", format!("weight {bad} is not positive")));
        }
        Ok(Weights(w))
    }

    pub fn ones(r: usize) -> Self {
        Weights(vec![1.0; r.max(1)])
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&w| w == 1.0)
    }
}

/// `[x]_q^(-s)` on the principal branch.
pub(crate) fn q_number_pow_neg(
    op: &'static str,
    q: QParam,
    x: ComplexValue,
    s: ComplexValue,
) -> Result<ComplexValue> {
    let base = q_number(q, x);
    if base.norm() < 1e-12 {
        return Err(Error::Singular {
            op,
            detail: format!("[{x}]_q = {base} vanishes"),
        });
    }
    principal_pow_neg(op, base, s)
}

/// Upper bound on `|[x + z]_q^(-s)|` over all `x >= 0`, for `Re(z) > 0`.
pub(crate) fn q_power_bound(q: QParam, s: ComplexValue, z: ComplexValue) -> f64 {
    let rho = q.value().powf(z.re);
    let lo = (1.0 - rho) / (1.0 - q.value());
    let hi = (1.0 + rho) / (1.0 - q.value());
    let modulus = lo.powf(-s.re).max(hi.powf(-s.re));
    modulus * (s.im.abs() * rho.min(1.0).asin()).exp()
}

pub(crate) fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}
