//! q-arithmetic primitives: q-numbers, q-Pochhammer symbols, Gaussian
//! binomials (exact and floating), Stirling numbers and Bernoulli machinery.

mod bernoulli;
mod poly;
mod qbinom;
mod stirling;

pub use bernoulli::{
    bernoulli_f64, bernoulli_number, bernoulli_poly_coeffs, periodic_bernoulli,
    periodic_bernoulli_fourier, BernoulliTable, BERNOULLI_CAP,
};
pub use poly::RationalPoly;
pub use qbinom::{
    q_binomial_eval, q_binomial_exact, q_composition_sum, q_vandermonde_sum, COMPOSITION_CAP,
};
pub use stirling::{stirling_first, StirlingTable};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::ComplexValue;

/// The deformation parameter, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QParam(f64);

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(QParam(q))
        } else {
            Err(Error::InvalidQ(q))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0.ln()
    }

    /// `q^z = exp(z ln q)` with the real logarithm of q.
    #[inline]
    pub fn pow(self, z: ComplexValue) -> ComplexValue {
        (z * self.ln()).exp()
    }

    /// `1 - q^z`, accurate when `q^z` is close to 1.
    #[inline]
    pub fn one_minus_pow(self, z: ComplexValue) -> ComplexValue {
        -cexpm1(z * self.ln())
    }

    /// `q^k` for a real exponent.
    pub fn powf(self, x: f64) -> f64 {
        self.0.powf(x)
    }

    /// `q^N`, the base of the Gauss-Legendre companion functions.
    pub fn power(self, n: u32) -> Result<QParam> {
        QParam::new(self.0.powi(n as i32))
    }
}

impl TryFrom<f64> for QParam {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        QParam::new(q)
    }
}

/// `exp(w) - 1` without cancellation for small `w`.
pub fn cexpm1(w: ComplexValue) -> ComplexValue {
    let (a, b) = (w.re, w.im);
    if w.norm() > 0.5 {
        return w.exp() - 1.0;
    }
    let half_sin = (0.5 * b).sin();
    let re = a.exp_m1() * b.cos() - 2.0 * half_sin * half_sin;
    let im = a.exp() * b.sin();
    Complex64::new(re, im)
}

/// `[z]_q = (1 - q^z)/(1 - q)`.
pub fn q_number(q: QParam, z: ComplexValue) -> ComplexValue {
    q.one_minus_pow(z) / (1.0 - q.value())
}

/// `(a; q)_m = prod_{l<m} (1 - a q^l)`.
pub fn q_pochhammer(a: ComplexValue, q: QParam, m: i64) -> Result<ComplexValue> {
    if m < 0 {
        return Err(Error::domain("q_pochhammer", format!("m = {m} < 0")));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let mut ql = 1.0;
    for _ in 0..m {
        acc *= 1.0 - a * ql;
        ql *= q.value();
    }
    Ok(acc)
}

/// Rising factorial `(x)_l = x (x+1) ... (x+l-1)`.
pub fn rising_factorial(x: ComplexValue, l: usize) -> ComplexValue {
    (0..l).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (x + i as f64))
}

/// Generalized binomial coefficient `binom(s+l-1, l) = (s)_l / l!`.
pub fn complex_binomial(s: ComplexValue, l: usize) -> ComplexValue {
    (0..l).fold(Complex64::new(1.0, 0.0), |acc, i| {
        acc * (s + i as f64) / (i as f64 + 1.0)
    })
}

/// `base^(-s)` on the principal branch. A base on the negative real axis is
/// only accepted when `s` is an integer, where every branch agrees.
pub(crate) fn principal_pow_neg(
    op: &'static str,
    base: ComplexValue,
    s: ComplexValue,
) -> Result<ComplexValue> {
    if base.norm() == 0.0 {
        return Err(Error::Singular {
            op,
            detail: "zero base".into(),
        });
    }
    if base.im == 0.0 && base.re < 0.0 && !is_integer(s) {
        return Err(Error::Branch { op, base });
    }
    Ok((-s * base.ln()).exp())
}

pub(crate) fn is_integer(s: ComplexValue) -> bool {
    s.im == 0.0 && s.re == s.re.round()
}

/// Nonpositive integer test (exact).
pub(crate) fn is_nonpositive_integer(s: ComplexValue) -> bool {
    is_integer(s) && s.re <= 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn qparam_rejects_closed_endpoints() {
        assert!(QParam::new(0.0).is_err());
        assert!(QParam::new(1.0).is_err());
        assert!(QParam::new(-0.2).is_err());
        assert!(QParam::new(f64::NAN).is_err());
        assert!(QParam::new(0.999).is_ok());
    }

    #[test]
    fn q_number_examples() {
        let q = QParam::new(0.5).unwrap();
        assert!((q_number(q, c(1.0)) - 1.0).norm() < 1e-15);
        assert!((q_number(q, c(2.0)) - 1.5).norm() < 1e-15);
        let q = QParam::new(0.9).unwrap();
        assert_eq!(q_number(q, c(0.0)), c(0.0));
    }

    #[test]
    fn q_number_tends_to_z() {
        let q = QParam::new(1.0 - 1e-9).unwrap();
        let z = Complex64::new(2.5, -0.5);
        assert!((q_number(q, z) - z).norm() < 1e-7);
    }

    #[test]
    fn pochhammer_examples() {
        let q = QParam::new(0.5).unwrap();
        assert_eq!(q_pochhammer(c(0.3), q, 0).unwrap(), c(1.0));
        assert!((q_pochhammer(c(0.5), q, 2).unwrap() - 0.375).norm() < 1e-15);
        assert_eq!(q_pochhammer(c(1.0), q, 1).unwrap(), c(0.0));
        assert!(q_pochhammer(c(1.0), q, -1).is_err());
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial(c(3.0), 0), c(1.0));
        assert_eq!(rising_factorial(c(1.0), 4), c(24.0));
        assert_eq!(rising_factorial(c(-2.0), 3), c(0.0));
    }

    #[test]
    fn complex_binomial_examples() {
        assert_eq!(complex_binomial(Complex64::new(0.3, 2.0), 0), c(1.0));
        assert!((complex_binomial(c(2.0), 3) - 4.0).norm() < 1e-15);
        assert_eq!(complex_binomial(c(-1.0), 2), c(0.0));
    }

    #[test]
    fn cexpm1_matches_reference() {
        for &w in &[Complex64::new(0.3, -0.2), Complex64::new(-2.0, 1.0)] {
            let reference = w.exp() - 1.0;
            assert!((cexpm1(w) - reference).norm() <= 1e-15 * reference.norm());
        }
        let w = Complex64::new(1e-6, 3e-6);
        let series = w + w * w / 2.0 + w * w * w / 6.0;
        assert!((cexpm1(w) - series).norm() <= 1e-15 * series.norm());
        let tiny = Complex64::new(1e-20, -1e-20);
        assert!((cexpm1(tiny) - tiny).norm() < 1e-35);
    }
}
