use num_complex::Complex64;

use super::zero;
use crate::error::{Error, Result};
use crate::qnum::{q_number, QParam};
use crate::types::{ComplexValue, EvalResult, Method};

/// The coefficients `P^l_{q,r}(z)` of the reduction
/// `zeta_{q,r}(s,t,z) = sum_l P^l_{q,r}(z) zeta_q(s-l, t-l, z)`.
///
/// `P^l_{q,r}(z) = (-1)^(r-1-l) / [r-1]_q! * e_{r-1-l}(q^m [z-m]_q : 1 <= m <= r-1)`
/// with `e_k` the elementary symmetric polynomials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBarnesPolys {
    r: usize,
    q: QParam,
}

pub fn qbarnes_polys(r: usize, q: QParam) -> Result<QBarnesPolys> {
    if r == 0 {
        return Err(Error::domain("qbarnes_polys", "r = 0"));
    }
    Ok(QBarnesPolys { r, q })
}

impl QBarnesPolys {
    pub fn r(&self) -> usize {
        self.r
    }

    /// All of `P^0_{q,r}(z), ..., P^{r-1}_{q,r}(z)`.
    pub fn values(&self, z: ComplexValue) -> Vec<ComplexValue> {
        let r = self.r;
        let q = self.q;
        // e[k] = e_k of the roots seen so far
        let mut e = vec![zero(); r];
        e[0] = Complex64::new(1.0, 0.0);
        for m in 1..r {
            let x = q.powf(m as f64) * q_number(q, z - m as f64);
            for k in (1..=m).rev() {
                let prev = e[k - 1];
                e[k] += x * prev;
            }
        }
        let qfact: f64 = (1..r)
            .map(|i| q_number(q, Complex64::new(i as f64, 0.0)).re)
            .product();
        (0..r)
            .map(|l| {
                let k = r - 1 - l;
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * e[k] / qfact
            })
            .collect()
    }

    pub fn eval(&self, l: usize, z: ComplexValue) -> Result<ComplexValue> {
        if l >= self.r {
            return Err(Error::domain(
                "qbarnes_polys",
                format!("l = {l} outside 0..{}", self.r),
            ));
        }
        Ok(self.values(z)[l])
    }
}

/// Depth-`r` value assembled from a depth-1 evaluator `zeta_q(s, t, z)`.
pub fn qzeta_reduce<F>(
    r: usize,
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    depth1: F,
) -> Result<EvalResult>
where
    F: Fn(ComplexValue, ComplexValue, ComplexValue) -> Result<EvalResult>,
{
    if z.re <= 0.0 {
        return Err(Error::domain(
            "qzeta_reduce",
            format!("Re(z) = {} <= 0", z.re),
        ));
    }
    let coeffs = qbarnes_polys(r, q)?.values(z);
    let mut value = zero();
    let mut err = 0.0;
    for (l, p) in coeffs.iter().enumerate() {
        let lf = l as f64;
        let v = depth1(s - lf, t - lf, z)?;
        value += p * v.value;
        err += p.norm() * v.abs_err + 4.0 * f64::EPSILON * (p * v.value).norm();
    }
    Ok(EvalResult::new(value, err, Method::QZetaReduction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::q_binomial_eval;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_r_match_explicit_displays() {
        let q = QParam::new(0.6).unwrap();
        let z = c(1.7, -0.4);
        let qn = |x: Complex64| q_number(q, x);
        let p1 = qbarnes_polys(1, q).unwrap().values(z);
        assert_eq!(p1, vec![c(1.0, 0.0)]);
        let p2 = qbarnes_polys(2, q).unwrap().values(z);
        assert!((p2[0] + 0.6 * qn(z - 1.0)).norm() < 1e-15);
        assert!((p2[1] - 1.0).norm() < 1e-15);
        let p3 = qbarnes_polys(3, q).unwrap().values(z);
        let qq = 0.6;
        assert!((p3[2] - 1.0 / (1.0 + qq)).norm() < 1e-15);
        let mid = -(qq * qn(z - 1.0) + qq * qq * qn(z - 2.0)) / (1.0 + qq);
        assert!((p3[1] - mid).norm() < 1e-14);
        let low = qq.powi(3) * qn(z - 1.0) * qn(z - 2.0) / (1.0 + qq);
        assert!((p3[0] - low).norm() < 1e-14);
    }

    #[test]
    fn defining_identity() {
        for &qv in &[0.3, 0.5, 0.9] {
            let q = QParam::new(qv).unwrap();
            for r in 1..=5usize {
                let polys = qbarnes_polys(r, q).unwrap();
                for &z in &[c(0.5, 0.0), c(1.0, 0.0), c(2.0, 1.0)] {
                    let p = polys.values(z);
                    for n in 0..=20i64 {
                        let nz = q_number(q, z + n as f64);
                        let lhs: Complex64 = (0..r)
                            .map(|l| qv.powi((n as usize * (r - 1 - l)) as i32) * p[l] * nz.powu(l as u32))
                            .sum();
                        let rhs = q_binomial_eval(q, n + r as i64 - 1, r as i64 - 1).unwrap();
                        assert!((lhs - rhs).norm() < 1e-12 * rhs.max(1.0), "q={qv} r={r} n={n}");
                    }
                }
            }
        }
    }
}
