use num_complex::Complex64;

use super::{qzeta_ladder, zero, Weights};
use crate::error::{Error, Result};
use crate::qnum::{is_nonpositive_integer, QParam};
use crate::types::{ComplexValue, EvalResult, Method, TruncationPolicy};

/// `|1 - q^(w_j (t - j + 1 + l))|` below this is reported as a pole.
pub const POLE_GUARD: f64 = 1e-8;

fn pole_factor(q: QParam, w: f64, x: ComplexValue) -> ComplexValue {
    q.one_minus_pow(w * x)
}

/// Binomial-theorem continuation
/// `(1-q)^s sum_l binom(s+l-1, l) q^(lz) prod_j (1 - q^(w_j (t-j+1+l)))^(-1)`,
/// valid for all `s, t` off the pole lattice.
pub fn qzeta_binomial_ac(
    r: usize,
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    weights: &Weights,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    const OP: &str = "qzeta_binomial_ac";
    if r == 0 || weights.r() != r {
        return Err(Error::domain(
            OP,
            format!("{} weights given for r = {r}", weights.r()),
        ));
    }
    if z.re <= 0.0 {
        if weights.is_unit() {
            return qzeta_ladder(r, q, s, t, z, policy);
        }
        return Err(Error::domain(
            OP,
            format!(
                "Re(z) = {} <= 0; the ladder is only available for unit weights",
                z.re
            ),
        ));
    }
    let w = weights.as_slice();
    let lq = q.ln();
    let prefactor = (s * (-q.value()).ln_1p()).exp();
    let qz = (z * lq).exp().norm();
    // last l at which some factor can still vanish on the real line
    let l_last = (0..r)
        .map(|j| j as f64 - t.re)
        .fold(f64::NEG_INFINITY, f64::max)
        .ceil()
        .max(0.0) as usize
        + 1;

    let mut sum = zero();
    let mut abs_sum = 0.0;
    let mut binom = Complex64::new(1.0, 0.0);
    let mut l = 0usize;
    loop {
        let lf = l as f64;
        let mut prod = Complex64::new(1.0, 0.0);
        for (j, wj) in w.iter().enumerate() {
            let x = t - j as f64 + lf;
            let f = pole_factor(q, *wj, x);
            if f.norm() < POLE_GUARD {
                if binom.norm() == 0.0 {
                    return Err(Error::Singular {
                        op: OP,
                        detail: format!(
                            "removable 0 * inf at l = {l}, j = {}: the binomial vanishes against a pole factor",
                            j + 1
                        ),
                    });
                }
                return Err(Error::pole(
                    OP,
                    t,
                    format!(
                        "factor j = {}, l = {l}: 1 - q^(w_j (t - j + 1 + l)) vanishes",
                        j + 1
                    ),
                ));
            }
            prod /= f;
        }
        if binom.norm() != 0.0 {
            let term = binom * (z * (lf * lq)).exp() * prod;
            sum += term;
            abs_sum += term.norm();
        }

        // geometric tail bound from l+1 on, valid once every factor has
        // a positive real exponent
        let next = lf + 1.0;
        let exps: Vec<f64> = (0..r).map(|j| w[j] * (t.re - j as f64 + next)).collect();
        if exps.iter().all(|e| *e > 0.0) && l >= l_last {
            let pmax: f64 = exps.iter().map(|e| 1.0 / -(e * lq).exp_m1()).product();
            let ratio = (1.0 + (s - 1.0).norm() / (next + 1.0)) * qz;
            if ratio < 1.0 {
                let next_binom = binom * (s + lf) / next;
                let tail = next_binom.norm() * qz.powf(next) * pmax / (1.0 - ratio);
                let tail = tail * prefactor.norm();
                if tail <= policy.abs_tol || (binom.norm() == 0.0 && next_binom.norm() == 0.0) {
                    let value = prefactor * sum;
                    let err = tail
                        + (l as f64 + 1.0).sqrt() * 4.0 * f64::EPSILON * prefactor.norm() * abs_sum;
                    return Ok(EvalResult::new(value, err, Method::QZetaBinomial));
                }
            }
        }
        if l >= policy.max_terms {
            return Err(Error::Convergence {
                op: OP,
                terms: l,
                bound: binom.norm() * qz.powf(lf),
            });
        }
        binom = binom * (s + lf) / (lf + 1.0);
        l += 1;
    }
}

/// `zeta^(nu)_{q,r}(s, z; w) = zeta_{q,r}(s, s - nu, z; w)`. Exact nonpositive
/// integers are served by the closed form of the special values.
pub fn qzeta_nu(
    r: usize,
    q: QParam,
    s: ComplexValue,
    z: ComplexValue,
    nu: usize,
    weights: &Weights,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    const OP: &str = "qzeta_nu";
    if nu == 0 {
        return Err(Error::domain(OP, "nu must be at least 1"));
    }
    if is_nonpositive_integer(s) && z.re > 0.0 {
        let m = (-s.re) as usize;
        let v = qzeta_special_value(r, q, m, z, nu, weights)?;
        return Ok(EvalResult::new(
            v,
            64.0 * f64::EPSILON * v.norm(),
            Method::SpecialValue,
        ));
    }
    let t = s - nu as f64;
    qzeta_binomial_ac(r, q, s, t, z, weights, policy).map_err(|e| match e {
        Error::Pole { detail, .. } => {
            let family = pole_family(s.re.round() as i64, nu as i64, s.im != 0.0);
            Error::pole(OP, s, format!("{family}; {detail}"))
        }
        other => other,
    })
}

fn pole_family(k: i64, nu: i64, off_axis: bool) -> String {
    if k <= 0 {
        format!("family j + delta_i Z \\ {{0}} with j = {k} <= 0")
    } else if k <= nu {
        format!("family j + delta_i Z with 1 <= j = {k} <= nu")
    } else {
        let kind = if off_axis { "" } else { " (real-axis pole)" };
        format!("family nu + j + delta_i Z with j = {}{kind}", k - nu)
    }
}

/// Closed form of `zeta^(nu)_{q,r}(-m, z; w)`.
pub fn qzeta_special_value(
    r: usize,
    q: QParam,
    m: usize,
    z: ComplexValue,
    nu: usize,
    weights: &Weights,
) -> Result<ComplexValue> {
    const OP: &str = "qzeta_special_value";
    if nu == 0 || r == 0 || weights.r() != r {
        return Err(Error::domain(
            OP,
            format!("need nu >= 1 and r = #weights >= 1 (r = {r}, nu = {nu})"),
        ));
    }
    let w = weights.as_slice();
    let lq = q.ln();
    let (mi, nui) = (m as i64, nu as i64);
    let fact = |n: i64| -> f64 { (1..=n).map(|k| k as f64).product() };

    let mut first = zero();
    let mut binom = 1.0;
    for l in 0..=mi {
        let mut prod = Complex64::new(1.0, 0.0);
        for (j, wj) in w.iter().enumerate() {
            let e = -mi - nui + l - (j as i64 + 1) + 1;
            let f = 1.0 - q.powf(wj * e as f64);
            if f.abs() < POLE_GUARD {
                return Err(Error::Degenerate(format!(
                    "1 - q^(w_{} * {e}) vanishes in the alternating sum at l = {l}",
                    j + 1
                )));
            }
            prod /= f;
        }
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        first += sign * binom * (z * (l as f64 * lq)).exp() * prod;
        binom = binom * (mi - l) as f64 / (l + 1) as f64;
    }

    let mut second = zero();
    let sign = if (mi + 1) % 2 == 0 { 1.0 } else { -1.0 };
    for l in 1..=r as i64 {
        let mut prod = 1.0;
        for (j, wj) in w.iter().enumerate() {
            let j1 = j as i64 + 1;
            if j1 == l {
                continue;
            }
            let f = 1.0 - q.powf(wj * (l - j1) as f64);
            if f.abs() < POLE_GUARD {
                return Err(Error::Degenerate(format!(
                    "1 - q^(w_{j1} * {}) vanishes in the residue sum at l = {l}",
                    l - j1
                )));
            }
            prod /= f;
        }
        let coeff =
            sign * fact(mi) * fact(l + nui - 2) / (fact(l + mi + nui - 1) * w[(l - 1) as usize]);
        second += coeff * (z * (l as f64 * lq)).exp() * prod;
    }
    second *= (z * ((mi + nui - 1) as f64 * lq)).exp() / lq;

    Ok((first + second) * (1.0 - q.value()).powi(-(m as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qzeta::qzeta_direct;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qp(q: f64) -> QParam {
        QParam::new(q).unwrap()
    }

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn s_zero_keeps_only_first_term() {
        let q = qp(0.7);
        let w = Weights::new(vec![1.0, 1.5]).unwrap();
        let t = c(0.3, 0.8);
        let v = qzeta_binomial_ac(2, q, c(0.0, 0.0), t, c(1.0, 0.0), &w, &pol()).unwrap();
        let want = 1.0 / (q.one_minus_pow(t) * q.one_minus_pow(1.5 * (t - 1.0)));
        assert!((v.value - want).norm() < 1e-13);
    }

    #[test]
    fn overlaps_direct_series() {
        let q = qp(0.5);
        let one = Weights::ones(1);
        let a = qzeta_binomial_ac(1, q, c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), &one, &pol()).unwrap();
        let b = qzeta_direct(1, q, c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), &one, &pol()).unwrap();
        assert!((a.value - b.value).norm() < 1e-12);
        let w = Weights::new(vec![1.0, 2.0]).unwrap();
        let a = qzeta_binomial_ac(2, q, c(2.0, 0.0), c(3.0, 0.0), c(1.0, 0.0), &w, &pol()).unwrap();
        let b = qzeta_direct(2, q, c(2.0, 0.0), c(3.0, 0.0), c(1.0, 0.0), &w, &pol()).unwrap();
        assert!((a.value - b.value).norm() < 1e-10);
    }

    #[test]
    fn r1_weight_scaling() {
        // zeta_{q,1}(s,t,z;w) = [w]_q^{-s} zeta_{q^w}(s,t,z/w)
        let (q, om) = (qp(0.6), 1.7);
        let (s, t, z) = (c(1.3, 0.4), c(-0.6, 0.2), c(0.9, 0.1));
        let lhs = qzeta_binomial_ac(1, q, s, t, z, &Weights::new(vec![om]).unwrap(), &pol())
            .unwrap()
            .value;
        let qw = QParam::new(0.6f64.powf(om)).unwrap();
        let inner = qzeta_binomial_ac(1, qw, s, t, z / om, &Weights::ones(1), &pol())
            .unwrap()
            .value;
        let bracket = (1.0 - 0.6f64.powf(om)) / 0.4;
        assert!((lhs - inner * (-s * bracket.ln()).exp()).norm() < 1e-12);
    }

    #[test]
    fn pole_lattice_on_real_t_axis() {
        let q = qp(0.5);
        let w = Weights::ones(2);
        for k in -4i32..=4 {
            let res = qzeta_binomial_ac(2, q, c(1.5, 0.0), c(k as f64, 0.0), c(1.0, 0.0), &w, &pol());
            if k <= 1 {
                assert!(res.unwrap_err().is_pole(), "t = {k}");
            } else {
                assert!(res.is_ok(), "t = {k}");
            }
            assert!(qzeta_binomial_ac(2, q, c(1.5, 0.0), c(k as f64 + 0.5, 0.0), c(1.0, 0.0), &w, &pol())
                .is_ok());
        }
        // off-axis lattice point t = delta
        let delta = c(0.0, 2.0 * std::f64::consts::PI / q.ln());
        assert!(qzeta_binomial_ac(1, q, c(1.5, 0.0), delta, c(1.0, 0.0), &Weights::ones(1), &pol())
            .unwrap_err()
            .is_pole());
    }

    #[test]
    fn nu_examples() {
        let q = qp(0.5);
        let one = Weights::ones(1);
        let a = qzeta_nu(1, q, c(2.0, 0.0), c(1.0, 0.0), 1, &one, &pol()).unwrap();
        let b = qzeta_direct(1, q, c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), &one, &pol()).unwrap();
        assert!((a.value - b.value).norm() < 1e-12);
    }

    #[test]
    fn real_axis_pole_scan() {
        let q = qp(0.5);
        let w = Weights::ones(2);
        let poles: Vec<i32> = (-4..=6)
            .filter(|&k| {
                qzeta_nu(2, q, c(k as f64, 0.0), c(1.0, 0.0), 2, &w, &pol())
                    .map_err(|e| e.is_pole())
                    .err()
                    .unwrap_or(false)
            })
            .collect();
        assert_eq!(poles, vec![1, 2, 3]);
    }

    #[test]
    fn special_value_matches_limit() {
        let q = qp(0.5);
        for (r, w, m) in [(1, vec![1.0], 0usize), (2, vec![1.0, 1.0], 1)] {
            let w = Weights::new(w).unwrap();
            let sv = qzeta_special_value(r, q, m, c(1.0, 0.0), 1, &w).unwrap();
            let f = |h: f64| {
                let s = c(-(m as f64) + h, 0.0);
                qzeta_nu(r, q, s, c(1.0, 0.0), 1, &w, &pol()).unwrap().value
            };
            let d1 = 0.5 * (f(1e-3) + f(-1e-3));
            let d2 = 0.5 * (f(1e-4) + f(-1e-4));
            let extrapolated = (100.0 * d2 - d1) / 99.0;
            assert!((extrapolated - sv).norm() < 1e-6, "r = {r}, m = {m}");
        }
    }

    #[test]
    fn driving_fact_of_special_values() {
        let (q, om) = (qp(0.5), 1.3);
        for h in [1e-4, 1e-5] {
            let v = h / (1.0 - q.powf(om * h));
            assert!((v + 1.0 / (om * q.ln())).abs() < h);
        }
    }
}
