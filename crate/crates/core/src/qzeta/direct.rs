use num_complex::Complex64;
use rayon::prelude::*;

use super::{q_number_pow_neg, q_power_bound, zero, Weights};
use crate::error::{Error, Result};
use crate::qnum::QParam;
use crate::types::{ComplexValue, EvalResult, Method, TruncationPolicy};

fn check_common(op: &'static str, r: usize, t: ComplexValue, z: ComplexValue) -> Result<()> {
    if r == 0 {
        return Err(Error::domain(op, "r must be at least 1"));
    }
    if t.re <= r as f64 - 1.0 {
        return Err(Error::domain(
            op,
            format!(
                "the series needs Re(t) > r - 1 = {}, got Re(t) = {}; use a continuation route",
                r - 1,
                t.re
            ),
        ));
    }
    if z.re <= 0.0 {
        return Err(Error::domain(op, format!("Re(z) = {} <= 0", z.re)));
    }
    Ok(())
}

/// Multi-index sum over the simplex `sum_i n_i a_i <= L`, `a_i = w_i (Re(t) - i + 1)`.
///
/// Outside the simplex `q^(sum n_i a_i) <= q^(theta L) q^((1-theta) sum n_i a_i)`,
/// so the tail is at most `B q^(theta L) / prod_i (1 - q^((1-theta) a_i))`, with
/// `B` bounding `|[x+z]_q^(-s)|`.
pub fn qzeta_direct(
    r: usize,
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    weights: &Weights,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    const OP: &str = "qzeta_direct";
    check_common(OP, r, t, z)?;
    if weights.r() != r {
        return Err(Error::domain(
            OP,
            format!("{} weights given for r = {r}", weights.r()),
        ));
    }
    let w = weights.as_slice();
    let lq = q.ln();
    let a: Vec<f64> = (0..r).map(|i| w[i] * (t.re - i as f64)).collect();
    let bmax = q_power_bound(q, s, z);

    let mut best: Option<(f64, f64)> = None;
    for k in 1..20 {
        let theta = k as f64 / 20.0;
        let log_prod: f64 = a
            .iter()
            .map(|ai| -(-(1.0 - theta) * ai * lq).exp_m1().abs().ln())
            .sum();
        // q^(theta L) * exp(log_prod) * bmax <= tol
        let l = ((policy.abs_tol / bmax).ln() - log_prod) / (theta * lq);
        if best.is_none_or(|(bl, _)| l < bl) {
            best = Some((l.max(0.0), theta));
        }
    }
    let (limit, theta) = best.unwrap_or((0.0, 0.5));
    // lattice points in the simplex, roughly; the enumeration is capped at
    // 1000 * max_terms points
    let factorial: f64 = (1..=r).map(|k| k as f64).product();
    let volume: f64 = a.iter().map(|ai| limit / ai + 1.0).product::<f64>() / factorial;
    if volume > policy.max_terms as f64 * 1e3 {
        return Err(Error::Convergence {
            op: OP,
            terms: policy.max_terms,
            bound: bmax,
        });
    }

    // exponent of q per unit step in each index: w_i (t - i + 1)
    let steps: Vec<Complex64> = (0..r).map(|i| w[i] * (t - i as f64)).collect();
    let first_max = (limit / a[0]).floor() as usize;
    let partial = (0..=first_max)
        .into_par_iter()
        .map(|n1| -> Result<(Complex64, usize)> {
            let mut acc = zero();
            let mut count = 0usize;
            let x = n1 as f64 * w[0];
            let e = steps[0] * n1 as f64;
            walk(
                1,
                &a,
                w,
                &steps,
                limit - n1 as f64 * a[0],
                x,
                e,
                &mut |x, e| {
                    let num = (e * lq).exp();
                    let den = q_number_pow_neg(OP, q, z + x, s)?;
                    acc += num * den;
                    count += 1;
                    Ok(())
                },
            )?;
            Ok((acc, count))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut value = zero();
    let mut terms = 0usize;
    for (v, c) in partial.iter().rev() {
        value += v;
        terms += c;
    }
    let tail = bmax
        * (theta * limit * lq).exp()
        * a.iter()
            .map(|ai| 1.0 / (-(-(1.0 - theta) * ai * lq).exp_m1()).abs())
            .product::<f64>();
    let err = tail + (terms as f64).sqrt() * 4.0 * f64::EPSILON * value.norm().max(bmax);
    Ok(EvalResult::new(value, err, Method::QZetaDirect))
}

#[allow(clippy::too_many_arguments)]
fn walk<F>(
    idx: usize,
    a: &[f64],
    w: &[f64],
    steps: &[Complex64],
    budget: f64,
    x: f64,
    e: Complex64,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(f64, Complex64) -> Result<()>,
{
    if idx == a.len() {
        return visit(x, e);
    }
    let top = (budget / a[idx]).floor().max(0.0) as usize;
    for n in 0..=top {
        walk(
            idx + 1,
            a,
            w,
            steps,
            budget - n as f64 * a[idx],
            x + n as f64 * w[idx],
            e + steps[idx] * n as f64,
            visit,
        )?;
    }
    Ok(())
}

/// Collapsed single sum `sum_n [n+r-1 choose r-1]_q q^(n(t-r+1)) / [n+z]_q^s`
/// (unit weights).
pub fn qzeta_qbinom(
    r: usize,
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    const OP: &str = "qzeta_qbinom";
    check_common(OP, r, t, z)?;
    let lq = q.ln();
    let shift = t - (r as f64 - 1.0);
    let decay = (shift.re * lq).exp();
    // [n+r-1 choose r-1]_q <= 1/(q;q)_{r-1}
    let cap: f64 = (1..r).map(|i| 1.0 / -(i as f64 * lq).exp_m1()).product();
    let bmax = q_power_bound(q, s, z);
    let denom_ok = |x: f64| x.is_finite() && x > 0.0;
    let mut value = zero();
    let mut n = 0usize;
    loop {
        let tail = cap * bmax * (n as f64 * shift.re * lq).exp() / (1.0 - decay);
        if n > 0 && (tail <= policy.abs_tol || !denom_ok(tail)) {
            let err = tail + (n as f64).sqrt() * 4.0 * f64::EPSILON * value.norm();
            return Ok(EvalResult::new(value, err, Method::QZetaQBinomial));
        }
        if n >= policy.max_terms {
            return Err(Error::Convergence {
                op: OP,
                terms: n,
                bound: tail,
            });
        }
        let nf = n as f64;
        let mut gauss = 1.0;
        for i in 1..r {
            gauss *= ((nf + i as f64) * lq).exp_m1() / (i as f64 * lq).exp_m1();
        }
        let num = (shift * (nf * lq)).exp();
        value += gauss * num * q_number_pow_neg(OP, q, z + nf, s)?;
        n += 1;
    }
}
