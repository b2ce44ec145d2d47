use std::f64::consts::PI;

use num_complex::Complex64;

use super::{q_number_pow_neg, zero};
use crate::error::{Error, Result};
use crate::qnum::{bernoulli_f64, rising_factorial, QParam};
use crate::quad::{gauss_weight, kronrod_nodes};
use crate::special::{incomplete_beta, IncompleteBetaArgs};
use crate::types::{ComplexValue, EvalResult, Method, TruncationPolicy};

/// Distance to a zero of a `(delta n + t)_l` factor reported as a pole.
pub const POLE_GUARD: f64 = 1e-6;

/// Euler-Maclaurin depth `N`, continuation depth `M` and Fourier cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationParams {
    pub n: usize,
    pub m: usize,
    pub n_max: usize,
    pub policy: TruncationPolicy,
}

impl Default for ContinuationParams {
    fn default() -> Self {
        ContinuationParams {
            n: 1,
            m: 4,
            n_max: 50,
            policy: TruncationPolicy::default(),
        }
    }
}

impl ContinuationParams {
    pub fn new(n: usize, m: usize, n_max: usize) -> Result<Self> {
        let cp = ContinuationParams {
            n,
            m,
            n_max,
            ..Default::default()
        };
        cp.validate()?;
        Ok(cp)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 1 || self.m < self.n + 1 || self.n_max < 1 {
            return Err(Error::Config(format!(
                "need N >= 1, M >= N + 1, n_max >= 1 (got N = {}, M = {}, n_max = {})",
                self.n, self.m, self.n_max
            )));
        }
        Ok(())
    }
}

/// `b^e_j(s)` and `c^e_k(s, t)` evaluated at fixed `s, t`.
///
/// `d^j/dx^j (1 - q^(x+z))^(-s) = (ln q)^j sum_e b^e_j(s) (1 - q^(x+z))^(-s-e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeibnizCoeffs {
    k: usize,
    b: Vec<Vec<ComplexValue>>,
    c: Vec<Vec<ComplexValue>>,
}

impl LeibnizCoeffs {
    pub fn max_order(&self) -> usize {
        self.k
    }

    /// `b^e_j(s)`, zero outside `0 <= e <= j`.
    pub fn b(&self, e: usize, j: usize) -> ComplexValue {
        self.b
            .get(j)
            .and_then(|row| row.get(e))
            .copied()
            .unwrap_or_else(zero)
    }

    /// `c^e_k(s, t)`, zero outside `0 <= e <= k`.
    pub fn c(&self, e: usize, k: usize) -> ComplexValue {
        self.c
            .get(k)
            .and_then(|row| row.get(e))
            .copied()
            .unwrap_or_else(zero)
    }
}

/// Builds `b` from `b^e_{j+1} = (s+e-1) b^{e-1}_j - (s+e) b^e_j`, `b^0_0 = 1`,
/// and `c^e_k = sum_{j=e}^k binom(k, j) t^(k-j) b^e_j`.
pub fn leibniz_coeffs(s: ComplexValue, t: ComplexValue, k: usize) -> LeibnizCoeffs {
    let mut b: Vec<Vec<ComplexValue>> = vec![vec![Complex64::new(1.0, 0.0)]];
    for j in 0..k {
        let prev = &b[j];
        let mut row = vec![zero(); j + 2];
        for (e, slot) in row.iter_mut().enumerate() {
            let ef = e as f64;
            let mut v = zero();
            if e >= 1 {
                v += (s + ef - 1.0) * prev[e - 1];
            }
            if e <= j {
                v -= (s + ef) * prev[e];
            }
            *slot = v;
        }
        b.push(row);
    }
    let mut c = Vec::with_capacity(k + 1);
    for kk in 0..=k {
        let mut row = vec![zero(); kk + 1];
        for (e, slot) in row.iter_mut().enumerate() {
            let mut binom = 1.0; // binom(kk, j) starting at j = kk, walking down
            let mut acc = zero();
            for j in (e..=kk).rev() {
                acc += binom * t.powu((kk - j) as u32) * b[j][e];
                binom = binom * j as f64 / (kk - j + 1) as f64;
            }
            *slot = acc;
        }
        c.push(row);
    }
    LeibnizCoeffs { k, b, c }
}

/// The five pieces of the Euler-Maclaurin continuation of `zeta_q(s, t, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmParts {
    /// `-q^(-zt) (1-q)^s / ln q * b_{q^z}(t, 1-s)`.
    pub lead: EvalResult,
    /// `[z]_q^(-s) / 2`.
    pub half: ComplexValue,
    pub d1: ComplexValue,
    pub d2: EvalResult,
    pub d3: EvalResult,
}

impl EmParts {
    pub fn total(&self) -> EvalResult {
        let value = self.lead.value + self.half + self.d1 + self.d2.value + self.d3.value;
        let rounding = 16.0
            * f64::EPSILON
            * (self.lead.value.norm()
                + self.half.norm()
                + self.d1.norm()
                + self.d2.value.norm()
                + self.d3.value.norm());
        let err = self.lead.abs_err + self.d2.abs_err + self.d3.abs_err + rounding;
        EvalResult::new(value, err, Method::QZetaEulerMaclaurin)
    }
}

struct Setup {
    q: QParam,
    lq: f64,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    delta: ComplexValue,
}

impl Setup {
    fn new(q: QParam, s: ComplexValue, t: ComplexValue, z: ComplexValue) -> Result<Self> {
        if z.re <= 0.0 {
            return Err(Error::domain("qzeta1_em", format!("Re(z) = {} <= 0", z.re)));
        }
        let lq = q.ln();
        Ok(Setup {
            q,
            lq,
            s,
            t,
            z,
            delta: Complex64::new(0.0, 2.0 * PI / lq),
        })
    }

    /// `(delta n + t)_l`, refusing to come within the guard of a zero.
    fn poch(&self, n: i64, l: usize) -> Result<ComplexValue> {
        let x = self.delta * n as f64 + self.t;
        for i in 0..l {
            if (x + i as f64).norm() < POLE_GUARD {
                return Err(Error::pole(
                    "qzeta1_em",
                    self.t,
                    format!("t = -{i} - delta * {n} is a zero of (delta n + t)_{l}"),
                ));
            }
        }
        Ok(rising_factorial(x, l))
    }

    fn qz_pow(&self, e: ComplexValue) -> Result<ComplexValue> {
        q_number_pow_neg("qzeta1_em", self.q, self.z, e)
    }
}

/// `D^1_q(s, t, z; N)`.
pub fn dterm_d1(
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    n: usize,
) -> Result<ComplexValue> {
    let st = Setup::new(q, s, t, z)?;
    d1(&st, &leibniz_coeffs(s, t, n + 1), n)
}

fn d1(st: &Setup, lc: &LeibnizCoeffs, n: usize) -> Result<ComplexValue> {
    let one_minus_q = 1.0 - st.q.value();
    let mut acc = zero();
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= (k + 1) as f64;
        let b = bernoulli_f64(k + 1)?;
        if b == 0.0 {
            continue;
        }
        let lqk = st.lq.powi(k as i32);
        for e in 0..=k {
            acc -= b / fact * lc.c(e, k) * st.qz_pow(st.s + e as f64)? * lqk
                / one_minus_q.powi(e as i32);
        }
    }
    Ok(acc)
}

/// `D^2_q(s, t, z; N, M)` with the Fourier sum cut at `|n| <= n_max`.
pub fn dterm_d2(
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    cp: &ContinuationParams,
) -> Result<EvalResult> {
    cp.validate()?;
    let st = Setup::new(q, s, t, z)?;
    d2(&st, &leibniz_coeffs(s, t, cp.n + 1), cp)
}

fn d2(st: &Setup, lc: &LeibnizCoeffs, cp: &ContinuationParams) -> Result<EvalResult> {
    let (nn, mm) = (cp.n, cp.m);
    let one_minus_q = 1.0 - st.q.value();
    let lqn = st.lq.powi(nn as i32);
    // everything except the n-dependence, indexed by (e, l)
    let mut weights: Vec<(usize, ComplexValue)> = Vec::new();
    for e in 0..=nn + 1 {
        let ce = lc.c(e, nn + 1);
        if ce.norm() == 0.0 {
            continue;
        }
        for l in 1..=mm - nn {
            let sign = if (nn + l - 1) % 2 == 0 { 1.0 } else { -1.0 };
            let w = sign
                * ce
                * rising_factorial(st.s + e as f64, l - 1)
                * (st.z * ((l as f64 - 1.0) * st.lq)).exp()
                / one_minus_q.powi(l as i32)
                * st.qz_pow(st.s + e as f64 - 1.0 + l as f64)?
                * lqn
                / one_minus_q.powi(e as i32 - 1);
            weights.push((l, w));
        }
    }
    let pair = |n: i64| -> Result<ComplexValue> {
        let mut acc = zero();
        for sgn in [1i64, -1] {
            let nn_ = sgn * n;
            let fourier = Complex64::new(0.0, 2.0 * PI * nn_ as f64).powu(nn as u32 + 1).inv();
            let mut inner = zero();
            for (l, w) in &weights {
                inner += w / st.poch(nn_, *l)?;
            }
            acc += fourier * inner;
        }
        Ok(acc)
    };
    let mut value = zero();
    let mut last = zero();
    for n in (1..=cp.n_max as i64).rev() {
        let p = pair(n)?;
        if n == cp.n_max as i64 {
            last = p;
        }
        value += p;
    }
    let tail = last.norm() * cp.n_max as f64 / (nn as f64 + 1.0);
    Ok(EvalResult::new(value, tail, Method::QZetaEulerMaclaurin))
}

fn d3(st: &Setup, lc: &LeibnizCoeffs, cp: &ContinuationParams) -> Result<EvalResult> {
    let (nn, mm) = (cp.n, cp.m);
    let k = mm - nn;
    let kf = k as f64;
    let decay = st.t.re + kf;
    if decay <= 0.0 {
        return Err(Error::Config(format!(
            "Re(t) + M - N = {decay} <= 0: outside the continuation region"
        )));
    }
    let one_minus_q = 1.0 - st.q.value();
    let units = (35.0 / (decay * st.lq.abs())).ceil() as usize;
    // one K15 panel per oscillation of the fastest Fourier mode
    let panels = cp.n_max;
    let h = 1.0 / panels as f64;
    let mut ys = Vec::with_capacity(panels * 15);
    let mut wk = Vec::with_capacity(panels * 15);
    let mut wd = Vec::with_capacity(panels * 15);
    for p in 0..panels {
        let (a, b) = (p as f64 * h, (p + 1) as f64 * h);
        for (idx, (y, w)) in kronrod_nodes(a, b).iter().enumerate() {
            ys.push(*y);
            wk.push(*w);
            wd.push(*w - gauss_weight(a, b, idx));
        }
    }

    // F(y) = sum_{0 < |n| <= n_max} e^(2 pi i n y) / ((2 pi i n)^(N+1) (delta n + t)_{M-N}),
    // periodic, so the integral over [0, X] reuses it on every unit interval
    let mut coef = Vec::with_capacity(2 * cp.n_max);
    for n in 1..=cp.n_max as i64 {
        for sgn in [1i64, -1] {
            let nn_ = sgn * n;
            let a = Complex64::new(0.0, 2.0 * PI * nn_ as f64).powu(nn as u32 + 1) * st.poch(nn_, k)?;
            coef.push((nn_, a.inv()));
        }
    }
    let f: Vec<ComplexValue> = ys
        .iter()
        .map(|&y| {
            coef.iter()
                .map(|(n, a)| a * Complex64::from_polar(1.0, 2.0 * PI * *n as f64 * y))
                .sum()
        })
        .collect();
    let a_last = coef[coef.len() - 2].1.norm() + coef[coef.len() - 1].1.norm();

    let sign = if (mm + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mut total = zero();
    let mut err = 0.0;
    let mut tail = 0.0;
    for e in 0..=nn + 1 {
        let ce = lc.c(e, nn + 1);
        if ce.norm() == 0.0 {
            continue;
        }
        let expo = -(st.s + e as f64 + kf);
        let g = |x: f64| -> ComplexValue {
            let base = st.q.one_minus_pow(st.z + x) / one_minus_q;
            ((st.t + kf) * (x * st.lq) + expo * base.ln()).exp()
        };
        let common = sign
            * ce
            * rising_factorial(st.s + e as f64, k)
            * (st.z * (kf * st.lq)).exp()
            / one_minus_q.powi(k as i32)
            * st.lq.powi(nn as i32 + 1)
            / one_minus_q.powi(e as i32);
        let mut integral = zero();
        let mut qerr = 0.0;
        for j in 0..units {
            let jf = j as f64;
            for p in 0..panels {
                let mut kr = zero();
                let mut dr = zero();
                for i in p * 15..(p + 1) * 15 {
                    let v = g(jf + ys[i]) * f[i];
                    kr += wk[i] * v;
                    dr += wd[i] * v;
                }
                integral += kr;
                qerr += dr.norm();
            }
        }
        total += common * integral;
        err += common.norm() * qerr;
        // |int_0^inf g e^(2 pi i n x) dx| ~ |g(0)| / (2 pi n) for the dropped modes
        tail += common.norm() * g(0.0).norm() * a_last / (2.0 * PI)
            / (nn + 1 + k) as f64;
    }
    Ok(EvalResult::new(total, err + tail, Method::QZetaEulerMaclaurin))
}

fn lead(st: &Setup, policy: &TruncationPolicy) -> Result<EvalResult> {
    let args = IncompleteBetaArgs::from_log(st.z * st.lq, st.t, 1.0 - st.s);
    let b = incomplete_beta(args, policy)?;
    let factor = -(-st.z * st.t * st.lq).exp() * (st.s * (-st.q.value()).ln_1p()).exp() / st.lq;
    Ok(b.scale(factor).with_method(Method::QZetaEulerMaclaurin))
}

/// All five pieces of the continuation at one point.
pub fn em_parts(
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    cp: &ContinuationParams,
) -> Result<EmParts> {
    cp.validate()?;
    let st = Setup::new(q, s, t, z)?;
    if t.re <= cp.n as f64 - cp.m as f64 {
        return Err(Error::Config(format!(
            "Re(t) = {} <= N - M = {}: outside the continuation region",
            t.re,
            cp.n as f64 - cp.m as f64
        )));
    }
    for i in 0..=(cp.m - cp.n) {
        if (t + i as f64).norm() < POLE_GUARD {
            return Err(Error::pole(
                "qzeta1_em",
                t,
                format!("t = -{i} is a pole of the incomplete beta term"),
            ));
        }
    }
    let lc = leibniz_coeffs(s, t, cp.n + 1);
    Ok(EmParts {
        lead: lead(&st, &cp.policy)?,
        half: 0.5 * st.qz_pow(s)?,
        d1: d1(&st, &lc, cp.n)?,
        d2: d2(&st, &lc, cp)?,
        d3: d3(&st, &lc, cp)?,
    })
}

/// Euler-Maclaurin continuation of `zeta_q(s, t, z)` to `Re(t) > N - M`.
pub fn qzeta1_em(
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    cp: &ContinuationParams,
) -> Result<EvalResult> {
    Ok(em_parts(q, s, t, z, cp)?.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qzeta::{qzeta_binomial_ac, qzeta_direct, Weights};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qp(q: f64) -> QParam {
        QParam::new(q).unwrap()
    }

    #[test]
    fn leibniz_first_entries() {
        let s = c(0.7, -1.2);
        let lc = leibniz_coeffs(s, c(0.3, 0.0), 6);
        assert_eq!(lc.b(0, 0), c(1.0, 0.0));
        assert!((lc.b(1, 1) - s).norm() < 1e-15);
        assert!((lc.b(0, 1) + s).norm() < 1e-15);
        for k in 0..=6 {
            assert!((lc.c(k, k) - rising_factorial(s, k)).norm() < 1e-12 * (1.0 + rising_factorial(s, k).norm()));
        }
        assert_eq!(lc.b(3, 2), zero());
    }

    #[test]
    fn leibniz_matches_finite_differences() {
        // d^j/dx^j (1 - q^(x+z))^(-s) against (ln q)^j sum_e b^e_j (1-q^(x+z))^(-s-e)
        let (q, z, s, x0) = (0.6f64, 0.8, c(1.3, 0.5), 0.4);
        let lq = q.ln();
        let f = |x: f64| (1.0 - q.powf(x + z)).ln() * -s;
        let f = |x: f64| f(x).exp();
        let lc = leibniz_coeffs(s, c(0.0, 0.0), 4);
        let stencil = |j: usize, h: f64| -> Complex64 {
            // central differences of order j
            let mut acc = zero();
            let mut binom = 1.0;
            for i in 0..=j {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * binom * f(x0 + (j as f64 / 2.0 - i as f64) * h);
                binom = binom * (j - i) as f64 / (i + 1) as f64;
            }
            acc / h.powi(j as i32)
        };
        for j in 1..=4usize {
            let u = 1.0 - q.powf(x0 + z);
            let want: Complex64 = (0..=j)
                .map(|e| lc.b(e, j) * (-(s + e as f64) * u.ln()).exp())
                .sum::<Complex64>()
                * lq.powi(j as i32);
            let h = 2e-2;
            let rich = (4.0 * stencil(j, h / 2.0) - stencil(j, h)) / 3.0;
            assert!((rich - want).norm() < 1e-6 * want.norm().max(1.0), "j = {j}");
        }
    }

    #[test]
    fn overlaps_direct_series() {
        let cp = ContinuationParams::new(1, 4, 50).unwrap();
        let q = qp(0.5);
        let (s, t, z) = (c(2.0, 0.0), c(1.5, 0.0), c(1.0, 0.0));
        let em = qzeta1_em(q, s, t, z, &cp).unwrap();
        let d = qzeta_direct(1, q, s, t, z, &Weights::ones(1), &cp.policy).unwrap();
        assert!((em.value - d.value).norm() < 1e-6, "{} vs {}", em.value, d.value);
    }

    #[test]
    fn continued_region_matches_binomial() {
        let cp = ContinuationParams::new(1, 4, 50).unwrap();
        let q = qp(0.5);
        let (s, t, z) = (c(2.0, 0.0), c(-0.5, 0.0), c(1.0, 0.0));
        let em = qzeta1_em(q, s, t, z, &cp).unwrap();
        let b = qzeta_binomial_ac(1, q, s, t, z, &Weights::ones(1), &cp.policy).unwrap();
        assert!((em.value - b.value).norm() < 1e-6, "{} vs {}", em.value, b.value);
    }

    #[test]
    fn s_zero_reduces_to_geometric_series() {
        let cp = ContinuationParams::default();
        let q = qp(0.7);
        let t = c(2.0, 0.0);
        let em = qzeta1_em(q, c(0.0, 0.0), t, c(1.0, 0.0), &cp).unwrap();
        assert!((em.value - 1.0 / q.one_minus_pow(t)).norm() < 1e-6);
    }

    #[test]
    fn config_and_pole_errors() {
        assert!(ContinuationParams::new(2, 2, 10).is_err());
        let cp = ContinuationParams::default();
        let q = qp(0.5);
        assert!(matches!(
            qzeta1_em(q, c(1.0, 0.0), c(-3.5, 0.0), c(1.0, 0.0), &cp),
            Err(Error::Config(_))
        ));
        assert!(qzeta1_em(q, c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), &cp)
            .unwrap_err()
            .is_pole());
    }
}
