//! Classical targets: the Hurwitz zeta function continued by Euler-Maclaurin
//! summation and the Barnes zeta function `zeta_r(s, z)` with unit weights.

use std::f64::consts::PI;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qnum::{
    bernoulli_f64, bernoulli_poly_coeffs, is_nonpositive_integer, principal_pow_neg,
    rising_factorial, StirlingTable,
};
use crate::quad;
use crate::types::{ComplexValue, EvalResult, Method, TruncationPolicy};

/// Distance in `s` below which a pole is reported.
pub const POLE_GUARD: f64 = 1e-8;

/// Euler-Maclaurin depth, tail cutoff and tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EMConfig {
    pub m: usize,
    /// Largest `X` for the remainder integral over `[0, X]`.
    pub quad_cutoff: f64,
    pub policy: TruncationPolicy,
}

impl Default for EMConfig {
    fn default() -> Self {
        EMConfig {
            m: 10,
            quad_cutoff: 4096.0,
            policy: TruncationPolicy::default(),
        }
    }
}

impl EMConfig {
    pub fn with_depth(m: usize) -> Self {
        EMConfig {
            m,
            ..EMConfig::default()
        }
    }
}

fn check_pole_at_one(op: &'static str, s: ComplexValue, detail: &str) -> Result<()> {
    if (s - 1.0).norm() < POLE_GUARD {
        return Err(Error::pole(op, s, detail.to_string()));
    }
    Ok(())
}

/// `sum_{n>=0} (n+z)^(-s)` for `Re(s) > 1`: a partial sum plus the
/// Euler-Maclaurin tail through `B_2`.
pub fn hurwitz_direct(
    s: ComplexValue,
    z: ComplexValue,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    const OP: &str = "hurwitz_direct";
    if s.re <= 1.0 {
        return Err(Error::domain(
            OP,
            format!("Re(s) = {} <= 1, use hurwitz_em", s.re),
        ));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Singular {
            op: OP,
            detail: format!("z = {z} is a nonpositive integer"),
        });
    }
    let growth = (s.im.abs() * PI / 2.0).exp();
    let mut n = 16usize.max((-z.re).ceil().max(0.0) as usize + 16);
    loop {
        let base = z + n as f64;
        let bound = 2.0 * (s * (s + 1.0) * (s + 2.0)).norm() / 720.0
            * base.norm().powf(-s.re - 3.0)
            * growth;
        if bound <= policy.abs_tol || 2 * n > policy.max_terms {
            let mut sum = Complex64::new(0.0, 0.0);
            for k in (0..n).rev() {
                sum += principal_pow_neg(OP, z + k as f64, s)?;
            }
            let tail = (-(s - 1.0) * base.ln()).exp() / (s - 1.0)
                + 0.5 * (-s * base.ln()).exp()
                + s / 12.0 * (-(s + 1.0) * base.ln()).exp();
            let value = sum + tail;
            if bound > policy.abs_tol {
                return Err(Error::Convergence {
                    op: OP,
                    terms: n,
                    bound,
                });
            }
            let err = bound + n as f64 * f64::EPSILON * value.norm();
            return Ok(EvalResult::new(value, err, Method::HurwitzDirect));
        }
        n *= 2;
    }
}

/// `sup_x |B~_p(x)| <= 2 zeta(p) p! / (2 pi)^p` for `p >= 2`.
fn periodic_bernoulli_bound(p: usize) -> f64 {
    if p <= 1 {
        return 0.5;
    }
    let fact: f64 = (1..=p).map(|k| k as f64).product();
    let zeta = if p == 2 { PI * PI / 6.0 } else { 1.21 };
    2.0 * zeta * fact / (2.0 * PI).powi(p as i32)
}

/// The Euler-Maclaurin remainder
/// `-(s)_{M+1}/(M+1)! int_0^inf B~_{M+1}(x) (x+z)^(-s-M-1) dx`, integrated
/// one unit interval at a time.
pub fn em_remainder(s: ComplexValue, z: ComplexValue, cfg: &EMConfig) -> Result<EvalResult> {
    const OP: &str = "em_remainder";
    if z.re <= 0.0 {
        return Err(Error::domain(OP, format!("Re(z) = {} <= 0", z.re)));
    }
    let m = cfg.m;
    if s.re <= -(m as f64) {
        return Err(Error::Config(format!(
            "Euler-Maclaurin depth M = {m} needs Re(s) > -M, got Re(s) = {}",
            s.re
        )));
    }
    let p = m + 1;
    let fact: f64 = (1..=p).map(|k| k as f64).product();
    let prefactor = -rising_factorial(s, p) / fact;
    if prefactor.norm() == 0.0 {
        return Ok(EvalResult::new(Complex64::new(0.0, 0.0), 0.0, Method::HurwitzEulerMaclaurin));
    }
    let expo = -(s + p as f64);
    let sigma = -expo.re;
    let bmax = periodic_bernoulli_bound(p);
    // |arg(x+z)| <= |arg z| for x >= 0
    let growth = (expo.im.abs() * z.arg().abs()).exp();
    let scale = prefactor.norm() * bmax * growth;
    let tol = cfg.policy.quad_tol;
    // tail past X bounded by scale * (X + Re z)^(1-sigma)/(sigma-1)
    let x_needed = (scale / ((sigma - 1.0) * 0.25 * tol)).powf(1.0 / (sigma - 1.0)) - z.re;
    let x_end = x_needed.ceil().clamp(1.0, cfg.quad_cutoff.max(1.0));
    let tail_bound = scale * (x_end + z.re).powf(1.0 - sigma) / (sigma - 1.0);

    let coeffs: Vec<f64> = bernoulli_poly_coeffs(p)?
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let bpoly = |y: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c);
    let intervals = x_end as usize;
    let per_tol = 0.5 * tol / prefactor.norm() / intervals as f64;
    let mut integral = Complex64::new(0.0, 0.0);
    let mut qerr = 0.0;
    for j in 0..intervals {
        let j = j as f64;
        let q = quad::integrate(
            |x: f64| bpoly(x - j) * (expo * (z + x).ln()).exp(),
            j,
            j + 1.0,
            per_tol,
            cfg.policy.max_subdivisions,
        );
        integral += q.value;
        qerr += q.abs_err;
    }
    let value = prefactor * integral;
    let err = prefactor.norm() * qerr + tail_bound + 8.0 * f64::EPSILON * value.norm();
    Ok(EvalResult::new(value, err, Method::HurwitzEulerMaclaurin))
}

/// Closed part of the Euler-Maclaurin continuation:
/// `z^(1-s)/(s-1) + z^(-s)/2 + sum_{k=1}^M B_{k+1}/(k+1)! (s)_k z^(-s-k)`.
pub fn em_main_terms(s: ComplexValue, z: ComplexValue, m: usize) -> Result<ComplexValue> {
    let lz = z.ln();
    let mut acc = (-(s - 1.0) * lz).exp() / (s - 1.0) + 0.5 * (-s * lz).exp();
    let mut fact = 1.0;
    for k in 1..=m {
        fact *= (k + 1) as f64;
        let b = bernoulli_f64(k + 1)?;
        if b != 0.0 {
            acc += b / fact * rising_factorial(s, k) * (-(s + k as f64) * lz).exp();
        }
    }
    Ok(acc)
}

/// Hurwitz zeta continued to `Re(s) > -M`. Inputs with `Re(z) < 1` are first
/// moved right with `zeta(s, z) = z^(-s) + zeta(s, z+1)`, which keeps the
/// Bernoulli terms small.
pub fn hurwitz_em(s: ComplexValue, z: ComplexValue, cfg: &EMConfig) -> Result<EvalResult> {
    const OP: &str = "hurwitz_em";
    if z.re <= 0.0 {
        return Err(Error::domain(OP, format!("Re(z) = {} <= 0", z.re)));
    }
    check_pole_at_one(OP, s, "simple pole of the Hurwitz zeta function, residue 1")?;
    if s.re <= -(cfg.m as f64) {
        return Err(Error::Config(format!(
            "Euler-Maclaurin depth M = {} needs Re(s) > -M, got Re(s) = {}",
            cfg.m, s.re
        )));
    }
    let mut head = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 1.0 {
        head += (-s * w.ln()).exp();
        w += 1.0;
    }
    let main = em_main_terms(s, w, cfg.m)?;
    let rem = em_remainder(s, w, cfg)?;
    let value = head + main + rem.value;
    let err = rem.abs_err + 16.0 * f64::EPSILON * (head.norm() + main.norm());
    Ok(EvalResult::new(value, err, Method::HurwitzEulerMaclaurin))
}

/// The polynomials `P^l_r(z)`, `0 <= l < r`, with
/// `sum_l P^l_r(z) (n+z)^l = binom(n+r-1, r-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BarnesPolys {
    r: usize,
    /// `coeffs[l]` lists the coefficients of `P^l_r` in ascending powers of z.
    coeffs: Vec<Vec<BigRational>>,
}

impl BarnesPolys {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self, l: usize) -> &[BigRational] {
        &self.coeffs[l]
    }

    pub fn eval(&self, l: usize, z: ComplexValue) -> ComplexValue {
        self.coeffs[l]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + c.to_f64().unwrap_or(f64::NAN)
            })
    }

    /// Exact value of `P^l_r` at a rational point.
    pub fn eval_exact(&self, l: usize, z: &BigRational) -> BigRational {
        self.coeffs[l]
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * z + c)
    }
}

pub fn barnes_polys(r: usize) -> Result<BarnesPolys> {
    if r == 0 {
        return Err(Error::domain("barnes_polys", "r = 0"));
    }
    let stirling = StirlingTable::new(r);
    let fact: BigInt = (1..r).map(BigInt::from).product();
    let inv_fact = BigRational::new(BigInt::one(), fact);
    let mut coeffs = Vec::with_capacity(r);
    for l in 0..r {
        let mut c = vec![BigRational::zero(); r - l];
        let mut binom = BigInt::one(); // binom(j, l), starting at j = l
        for j in l..r {
            let k = j - l;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let s = stirling.get(r, j + 1)?;
            c[k] = BigRational::from_integer(BigInt::from(sign) * &binom * s) * &inv_fact;
            binom = binom * BigInt::from(j + 1) / BigInt::from(j + 1 - l);
        }
        coeffs.push(c);
    }
    Ok(BarnesPolys { r, coeffs })
}

fn level_config(cfgs: &[EMConfig], l: usize) -> EMConfig {
    cfgs.get(l)
        .or_else(|| cfgs.last())
        .copied()
        .unwrap_or_default()
}

/// `zeta_r(s, z) = sum_l P^l_r(z) zeta(s-l, z)`, with the ladder
/// `zeta_r(s, z) = zeta_r(s, z+1) + zeta_{r-1}(s, z)` for `Re(z) <= 0`.
pub fn barnes_zeta(
    r: usize,
    s: ComplexValue,
    z: ComplexValue,
    cfgs: &[EMConfig],
) -> Result<EvalResult> {
    const OP: &str = "barnes_zeta";
    if r == 0 {
        return principal_pow_neg(OP, z, s)
            .map(|v| EvalResult::new(v, 4.0 * f64::EPSILON * v.norm(), Method::BarnesLadder));
    }
    for l in 0..r {
        if (s - l as f64 - 1.0).norm() < POLE_GUARD {
            return Err(Error::pole(
                OP,
                s,
                format!("level l = {l}: zeta(s - {l}, z) has its pole at s = {}", l + 1),
            ));
        }
    }
    if z.re > 0.0 {
        return barnes_stirling(r, s, z, cfgs);
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Singular {
            op: OP,
            detail: format!("z = {z} is a nonpositive integer"),
        });
    }
    let upper = barnes_zeta(r, s, z + 1.0, cfgs)?;
    let lower = barnes_zeta(r - 1, s, z, cfgs)?;
    Ok(EvalResult::new(
        upper.value + lower.value,
        upper.abs_err + lower.abs_err,
        Method::BarnesLadder,
    ))
}

fn barnes_stirling(
    r: usize,
    s: ComplexValue,
    z: ComplexValue,
    cfgs: &[EMConfig],
) -> Result<EvalResult> {
    let polys = barnes_polys(r)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for l in 0..r {
        let p = polys.eval(l, z);
        let h = hurwitz_em(s - l as f64, z, &level_config(cfgs, l))?;
        value += p * h.value;
        err += p.norm() * h.abs_err + 4.0 * f64::EPSILON * (p * h.value).norm();
    }
    Ok(EvalResult::new(value, err, Method::BarnesStirling))
}

/// `zeta_1(s, z; omega) = omega^(-s) zeta(s, z/omega)`.
pub fn barnes_r1_scaled(
    s: ComplexValue,
    z: ComplexValue,
    omega: f64,
    cfg: &EMConfig,
) -> Result<EvalResult> {
    if omega.is_nan() || omega <= 0.0 {
        return Err(Error::domain(
            "barnes_r1_scaled",
            format!("omega = {omega} must be positive"),
        ));
    }
    let factor = (-s * omega.ln()).exp();
    Ok(hurwitz_em(s, z / omega, cfg)?
        .scale(factor)
        .with_method(Method::BarnesScaled))
}
