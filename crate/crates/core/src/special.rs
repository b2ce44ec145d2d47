//! Complex gamma and beta functions and the incomplete beta function
//! `b_w(a, b) = int_0^w u^(a-1) (1-u)^(b-1) du` with its continuation in `a`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qnum::{is_nonpositive_integer, rising_factorial};
use crate::quad;
use crate::types::{ComplexValue, EvalResult, Method, TruncationPolicy};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Denominators `(a)_l` closer than this to zero are reported as poles.
pub const POLE_GUARD: f64 = 1e-8;

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `log Gamma(z)` (some branch; `exp` of it is `Gamma(z)`).
pub fn ln_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if is_nonpositive_integer(z) {
        return Err(Error::pole("gamma", z, "nonpositive integer"));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    if is_nonpositive_integer(z) {
        return Err(Error::pole("gamma", z, "nonpositive integer"));
    }
    if z.re < 0.5 {
        Ok(PI / ((PI * z).sin() * gamma_right(1.0 - z)))
    } else {
        Ok(gamma_right(z))
    }
}

fn gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

pub fn beta(a: ComplexValue, b: ComplexValue) -> Result<ComplexValue> {
    Ok(gamma(a)? * gamma(b)? / gamma(a + b)?)
}

/// Arguments of `b_w(alpha, beta)`.
///
/// `log_w` fixes the branch of `w^alpha`; when `w = q^z` callers pass
/// `z ln q` so the powers follow `q^(z alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncompleteBetaArgs {
    pub w: ComplexValue,
    pub alpha: ComplexValue,
    pub beta: ComplexValue,
    pub log_w: ComplexValue,
}

impl IncompleteBetaArgs {
    pub fn new(w: ComplexValue, alpha: ComplexValue, beta: ComplexValue) -> Self {
        IncompleteBetaArgs {
            w,
            alpha,
            beta,
            log_w: w.ln(),
        }
    }

    pub fn from_log(log_w: ComplexValue, alpha: ComplexValue, beta: ComplexValue) -> Self {
        IncompleteBetaArgs {
            w: log_w.exp(),
            alpha,
            beta,
            log_w,
        }
    }

    fn check_w(&self, op: &'static str) -> Result<()> {
        let r = self.w.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::domain(op, format!("need 0 < |w| < 1, got w = {}", self.w)));
        }
        Ok(())
    }

    fn w_pow(&self, e: ComplexValue) -> ComplexValue {
        (e * self.log_w).exp()
    }
}

/// `b_w(alpha, beta)` by quadrature along the segment `0 -> w`, for `Re(alpha) > 0`.
pub fn incomplete_beta_direct(
    args: IncompleteBetaArgs,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    const OP: &str = "incomplete_beta_direct";
    args.check_w(OP)?;
    let IncompleteBetaArgs { w, alpha, beta, .. } = args;
    if alpha.re <= 0.0 {
        return Err(Error::domain(
            OP,
            format!("Re(alpha) = {} <= 0, use the continued route", alpha.re),
        ));
    }
    let bm1 = beta - 1.0;
    let prefactor = args.w_pow(alpha);
    // the integrand is at most |(1 - w v)^(beta-1)| ~ 1; scale the tolerance to
    // the prefactor so the absolute error lands near policy.quad_tol
    let tol = policy.quad_tol / prefactor.norm().max(1e-300);
    let q = if alpha.re < 1.0 {
        // v = tau^(1/a) removes the endpoint singularity
        let a = alpha.re;
        let phase = alpha.im / a;
        quad::integrate(
            |tau: f64| {
                if tau == 0.0 {
                    return Complex64::new(1.0 / a, 0.0);
                }
                let v = tau.powf(1.0 / a);
                let osc = Complex64::from_polar(1.0, phase * tau.ln());
                osc * ((1.0 - w * v).ln() * bm1).exp() / a
            },
            0.0,
            1.0,
            tol,
            policy.max_subdivisions,
        )
    } else {
        let am1 = alpha - 1.0;
        quad::integrate(
            |v: f64| {
                if v == 0.0 {
                    return if am1.norm() == 0.0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                }
                (am1 * v.ln() + bm1 * (1.0 - w * v).ln()).exp()
            },
            0.0,
            1.0,
            tol,
            policy.max_subdivisions,
        )
    };
    let value = prefactor * q.value;
    let err = prefactor.norm() * q.abs_err + value.norm() * 4.0 * f64::EPSILON;
    Ok(EvalResult::new(value, err, Method::IncompleteBetaDirect))
}

/// `b_w(alpha, beta)` continued to `Re(alpha) > 1 - n_prime` by `n_prime - 1`
/// integrations by parts.
pub fn incomplete_beta_continued(
    args: IncompleteBetaArgs,
    n_prime: usize,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    const OP: &str = "incomplete_beta_continued";
    args.check_w(OP)?;
    if n_prime < 2 {
        return Err(Error::domain(OP, format!("N' = {n_prime} < 2")));
    }
    let IncompleteBetaArgs { w, alpha, beta, .. } = args;
    if alpha.re <= 1.0 - n_prime as f64 {
        return Err(Error::domain(
            OP,
            format!("Re(alpha) = {} <= 1 - N' = {}", alpha.re, 1.0 - n_prime as f64),
        ));
    }
    for l in 0..n_prime {
        if (alpha + l as f64).norm() < POLE_GUARD {
            return Err(Error::pole(
                OP,
                alpha,
                format!("alpha + {l} vanishes within {POLE_GUARD:e}"),
            ));
        }
    }
    let one_minus_w = 1.0 - w;
    let log_1mw = one_minus_w.ln();
    let one_minus_beta = 1.0 - beta;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sign = 1.0;
    for l in 1..n_prime {
        let coeff = rising_factorial(one_minus_beta, l - 1) / rising_factorial(alpha, l);
        let term = args.w_pow(alpha + (l as f64 - 1.0)) * ((beta - l as f64) * log_1mw).exp();
        sum += sign * coeff * term;
        sign = -sign;
    }
    let shift = n_prime as f64 - 1.0;
    let tail_args = IncompleteBetaArgs {
        w,
        alpha: alpha + shift,
        beta: beta - shift,
        log_w: args.log_w,
    };
    let tail = incomplete_beta_direct(tail_args, policy)?;
    let coeff = sign * rising_factorial(one_minus_beta, n_prime - 1)
        / rising_factorial(alpha, n_prime - 1);
    let value = sum + coeff * tail.value;
    let err = coeff.norm() * tail.abs_err + sum.norm() * 8.0 * f64::EPSILON;
    Ok(EvalResult::new(value, err, Method::IncompleteBetaContinued))
}

/// Smallest `N'` that puts `alpha + N' - 1` in the direct region with margin.
pub fn continuation_depth(alpha: ComplexValue) -> usize {
    (2.0 - alpha.re).ceil().max(2.0) as usize
}

/// Direct route when `Re(alpha) >= 1`, continued route otherwise.
pub fn incomplete_beta(args: IncompleteBetaArgs, policy: &TruncationPolicy) -> Result<EvalResult> {
    if args.alpha.re >= 1.0 {
        incomplete_beta_direct(args, policy)
    } else {
        incomplete_beta_continued(args, continuation_depth(args.alpha), policy)
    }
}
