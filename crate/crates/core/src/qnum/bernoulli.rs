use std::f64::consts::PI;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest Bernoulli index served by the shared table.
pub const BERNOULLI_CAP: usize = 64;

/// Exact Bernoulli numbers `B_0..=B_K` with `B_1 = -1/2`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Builds `B_0..=B_cap` from `sum_{j<=k} binom(k+1, j) B_j = 0`.
    pub fn new(cap: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(cap + 1);
        values.push(BigRational::one());
        for k in 1..=cap {
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * b;
                binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
            }
            // binom now equals binom(k+1, k)
            values.push(-acc / BigRational::from_integer(binom));
        }
        BernoulliTable { values }
    }

    pub fn cap(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Result<&BigRational> {
        self.values.get(k).ok_or(Error::Capacity {
            what: "bernoulli_number",
            index: k,
            limit: self.cap(),
        })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Shared table up to [`BERNOULLI_CAP`], built on first use.
    pub fn shared() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(BERNOULLI_CAP))
    }
}

pub fn bernoulli_number(k: usize) -> Result<BigRational> {
    BernoulliTable::shared().get(k).cloned()
}

pub fn bernoulli_f64(k: usize) -> Result<f64> {
    static FLOATS: OnceLock<Vec<f64>> = OnceLock::new();
    let table = FLOATS.get_or_init(|| {
        BernoulliTable::shared()
            .values()
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN))
            .collect()
    });
    table.get(k).copied().ok_or(Error::Capacity {
        what: "bernoulli_number",
        index: k,
        limit: BERNOULLI_CAP,
    })
}

/// Coefficients of `B_m(y) = sum_k binom(m, k) B_k y^(m-k)` in ascending powers of y.
pub fn bernoulli_poly_coeffs(m: usize) -> Result<Vec<BigRational>> {
    let table = BernoulliTable::shared();
    let mut out = vec![BigRational::zero(); m + 1];
    let mut binom = BigInt::one();
    for k in 0..=m {
        out[m - k] = BigRational::from_integer(binom.clone()) * table.get(k)?;
        binom = binom * BigInt::from(m - k) / BigInt::from(k + 1);
    }
    Ok(out)
}

fn poly_f64(m: usize) -> Result<Vec<f64>> {
    Ok(bernoulli_poly_coeffs(m)?
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect())
}

/// `B~_m(x) = B_m(x - floor(x))`.
pub fn periodic_bernoulli(m: usize, x: f64) -> Result<f64> {
    let y = x - x.floor();
    let coeffs = poly_f64(m)?;
    Ok(coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c))
}

/// Truncated Fourier series `-m! sum_{0<|n|<=n_max} e^{2 pi i n x} / (2 pi i n)^m`.
pub fn periodic_bernoulli_fourier(m: usize, x: f64, n_max: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::domain(
            "periodic_bernoulli_fourier",
            format!("m = {m} < 2"),
        ));
    }
    if n_max == 0 {
        return Err(Error::domain("periodic_bernoulli_fourier", "n_max = 0"));
    }
    let factorial: f64 = (1..=m).map(|k| k as f64).product();
    let y = x - x.floor();
    let mut acc = 0.0;
    for n in (1..=n_max).rev() {
        let w = Complex64::new(0.0, 2.0 * PI * n as f64);
        let phase = Complex64::from_polar(1.0, 2.0 * PI * n as f64 * y);
        // n and -n are complex conjugates of each other
        acc += 2.0 * (phase / w.powu(m as u32)).re;
    }
    Ok(-factorial * acc)
}
