use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, ToPrimitive, Zero};

use super::poly::RationalPoly;
use super::QParam;
use crate::error::{Error, Result};

/// The brute-force composition sum refuses inputs with `n + r` above this.
pub const COMPOSITION_CAP: usize = 40;

/// Largest number of compositions the enumeration will visit.
const COMPOSITION_TERM_CAP: u64 = 20_000_000;

fn integer_poly(coeffs: Vec<BigInt>) -> RationalPoly {
    RationalPoly::from_coeffs(coeffs.into_iter().map(BigRational::from_integer).collect())
}

/// Gaussian binomial `[m choose n]_q` as an exact polynomial in q.
pub fn q_binomial_exact(m: i64, n: i64) -> Result<RationalPoly> {
    if m < 0 || n < 0 || n > m {
        return Err(Error::domain(
            "q_binomial_exact",
            format!("need 0 <= n <= m, got m = {m}, n = {n}"),
        ));
    }
    let (m, n) = (m as usize, n as usize);
    // row[k] holds [i choose k]_q while i sweeps 0..=m; Pascal:
    // [i, k] = [i-1, k-1] + q^k [i-1, k]
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=m {
        let top = i.min(n);
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let deg = k * (i - k);
            let mut c = vec![BigInt::zero(); deg + 1];
            if k >= 1 {
                for (d, v) in row[k - 1].iter().enumerate() {
                    c[d] += v;
                }
            }
            if k < row.len() && k < i {
                for (d, v) in row[k].iter().enumerate() {
                    c[d + k] += v;
                }
            }
            next.push(c);
        }
        row = next;
    }
    Ok(integer_poly(row.swap_remove(n)))
}

/// Unevaluated double-double `hi + lo`.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let e = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: e }
    }

    fn quick(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd {
            hi: s,
            lo: b - (s - a),
        }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        let t = Dd::two_sum(self.lo, o.lo);
        let u = Dd::quick(s.hi, s.lo + t.hi);
        Dd::quick(u.hi, u.lo + t.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Dd::quick(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Dd::new(-q1)));
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Dd::new(-q2)));
        let q3 = r.hi / o.hi;
        Dd::quick(q1, q2).add(Dd::new(q3))
    }
}

/// `[a]_q = 1 + q + ... + q^(a-1)` in double-double; every term is positive.
fn dd_q_integer(q: f64, a: usize) -> Dd {
    let qd = Dd::new(q);
    let mut pow = Dd::new(1.0);
    let mut acc = Dd::new(0.0);
    for _ in 0..a {
        acc = acc.add(pow);
        pow = pow.mul(qd);
    }
    acc
}

/// `[m choose n]_q` as the ratio product `prod_i [m-n+i]_q / [i]_q`.
pub fn q_binomial_eval(q: QParam, m: i64, n: i64) -> Result<f64> {
    if m < 0 || n < 0 || n > m {
        return Err(Error::domain(
            "q_binomial_eval",
            format!("need 0 <= n <= m, got m = {m}, n = {n}"),
        ));
    }
    let n = n.min(m - n) as usize;
    let m = m as usize;
    let q = q.value();
    let mut acc = Dd::new(1.0);
    for i in 1..=n {
        acc = acc.mul(dd_q_integer(q, m - n + i).div(dd_q_integer(q, i)));
    }
    Ok(acc.hi + acc.lo)
}

/// `sum_{d=0}^{l} [m-1+d choose m-1]_q q^d`.
pub fn q_vandermonde_sum(l: i64, m: i64) -> Result<RationalPoly> {
    if l < 0 || m < 1 {
        return Err(Error::domain(
            "q_vandermonde_sum",
            format!("need l >= 0 and m >= 1, got l = {l}, m = {m}"),
        ));
    }
    let mut acc = RationalPoly::zero();
    for d in 0..=l {
        acc = &acc + &q_binomial_exact(m - 1 + d, m - 1)?.shift(d as usize);
    }
    Ok(acc)
}

/// Sum of `q^(n_1 + 2 n_2 + ... + r n_r)` over compositions `n_1 + ... + n_r = n`,
/// by explicit enumeration.
pub fn q_composition_sum(n: i64, r: i64) -> Result<RationalPoly> {
    if n < 0 || r < 1 {
        return Err(Error::domain(
            "q_composition_sum",
            format!("need n >= 0 and r >= 1, got n = {n}, r = {r}"),
        ));
    }
    let (n, r) = (n as usize, r as usize);
    if n + r > COMPOSITION_CAP {
        return Err(Error::Capacity {
            what: "q_composition_sum (n + r)",
            index: n + r,
            limit: COMPOSITION_CAP,
        });
    }
    let count = binomial_u(n + r - 1, r - 1);
    if count > BigUint::from(COMPOSITION_TERM_CAP) {
        return Err(Error::Capacity {
            what: "q_composition_sum (compositions)",
            index: count.to_usize().unwrap_or(usize::MAX),
            limit: COMPOSITION_TERM_CAP as usize,
        });
    }
    let mut hist = vec![0u64; n * r + 1];
    enumerate(1, r, n, 0, &mut hist);
    Ok(integer_poly(hist.into_iter().map(BigInt::from).collect()))
}

fn enumerate(part: usize, r: usize, remaining: usize, weight: usize, hist: &mut [u64]) {
    if part == r {
        hist[weight + r * remaining] += 1;
        return;
    }
    for k in 0..=remaining {
        enumerate(part + 1, r, remaining - k, weight + part * k, hist);
    }
}

fn binomial_u(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
