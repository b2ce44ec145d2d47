use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Unsigned Stirling numbers of the first kind, `(x)_l = sum_j s(l, j) x^j`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Rows `0..=max_l` via `s(l+1, j) = s(l, j-1) + l s(l, j)`.
    pub fn new(max_l: usize) -> Self {
        let mut rows = vec![vec![BigInt::one()]];
        for l in 0..max_l {
            let prev = &rows[l];
            let mut row = vec![BigInt::zero(); l + 2];
            for j in 0..=l + 1 {
                let mut v = BigInt::zero();
                if j >= 1 {
                    v += &prev[j - 1];
                }
                if j <= l {
                    v += BigInt::from(l) * &prev[j];
                }
                row[j] = v;
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn max_l(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, l: usize, j: usize) -> Result<&BigInt> {
        if j > l {
            return Err(Error::domain("stirling_first", format!("j = {j} > l = {l}")));
        }
        self.rows
            .get(l)
            .map(|row| &row[j])
            .ok_or(Error::Capacity {
                what: "stirling_first",
                index: l,
                limit: self.max_l(),
            })
    }

    pub fn row(&self, l: usize) -> Option<&[BigInt]> {
        self.rows.get(l).map(Vec::as_slice)
    }
}

pub fn stirling_first(l: i64, j: i64) -> Result<BigInt> {
    if l < 0 || j < 0 || j > l {
        return Err(Error::domain(
            "stirling_first",
            format!("need 0 <= j <= l, got l = {l}, j = {j}"),
        ));
    }
    StirlingTable::new(l as usize)
        .get(l as usize, j as usize)
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(stirling_first(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(stirling_first(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(stirling_first(3, 1).unwrap(), BigInt::from(2));
        assert_eq!(stirling_first(0, 0).unwrap(), BigInt::from(1));
        assert!(stirling_first(2, 3).is_err());
        assert!(stirling_first(-1, 0).is_err());
    }

    #[test]
    fn row_sums_are_factorials() {
        let table = StirlingTable::new(12);
        let mut fact = BigInt::one();
        for l in 0..=12usize {
            if l > 0 {
                fact *= BigInt::from(l);
                assert!(table.get(l, 0).unwrap().is_zero());
            }
            assert_eq!(table.get(l, l).unwrap(), &BigInt::one());
            let sum: BigInt = table.row(l).unwrap().iter().sum();
            assert_eq!(sum, fact);
        }
    }

    #[test]
    fn expands_rising_factorial_exactly() {
        let table = StirlingTable::new(10);
        for l in 0..=10usize {
            for x in -5i64..=5 {
                let lhs: BigInt = (0..=l)
                    .map(|j| table.get(l, j).unwrap() * BigInt::from(x).pow(j as u32))
                    .sum();
                let rhs: BigInt = (0..l as i64).map(|i| BigInt::from(x + i)).product();
                assert_eq!(lhs, rhs, "l = {l}, x = {x}");
            }
        }
    }
}
