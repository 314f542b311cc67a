//! Exact binomials and factorials over arbitrary-precision integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, taken to be zero when `k < 0`, `k > n` or `n < 0`.
pub fn binom(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        // Each prefix product is itself a binomial, so the division is exact.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

#[cfg(test)]
mod tests {
    use super::*;

    // Pascal's rule as an independent oracle.
    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 1..=rows {
            let prev = &t[n - 1];
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn matches_pascal_triangle() {
        let t = pascal(130);
        for n in 0..=130i64 {
            for k in 0..=n {
                assert_eq!(binom(n, k), t[n as usize][k as usize], "C({n},{k})");
            }
        }
    }

    #[test]
    fn out_of_range_is_zero() {
        assert!(binom(3, 4).is_zero());
        assert!(binom(3, -1).is_zero());
        assert!(binom(-1, 0).is_zero());
    }

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(6), BigUint::from(720u32));
        assert_eq!(pow2(10), BigUint::from(1024u32));
    }
}
