//! The subgroup-counting function of the free abelian group of rank `ell`:
//! the number of its index-`n` subgroups, computed by two independent
//! algorithms.
//!
//! - [`g_table_by_recurrence`]: sieve iteration of the divisor convolution
//!   `g_ell(n) = sum_{d | n} d * g_{ell-1}(d)`, one layer per rank step.
//! - [`g_multiplicative`]: factorize and multiply the Gaussian-binomial
//!   closed form [`g_prime_power`] over prime powers.
//!
//! Both return exact integers; agreement of the two routes is a test target.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factorize, is_prime};
use crate::{Error, Result};

/// Table of `g_ell(1..=n_max)`, exact non-negative integers.
///
/// Values are immutable after construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSeries {
    ell: u32,
    values: Vec<BigUint>, // index 0 unused
}

impl GSeries {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `g_ell(n)` for `1 <= n <= n_max`.
    pub fn value(&self, n: usize) -> &BigUint {
        assert!(n >= 1 && n <= self.n_max(), "index {n} out of table range");
        &self.values[n]
    }

    /// Iterate `(n, g_ell(n))` for `n = 1..=n_max`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.values.iter().enumerate().skip(1)
    }
}

/// Build the table `g_ell(1..=n_max)` by iterating the divisor convolution
/// from the rank-0 base case (`1` at `n = 1`, else `0`).
///
/// Each layer is filled as a sieve: for every `d`, the term `d * g_prev(d)`
/// is added into all multiples of `d`.
pub fn g_table_by_recurrence(ell: u32, n_max: usize) -> Result<GSeries> {
    if n_max < 1 {
        return Err(Error::TooSmall {
            what: "n_max",
            min: 1,
            got: n_max as u64,
        });
    }
    let mut layer = vec![BigUint::zero(); n_max + 1];
    layer[1] = BigUint::one();
    for _ in 0..ell {
        let mut next = vec![BigUint::zero(); n_max + 1];
        for d in 1..=n_max {
            if layer[d].is_zero() {
                continue;
            }
            let term = &layer[d] * d;
            for multiple in (d..=n_max).step_by(d) {
                next[multiple] += &term;
            }
        }
        layer = next;
    }
    Ok(GSeries { ell, values: layer })
}

/// `g_ell(p^m)` by the Gaussian-binomial closed form
/// `prod_{i=0}^{m-1} (p^(ell+i) - 1) / prod_{i=1}^{m} (p^i - 1)`.
///
/// The division is exact; a nonzero remainder is an implementation bug and
/// panics.
pub fn g_prime_power(p: u64, m: u32, ell: u32) -> Result<BigUint> {
    if ell < 1 {
        return Err(Error::TooSmall {
            what: "ell",
            min: 1,
            got: ell as u64,
        });
    }
    if m < 1 {
        return Err(Error::TooSmall {
            what: "m",
            min: 1,
            got: m as u64,
        });
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let p = BigUint::from(p);
    let one = BigUint::one();
    let mut numerator = BigUint::one();
    for i in 0..m {
        numerator *= p.pow(ell + i) - &one;
    }
    let mut denominator = BigUint::one();
    for i in 1..=m {
        denominator *= p.pow(i) - &one;
    }
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "Gaussian binomial division left a remainder (p={p}, m={m}, ell={ell})"
    );
    Ok(q)
}

/// `g_ell(n)` via multiplicativity: factorize `n` and multiply the
/// prime-power values.
pub fn g_multiplicative(n: u64, ell: u32) -> Result<BigUint> {
    if ell < 1 {
        return Err(Error::TooSmall {
            what: "ell",
            min: 1,
            got: ell as u64,
        });
    }
    let fac = factorize(n)?;
    let mut acc = BigUint::one();
    for &(p, m) in &fac.factors {
        acc *= g_prime_power(p, m, ell)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sigma;

    #[test]
    fn rank_two_equals_divisor_sum() {
        let g = g_table_by_recurrence(2, 6).unwrap();
        let values: Vec<u64> = (1..=6).map(|n| sigma(n as u64).unwrap()).collect();
        assert_eq!(values, vec![1, 3, 4, 7, 6, 12]);
        for n in 1..=6 {
            assert_eq!(*g.value(n), BigUint::from(values[n - 1]));
        }
    }

    #[test]
    fn value_at_two_is_mersenne() {
        // g_ell(2) = 2^ell - 1
        let g = g_table_by_recurrence(3, 2).unwrap();
        assert_eq!(*g.value(2), BigUint::from(7u32));
        for ell in 1..=12u32 {
            let g = g_table_by_recurrence(ell, 2).unwrap();
            assert_eq!(*g.value(2), BigUint::from((1u64 << ell) - 1));
        }
    }

    #[test]
    fn value_at_one_is_one() {
        for ell in 0..=8 {
            let g = g_table_by_recurrence(ell, 5).unwrap();
            assert_eq!(*g.value(1), BigUint::one());
        }
    }

    #[test]
    fn rank_zero_table_is_delta() {
        let g = g_table_by_recurrence(0, 8).unwrap();
        assert_eq!(*g.value(1), BigUint::one());
        for n in 2..=8 {
            assert!(g.value(n).is_zero());
        }
    }

    #[test]
    fn rank_one_is_constant_one() {
        let g = g_table_by_recurrence(1, 50).unwrap();
        for n in 1..=50 {
            assert_eq!(*g.value(n), BigUint::one());
        }
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(g_prime_power(2, 1, 3).unwrap(), BigUint::from(7u32));
        assert_eq!(g_prime_power(2, 2, 3).unwrap(), BigUint::from(35u32));
        for (p, m) in [(2u64, 1u32), (3, 2), (5, 3), (7, 1)] {
            assert_eq!(g_prime_power(p, m, 1).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn prime_power_rejects_bad_input() {
        assert!(g_prime_power(4, 1, 2).is_err());
        assert!(g_prime_power(2, 0, 2).is_err());
        assert!(g_prime_power(2, 1, 0).is_err());
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(g_multiplicative(1, 5).unwrap(), BigUint::one());
        assert_eq!(g_multiplicative(4, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(g_multiplicative(6, 3).unwrap(), BigUint::from(91u32));
    }

    #[test]
    fn two_algorithms_agree_small() {
        for ell in 1..=6u32 {
            let table = g_table_by_recurrence(ell, 200).unwrap();
            for n in 1..=200usize {
                assert_eq!(
                    *table.value(n),
                    g_multiplicative(n as u64, ell).unwrap(),
                    "ell={ell}, n={n}"
                );
            }
        }
    }

    #[test]
    fn growth_sandwich_small() {
        // n^(ell-1) <= g_ell(n) <= n^ell <= sigma(n) * n^(ell-1) for ell >= 2
        for ell in 2..=5u32 {
            let table = g_table_by_recurrence(ell, 100).unwrap();
            for n in 1..=100usize {
                let nb = BigUint::from(n);
                let lo = nb.pow(ell - 1);
                let mid = nb.pow(ell);
                let hi = BigUint::from(sigma(n as u64).unwrap()) * nb.pow(ell - 1);
                let g = table.value(n);
                assert!(lo <= *g, "lower bound fails at ell={ell}, n={n}");
                assert!(*g <= mid, "middle bound fails at ell={ell}, n={n}");
                assert!(mid <= hi, "sigma bound fails at ell={ell}, n={n}");
            }
        }
    }
}
