//! Elementary integer utilities: divisor enumeration, the divisor-sum
//! function, and factorization by trial division.

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, Result};

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, m)| p.pow(m))
            .product::<u64>()
            .max(1)
    }
}

/// Factorize `n` by trial division up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "n",
            min: 1,
            got: 0,
        });
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut m = 0u32;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            factors.push((p, m));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// Returns true if `n` is prime (trial division).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// All divisors of `n`, sorted ascending. Rejects `n = 0`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let fac = factorize(n)?;
    let mut divs = vec![1u64];
    for &(p, m) in &fac.factors {
        let prev = divs.clone();
        let mut pk = 1u64;
        for _ in 0..m {
            pk *= p;
            divs.extend(prev.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Divisor sum `sigma(n)`. Rejects `n = 0`.
pub fn sigma(n: u64) -> Result<u64> {
    Ok(divisors(n)?.iter().sum())
}

/// `k!` as an exact integer.
pub fn factorial(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=k {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_of_one() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
    }

    #[test]
    fn divisors_against_trial_division() {
        // Independent oracle: test every candidate d <= n.
        for n in 1..=200u64 {
            let expected: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n).unwrap(), expected, "n = {n}");
        }
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
    }

    #[test]
    fn divisors_rejects_zero() {
        assert!(divisors(0).is_err());
        assert!(sigma(0).is_err());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1).unwrap(), 1);
        assert_eq!(sigma(2).unwrap(), 3);
        assert_eq!(sigma(6).unwrap(), 12);
    }

    #[test]
    fn factorization_roundtrip() {
        for n in 1..=2000u64 {
            let fac = factorize(n).unwrap();
            assert_eq!(fac.product(), n);
            for &(p, _) in &fac.factors {
                assert!(is_prime(p), "{p} not prime in factorization of {n}");
            }
            for w in fac.factors.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
        }
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(3, 2), BigUint::from(3u32));
        assert_eq!(binomial(7, 3), BigUint::from(35u32));
        assert_eq!(binomial(4, 0), BigUint::from(1u32));
        assert_eq!(binomial(4, 5), BigUint::ZERO);
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigUint::from(1u32));
        assert_eq!(factorial(6), BigUint::from(720u32));
    }
}
