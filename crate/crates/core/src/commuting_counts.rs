//! Normalized counts of pairwise-commuting permutation tuples.
//!
//! `N_ell(n)` is the number of `ell`-tuples of pairwise-commuting elements of
//! the symmetric group on `n` points, divided by `n!`. Three exact routes are
//! implemented:
//!
//! - [`n_table`]: the divisor-convolution recurrence
//!   `N_ell(n) = (1/n) * sum_{k=1}^{n} g_ell(k) N_ell(n-k)`, integer-only for
//!   `ell >= 1` with the division-by-`n` exactness asserted at every step;
//! - [`n_value_by_partition_sum`]: the expanded exponential-formula sum over
//!   partitions, in exact rationals;
//! - [`orbifold_polynomial`]: the degree-`n` polynomial whose value at `1`
//!   is `N_ell(n)`, from the generating function
//!   `exp(x * sum_m g_ell(m) t^m / m)`.
//!
//! For `ell = 0` the series is `1/n!` and entries are kept as exact
//! rationals; for `ell >= 1` every entry is a positive integer.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::factorial;
use crate::partitions::for_each_partition;
use crate::subgroup_growth::GSeries;
use crate::{Error, Result};

fn ratio(numer: BigUint, denom: BigUint) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Backing storage for an [`NSeries`]: integers for `ell >= 1`, rationals
/// for `ell = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NValues {
    Integers(Vec<BigUint>),
    Rationals(Vec<BigRational>),
}

/// Table of `N_ell(0..=n_max)`, exact, immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSeries {
    ell: u32,
    values: NValues,
}

impl NSeries {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn n_max(&self) -> usize {
        match &self.values {
            NValues::Integers(v) => v.len() - 1,
            NValues::Rationals(v) => v.len() - 1,
        }
    }

    /// Integer entry, available when `ell >= 1`.
    pub fn integer(&self, n: usize) -> Option<&BigUint> {
        match &self.values {
            NValues::Integers(v) => v.get(n),
            NValues::Rationals(_) => None,
        }
    }

    /// Entry as an exact rational, for any `ell`.
    pub fn rational(&self, n: usize) -> Result<BigRational> {
        if n > self.n_max() {
            return Err(Error::OutOfRange {
                n,
                n_max: self.n_max(),
            });
        }
        Ok(match &self.values {
            NValues::Integers(v) => BigRational::from(BigInt::from(v[n].clone())),
            NValues::Rationals(v) => v[n].clone(),
        })
    }

    pub fn values(&self) -> &NValues {
        &self.values
    }
}

/// Build `N_ell(0..=n_max)` from a matching [`GSeries`] by the
/// divisor-convolution recurrence, with `N_ell(0) = 1`.
///
/// For `ell >= 1` the running sum must be divisible by `n` at every step; a
/// remainder means the table or the recurrence is wrong and panics.
pub fn n_table(ell: u32, n_max: usize, g: &GSeries) -> Result<NSeries> {
    if g.ell() != ell {
        return Err(Error::SeriesMismatch(format!(
            "subgroup table has ell = {}, requested {ell}",
            g.ell()
        )));
    }
    if g.n_max() < n_max {
        return Err(Error::SeriesMismatch(format!(
            "subgroup table covers 1..={}, need 1..={n_max}",
            g.n_max()
        )));
    }
    if ell == 0 {
        // g_0 is 1 at n = 1 only, so N_0(n) = N_0(n-1)/n = 1/n!.
        let mut values = vec![BigRational::one()];
        for n in 1..=n_max {
            let prev = values[n - 1].clone();
            values.push(prev / BigRational::from(BigInt::from(n)));
        }
        return Ok(NSeries {
            ell,
            values: NValues::Rationals(values),
        });
    }
    let mut values = vec![BigUint::one()];
    for n in 1..=n_max {
        let mut acc = BigUint::zero();
        for k in 1..=n {
            acc += g.value(k) * &values[n - k];
        }
        let (q, r) = acc.div_rem(&BigUint::from(n));
        assert!(
            r.is_zero(),
            "convolution sum not divisible by n (ell={ell}, n={n})"
        );
        values.push(q);
    }
    Ok(NSeries {
        ell,
        values: NValues::Integers(values),
    })
}

/// Convenience: build the subgroup table and the count table together.
pub fn n_series(ell: u32, n_max: usize) -> Result<NSeries> {
    let g = crate::subgroup_growth::g_table_by_recurrence(ell, n_max.max(1))?;
    n_table(ell, n_max, &g)
}

/// `N_ell(n)` by the expanded exponential formula: a sum over ordered
/// compositions of `n`, grouped by underlying partition with the multinomial
/// weight, in exact rationals.
///
/// For a partition with multiplicities `c_j` of part `j` the grouped term is
/// `prod_j (g_ell(j)/j)^(c_j) / c_j!`, which sums the `k!/prod c_j!` ordered
/// arrangements at weight `1/k!` each.
pub fn n_value_by_partition_sum(ell: u32, n: usize, g: &GSeries) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::TooSmall {
            what: "n",
            min: 1,
            got: n as u64,
        });
    }
    if g.ell() != ell {
        return Err(Error::SeriesMismatch(format!(
            "subgroup table has ell = {}, requested {ell}",
            g.ell()
        )));
    }
    if g.n_max() < n {
        return Err(Error::SeriesMismatch(format!(
            "subgroup table covers 1..={}, need 1..={n}",
            g.n_max()
        )));
    }
    let mut total = BigRational::zero();
    for_each_partition(n, |parts| {
        let mut term = BigRational::one();
        for &(j, c) in parts {
            let base = ratio(g.value(j).clone(), BigUint::from(j));
            let mut power = BigRational::one();
            for _ in 0..c {
                power *= &base;
            }
            term *= power / BigRational::from(BigInt::from(factorial(c as u64)));
        }
        total += term;
    });
    Ok(total)
}

/// Degree-`n` polynomial in the marker variable with exact rational
/// coefficients; its value at `1` is `N_ell(n)` and its leading coefficient
/// is `1/n!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldPolynomial {
    pub ell: u32,
    pub n: usize,
    /// Coefficient of `x^k` at index `k`; length `n + 1`.
    pub coeffs: Vec<BigRational>,
}

impl OrbifoldPolynomial {
    /// Evaluate at an exact rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at `1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.coeffs.iter().sum()
    }
}

/// Extract the coefficient of `t^n` in `exp(x * sum_m g_ell(m) t^m / m)` as
/// a polynomial in `x`.
///
/// Differentiating the generating function in `t` gives the polynomial
/// recurrence `P_n(x) = (x/n) * sum_{k=1}^{n} g_ell(k) P_{n-k}(x)`, the
/// polynomial refinement of the scalar recurrence in [`n_table`].
pub fn orbifold_polynomial(ell: u32, n: usize, g: &GSeries) -> Result<OrbifoldPolynomial> {
    Ok(orbifold_polynomials_upto(ell, n, g)?
        .pop()
        .expect("non-empty by construction"))
}

/// All coefficient polynomials up to degree `n_max` in one pass. The
/// recurrence builds every lower-degree polynomial anyway, so batch callers
/// should use this instead of extracting one degree at a time.
pub fn orbifold_polynomials_upto(
    ell: u32,
    n_max: usize,
    g: &GSeries,
) -> Result<Vec<OrbifoldPolynomial>> {
    if g.ell() != ell {
        return Err(Error::SeriesMismatch(format!(
            "subgroup table has ell = {}, requested {ell}",
            g.ell()
        )));
    }
    if n_max > 0 && g.n_max() < n_max {
        return Err(Error::SeriesMismatch(format!(
            "subgroup table covers 1..={}, need 1..={n_max}",
            g.n_max()
        )));
    }
    let mut polys: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for m in 1..=n_max {
        let mut sum = vec![BigRational::zero(); m]; // degree m-1 before the x shift
        for k in 1..=m {
            let gk = BigRational::from(BigInt::from(g.value(k).clone()));
            for (i, c) in polys[m - k].iter().enumerate() {
                sum[i] += c * &gk;
            }
        }
        let inv_m = BigRational::new(BigInt::one(), BigInt::from(m));
        let mut coeffs = vec![BigRational::zero(); m + 1];
        for (i, c) in sum.into_iter().enumerate() {
            coeffs[i + 1] = c * &inv_m;
        }
        polys.push(coeffs);
    }
    Ok(polys
        .into_iter()
        .enumerate()
        .map(|(n, coeffs)| OrbifoldPolynomial { ell, n, coeffs })
        .collect())
}

/// The explicit lower-bound function for `N_ell(n)`, `ell >= 2`, split by
/// `n mod 3`.
///
/// The `n = 1` case falls in the `n == 1 (mod 3)` branch whose formula needs
/// `n >= 4`; it is rejected.
pub fn a_lower_bound(ell: u32, n: usize) -> Result<BigRational> {
    if ell < 2 {
        return Err(Error::TooSmall {
            what: "ell",
            min: 2,
            got: ell as u64,
        });
    }
    if n < 1 {
        return Err(Error::TooSmall {
            what: "n",
            min: 1,
            got: 0,
        });
    }
    let e = ell - 2;
    match n % 3 {
        0 => {
            let third = (n / 3) as u64;
            let numer = BigUint::from(3u32).pow(e * third as u32);
            Ok(ratio(numer, factorial(third)))
        }
        1 => {
            if n < 4 {
                return Err(Error::InvalidArgument(
                    "lower bound is undefined at n = 1 (its branch needs n >= 4)".into(),
                ));
            }
            let third = ((n - 4) / 3) as u64;
            let base = BigUint::from(4u32) * BigUint::from(3u32).pow(third as u32);
            let numer = BigUint::from(3u32) * base.pow(e);
            let denom = BigUint::from(2u32) * factorial(third);
            Ok(ratio(numer, denom))
        }
        _ => {
            let third = ((n - 2) / 3) as u64;
            let base = BigUint::from(2u32) * BigUint::from(3u32).pow(third as u32);
            Ok(ratio(base.pow(e), factorial(third)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partition_table;
    use crate::subgroup_growth::g_table_by_recurrence;
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rank_two_is_partition_numbers() {
        let series = n_series(2, 5).unwrap();
        let expected = [1u32, 1, 2, 3, 5, 7];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(*series.integer(n).unwrap(), BigUint::from(*e));
        }
    }

    #[test]
    fn value_at_two_is_power_of_two() {
        for ell in 1..=20u32 {
            let series = n_series(ell, 2).unwrap();
            assert_eq!(
                *series.integer(2).unwrap(),
                BigUint::from(2u32).pow(ell - 1),
                "ell={ell}"
            );
        }
    }

    #[test]
    fn rank_three_at_three() {
        let series = n_series(3, 3).unwrap();
        assert_eq!(*series.integer(3).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn rank_zero_is_inverse_factorials() {
        let series = n_series(0, 6).unwrap();
        assert_eq!(series.rational(3).unwrap(), rat(1, 6));
        for n in 0..=6u64 {
            assert_eq!(
                series.rational(n as usize).unwrap(),
                BigRational::new(BigInt::one(), BigInt::from(factorial(n)))
            );
        }
    }

    #[test]
    fn ratio_at_index_two_by_rank() {
        // N(1) N(3) / N(2)^2: 2/3 at rank 0, 1 at rank 1, and below 1 from
        // rank 2 on (the discriminant at index 2 is positive there)
        for ell in 0..=8u32 {
            let s = n_series(ell, 3).unwrap();
            let ratio = s.rational(1).unwrap() * s.rational(3).unwrap()
                / (s.rational(2).unwrap() * s.rational(2).unwrap());
            match ell {
                0 => assert_eq!(ratio, rat(2, 3)),
                1 => assert_eq!(ratio, rat(1, 1)),
                _ => assert!(ratio < rat(1, 1), "ell={ell}"),
            }
        }
    }

    #[test]
    fn rank_one_is_constant_one() {
        let series = n_series(1, 40).unwrap();
        for n in 0..=40 {
            assert_eq!(*series.integer(n).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn partition_sum_matches_table() {
        let g = g_table_by_recurrence(2, 4).unwrap();
        assert_eq!(
            n_value_by_partition_sum(2, 4, &g).unwrap(),
            rat(5, 1) // p(4)
        );
        for ell in 1..=4u32 {
            let g = g_table_by_recurrence(ell, 1).unwrap();
            assert_eq!(n_value_by_partition_sum(ell, 1, &g).unwrap(), rat(1, 1));
        }
        let g = g_table_by_recurrence(3, 3).unwrap();
        // compositions {3}, {1,2}, {2,1}, {1,1,1}: 13/3 + 7/2 + 1/6 = 8
        assert_eq!(n_value_by_partition_sum(3, 3, &g).unwrap(), rat(8, 1));
    }

    #[test]
    fn polynomial_degree_zero_is_one() {
        let g = g_table_by_recurrence(4, 1).unwrap();
        let p = orbifold_polynomial(4, 0, &g).unwrap();
        assert_eq!(p.coeffs, vec![BigRational::one()]);
    }

    #[test]
    fn polynomial_rank_two_degree_two() {
        // exp(x t + (3/2) x t^2) to order t^2: coefficient (3/2)x + (1/2)x^2
        let g = g_table_by_recurrence(2, 2).unwrap();
        let p = orbifold_polynomial(2, 2, &g).unwrap();
        assert_eq!(p.coeffs, vec![rat(0, 1), rat(3, 2), rat(1, 2)]);
    }

    #[test]
    fn polynomial_value_at_one_and_leading_coefficient() {
        for ell in 0..=4u32 {
            let n_max = 12;
            let g = g_table_by_recurrence(ell, n_max).unwrap();
            let series = n_table(ell, n_max, &g).unwrap();
            for n in 0..=n_max {
                let p = orbifold_polynomial(ell, n, &g).unwrap();
                assert_eq!(p.coeffs.len(), n + 1);
                assert_eq!(
                    p.eval_at_one(),
                    series.rational(n).unwrap(),
                    "ell={ell}, n={n}"
                );
                if n > 0 {
                    assert_eq!(
                        p.coeffs[n],
                        BigRational::new(BigInt::one(), BigInt::from(factorial(n as u64))),
                        "leading coefficient at ell={ell}, n={n}"
                    );
                    assert!(!p.coeffs[n].is_zero());
                }
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(a_lower_bound(2, 3).unwrap(), rat(1, 1));
        // direct evaluation of the n == 2 (mod 3) branch at ell=3, n=5
        assert_eq!(a_lower_bound(3, 5).unwrap(), rat(6, 1));
        assert!(a_lower_bound(2, 1).is_err());
        assert!(a_lower_bound(1, 3).is_err());
    }

    #[test]
    fn lower_bound_below_series() {
        let p = partition_table(30);
        for ell in 2..=5u32 {
            let series = n_series(ell, 30).unwrap();
            for n in 2..=30 {
                let a = a_lower_bound(ell, n).unwrap();
                let v = series.rational(n).unwrap();
                assert!(a <= v, "A bound exceeds N at ell={ell}, n={n}");
                assert!(v.is_integer());
                assert!(v.numer().is_positive());
                let _ = p;
            }
        }
    }
}
