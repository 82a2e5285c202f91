//! Partition numbers via Euler's pentagonal-number recurrence, plus an
//! exhaustive partition visitor used by the desk-scale oracles.

use num_bigint::BigUint;
use num_traits::One;

/// Exact table of partition numbers `p(0..=n_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSeries {
    values: Vec<BigUint>,
}

impl PartitionSeries {
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// Compute `p(0..=n_max)` by the pentagonal-number recurrence
/// `p(n) = sum_{k>=1} (-1)^(k+1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
pub fn partition_table(n_max: usize) -> PartitionSeries {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(BigUint::one());
    for n in 1..=n_max {
        let mut positive = BigUint::ZERO;
        let mut negative = BigUint::ZERO;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            if k % 2 == 1 {
                positive += &values[n - g1];
                if g2 <= n {
                    positive += &values[n - g2];
                }
            } else {
                negative += &values[n - g1];
                if g2 <= n {
                    negative += &values[n - g2];
                }
            }
            k += 1;
        }
        // p(n) is non-negative, so the signed sum never dips below zero here.
        values.push(positive - negative);
    }
    PartitionSeries { values }
}

/// Call `visit` once per partition of `n`, presented as the multiplicity
/// list `[(part, count)]` with parts strictly decreasing.
///
/// `n = 0` yields the single empty partition.
pub fn for_each_partition<F: FnMut(&[(usize, u32)])>(n: usize, mut visit: F) {
    let mut stack: Vec<(usize, u32)> = Vec::new();
    descend(n, n, &mut stack, &mut visit);
}

fn descend<F: FnMut(&[(usize, u32)])>(
    remaining: usize,
    max_part: usize,
    stack: &mut Vec<(usize, u32)>,
    visit: &mut F,
) {
    if remaining == 0 {
        visit(stack);
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        let max_count = (remaining / part) as u32;
        for count in (1..=max_count).rev() {
            stack.push((part, count));
            descend(remaining - part * count as usize, part - 1, stack, visit);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let p = partition_table(25);
        let expected: [u32; 11] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(*p.value(n), BigUint::from(*e), "p({n})");
        }
        assert_eq!(*p.value(20), BigUint::from(627u32));
        assert_eq!(*p.value(25), BigUint::from(1958u32));
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        // Independent oracle: count partitions explicitly.
        let p = partition_table(30);
        for n in 0..=30 {
            let mut count = 0u64;
            for_each_partition(n, |_| count += 1);
            assert_eq!(*p.value(n), BigUint::from(count), "p({n})");
        }
    }

    #[test]
    fn visitor_yields_valid_partitions() {
        for_each_partition(9, |parts| {
            let total: usize = parts.iter().map(|&(j, c)| j * c as usize).sum();
            assert_eq!(total, 9);
            for w in parts.windows(2) {
                assert!(w[0].0 > w[1].0);
            }
        });
    }

    #[test]
    fn zero_has_one_empty_partition() {
        let mut seen = 0;
        for_each_partition(0, |parts| {
            assert!(parts.is_empty());
            seen += 1;
        });
        assert_eq!(seen, 1);
    }
}
