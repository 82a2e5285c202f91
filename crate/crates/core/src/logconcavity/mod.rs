//! The log-concavity discriminant of the commuting-tuple counts, exception
//! scanning, classification, and fixed-rank patterns.
//!
//! The discriminant of the double sequence at position `n` for rank `ell` is
//! `N_ell(n)^2 - N_ell(n-1) * N_ell(n+1)`; a pair `(n, ell)` with a strictly
//! negative discriminant is an exception. Zero counts as log-concave.
//!
//! All sign decisions compare exact integers (or exact rationals for
//! `ell = 0`). The discriminant is a difference of nearly equal numbers with
//! hundreds of digits, which is exactly where floating point breaks down, so
//! there is no approximate prescreen of any kind.

mod checkpoint;
pub mod render;

pub use checkpoint::CheckpointFile;

use std::cmp::Ordering;
use std::path::Path;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::ThresholdBound;
use crate::commuting_counts::{n_series, NSeries, NValues};
use crate::{Error, Result};

/// Exact sign of a discriminant value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    /// Compact one-character form used in JSON dumps and checkpoints.
    pub fn to_char(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Negative),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Positive),
            _ => None,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

fn check_delta_range(series: &NSeries, n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::TooSmall {
            what: "n",
            min: 1,
            got: n as u64,
        });
    }
    if n + 1 > series.n_max() {
        return Err(Error::OutOfRange {
            n: n + 1,
            n_max: series.n_max(),
        });
    }
    Ok(())
}

/// Exact discriminant `N_ell(n)^2 - N_ell(n-1) * N_ell(n+1)`.
///
/// An integer for `ell >= 1` (returned with denominator one), a rational for
/// `ell = 0`. The series must cover `0..=n+1`.
pub fn delta(series: &NSeries, n: usize) -> Result<BigRational> {
    check_delta_range(series, n)?;
    let mid = series.rational(n)?;
    let left = series.rational(n - 1)?;
    let right = series.rational(n + 1)?;
    Ok(&mid * &mid - left * right)
}

/// Sign of the discriminant without forming the difference: the two products
/// are compared directly.
pub fn delta_sign(series: &NSeries, n: usize) -> Result<Sign> {
    check_delta_range(series, n)?;
    let ordering = match series.values() {
        NValues::Integers(v) => (&v[n] * &v[n]).cmp(&(&v[n - 1] * &v[n + 1])),
        NValues::Rationals(v) => (&v[n] * &v[n]).cmp(&(&v[n - 1] * &v[n + 1])),
    };
    Ok(match ordering {
        Ordering::Less => Sign::Negative,
        Ordering::Equal => Sign::Zero,
        Ordering::Greater => Sign::Positive,
    })
}

/// Sign of the discriminant at `(n, ell)`, building the needed series.
pub fn delta_sign_at(ell: u32, n: usize) -> Result<Sign> {
    let series = n_series(ell, n + 1)?;
    delta_sign(&series, n)
}

/// One scanned column: discriminant signs for a fixed rank over an index
/// interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignColumn {
    pub ell: u32,
    pub n_lo: usize,
    pub n_hi: usize,
    pub signs: Vec<Sign>,
}

impl SignColumn {
    pub fn sign(&self, n: usize) -> Sign {
        self.signs[n - self.n_lo]
    }

    /// Indices with a strictly negative discriminant.
    pub fn exceptions(&self) -> Vec<usize> {
        (self.n_lo..=self.n_hi)
            .filter(|&n| self.sign(n).is_negative())
            .collect()
    }
}

/// Compute one column: signs of the discriminant at `n_lo..=n_hi` for a
/// fixed `ell`. Builds the count series up to `n_hi + 1` once and reuses it
/// for the whole column.
pub fn sign_column(ell: u32, n_lo: usize, n_hi: usize) -> Result<SignColumn> {
    if n_lo < 1 || n_lo > n_hi {
        return Err(Error::InvalidArgument(format!(
            "empty or invalid index range {n_lo}..={n_hi}"
        )));
    }
    let series = n_series(ell, n_hi + 1)?;
    let signs = (n_lo..=n_hi)
        .map(|n| delta_sign(&series, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignColumn {
        ell,
        n_lo,
        n_hi,
        signs,
    })
}

/// A requested column of work for [`scan_columns`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnRequest {
    pub ell: u32,
    pub n_lo: usize,
    pub n_hi: usize,
}

/// Scan many columns in parallel, optionally resuming from and appending to
/// a checkpoint file. Results come back in request order regardless of the
/// worker count.
///
/// Columns are independent work units; each completed column is written to
/// the checkpoint before the scan moves on, so an interrupted scan restarts
/// from the last finished column.
pub fn scan_columns(
    requests: &[ColumnRequest],
    checkpoint_path: Option<&Path>,
) -> Result<Vec<SignColumn>> {
    let checkpoint = match checkpoint_path {
        Some(path) => Some(std::sync::Mutex::new(CheckpointFile::load_or_new(path)?)),
        None => None,
    };
    let columns: Vec<Result<SignColumn>> = requests
        .par_iter()
        .map(|req| {
            if let Some(store) = &checkpoint {
                let cached = store
                    .lock()
                    .expect("checkpoint lock poisoned")
                    .lookup(req.ell, req.n_lo, req.n_hi);
                if let Some(col) = cached {
                    return Ok(col);
                }
            }
            let col = sign_column(req.ell, req.n_lo, req.n_hi)?;
            if let Some(store) = &checkpoint {
                let mut store = store.lock().expect("checkpoint lock poisoned");
                store.insert(&col);
                store.save()?;
            }
            Ok(col)
        })
        .collect();
    columns.into_iter().collect()
}

/// Sign matrix of the discriminant over a rectangle of `(n, ell)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionGrid {
    pub n_lo: usize,
    pub n_hi: usize,
    pub ell_lo: u32,
    pub ell_hi: u32,
    /// Row-major by `n`, then `ell`.
    signs: Vec<Sign>,
}

impl ExceptionGrid {
    pub fn sign(&self, n: usize, ell: u32) -> Sign {
        assert!(n >= self.n_lo && n <= self.n_hi, "row {n} out of grid");
        assert!(ell >= self.ell_lo && ell <= self.ell_hi, "column {ell} out of grid");
        let width = (self.ell_hi - self.ell_lo + 1) as usize;
        self.signs[(n - self.n_lo) * width + (ell - self.ell_lo) as usize]
    }

    pub fn is_exception(&self, n: usize, ell: u32) -> bool {
        self.sign(n, ell).is_negative()
    }

    /// Exceptional ranks in row `n`, ascending.
    pub fn exceptions_in_row(&self, n: usize) -> Vec<u32> {
        (self.ell_lo..=self.ell_hi)
            .filter(|&ell| self.is_exception(n, ell))
            .collect()
    }

    pub fn row_signs(&self, n: usize) -> String {
        (self.ell_lo..=self.ell_hi)
            .map(|ell| self.sign(n, ell).to_char())
            .collect()
    }

    pub fn cell_count(&self) -> usize {
        self.signs.len()
    }
}

/// Exact sign grid over `n_lo..=n_hi` and `ell_lo..=ell_hi`, computed with
/// one count series per rank (parallel over ranks).
pub fn exception_grid(n_lo: usize, n_hi: usize, ell_lo: u32, ell_hi: u32) -> Result<ExceptionGrid> {
    exception_grid_checkpointed(n_lo, n_hi, ell_lo, ell_hi, None)
}

/// Same as [`exception_grid`], resuming column results from a checkpoint.
pub fn exception_grid_checkpointed(
    n_lo: usize,
    n_hi: usize,
    ell_lo: u32,
    ell_hi: u32,
    checkpoint: Option<&Path>,
) -> Result<ExceptionGrid> {
    if n_lo < 1 || n_lo > n_hi {
        return Err(Error::InvalidArgument(format!(
            "empty or invalid index range {n_lo}..={n_hi}"
        )));
    }
    if ell_lo > ell_hi {
        return Err(Error::InvalidArgument(format!(
            "empty rank range {ell_lo}..={ell_hi}"
        )));
    }
    let requests: Vec<ColumnRequest> = (ell_lo..=ell_hi)
        .map(|ell| ColumnRequest { ell, n_lo, n_hi })
        .collect();
    let columns = scan_columns(&requests, checkpoint)?;
    let width = (ell_hi - ell_lo + 1) as usize;
    let height = n_hi - n_lo + 1;
    let mut signs = vec![Sign::Zero; width * height];
    for (c, col) in columns.iter().enumerate() {
        for (r, &s) in col.signs.iter().enumerate() {
            signs[r * width + c] = s;
        }
    }
    Ok(ExceptionGrid {
        n_lo,
        n_hi,
        ell_lo,
        ell_hi,
        signs,
    })
}

/// How a classification accounts for ranks beyond its scanned window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TailStatus {
    /// Every rank from `from` on is an exception.
    Exceptional { from: u32 },
    /// No exceptions beyond the last finite window.
    LogConcave,
    /// Window did not reach the certified threshold; nothing is claimed.
    Unverified,
}

/// Exceptions at a fixed index `n`: finite windows of ranks plus a certified
/// tail marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionClassification {
    pub n: usize,
    /// Maximal runs `(first, last)` of consecutive exceptional ranks that
    /// terminate below the certified threshold.
    pub windows: Vec<(u32, u32)>,
    pub tail: TailStatus,
    /// The certified threshold used for the tail, when one was reached.
    pub threshold: Option<u64>,
}

/// Classify the exceptions at index `n` by scanning ranks
/// `0..=window_ell_max` and certifying the tail with `bound` (the explicit
/// threshold for `n`, whose sign is fixed for every rank at or beyond it).
///
/// If the window stops short of the threshold the tail is reported as
/// unverified and all runs are returned as windows.
pub fn classify_exceptions(
    n: usize,
    window_ell_max: u32,
    bound: &ThresholdBound,
) -> Result<ExceptionClassification> {
    if bound.n != n {
        return Err(Error::SeriesMismatch(format!(
            "threshold is for n = {}, classifying n = {n}",
            bound.n
        )));
    }
    let signs: Vec<Result<Sign>> = (0..=window_ell_max)
        .into_par_iter()
        .map(|ell| delta_sign_at(ell, n))
        .collect();
    let mut exceptional = Vec::new();
    for (ell, sign) in signs.into_iter().enumerate() {
        if sign?.is_negative() {
            exceptional.push(ell as u32);
        }
    }
    let runs = into_runs(&exceptional);

    let threshold = match bound.ceiling_u64() {
        Some(t) if t <= window_ell_max as u64 => t,
        _ => {
            return Ok(ExceptionClassification {
                n,
                windows: runs,
                tail: TailStatus::Unverified,
                threshold: None,
            });
        }
    };

    let sign_at_threshold = if exceptional.binary_search(&(threshold as u32)).is_ok() {
        Sign::Negative
    } else {
        // distinguishing zero from positive is not needed for the tail
        Sign::Positive
    };
    let tail_exceptional = bound.certified_sign == Sign::Negative;
    if tail_exceptional != (sign_at_threshold == Sign::Negative) {
        return Err(Error::InvalidArgument(format!(
            "computed sign at the certified threshold contradicts the bound at n = {n}"
        )));
    }

    if tail_exceptional {
        // The certified run through the threshold extends to infinity.
        let (last_run, finite) = runs
            .split_last()
            .expect("a negative certified sign implies at least one run");
        if last_run.1 != window_ell_max || last_run.0 > threshold as u32 {
            return Err(Error::InvalidArgument(format!(
                "exception run at n = {n} does not reach through the certified threshold"
            )));
        }
        Ok(ExceptionClassification {
            n,
            windows: finite.to_vec(),
            tail: TailStatus::Exceptional { from: last_run.0 },
            threshold: Some(threshold),
        })
    } else {
        if let Some(last) = exceptional.last() {
            if *last as u64 >= threshold {
                return Err(Error::InvalidArgument(format!(
                    "exception at rank {last} contradicts the positive certified tail at n = {n}"
                )));
            }
        }
        Ok(ExceptionClassification {
            n,
            windows: runs,
            tail: TailStatus::LogConcave,
            threshold: Some(threshold),
        })
    }
}

fn into_runs(sorted: &[u32]) -> Vec<(u32, u32)> {
    let mut runs: Vec<(u32, u32)> = Vec::new();
    for &v in sorted {
        match runs.last_mut() {
            Some((_, last)) if *last + 1 == v => *last = v,
            _ => runs.push((v, v)),
        }
    }
    runs
}

/// Partition of `1..=n_max` by discriminant sign at a fixed rank; zero
/// counts as log-concave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedEllPattern {
    pub ell: u32,
    pub n_max: usize,
    pub log_concave: Vec<usize>,
    pub log_convex: Vec<usize>,
}

/// Split `1..=n_max` into the log-concave set (discriminant `>= 0`) and the
/// log-convex set (exceptions) for a fixed rank.
pub fn fixed_ell_pattern(ell: u32, n_max: usize) -> Result<FixedEllPattern> {
    if ell < 1 {
        return Err(Error::TooSmall {
            what: "ell",
            min: 1,
            got: ell as u64,
        });
    }
    let column = sign_column(ell, 1, n_max)?;
    let mut log_concave = Vec::new();
    let mut log_convex = Vec::new();
    for n in 1..=n_max {
        if column.sign(n).is_negative() {
            log_convex.push(n);
        } else {
            log_concave.push(n);
        }
    }
    Ok(FixedEllPattern {
        ell,
        n_max,
        log_concave,
        log_convex,
    })
}

/// Least `n0` such that the discriminant is non-negative for every
/// `n0 <= n <= n_check`. A window-verified claim: nothing is asserted beyond
/// `n_check`.
pub fn smallest_logconcave_start(ell: u32, n_check: usize) -> Result<usize> {
    if n_check < 3 {
        return Err(Error::TooSmall {
            what: "n_check",
            min: 3,
            got: n_check as u64,
        });
    }
    let column = sign_column(ell, 1, n_check)?;
    let last_exception = (1..=n_check)
        .rev()
        .find(|&n| column.sign(n).is_negative());
    Ok(match last_exception {
        Some(n) => n + 1,
        None => 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rank_one_discriminant_vanishes() {
        let series = n_series(1, 21).unwrap();
        for n in 1..=20 {
            assert_eq!(delta(&series, n).unwrap(), BigRational::zero());
            assert_eq!(delta_sign(&series, n).unwrap(), Sign::Zero);
        }
    }

    #[test]
    fn rank_two_small_values() {
        let series = n_series(2, 26).unwrap();
        // 1^2 - 1*2 with the partition numbers
        assert_eq!(delta(&series, 1).unwrap(), rat(-1, 1));
        assert_eq!(delta_sign(&series, 25).unwrap(), Sign::Negative);
        assert_eq!(delta_sign(&series, 24).unwrap(), Sign::Positive);
    }

    #[test]
    fn rank_zero_is_always_log_concave() {
        let series = n_series(0, 31).unwrap();
        for n in 1..=30 {
            assert_eq!(delta_sign(&series, n).unwrap(), Sign::Positive);
        }
    }

    #[test]
    fn delta_rejects_uncovered_index() {
        let series = n_series(2, 5).unwrap();
        assert!(delta(&series, 5).is_err());
        assert!(delta(&series, 0).is_err());
        assert!(delta(&series, 4).is_ok());
    }

    #[test]
    fn grid_agrees_with_columns() {
        let grid = exception_grid(1, 8, 0, 6).unwrap();
        assert_eq!(grid.cell_count(), 8 * 7);
        for ell in 0..=6u32 {
            let col = sign_column(ell, 1, 8).unwrap();
            for n in 1..=8 {
                assert_eq!(grid.sign(n, ell), col.sign(n));
            }
        }
        // discriminant at n=1 is negative exactly for ell >= 2
        assert_eq!(grid.exceptions_in_row(1), vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn runs_are_grouped() {
        assert_eq!(into_runs(&[2, 3, 4, 7, 9, 10]), vec![(2, 4), (7, 7), (9, 10)]);
        assert!(into_runs(&[]).is_empty());
    }

    #[test]
    fn pattern_partitions_range() {
        let pat = fixed_ell_pattern(2, 40).unwrap();
        assert_eq!(
            pat.log_convex,
            (1..=25).filter(|n| n % 2 == 1).collect::<Vec<_>>()
        );
        assert_eq!(pat.log_concave.len() + pat.log_convex.len(), 40);
        let pat1 = fixed_ell_pattern(1, 30).unwrap();
        assert!(pat1.log_convex.is_empty());
    }

    #[test]
    fn smallest_start_for_partition_numbers() {
        assert_eq!(smallest_logconcave_start(2, 100).unwrap(), 26);
        assert_eq!(smallest_logconcave_start(1, 50).unwrap(), 1);
    }

    #[test]
    fn classification_without_reaching_the_threshold_is_unverified() {
        let bound = crate::bounds::l_threshold(3).unwrap(); // ceiling 40
        let c = classify_exceptions(3, 20, &bound).unwrap();
        assert_eq!(c.tail, TailStatus::Unverified);
        assert_eq!(c.threshold, None);
        assert_eq!(c.windows, vec![(2, 13)]);

        let c = classify_exceptions(3, 60, &bound).unwrap();
        assert_eq!(c.tail, TailStatus::LogConcave);
        assert_eq!(c.threshold, Some(40));
    }

    #[test]
    fn classification_rejects_mismatched_bound() {
        let bound = crate::bounds::l_threshold(4).unwrap();
        assert!(classify_exceptions(3, 60, &bound).is_err());
    }
}
