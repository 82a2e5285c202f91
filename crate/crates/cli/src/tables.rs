//! Builders for the six reference tables at their standard windows, and the
//! rendering dispatch used by `table` and its golden-file check mode.

use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;

use ctuples_core::bounds::{l_threshold, ThresholdBound};
use ctuples_core::logconcavity::render::{
    render_classifications, render_grid, render_patterns, render_smallest_starts,
    render_thresholds, TableFormat,
};
use ctuples_core::logconcavity::{
    classify_exceptions, exception_grid_checkpointed, scan_columns, ColumnRequest,
    ExceptionClassification, ExceptionGrid, FixedEllPattern,
};

/// The six reference tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableSelector {
    /// Exception landscape, indices 1..=30, ranks 0..=20.
    T1,
    /// Exception landscape, indices 1..=30, ranks 20..=40.
    T2,
    /// Classification of exceptions for indices 1..=20.
    T3,
    /// Fixed-rank log-concavity patterns for ranks 1..=10.
    T4,
    /// Smallest log-concave starting index for ranks 1..=40.
    T5,
    /// Certified rank thresholds for indices 1..=20.
    T6,
}

impl TableSelector {
    /// The format the shipped golden file uses.
    pub fn golden_format(self) -> TableFormat {
        match self {
            TableSelector::T1 | TableSelector::T2 => TableFormat::Latex,
            TableSelector::T3 | TableSelector::T4 | TableSelector::T5 => TableFormat::Csv,
            TableSelector::T6 => TableFormat::Json,
        }
    }

    /// The `(n, rank)` rectangle this table is computed over. For the
    /// per-rank tables the rank range is the row range and the index bound
    /// is the widest verification window used.
    pub fn scan_ranges(self) -> (usize, usize, u32, u32) {
        match self {
            TableSelector::T1 => (1, 30, 0, 20),
            TableSelector::T2 => (1, 30, 20, 40),
            TableSelector::T3 => (1, 20, 0, 60),
            TableSelector::T4 => (1, 10_000, 1, 10),
            TableSelector::T5 => (1, T5_FULL_WINDOW, 1, 40),
            TableSelector::T6 => (1, 20, 0, 0),
        }
    }
}

impl std::fmt::Display for TableSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TableSelector::T1 => "T1",
            TableSelector::T2 => "T2",
            TableSelector::T3 => "T3",
            TableSelector::T4 => "T4",
            TableSelector::T5 => "T5",
            TableSelector::T6 => "T6",
        };
        write!(f, "{name}")
    }
}

/// Landscape grid over ranks 0..=20.
pub fn build_t1(checkpoint: Option<&Path>) -> Result<ExceptionGrid> {
    Ok(exception_grid_checkpointed(1, 30, 0, 20, checkpoint)?)
}

/// Landscape grid over ranks 20..=40.
pub fn build_t2(checkpoint: Option<&Path>) -> Result<ExceptionGrid> {
    Ok(exception_grid_checkpointed(1, 30, 20, 40, checkpoint)?)
}

/// Scan window used to classify index `n`: every rank up to the certified
/// threshold, and at least up to 60.
pub fn classification_window(bound: &ThresholdBound) -> u32 {
    let threshold = bound
        .ceiling_u64()
        .expect("classification thresholds are small");
    (threshold as u32).max(60)
}

/// Classifications for indices 1..=20, each scanned up to
/// `max(60, threshold)` and tail-certified.
pub fn build_t3() -> Result<Vec<ExceptionClassification>> {
    (1..=20usize)
        .into_par_iter()
        .map(|n| {
            let bound = l_threshold(n)?;
            let classification = classify_exceptions(n, classification_window(&bound), &bound)?;
            Ok(classification)
        })
        .collect()
}

/// Verification window for the fixed-rank patterns: the full desk window
/// for ranks 1 and 2, a reduced one above.
pub fn pattern_window(ell: u32) -> usize {
    if ell <= 2 {
        10_000
    } else {
        2_000
    }
}

/// Fixed-rank patterns for ranks 1..=10 at the desk-scale windows.
pub fn build_t4(checkpoint: Option<&Path>) -> Result<Vec<FixedEllPattern>> {
    let requests: Vec<ColumnRequest> = (1..=10)
        .map(|ell| ColumnRequest {
            ell,
            n_lo: 1,
            n_hi: pattern_window(ell),
        })
        .collect();
    let columns = scan_columns(&requests, checkpoint)?;
    Ok(columns
        .into_iter()
        .map(|col| {
            let mut log_concave = Vec::new();
            let mut log_convex = Vec::new();
            for n in col.n_lo..=col.n_hi {
                if col.sign(n).is_negative() {
                    log_convex.push(n);
                } else {
                    log_concave.push(n);
                }
            }
            FixedEllPattern {
                ell: col.ell,
                n_max: col.n_hi,
                log_concave,
                log_convex,
            }
        })
        .collect())
}

/// Default (quick) and full verification windows for the smallest-start
/// table. Every listed start is at most 45, so both windows certify the
/// same values.
pub const T5_QUICK_WINDOW: usize = 300;
pub const T5_FULL_WINDOW: usize = 1_000;

/// Smallest log-concave starting index for ranks 1..=40, verified within
/// `n_check`.
pub fn build_t5(n_check: usize, checkpoint: Option<&Path>) -> Result<Vec<(u32, usize)>> {
    let requests: Vec<ColumnRequest> = (1..=40)
        .map(|ell| ColumnRequest {
            ell,
            n_lo: 1,
            n_hi: n_check,
        })
        .collect();
    let columns = scan_columns(&requests, checkpoint)?;
    Ok(columns
        .into_iter()
        .map(|col| {
            let last_exception = (col.n_lo..=col.n_hi)
                .rev()
                .find(|&n| col.sign(n).is_negative());
            (col.ell, last_exception.map_or(1, |n| n + 1))
        })
        .collect())
}

/// Certified thresholds for indices 1..=20.
pub fn build_t6() -> Result<Vec<ThresholdBound>> {
    (1..=20usize)
        .map(|n| Ok(l_threshold(n)?))
        .collect()
}

/// Options threaded from the command line into the table builders.
#[derive(Debug, Clone, Default)]
pub struct TableOptions {
    pub ncheck: Option<usize>,
    pub full: bool,
    pub checkpoint: Option<std::path::PathBuf>,
}

/// Build the selected table and render it.
pub fn build_and_render(
    selector: TableSelector,
    format: TableFormat,
    options: &TableOptions,
) -> Result<String> {
    let checkpoint = options.checkpoint.as_deref();
    Ok(match selector {
        TableSelector::T1 => render_grid(&build_t1(checkpoint)?, format),
        TableSelector::T2 => render_grid(&build_t2(checkpoint)?, format),
        TableSelector::T3 => render_classifications(&build_t3()?, format),
        TableSelector::T4 => render_patterns(&build_t4(checkpoint)?, format),
        TableSelector::T5 => {
            let n_check = options.ncheck.unwrap_or(if options.full {
                T5_FULL_WINDOW
            } else {
                T5_QUICK_WINDOW
            });
            render_smallest_starts(&build_t5(n_check, checkpoint)?, n_check, format)
        }
        TableSelector::T6 => render_thresholds(&build_t6()?, format),
    })
}

/// Compare a rendered table against the shipped golden file. Returns the
/// first differing line on mismatch.
pub fn check_against_golden(selector: TableSelector, options: &TableOptions) -> Result<Option<String>> {
    let format = selector.golden_format();
    let rendered = build_and_render(selector, format, options)
        .with_context(|| format!("building table {selector}"))?;
    let golden = crate::goldens::golden(selector);
    if rendered == golden {
        return Ok(None);
    }
    let diff = rendered
        .lines()
        .zip(golden.lines())
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| format!("line {}: computed {a:?}, expected {b:?}", i + 1))
        .unwrap_or_else(|| "outputs differ in length".to_string());
    Ok(Some(diff))
}
