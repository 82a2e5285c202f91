//! Deterministic text renderings of grids, classifications, patterns and
//! threshold tables. Identical inputs give byte-identical output.

use serde_json::json;

use super::{ExceptionClassification, ExceptionGrid, FixedEllPattern, TailStatus};
use crate::bounds::ThresholdBound;
use crate::{Error, Result};

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Latex,
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<TableFormat> {
        match s {
            "latex" => Ok(TableFormat::Latex),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown format {other:?} (expected latex, csv or json)"
            ))),
        }
    }
}

/// Render a sign grid. The latex form is the bullet landscape: one row per
/// `n`, one column per rank, a bullet exactly at the strictly negative
/// cells.
pub fn render_grid(grid: &ExceptionGrid, format: TableFormat) -> String {
    match format {
        TableFormat::Latex => {
            let cols = (grid.ell_hi - grid.ell_lo + 1) as usize;
            let mut out = String::new();
            out.push_str("\\[\n\\begin{array}{r");
            out.push_str(&"c".repeat(cols));
            out.push_str("}\n\\hline\nn\\backslash \\ell ");
            for ell in grid.ell_lo..=grid.ell_hi {
                out.push_str(&format!("&{ell}"));
            }
            out.push_str("\\\\ \\hline \\hline\n");
            for n in grid.n_lo..=grid.n_hi {
                out.push_str(&n.to_string());
                for ell in grid.ell_lo..=grid.ell_hi {
                    if grid.is_exception(n, ell) {
                        out.push_str("&\\bullet ");
                    } else {
                        out.push('&');
                    }
                }
                out.push_str("\\\\\n");
            }
            out.push_str("\\hline\n\\end{array}\n\\]\n");
            out
        }
        TableFormat::Csv => {
            let mut out = String::from("n,ell,sign\n");
            for n in grid.n_lo..=grid.n_hi {
                for ell in grid.ell_lo..=grid.ell_hi {
                    let sign = match grid.sign(n, ell) {
                        super::Sign::Negative => -1,
                        super::Sign::Zero => 0,
                        super::Sign::Positive => 1,
                    };
                    out.push_str(&format!("{n},{ell},{sign}\n"));
                }
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<_> = (grid.n_lo..=grid.n_hi)
                .map(|n| json!({"n": n, "signs": grid.row_signs(n)}))
                .collect();
            let value = json!({
                "n_lo": grid.n_lo,
                "n_hi": grid.n_hi,
                "ell_lo": grid.ell_lo,
                "ell_hi": grid.ell_hi,
                "rows": rows,
            });
            pretty(&value)
        }
    }
}

fn windows_text(c: &ExceptionClassification) -> String {
    let mut parts: Vec<String> = c
        .windows
        .iter()
        .map(|&(a, b)| if a == b { a.to_string() } else { format!("{a}-{b}") })
        .collect();
    if let TailStatus::Exceptional { from } = c.tail {
        parts.push(format!("{from}-"));
    }
    parts.join(" ")
}

fn tail_text(c: &ExceptionClassification) -> &'static str {
    match c.tail {
        TailStatus::Exceptional { .. } => "exceptional",
        TailStatus::LogConcave => "log-concave",
        TailStatus::Unverified => "unverified",
    }
}

/// Render per-index exception classifications.
pub fn render_classifications(rows: &[ExceptionClassification], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut out = String::from("n,exceptions,tail,threshold\n");
            for c in rows {
                let threshold = c
                    .threshold
                    .map(|t| t.to_string())
                    .unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    c.n,
                    windows_text(c),
                    tail_text(c),
                    threshold
                ));
            }
            out
        }
        TableFormat::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|c| {
                    json!({
                        "n": c.n,
                        "windows": c.windows,
                        "tail": c.tail,
                        "threshold": c.threshold,
                    })
                })
                .collect();
            pretty(&json!({ "classifications": items }))
        }
        TableFormat::Latex => {
            let mut out = String::from("\\begin{tabular}{|r|l|}\n\\hline\nn & \\\\ \\hline\n");
            for c in rows {
                let text = windows_text(c);
                let cell = if text.is_empty() {
                    "$\\emptyset$".to_string()
                } else {
                    text
                };
                out.push_str(&format!("{} & {}\\\\\n", c.n, cell));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
    }
}

fn join_indices(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Render fixed-rank patterns as their exception sets plus the verified
/// window.
pub fn render_patterns(rows: &[FixedEllPattern], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut out = String::from("ell,n_max,exceptions\n");
            for p in rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    p.ell,
                    p.n_max,
                    join_indices(&p.log_convex)
                ));
            }
            out
        }
        TableFormat::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|p| {
                    json!({
                        "ell": p.ell,
                        "n_max": p.n_max,
                        "log_convex": p.log_convex,
                    })
                })
                .collect();
            pretty(&json!({ "patterns": items }))
        }
        TableFormat::Latex => {
            let mut out =
                String::from("\\begin{tabular}{rl}\n\\hline\n$\\ell$ & log-convex\\\\ \\hline\n");
            for p in rows {
                let cell = if p.log_convex.is_empty() {
                    "$\\emptyset$".to_string()
                } else {
                    join_indices(&p.log_convex)
                };
                out.push_str(&format!("{} & {}\\\\\n", p.ell, cell));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
    }
}

/// Render the table of smallest log-concave starting indices.
pub fn render_smallest_starts(rows: &[(u32, usize)], n_check: usize, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut out = String::from("ell,n0\n");
            for (ell, n0) in rows {
                out.push_str(&format!("{ell},{n0}\n"));
            }
            out
        }
        TableFormat::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(ell, n0)| json!({"ell": ell, "n0": n0}))
                .collect();
            pretty(&json!({"n_check": n_check, "starts": items}))
        }
        TableFormat::Latex => {
            let mut out = String::from("\\begin{tabular}{rr}\n\\hline\n$\\ell$ & $n_0$\\\\ \\hline\n");
            for (ell, n0) in rows {
                out.push_str(&format!("{ell} & {n0}\\\\\n"));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
    }
}

/// Render rank thresholds with their certified sign.
pub fn render_thresholds(rows: &[ThresholdBound], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut out = String::from("n,ceiling,sign\n");
            for b in rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    b.n,
                    b.value_ceiling,
                    b.certified_sign.to_char()
                ));
            }
            out
        }
        TableFormat::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|b| {
                    json!({
                        "n": b.n,
                        "ceiling": b.value_ceiling.to_string(),
                        "sign": b.certified_sign.to_char().to_string(),
                    })
                })
                .collect();
            pretty(&json!({ "thresholds": items }))
        }
        TableFormat::Latex => {
            let mut out = String::from(
                "\\begin{tabular}{rr}\n\\hline\n$n$ & threshold\\\\ \\hline\n",
            );
            for b in rows {
                out.push_str(&format!("{} & {}\\\\\n", b.n, b.value_ceiling));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json rendering");
    text.push('\n');
    text
}
