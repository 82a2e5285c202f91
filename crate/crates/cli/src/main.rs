//! `ctuples`: exact commuting-tuple counts, log-concavity scans, bound
//! tables and verification suites.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch or operational
//! failure, 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use ctuples::config::{resolve_workers, FileConfig, ScanConfig};
use ctuples::tables::{build_and_render, check_against_golden, TableOptions, TableSelector};
use ctuples::verify::{run_suite, Suite};
use ctuples_core::bounds::{growth_profile, kappa_with, l_threshold_with, N20Variant};
use ctuples_core::commuting_counts::{n_series, orbifold_polynomial};
use ctuples_core::logconcavity::render::TableFormat;
use ctuples_core::logconcavity::{
    classify_exceptions, delta, delta_sign, exception_grid_checkpointed, render,
};
use ctuples_core::oracle::{count_commuting_tuples, count_hom_by_centralizers, OracleResult};
use ctuples_core::subgroup_growth::{g_multiplicative, g_table_by_recurrence};

#[derive(Parser)]
#[command(name = "ctuples", version, about = "Exact commuting-tuple counts and their log-concavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum FormatArg {
    Latex,
    Csv,
    Json,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> TableFormat {
        match f {
            FormatArg::Latex => TableFormat::Latex,
            FormatArg::Csv => TableFormat::Csv,
            FormatArg::Json => TableFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum GMethod {
    Sieve,
    Multiplicative,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum OracleMethodArg {
    Brute,
    Centralizer,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// Formats for plain data dumps (no bullet layout to typeset).
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum VariantArg {
    /// Seed the n = 20 threshold with the leading coefficient (published values).
    Leading,
    /// Seed it with the subdominant coefficient (derivation-text variant).
    Second,
}

impl From<VariantArg> for N20Variant {
    fn from(v: VariantArg) -> N20Variant {
        match v {
            VariantArg::Leading => N20Variant::LeadingCoefficient,
            VariantArg::Second => N20Variant::SecondCoefficient,
        }
    }
}

#[derive(Args, Clone, Debug)]
struct CommonOut {
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroup-count table for one rank.
    G {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "sieve")]
        method: GMethod,
        #[arg(long, value_enum, default_value = "csv")]
        format: DataFormat,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Normalized commuting-tuple counts for one rank.
    Count {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: DataFormat,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Coefficients of the degree-n counting polynomial.
    Poly {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: DataFormat,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Exact discriminant values for one rank.
    Delta {
        #[arg(long)]
        ell: u32,
        /// Single index; overrides the range flags.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "1")]
        nlo: usize,
        #[arg(long)]
        nhi: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: DataFormat,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Build one of the six reference tables; `--check` diffs against the
    /// shipped golden file.
    Table {
        #[arg(value_enum)]
        selector: TableSelector,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Recompute and compare against the golden file; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
        /// Verification window for the smallest-start table.
        #[arg(long)]
        ncheck: Option<usize>,
        /// Use the full window instead of the quick one.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// TOML file with defaults (flags take precedence).
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Classify the exceptions at one index with a certified tail.
    Classify {
        #[arg(long)]
        n: usize,
        /// Scan window; defaults to max(60, certified threshold).
        #[arg(long)]
        ellmax: Option<u32>,
        #[arg(long, value_enum, default_value = "leading")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Scan the discriminant sign grid over a rectangle.
    Scan {
        #[arg(long)]
        nlo: Option<usize>,
        #[arg(long)]
        nhi: Option<usize>,
        #[arg(long)]
        elllo: Option<u32>,
        #[arg(long)]
        ellhi: Option<u32>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// TOML file with defaults (flags take precedence).
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Growth constants and certified thresholds for one index or a range.
    Bounds {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "2")]
        nlo: usize,
        #[arg(long)]
        nhi: Option<usize>,
        #[arg(long, value_enum, default_value = "leading")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Run a verification suite; exit 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Count commuting tuples by the desk-scale group oracles.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum, default_value = "both")]
        method: OracleMethodArg,
        #[command(flatten)]
        out: CommonOut,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err
                .downcast_ref::<ctuples_core::Error>()
                .map(|e| {
                    matches!(
                        e,
                        ctuples_core::Error::TooSmall { .. }
                            | ctuples_core::Error::TooLarge { .. }
                            | ctuples_core::Error::InvalidArgument(_)
                            | ctuples_core::Error::OutOfRange { .. }
                    )
                })
                .unwrap_or(false);
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

/// A user-input problem: reported with the usage exit code.
fn usage(message: impl Into<String>) -> anyhow::Error {
    ctuples_core::Error::InvalidArgument(message.into()).into()
}

fn emit(out: &CommonOut, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn init_workers(workers: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .context("initializing the worker pool")
}

/// Runs a command; `Ok(false)` means a verification mismatch (exit 1).
fn run(command: Command) -> Result<bool> {
    match command {
        Command::G {
            ell,
            nmax,
            method,
            format,
            out,
        } => {
            let text = run_g(ell, nmax, method, format)?;
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Count {
            ell,
            nmax,
            format,
            out,
        } => {
            let series = n_series(ell, nmax)?;
            let text = match format {
                DataFormat::Json => {
                    let values: Vec<_> = (0..=nmax)
                        .map(|n| json!({"n": n, "count": series.rational(n).unwrap().to_string()}))
                        .collect();
                    pretty(&json!({"ell": ell, "n_max": nmax, "values": values}))
                }
                DataFormat::Csv => {
                    let mut text = String::from("n,N\n");
                    for n in 0..=nmax {
                        text.push_str(&format!("{n},{}\n", series.rational(n)?));
                    }
                    text
                }
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Poly {
            ell,
            n,
            format,
            out,
        } => {
            let g = g_table_by_recurrence(ell, n.max(1))?;
            let poly = orbifold_polynomial(ell, n, &g)?;
            let text = match format {
                DataFormat::Json => {
                    let coeffs: Vec<String> =
                        poly.coeffs.iter().map(|c| c.to_string()).collect();
                    pretty(&json!({"ell": ell, "n": n, "coefficients": coeffs}))
                }
                DataFormat::Csv => {
                    let mut text = String::from("k,coefficient\n");
                    for (k, c) in poly.coeffs.iter().enumerate() {
                        text.push_str(&format!("{k},{c}\n"));
                    }
                    text
                }
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Delta {
            ell,
            n,
            nlo,
            nhi,
            format,
            out,
        } => {
            let (lo, hi) = match (n, nhi) {
                (Some(n), _) => (n, n),
                (None, Some(hi)) => (nlo, hi),
                (None, None) => return Err(usage("pass --n or --nhi")),
            };
            if lo < 1 || lo > hi {
                return Err(usage(format!("empty index range {lo}..={hi}")));
            }
            let series = n_series(ell, hi + 1)?;
            let text = match format {
                DataFormat::Json => {
                    let values: Vec<_> = (lo..=hi)
                        .map(|n| {
                            let d = delta(&series, n).unwrap();
                            let s = delta_sign(&series, n).unwrap();
                            json!({"n": n, "delta": d.to_string(), "sign": s.to_char().to_string()})
                        })
                        .collect();
                    pretty(&json!({"ell": ell, "values": values}))
                }
                DataFormat::Csv => {
                    let mut text = String::from("n,delta,sign\n");
                    for n in lo..=hi {
                        text.push_str(&format!(
                            "{n},{},{}\n",
                            delta(&series, n)?,
                            delta_sign(&series, n)?.to_char()
                        ));
                    }
                    text
                }
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Table {
            selector,
            format,
            check,
            ncheck,
            full,
            workers,
            checkpoint,
            config,
            out,
        } => {
            let file = match &config {
                Some(path) => FileConfig::load(path)?,
                None => FileConfig::default(),
            };
            let (n_lo, n_hi, ell_lo, ell_hi) = selector.scan_ranges();
            let scan = ScanConfig {
                n_lo,
                n_hi,
                ell_lo,
                ell_hi,
                format: format
                    .map(TableFormat::from)
                    .or_else(|| file.format.as_deref().and_then(|f| f.parse().ok()))
                    .unwrap_or_else(|| selector.golden_format()),
                workers: resolve_workers(workers, &file),
                checkpoint: checkpoint.or(file.checkpoint),
                table: Some(selector),
            };
            scan.validate()?;
            init_workers(scan.workers)?;
            let options = TableOptions {
                ncheck: ncheck.or(file.ncheck),
                full: full || file.full.unwrap_or(false),
                checkpoint: scan.checkpoint.clone(),
            };
            if check {
                match check_against_golden(selector, &options)? {
                    None => {
                        emit(&out, &format!("table {selector}: ok\n"))?;
                        Ok(true)
                    }
                    Some(diff) => {
                        emit(&out, &format!("table {selector}: MISMATCH ({diff})\n"))?;
                        Ok(false)
                    }
                }
            } else {
                let text = build_and_render(selector, scan.format, &options)?;
                emit(&out, &text)?;
                Ok(true)
            }
        }
        Command::Classify {
            n,
            ellmax,
            variant,
            format,
            out,
        } => {
            let bound = l_threshold_with(n, variant.into())?;
            let window = ellmax.unwrap_or_else(|| ctuples::tables::classification_window(&bound));
            let classification = classify_exceptions(n, window, &bound)?;
            let text = render::render_classifications(
                std::slice::from_ref(&classification),
                format.into(),
            );
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Scan {
            nlo,
            nhi,
            elllo,
            ellhi,
            format,
            workers,
            checkpoint,
            config,
            out,
        } => {
            let file = match &config {
                Some(path) => FileConfig::load(path)?,
                None => FileConfig::default(),
            };
            let scan = ScanConfig {
                n_lo: nlo.or(file.n_lo).unwrap_or(1),
                n_hi: nhi
                    .or(file.n_hi)
                    .ok_or_else(|| usage("pass --nhi or set n_hi in the config"))?,
                ell_lo: elllo.or(file.ell_lo).unwrap_or(0),
                ell_hi: ellhi
                    .or(file.ell_hi)
                    .ok_or_else(|| usage("pass --ellhi or set ell_hi in the config"))?,
                format: format
                    .map(TableFormat::from)
                    .or_else(|| file.format.as_deref().and_then(|f| f.parse().ok()))
                    .unwrap_or(TableFormat::Csv),
                workers: resolve_workers(workers, &file),
                checkpoint: checkpoint.or(file.checkpoint),
                table: None,
            };
            scan.validate()?;
            init_workers(scan.workers)?;
            let grid = exception_grid_checkpointed(
                scan.n_lo,
                scan.n_hi,
                scan.ell_lo,
                scan.ell_hi,
                scan.checkpoint.as_deref(),
            )?;
            emit(&out, &render::render_grid(&grid, scan.format))?;
            Ok(true)
        }
        Command::Bounds {
            n,
            nlo,
            nhi,
            variant,
            format,
            out,
        } => {
            let (lo, hi) = match (n, nhi) {
                (Some(n), _) => (n, n),
                (None, Some(hi)) => (nlo, hi),
                (None, None) => return Err(usage("pass --n or --nhi")),
            };
            if lo < 2 || lo > hi {
                return Err(usage("bounds need an index range within 2.."));
            }
            let text = run_bounds(lo, hi, variant.into(), format)?;
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            format,
            workers,
            out,
        } => {
            init_workers(resolve_workers(workers, &FileConfig::default()))?;
            let report = run_suite(suite)?;
            let text = match format {
                ReportFormat::Json => report.to_json(),
                ReportFormat::Text => report.to_text(),
            };
            emit(&out, &text)?;
            Ok(report.pass())
        }
        Command::Oracle {
            n,
            ell,
            method,
            out,
        } => {
            let mut results: Vec<OracleResult> = Vec::new();
            match method {
                OracleMethodArg::Brute => results.push(count_commuting_tuples(n, ell)?),
                OracleMethodArg::Centralizer => results.push(count_hom_by_centralizers(n, ell)?),
                OracleMethodArg::Both => {
                    results.push(count_commuting_tuples(n, ell)?);
                    results.push(count_hom_by_centralizers(n, ell)?);
                }
            }
            let reports: Vec<_> = results.iter().map(oracle_report).collect();
            let agree = results
                .windows(2)
                .all(|pair| pair[0].raw == pair[1].raw);
            let text = pretty(&json!({"runs": reports, "agree": agree}));
            emit(&out, &text)?;
            Ok(agree)
        }
    }
}

fn run_g(ell: u32, nmax: usize, method: GMethod, format: DataFormat) -> Result<String> {
    let sieve = match method {
        GMethod::Sieve | GMethod::Both => Some(g_table_by_recurrence(ell, nmax)?),
        GMethod::Multiplicative => None,
    };
    let values: Vec<BigUint> = match method {
        GMethod::Sieve => sieve
            .as_ref()
            .unwrap()
            .iter()
            .map(|(_, v)| v.clone())
            .collect(),
        GMethod::Multiplicative => (1..=nmax)
            .map(|n| Ok(g_multiplicative(n as u64, ell)?))
            .collect::<Result<_>>()?,
        GMethod::Both => {
            let table = sieve.as_ref().unwrap();
            for n in 1..=nmax {
                let direct = g_multiplicative(n as u64, ell)?;
                if *table.value(n) != direct {
                    bail!(
                        "subgroup-count routes disagree first at n = {n}: sieve {}, factorization {direct}",
                        table.value(n)
                    );
                }
            }
            table.iter().map(|(_, v)| v.clone()).collect()
        }
    };
    Ok(match format {
        DataFormat::Json => {
            let rows: Vec<_> = values
                .iter()
                .enumerate()
                .map(|(i, v)| json!({"n": i + 1, "g": v.to_string()}))
                .collect();
            pretty(&json!({"ell": ell, "n_max": nmax, "values": rows}))
        }
        DataFormat::Csv => {
            let mut text = String::from("n,g\n");
            for (i, v) in values.iter().enumerate() {
                text.push_str(&format!("{},{v}\n", i + 1));
            }
            text
        }
    })
}

fn run_bounds(lo: usize, hi: usize, variant: N20Variant, format: DataFormat) -> Result<String> {
    let mut rows = Vec::new();
    for n in lo..=hi {
        let profile = growth_profile(n)?;
        let linear = kappa_with(n, variant)?;
        let logarithmic = l_threshold_with(n, variant)?;
        rows.push((profile, linear, logarithmic));
    }
    Ok(match format {
        DataFormat::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(p, linear, logarithmic)| {
                    json!({
                        "n": p.n,
                        "m1": p.m1.to_string(),
                        "achieving": p.achieving.iter().map(|(k, mult)| {
                            json!({"k": k, "multiplicity": mult.to_string()})
                        }).collect::<Vec<_>>(),
                        "m2": p.m2.as_ref().map(|v| v.to_string()),
                        "m3": p.m3.as_ref().map(|v| v.to_string()),
                        "c1": p.c1.to_string(),
                        "c2": p.c2.as_ref().map(|v| v.to_string()),
                        "kappa": linear.value_ceiling.to_string(),
                        "log_threshold": logarithmic.value_ceiling.to_string(),
                        "certified_sign": logarithmic.certified_sign.to_char().to_string(),
                    })
                })
                .collect();
            pretty(&json!({"bounds": items}))
        }
        DataFormat::Csv => {
            let mut text =
                String::from("n,m1,m2,m3,c1,c2,kappa,log_threshold,certified_sign\n");
            for (p, linear, logarithmic) in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    p.n,
                    p.m1,
                    p.m2.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                    p.m3.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                    p.c1,
                    p.c2.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                    linear.value_ceiling,
                    logarithmic.value_ceiling,
                    logarithmic.certified_sign.to_char(),
                ));
            }
            text
        }
    })
}

fn oracle_report(result: &OracleResult) -> serde_json::Value {
    json!({
        "n": result.n,
        "ell": result.ell,
        "raw": result.raw.to_string(),
        "normalized": result.normalized.to_string(),
        "method": result.method.to_string(),
        "elapsed_ms": result.elapsed.as_millis() as u64,
    })
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json rendering");
    text.push('\n');
    text
}
