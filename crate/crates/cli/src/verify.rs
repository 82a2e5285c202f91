//! Verification suites behind `ctuples verify`: exact re-derivations of the
//! identities, bounds and sign claims, reported check by check.

use anyhow::Result;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use ctuples_core::arith::factorial;
use ctuples_core::bounds::{
    self, brute_max_multiplicities, brute_max_products, kappa, l_threshold, m1, max_product,
    sandwich_check, second_growth_base, verify_theorem_sign,
};
use ctuples_core::commuting_counts::{
    a_lower_bound, n_series, n_table, n_value_by_partition_sum, orbifold_polynomials_upto,
};
use ctuples_core::logconcavity::{delta_sign_at, Sign};
use ctuples_core::oracle::{conjugacy_class_count, count_commuting_tuples, count_hom_by_centralizers};
use ctuples_core::partitions::partition_table;
use ctuples_core::subgroup_growth::{g_multiplicative, g_table_by_recurrence};

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

/// A named set of checks.
#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("{status}  {}: {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "suite {}: {}\n",
            self.suite,
            if self.pass() { "pass" } else { "FAIL" }
        ));
        out
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
            .collect();
        let mut text = serde_json::to_string_pretty(&json!({
            "suite": self.suite,
            "pass": self.pass(),
            "checks": checks,
        }))
        .expect("report serialization");
        text.push('\n');
        text
    }
}

/// Which suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Oracle,
    Bounds,
    Theorem,
    All,
}

pub fn run_suite(suite: Suite) -> Result<Report> {
    match suite {
        Suite::Oracle => verify_oracle(),
        Suite::Bounds => verify_bounds(),
        Suite::Theorem => verify_theorem(),
        Suite::All => {
            let mut checks = Vec::new();
            checks.extend(verify_identities()?.checks);
            checks.extend(verify_oracle()?.checks);
            checks.extend(verify_bounds()?.checks);
            checks.extend(verify_theorem()?.checks);
            Ok(Report {
                suite: "all".into(),
                checks,
            })
        }
    }
}

/// Group-theoretic ground truth against the series route.
pub fn verify_oracle() -> Result<Report> {
    let mut checks = Vec::new();

    let mut pass = true;
    let mut detail = String::new();
    for n in 1..=5usize {
        let series_by_ell: Vec<_> = (0..=3u32).map(|ell| n_series(ell, n)).collect();
        for ell in 0..=3u32 {
            let brute = count_commuting_tuples(n, ell)?;
            let series = series_by_ell[ell as usize].as_ref().expect("series build");
            let expected = series.rational(n)?
                * BigRational::from(BigInt::from(factorial(n as u64)));
            if BigRational::from(BigInt::from(brute.raw.clone())) != expected {
                pass = false;
                detail = format!("mismatch at n={n}, ell={ell}");
            }
            if ell >= 1 && !(brute.raw.clone() % factorial(n as u64)).is_zero() {
                pass = false;
                detail = format!("raw count not divisible by n! at n={n}, ell={ell}");
            }
        }
    }
    checks.push(Check::new(
        "brute-force tuples equal n! times the series (n<=5, ell<=3)",
        pass,
        if pass { "exact agreement".to_string() } else { detail },
    ));

    let results: Vec<(usize, u32, bool)> = (1..=8usize)
        .into_par_iter()
        .flat_map_iter(|n| (0..=4u32).map(move |ell| (n, ell)))
        .map(|(n, ell)| {
            let recursion = count_hom_by_centralizers(n, ell).expect("within caps");
            let series = n_series(ell, n).expect("series build");
            let expected = series.rational(n).expect("in range")
                * BigRational::from(BigInt::from(factorial(n as u64)));
            let ok = BigRational::from(BigInt::from(recursion.raw)) == expected;
            (n, ell, ok)
        })
        .collect();
    let failures: Vec<String> = results
        .iter()
        .filter(|(_, _, ok)| !ok)
        .map(|(n, ell, _)| format!("(n={n}, ell={ell})"))
        .collect();
    checks.push(Check::new(
        "centralizer recursion equals n! times the series (n<=8, ell<=4)",
        failures.is_empty(),
        if failures.is_empty() {
            "exact agreement".to_string()
        } else {
            failures.join(", ")
        },
    ));

    let mut pass = true;
    let p = partition_table(8);
    for n in 1..=8usize {
        let classes = conjugacy_class_count(n)?;
        let series = n_series(2, n)?;
        if BigUint::from(classes) != *p.value(n) || BigUint::from(classes) != *series.integer(n).unwrap()
        {
            pass = false;
        }
    }
    checks.push(Check::new(
        "conjugacy class count equals the partition number (n<=8)",
        pass,
        "cycle-type enumeration",
    ));

    Ok(Report {
        suite: "oracle".into(),
        checks,
    })
}

/// Growth constants, estimate sandwiches, threshold comparisons.
pub fn verify_bounds() -> Result<Report> {
    let mut checks = Vec::new();

    let mut pass = true;
    for n in 3..=40usize {
        let products = brute_max_products(n)?;
        if products[0].0 != m1(n)? || products[1].0 != second_growth_base(n)? {
            pass = false;
        }
    }
    checks.push(Check::new(
        "closed-form growth bases match exhaustive partition products (n<=40)",
        pass,
        "first and second distinct products",
    ));

    let mut pass = true;
    for n in 2..=40usize {
        let closed: std::collections::BTreeMap<u64, BigUint> =
            max_product(n)?.achieving.into_iter().collect();
        if brute_max_multiplicities(n)? != closed {
            pass = false;
        }
    }
    checks.push(Check::new(
        "achieving part counts and tuple multiplicities match brute force (n<=40)",
        pass,
        "ordered-tuple convention",
    ));

    let p = partition_table(60);
    let estimate_ok: Vec<bool> = (2..=8u32)
        .into_par_iter()
        .map(|ell| {
            let series = n_series(ell, 60).expect("series build");
            (2..=60usize).all(|n| {
                let value = series.rational(n).expect("in range");
                let lower = a_lower_bound(ell, n).expect("defined for n >= 2");
                let upper = BigRational::from(BigInt::from(p.value(n).clone()))
                    * BigRational::from(BigInt::from(m1(n).unwrap().pow(ell - 1)));
                lower <= value && value <= upper
            })
        })
        .collect();
    checks.push(Check::new(
        "two-sided growth estimate (2<=ell<=8, n<=60)",
        estimate_ok.iter().all(|&b| b),
        "lower bound and partition-number upper bound",
    ));

    let sandwich_ok: Vec<bool> = (2..=12u32)
        .into_par_iter()
        .map(|ell| {
            let series = n_series(ell, 40).expect("series build");
            (3..=40usize).all(|n| sandwich_check(ell, n, &series).expect("in range"))
        })
        .collect();
    checks.push(Check::new(
        "dominant-term sandwich (2<=ell<=12, 3<=n<=40)",
        sandwich_ok.iter().all(|&b| b),
        "leading term below the count, slack term above",
    ));

    let mut pass = true;
    for n in 2..=20usize {
        let linear = kappa(n)?;
        let logarithmic = l_threshold(n)?;
        if linear.value_ceiling < logarithmic.value_ceiling
            || linear.certified_sign != logarithmic.certified_sign
        {
            pass = false;
        }
    }
    checks.push(Check::new(
        "linear threshold dominates the logarithmic one (2<=n<=20)",
        pass,
        "exact integer comparison",
    ));

    let mut pass = true;
    for ell in 2..=40u32 {
        if delta_sign_at(ell, 1)? != Sign::Negative || delta_sign_at(ell, 2)? != Sign::Positive {
            pass = false;
        }
        let expected = if ell <= 13 { Sign::Negative } else { Sign::Positive };
        if delta_sign_at(ell, 3)? != expected {
            pass = false;
        }
        if !bounds::verify_small_index_signs(ell)? {
            pass = false;
        }
    }
    checks.push(Check::new(
        "small-index discriminant signs (ell<=40)",
        pass,
        "negative at 1, positive at 2, switch at rank 14 for index 3",
    ));

    Ok(Report {
        suite: "bounds".into(),
        checks,
    })
}

/// Sign of the discriminant at and beyond the certified thresholds.
pub fn verify_theorem() -> Result<Report> {
    let mut checks = Vec::new();

    let results: Vec<(usize, bool)> = (1..=21usize)
        .into_par_iter()
        .map(|n| {
            let bound = l_threshold(n).expect("threshold");
            (n, verify_theorem_sign(&bound).expect("feasible rank"))
        })
        .collect();
    let failures: Vec<String> = results
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.to_string())
        .collect();
    checks.push(Check::new(
        "discriminant sign at the certified threshold (n<=21)",
        failures.is_empty(),
        if failures.is_empty() {
            "matches the mod-3 case split".to_string()
        } else {
            format!("mismatch at n in [{}]", failures.join(", "))
        },
    ));

    let results: Vec<(usize, bool)> = (1..=20usize)
        .into_par_iter()
        .map(|n| {
            let bound = l_threshold(n).expect("threshold");
            let base = bound.ceiling_u64().expect("small threshold") as u32;
            let ok = [base, base + 1, base + 10].iter().all(|&ell| {
                delta_sign_at(ell, n).expect("feasible") == bound.certified_sign
            });
            (n, ok)
        })
        .collect();
    checks.push(Check::new(
        "sign is stable just beyond the threshold (n<=20, offsets 0/1/10)",
        results.iter().all(|(_, ok)| *ok),
        "sampled ranks",
    ));

    let mut pass = true;
    for n in [2usize, 3, 4] {
        let bound = kappa(n)?;
        if !verify_theorem_sign(&bound)? {
            pass = false;
        }
    }
    checks.push(Check::new(
        "discriminant sign at the linear threshold (n in {2, 3, 4})",
        pass,
        "direct evaluation at the larger rank",
    ));

    Ok(Report {
        suite: "theorem".into(),
        checks,
    })
}

/// Series identities across the independent computation routes.
pub fn verify_identities() -> Result<Report> {
    let mut checks = Vec::new();

    let agree: Vec<bool> = (1..=10u32)
        .into_par_iter()
        .map(|ell| {
            let table = g_table_by_recurrence(ell, 10_000).expect("table build");
            (1..=10_000usize)
                .all(|n| *table.value(n) == g_multiplicative(n as u64, ell).expect("valid"))
        })
        .collect();
    checks.push(Check::new(
        "subgroup counts by sieve and by factorization agree (n<=10^4, ell<=10)",
        agree.iter().all(|&b| b),
        "exact equality",
    ));

    let series = n_series(2, 10_000)?;
    let p = partition_table(10_000);
    let pass = (0..=10_000usize).all(|n| series.integer(n).unwrap() == p.value(n));
    checks.push(Check::new(
        "rank-2 counts equal the partition numbers (n<=10^4)",
        pass,
        "pentagonal recurrence as the independent route",
    ));

    let polys_ok: Vec<bool> = (2..=5u32)
        .into_par_iter()
        .map(|ell| {
            let g = g_table_by_recurrence(ell, 100).expect("table build");
            let series = n_table(ell, 100, &g).expect("series build");
            let polys = orbifold_polynomials_upto(ell, 100, &g).expect("in range");
            polys
                .iter()
                .enumerate()
                .all(|(n, poly)| poly.eval_at_one() == series.rational(n).expect("in range"))
        })
        .collect();
    checks.push(Check::new(
        "polynomial value at 1 equals the count (n<=100, 2<=ell<=5)",
        polys_ok.iter().all(|&b| b),
        "coefficient extraction route",
    ));

    let mut pass = true;
    for ell in 0..=4u32 {
        let g = g_table_by_recurrence(ell, 12)?;
        let series = n_table(ell, 12, &g)?;
        for n in 1..=12usize {
            if n_value_by_partition_sum(ell, n, &g)? != series.rational(n)? {
                pass = false;
            }
        }
    }
    checks.push(Check::new(
        "composition sum equals the recurrence (n<=12, ell<=4)",
        pass,
        "grouped exact rational sum",
    ));

    let mut pass = true;
    let mut worst = String::new();
    for ell in 1..=12u32 {
        let g = g_table_by_recurrence(ell, 200)?;
        let series = n_table(ell, 200, &g)?;
        for n in 1..=200usize {
            let mut acc = BigUint::zero();
            for k in 1..=n {
                acc += g.value(k) * series.integer(n - k).unwrap();
            }
            let expected = series.integer(n).unwrap() * BigUint::from(n);
            if !(acc.clone() % BigUint::from(n)).is_zero() || acc != expected {
                pass = false;
                worst = format!("residue at ell={ell}, n={n}");
            }
        }
    }
    checks.push(Check::new(
        "convolution sum divisible by n at every step (n<=200, ell<=12)",
        pass,
        if pass {
            "exact-division invariant".to_string()
        } else {
            worst
        },
    ));

    Ok(Report {
        suite: "identities".into(),
        checks,
    })
}
