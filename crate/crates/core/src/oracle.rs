//! Independent ground truth at tiny scale: count commuting tuples in the
//! symmetric group by direct enumeration and by centralizer recursion, and
//! count conjugacy classes by cycle type.
//!
//! These counters never touch the series recurrences; agreement of
//! `raw / n!` with the count tables is the strongest end-to-end check in the
//! crate.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::factorial;
use crate::partitions::for_each_partition;
use crate::{Error, Result};

/// A permutation of `{0, .., degree-1}` as a dense image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Build from an image array; every value must appear exactly once.
    pub fn from_images(images: Vec<u8>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if (v as usize) >= images.len() || seen[v as usize] {
                return Err(Error::InvalidArgument(format!(
                    "image array {images:?} is not a permutation"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .enumerate()
            .all(|(i, _)| {
                self.images[other.images[i] as usize] == other.images[self.images[i] as usize]
            })
    }
}

/// Which counter produced an [`OracleResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    BruteForce,
    CentralizerRecursion,
}

impl std::fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleMethod::BruteForce => write!(f, "brute"),
            OracleMethod::CentralizerRecursion => write!(f, "centralizer"),
        }
    }
}

/// Outcome of one oracle run: the raw tuple count and its normalization by
/// `n!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub n: usize,
    pub ell: u32,
    pub raw: BigUint,
    pub normalized: BigRational,
    pub method: OracleMethod,
    pub elapsed: Duration,
}

fn normalized(raw: &BigUint, n: usize) -> BigRational {
    BigRational::new(
        BigInt::from(raw.clone()),
        BigInt::from(factorial(n as u64)),
    )
}

const BRUTE_N_CAP: usize = 6;
const BRUTE_ELL_CAP: u32 = 4;
const HOM_N_CAP: usize = 8;

/// All permutations of degree `n` in lexicographic order, padded to fixed
/// arrays of width 8 (points at or beyond `n` stay fixed).
fn all_permutations(n: usize) -> Vec<[u8; 8]> {
    assert!(n <= 8);
    let mut out = Vec::new();
    let mut current: [u8; 8] = [0, 1, 2, 3, 4, 5, 6, 7];
    let mut chosen = [false; 8];
    fn rec(
        pos: usize,
        n: usize,
        current: &mut [u8; 8],
        chosen: &mut [bool; 8],
        out: &mut Vec<[u8; 8]>,
    ) {
        if pos == n {
            out.push(*current);
            return;
        }
        for v in 0..n {
            if !chosen[v] {
                chosen[v] = true;
                current[pos] = v as u8;
                rec(pos + 1, n, current, chosen, out);
                chosen[v] = false;
            }
        }
    }
    rec(0, n, &mut current, &mut chosen, &mut out);
    out
}

fn compose_arrays(a: &[u8; 8], b: &[u8; 8]) -> [u8; 8] {
    let mut r = [0u8; 8];
    for i in 0..8 {
        r[i] = a[b[i] as usize];
    }
    r
}

fn arrays_commute(a: &[u8; 8], b: &[u8; 8]) -> bool {
    (0..8).all(|i| a[b[i] as usize] == b[a[i] as usize])
}

/// Count the tuples in the symmetric group on `n` points whose `ell`
/// components pairwise commute, by backtracking: a partial tuple is extended
/// only with elements of the intersection of the centralizers of all chosen
/// components.
///
/// Capped at `n <= 6`, `ell <= 4`; beyond that the request is refused with a
/// cost estimate.
pub fn count_commuting_tuples(n: usize, ell: u32) -> Result<OracleResult> {
    if n < 1 {
        return Err(Error::TooSmall {
            what: "n",
            min: 1,
            got: n as u64,
        });
    }
    if n > BRUTE_N_CAP || ell > BRUTE_ELL_CAP {
        let order: u128 = (1..=n as u128).product();
        let tuples = order.saturating_pow(ell);
        return Err(Error::TooLarge {
            what: if n > BRUTE_N_CAP { "n" } else { "ell" },
            max: if n > BRUTE_N_CAP {
                BRUTE_N_CAP as u64
            } else {
                BRUTE_ELL_CAP as u64
            },
            got: if n > BRUTE_N_CAP { n as u64 } else { ell as u64 },
            detail: format!(
                "backtracking would explore up to (n!)^ell = {tuples} tuples; \
                 use the centralizer recursion or the series instead"
            ),
        });
    }
    let started = Instant::now();
    let perms = all_permutations(n);
    let count = perms.len();
    let words = count.div_ceil(64);

    // centralizer of each element as a bitset over the whole group
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64; words]; count];
    for i in 0..count {
        for j in i..count {
            if arrays_commute(&perms[i], &perms[j]) {
                rows[i][j / 64] |= 1 << (j % 64);
                rows[j][i / 64] |= 1 << (i % 64);
            }
        }
    }

    let mut full = vec![u64::MAX; words];
    if count % 64 != 0 {
        full[words - 1] = (1u64 << (count % 64)) - 1;
    }

    fn extend(depth_left: u32, candidates: &[u64], rows: &[Vec<u64>]) -> BigUint {
        if depth_left == 0 {
            return BigUint::one();
        }
        if depth_left == 1 {
            let bits: u64 = candidates.iter().map(|w| w.count_ones() as u64).sum();
            return BigUint::from(bits);
        }
        let mut total = BigUint::zero();
        for (w, &word) in candidates.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let g = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let narrowed: Vec<u64> = candidates
                    .iter()
                    .zip(&rows[g])
                    .map(|(a, b)| a & b)
                    .collect();
                total += extend(depth_left - 1, &narrowed, rows);
            }
        }
        total
    }

    let raw = extend(ell, &full, &rows);
    Ok(OracleResult {
        n,
        ell,
        normalized: normalized(&raw, n),
        raw,
        method: OracleMethod::BruteForce,
        elapsed: started.elapsed(),
    })
}

struct GroupContext {
    perms: Vec<[u8; 8]>,
    index: HashMap<[u8; 8], u32>,
    inverses: Vec<u32>,
}

impl GroupContext {
    fn new(n: usize) -> GroupContext {
        let perms = all_permutations(n);
        let index: HashMap<[u8; 8], u32> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u32))
            .collect();
        let inverses = perms
            .iter()
            .map(|p| {
                let mut inv = [0u8; 8];
                for (i, &v) in p.iter().enumerate() {
                    inv[v as usize] = i as u8;
                }
                index[&inv]
            })
            .collect();
        GroupContext {
            perms,
            index,
            inverses,
        }
    }
}

/// `|maps from the rank-ell free abelian group into the subgroup|`, by the
/// class equation: sum over conjugacy classes of the subgroup of
/// `|class| * (count at rank ell-1 in the centralizer of a representative)`.
fn hom_count(
    group: &[u32],
    ell: u32,
    ctx: &GroupContext,
    memo: &mut HashMap<(Vec<u32>, u32), BigUint>,
) -> BigUint {
    if ell == 0 {
        return BigUint::one();
    }
    if ell == 1 {
        return BigUint::from(group.len());
    }
    let key = (group.to_vec(), ell);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut visited: HashMap<u32, bool> = group.iter().map(|&g| (g, false)).collect();
    let mut total = BigUint::zero();
    for &g in group {
        if visited[&g] {
            continue;
        }
        // conjugation orbit of g inside the subgroup
        let mut class_size = 0u64;
        for &x in group {
            let conjugate = compose_arrays(
                &compose_arrays(&ctx.perms[x as usize], &ctx.perms[g as usize]),
                &ctx.perms[ctx.inverses[x as usize] as usize],
            );
            let c = ctx.index[&conjugate];
            let seen = visited.get_mut(&c).expect("subgroup is closed under conjugation");
            if !*seen {
                *seen = true;
                class_size += 1;
            }
        }
        let centralizer: Vec<u32> = group
            .iter()
            .copied()
            .filter(|&h| {
                arrays_commute(&ctx.perms[h as usize], &ctx.perms[g as usize])
            })
            .collect();
        total += hom_count(&centralizer, ell - 1, ctx, memo) * class_size;
    }
    memo.insert(key, total.clone());
    total
}

/// Count the commuting tuples through the bijection with maps from the
/// rank-`ell` free abelian group, by memoized centralizer recursion.
/// Capped at `n <= 8`.
pub fn count_hom_by_centralizers(n: usize, ell: u32) -> Result<OracleResult> {
    if n < 1 {
        return Err(Error::TooSmall {
            what: "n",
            min: 1,
            got: n as u64,
        });
    }
    if n > HOM_N_CAP {
        return Err(Error::TooLarge {
            what: "n",
            max: HOM_N_CAP as u64,
            got: n as u64,
            detail: "the centralizer recursion enumerates whole subgroups".into(),
        });
    }
    let started = Instant::now();
    let ctx = GroupContext::new(n);
    let group: Vec<u32> = (0..ctx.perms.len() as u32).collect();
    let mut memo = HashMap::new();
    let raw = hom_count(&group, ell, &ctx, &mut memo);
    Ok(OracleResult {
        n,
        ell,
        normalized: normalized(&raw, n),
        raw,
        method: OracleMethod::CentralizerRecursion,
        elapsed: started.elapsed(),
    })
}

/// Number of conjugacy classes of the symmetric group on `n` points, by
/// enumerating cycle types. The class sizes `n! / prod(j^c_j c_j!)` are
/// summed and must reproduce `n!` exactly.
pub fn conjugacy_class_count(n: usize) -> Result<u64> {
    if n > HOM_N_CAP {
        return Err(Error::TooLarge {
            what: "n",
            max: HOM_N_CAP as u64,
            got: n as u64,
            detail: "cycle-type enumeration is a desk-scale oracle".into(),
        });
    }
    let mut classes = 0u64;
    let mut total_size = BigUint::zero();
    let order = factorial(n as u64);
    for_each_partition(n, |parts| {
        classes += 1;
        let mut symmetry = BigUint::one();
        for &(j, c) in parts {
            symmetry *= BigUint::from(j).pow(c) * factorial(c as u64);
        }
        total_size += &order / symmetry;
    });
    assert_eq!(total_size, order, "class sizes must partition the group");
    Ok(classes)
}
