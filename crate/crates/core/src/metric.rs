//! The Kendall tau metric and its cyclic variant: distance computation,
//! distance tables from the identity, ball enumeration, and inversion-count
//! (Mahonian) sphere-size arithmetic.
//!
//! Both metrics are graph distances on a Cayley graph of `S_n`. The Kendall
//! metric is generated by the `n - 1` adjacent transpositions; the cyclic
//! variant adds the exchange of the entries at positions `1` and `n`. Right
//! multiplication `σ ↦ compose(σ, ρ)` is an isometry for both, which is what
//! lets every pair distance reduce to a distance from the identity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::perm::{factorial, Permutation};
use crate::{Error, Result};

/// Which distance is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Kendall,
    CyclicKendall,
}

impl Metric {
    /// The generating transpositions, as position maps applied by
    /// left-composition. For the cyclic metric and `n >= 3` this is the
    /// `n - 1` adjacent exchanges plus the wrap exchange; duplicates that
    /// would arise at `n = 2` are dropped.
    pub fn generators(self, n: usize) -> Vec<Permutation> {
        let mut gens = Vec::new();
        for i in 1..n {
            let mut image: Vec<u8> = (1..=n as u8).collect();
            image.swap(i - 1, i);
            gens.push(Permutation::new(image).unwrap());
        }
        if self == Metric::CyclicKendall && n >= 3 {
            let mut image: Vec<u8> = (1..=n as u8).collect();
            image.swap(0, n - 1);
            gens.push(Permutation::new(image).unwrap());
        }
        gens
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Kendall => write!(f, "kendall"),
            Metric::CyclicKendall => write!(f, "cyclic"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kendall" => Ok(Metric::Kendall),
            "cyclic" | "cyclic-kendall" => Ok(Metric::CyclicKendall),
            other => Err(Error::Parse(format!(
                "unknown metric {other:?}; expected kendall or cyclic"
            ))),
        }
    }
}

/// Kendall tau distance: the number of value pairs ordered oppositely in the
/// two permutations. Computed in `O(n log n)` by merge-sort inversion
/// counting on the relative permutation `compose(a, b⁻¹)`.
pub fn kendall_distance(a: &Permutation, b: &Permutation) -> Result<u32> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    let relative = a.compose(&b.inverse())?;
    Ok(count_inversions(relative.image()))
}

/// The quadratic direct formula: counts value pairs `(i, j)` with
/// `a⁻¹(i) < a⁻¹(j)` and `b⁻¹(i) > b⁻¹(j)`. Retained as an independent
/// oracle for [`kendall_distance`].
pub fn kendall_distance_direct(a: &Permutation, b: &Permutation) -> Result<u32> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    let pos_a = a.inverse();
    let pos_b = b.inverse();
    let n = a.n();
    let mut count = 0u32;
    for i in 1..=n {
        for j in i + 1..=n {
            let a_order = pos_a.apply(i) < pos_a.apply(j);
            let b_order = pos_b.apply(i) < pos_b.apply(j);
            if a_order != b_order {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Cyclic Kendall tau distance, via right-invariant reduction against the
/// cached distance table for `(n, CyclicKendall)`.
pub fn cyclic_kendall_distance(a: &Permutation, b: &Permutation) -> Result<u32> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    let table = distance_table(a.n(), Metric::CyclicKendall)?;
    table.distance(a, b)
}

/// Distance between two permutations under the chosen metric.
pub fn distance(a: &Permutation, b: &Permutation, metric: Metric) -> Result<u32> {
    match metric {
        Metric::Kendall => kendall_distance(a, b),
        Metric::CyclicKendall => cyclic_kendall_distance(a, b),
    }
}

fn count_inversions(values: &[u8]) -> u32 {
    let mut work: Vec<u8> = values.to_vec();
    let mut scratch = vec![0u8; values.len()];
    merge_count(&mut work, &mut scratch)
}

fn merge_count(values: &mut [u8], scratch: &mut [u8]) -> u32 {
    let n = values.len();
    if n <= 1 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = values.split_at_mut(mid);
    let mut inversions = merge_count(left, scratch) + merge_count(right, scratch);
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            scratch[k] = left[i];
            i += 1;
        } else {
            scratch[k] = right[j];
            inversions += (left.len() - i) as u32;
            j += 1;
        }
        k += 1;
    }
    while i < left.len() {
        scratch[k] = left[i];
        i += 1;
        k += 1;
    }
    while j < right.len() {
        scratch[k] = right[j];
        j += 1;
        k += 1;
    }
    values.copy_from_slice(&scratch[..n]);
    inversions
}

/// Default cap on `n` for full distance tables (`10!` one-byte entries).
pub const DEFAULT_TABLE_CAPACITY: usize = 10;
/// Absolute cap; `12!` entries is ~479 MB and anything beyond is refused.
pub const MAX_TABLE_CAPACITY: usize = 12;

static TABLE_CAPACITY: AtomicUsize = AtomicUsize::new(DEFAULT_TABLE_CAPACITY);

/// Current cap on table sizes, shared by every cached-table consumer.
pub fn table_capacity() -> usize {
    TABLE_CAPACITY.load(Ordering::Relaxed)
}

/// Raises (or lowers) the table cap. `n = 11` costs roughly 40 MB per table;
/// values above [`MAX_TABLE_CAPACITY`] are refused.
pub fn set_table_capacity(n: usize) -> Result<()> {
    if !(2..=MAX_TABLE_CAPACITY).contains(&n) {
        return Err(Error::CapacityExceeded {
            n,
            limit: MAX_TABLE_CAPACITY,
        });
    }
    TABLE_CAPACITY.store(n, Ordering::Relaxed);
    Ok(())
}

/// Distances from the identity to every permutation of `S_n`, indexed by
/// lexicographic rank. Immutable once built.
pub struct DistanceTable {
    n: usize,
    metric: Metric,
    dist: Vec<u8>,
}

impl DistanceTable {
    /// Breadth-first search over the Cayley graph from the identity.
    pub fn build(n: usize, metric: Metric) -> Result<DistanceTable> {
        Self::build_with_capacity(n, metric, table_capacity())
    }

    pub fn build_with_capacity(n: usize, metric: Metric, capacity: usize) -> Result<DistanceTable> {
        if n < 2 || n > capacity.min(MAX_TABLE_CAPACITY) {
            return Err(Error::CapacityExceeded {
                n,
                limit: capacity.min(MAX_TABLE_CAPACITY),
            });
        }
        let size = factorial(n) as usize;
        let mut dist = vec![u8::MAX; size];
        let mut queue = VecDeque::new();
        dist[0] = 0; // the identity has rank 0
        queue.push_back(0u64);
        let wrap = metric == Metric::CyclicKendall && n >= 3;
        while let Some(rank) = queue.pop_front() {
            let sigma = Permutation::unrank(n, rank)?;
            let d = dist[rank as usize];
            let mut visit = |image: Vec<u8>| {
                let tau = Permutation::new(image).expect("generator image stays a permutation");
                let r = tau.rank().index;
                if dist[r as usize] == u8::MAX {
                    dist[r as usize] = d + 1;
                    queue.push_back(r);
                }
            };
            for i in 0..n - 1 {
                let mut image = sigma.image().to_vec();
                image.swap(i, i + 1);
                visit(image);
            }
            if wrap {
                let mut image = sigma.image().to_vec();
                image.swap(0, n - 1);
                visit(image);
            }
        }
        debug_assert!(dist.iter().all(|&d| d != u8::MAX), "Cayley graph is connected");
        Ok(DistanceTable { n, metric, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// `d(e, σ)` for the permutation of the given rank.
    pub fn distance_by_rank(&self, rank: u64) -> u32 {
        self.dist[rank as usize] as u32
    }

    pub fn distance_from_identity(&self, p: &Permutation) -> Result<u32> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch(p.n(), self.n));
        }
        Ok(self.distance_by_rank(p.rank().index))
    }

    /// `d(a, b)` by right-invariance: `d(a, b) = d(e, compose(a, b⁻¹))`.
    pub fn distance(&self, a: &Permutation, b: &Permutation) -> Result<u32> {
        if a.n() != self.n || b.n() != self.n {
            return Err(Error::SizeMismatch(a.n(), b.n()));
        }
        let relative = a.compose(&b.inverse())?;
        Ok(self.distance_by_rank(relative.rank().index))
    }

    pub fn max_distance(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0) as u32
    }

    /// Number of permutations with `d(e, σ) <= r`; the ball size of the
    /// metric, independent of the center.
    pub fn count_within(&self, r: u32) -> u64 {
        self.dist.iter().filter(|&&d| (d as u32) <= r).count() as u64
    }

    /// Entry counts by distance, from 0 to the maximum.
    pub fn histogram(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.max_distance() as usize + 1];
        for &d in &self.dist {
            counts[d as usize] += 1;
        }
        counts
    }
}

/// Free-function form of [`DistanceTable::build`].
pub fn build_distance_table(n: usize, metric: Metric) -> Result<DistanceTable> {
    DistanceTable::build(n, metric)
}

type TableCache = Mutex<HashMap<(usize, Metric), Arc<DistanceTable>>>;

static TABLE_CACHE: OnceLock<TableCache> = OnceLock::new();

/// The process-wide table for `(n, metric)`, built on first request. The
/// cache lock is held across construction, so concurrent requests for the
/// same table build it exactly once.
pub fn distance_table(n: usize, metric: Metric) -> Result<Arc<DistanceTable>> {
    let cache = TABLE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("table cache poisoned");
    if let Some(table) = guard.get(&(n, metric)) {
        return Ok(Arc::clone(table));
    }
    let table = Arc::new(DistanceTable::build(n, metric)?);
    guard.insert((n, metric), Arc::clone(&table));
    Ok(table)
}

/// All permutations within distance `r` of `center`, sorted. For `r <= 2`
/// this expands generators outward with deduplication and never touches a
/// full table; larger radii filter the cached [`DistanceTable`].
pub fn ball(center: &Permutation, r: u32, metric: Metric) -> Result<Vec<Permutation>> {
    if r <= 2 {
        let gens = metric.generators(center.n());
        let mut members: HashSet<Permutation> = HashSet::new();
        members.insert(center.clone());
        let mut frontier = vec![center.clone()];
        for _ in 0..r {
            let mut next = Vec::new();
            for sigma in frontier {
                for g in &gens {
                    let tau = g.compose(&sigma)?;
                    if members.insert(tau.clone()) {
                        next.push(tau);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Permutation> = members.into_iter().collect();
        out.sort();
        return Ok(out);
    }
    let table = distance_table(center.n(), metric)?;
    let n = center.n();
    let mut out = Vec::new();
    for index in 0..factorial(n) {
        if table.distance_by_rank(index) <= r {
            // d(e, y) <= r  ⇔  d(compose(y, center), center) <= r
            let y = Permutation::unrank(n, index)?;
            out.push(y.compose(center)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Number of permutations of `S_n` with exactly `k` inversions, by the
/// standard row-by-row dynamic program, in exact big-integer arithmetic.
/// Out-of-range `k` gives 0.
pub fn mahonian(n: usize, k: u64) -> BigUint {
    let row = mahonian_row(n);
    row.get(k as usize).cloned().unwrap_or_else(BigUint::zero)
}

/// The full inversion-count distribution for `S_n`: entry `k` counts the
/// permutations at Kendall distance exactly `k` from the identity.
pub fn mahonian_row(n: usize) -> Vec<BigUint> {
    assert!(n >= 1, "n must be positive");
    let mut row = vec![BigUint::one()];
    for m in 2..=n {
        let max_k = m * (m - 1) / 2;
        let mut next = vec![BigUint::zero(); max_k + 1];
        let mut window = BigUint::zero();
        for k in 0..=max_k {
            // sliding sum of row[k - m + 1 ..= k]
            if k < row.len() {
                window += &row[k];
            }
            if k >= m {
                let drop = k - m;
                if drop < row.len() {
                    window -= &row[drop];
                }
            }
            next[k] = window.clone();
        }
        row = next;
    }
    row
}

/// `Σ_{k <= r} mahonian(n, k)`: the size of a radius-`r` Kendall ball.
pub fn kendall_ball_size(n: usize, r: u64) -> BigUint {
    let row = mahonian_row(n);
    let cap = (row.len() as u64 - 1).min(r) as usize;
    let mut total = BigUint::zero();
    for entry in row.iter().take(cap + 1) {
        total += entry;
    }
    total
}

/// Minimum pairwise distance over a slice of at least two permutations.
pub fn pairwise_min_distance(words: &[Permutation], metric: Metric) -> Result<u32> {
    #[cfg(feature = "parallel")]
    {
        pairwise_extreme_par(words, metric, false)
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairwise_min_distance_seq(words, metric)
    }
}

/// Sequential fallback for [`pairwise_min_distance`].
pub fn pairwise_min_distance_seq(words: &[Permutation], metric: Metric) -> Result<u32> {
    pairwise_extreme_seq(words, metric, false)
}

/// Maximum pairwise distance (the diameter of the set as an anticode).
pub fn pairwise_max_distance(words: &[Permutation], metric: Metric) -> Result<u32> {
    #[cfg(feature = "parallel")]
    {
        pairwise_extreme_par(words, metric, true)
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairwise_max_distance_seq(words, metric)
    }
}

/// Sequential fallback for [`pairwise_max_distance`].
pub fn pairwise_max_distance_seq(words: &[Permutation], metric: Metric) -> Result<u32> {
    pairwise_extreme_seq(words, metric, true)
}

enum DistOp {
    Direct,
    Table(Arc<DistanceTable>),
}

impl DistOp {
    fn resolve(n: usize, metric: Metric) -> Result<DistOp> {
        match metric {
            Metric::Kendall => Ok(DistOp::Direct),
            Metric::CyclicKendall => Ok(DistOp::Table(distance_table(n, metric)?)),
        }
    }

    fn distance(&self, a: &Permutation, b: &Permutation) -> Result<u32> {
        match self {
            DistOp::Direct => kendall_distance(a, b),
            DistOp::Table(table) => table.distance(a, b),
        }
    }
}

fn check_pairwise_input(words: &[Permutation], want_pair: bool) -> Result<usize> {
    if words.is_empty() || (want_pair && words.len() < 2) {
        return Err(Error::Precondition(
            "pairwise distance needs at least two permutations".into(),
        ));
    }
    let n = words[0].n();
    if words.iter().any(|w| w.n() != n) {
        return Err(Error::Precondition(
            "pairwise distance needs equal-length permutations".into(),
        ));
    }
    Ok(n)
}

fn pairwise_extreme_seq(words: &[Permutation], metric: Metric, want_max: bool) -> Result<u32> {
    let n = check_pairwise_input(words, !want_max)?;
    if words.len() < 2 {
        return Ok(0);
    }
    let op = DistOp::resolve(n, metric)?;
    let mut extreme = if want_max { 0 } else { u32::MAX };
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = op.distance(&words[i], &words[j])?;
            extreme = if want_max { extreme.max(d) } else { extreme.min(d) };
        }
    }
    Ok(extreme)
}

#[cfg(feature = "parallel")]
fn pairwise_extreme_par(words: &[Permutation], metric: Metric, want_max: bool) -> Result<u32> {
    use rayon::prelude::*;

    let n = check_pairwise_input(words, !want_max)?;
    if words.len() < 2 {
        return Ok(0);
    }
    let op = DistOp::resolve(n, metric)?;
    let row_extreme = |i: usize| -> Result<u32> {
        let mut extreme = if want_max { 0 } else { u32::MAX };
        for j in i + 1..words.len() {
            let d = op.distance(&words[i], &words[j])?;
            extreme = if want_max { extreme.max(d) } else { extreme.min(d) };
        }
        Ok(extreme)
    };
    let results: Vec<u32> = (0..words.len() - 1)
        .into_par_iter()
        .map(row_extreme)
        .collect::<Result<Vec<u32>>>()?;
    Ok(if want_max {
        results.into_iter().max().unwrap_or(0)
    } else {
        results.into_iter().min().unwrap_or(u32::MAX)
    })
}
