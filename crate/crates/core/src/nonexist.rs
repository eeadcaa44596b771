//! Covering linear systems for perfect single-error-correcting codes.
//!
//! Partition `S_n` into classes, count how many members of a radius-1 ball
//! land in each class, and the class-wise codeword counts of a putative
//! perfect code must solve an exact linear system. When that system has no
//! nonnegative integral solution, no perfect code exists. The basic system
//! partitions by the position of the value 1; the generalized pattern
//! systems partition by the ordered tuple of positions of the values
//! `1..=r`, whose coverage coefficients depend only on the tuple (an
//! adjacent swap moves the tuple independently of the unlabeled values), a
//! fact the builder re-verifies by brute-force counting before returning.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::code::CodeBook;
use crate::linalg::{self, LinearSolution};
use crate::metric::Metric;
use crate::perm::{Permutation, MAX_N};
use crate::{Error, Result};

/// `n!` in arbitrary precision.
pub fn big_factorial(n: usize) -> BigInt {
    let mut out = BigInt::one();
    for k in 2..=n {
        out *= BigInt::from(k);
    }
    out
}

/// Largest number of classes a pattern system may have.
pub const PATTERN_CLASS_BUDGET: usize = 10_000;
/// Largest number of candidate points tried when eliminating integral
/// solutions over a kernel.
pub const KERNEL_POINT_BUDGET: u64 = 1_000_000;

/// An exact-rational linear system `matrix · x = rhs` over a class partition
/// of `S_n`, for radius-1 Kendall covering.
#[derive(Debug, Clone)]
pub struct CoveringSystem {
    pub n: usize,
    /// Tuple length of the pattern partition; 1 for the basic system.
    pub pattern_r: usize,
    pub class_labels: Vec<String>,
    pub matrix: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
    /// Size of each class, `(n - r)!`.
    pub class_size: BigInt,
}

impl CoveringSystem {
    /// FNV-1a over a canonical rendering of the system; lets a certificate
    /// pin down exactly which system it solved.
    pub fn matrix_hash(&self) -> String {
        let mut text = format!("n={};r={};", self.n, self.pattern_r);
        for row in &self.matrix {
            for entry in row {
                text.push_str(&entry.to_string());
                text.push(',');
            }
            text.push(';');
        }
        text.push('|');
        for entry in &self.rhs {
            text.push_str(&entry.to_string());
            text.push(',');
        }
        format!("{:016x}", fnv1a64(text.as_bytes()))
    }

    /// Each ball has `n` members, so every column must sum to `n`.
    pub fn column_sums(&self) -> Vec<BigRational> {
        let size = self.matrix.len();
        (0..size)
            .map(|col| {
                let mut sum = BigRational::zero();
                for row in &self.matrix {
                    sum += &row[col];
                }
                sum
            })
            .collect()
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn ratio_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The basic covering system: classes are "value 1 sits at position i".
/// The matrix is tridiagonal with corner diagonal `n - 1`, interior diagonal
/// `n - 2`, off-diagonals 1, and right-hand side `(n - 1)!`.
pub fn build_basic_system(n: usize) -> Result<CoveringSystem> {
    if n < 3 {
        return Err(Error::Precondition("basic system needs n >= 3".into()));
    }
    let mut matrix = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        matrix[i][i] = if i == 0 || i == n - 1 {
            ratio_int(n as i64 - 1)
        } else {
            ratio_int(n as i64 - 2)
        };
        if i > 0 {
            matrix[i][i - 1] = BigRational::one();
        }
        if i + 1 < n {
            matrix[i][i + 1] = BigRational::one();
        }
    }
    let class_size = big_factorial(n - 1);
    let rhs = vec![BigRational::from_integer(class_size.clone()); n];
    Ok(CoveringSystem {
        n,
        pattern_r: 1,
        class_labels: (1..=n).map(|i| format!("({i})")).collect(),
        matrix,
        rhs,
        class_size,
    })
}

/// Strict diagonal dominance; `true` proves the matrix nonsingular.
pub fn gerschgorin_nonsingular(matrix: &[Vec<BigRational>]) -> bool {
    linalg::strictly_diagonally_dominant(matrix)
}

/// Solves a covering system exactly.
pub fn solve_exact(system: &CoveringSystem) -> LinearSolution {
    linalg::solve_exact(&system.matrix, &system.rhs)
}

/// A machine-checkable verdict with the evidence that justifies it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub metric: Metric,
    pub radius: u32,
    pub method: Method,
    pub verdict: Verdict,
    pub pattern_r: Option<usize>,
    pub matrix_hash: Option<String>,
    /// Unique solution, or affine particular solution, as exact fractions.
    pub solution: Option<Vec<String>>,
    pub kernel_dim: Option<usize>,
    /// Space and ball sizes backing a divisibility verdict.
    pub space_size: Option<String>,
    pub ball_size: Option<u64>,
    /// Codewords of an existence witness, in one-line notation.
    pub witness: Option<Vec<Vec<u8>>>,
    /// Seed for any sampled invariance spot-check.
    pub seed: Option<u64>,
    pub detail: String,
    pub stats: RunStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Nonexistence,
    ExistenceWitness,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Divisibility,
    UniqueRationalSolutionNonIntegral,
    ExactCover,
    PatternSystem,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub budget_exhausted: bool,
}

impl Certificate {
    fn blank(n: usize, method: Method, verdict: Verdict) -> Certificate {
        Certificate {
            n,
            metric: Metric::Kendall,
            radius: 1,
            method,
            verdict,
            pattern_r: None,
            matrix_hash: None,
            solution: None,
            kernel_dim: None,
            space_size: None,
            ball_size: None,
            witness: None,
            seed: None,
            detail: String::new(),
            stats: RunStats::default(),
        }
    }

    pub fn witness_codebook(&self) -> Result<Option<CodeBook>> {
        match &self.witness {
            None => Ok(None),
            Some(words) => {
                let perms = words
                    .iter()
                    .map(|w| Permutation::new(w.clone()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Some(CodeBook::new(self.n, self.metric, perms, None)?))
            }
        }
    }
}

fn fractions(values: &[BigRational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

/// Nonexistence check through the basic system: solve, and when the unique
/// solution is not integral no perfect single-error-correcting code exists.
pub fn basic_nonexistence_check(n: usize) -> Result<Certificate> {
    if n < 4 {
        return Err(Error::Precondition(
            "basic nonexistence check needs n >= 4".into(),
        ));
    }
    let start = Instant::now();
    let system = build_basic_system(n)?;
    let mut cert = Certificate::blank(n, Method::UniqueRationalSolutionNonIntegral, Verdict::Inconclusive);
    cert.pattern_r = Some(1);
    cert.matrix_hash = Some(system.matrix_hash());
    match solve_exact(&system) {
        LinearSolution::Unique(solution) => {
            let uniform = BigRational::new(big_factorial(n - 1), BigInt::from(n));
            debug_assert!(solution.iter().all(|x| *x == uniform));
            cert.solution = Some(fractions(&solution));
            cert.kernel_dim = Some(0);
            if solution.iter().all(|x| x.is_integer()) {
                cert.verdict = Verdict::Inconclusive;
                cert.detail = format!(
                    "unique solution ({}!/{}) = {} is integral; the system cannot rule the code out",
                    n - 1,
                    n,
                    uniform
                );
            } else {
                cert.verdict = Verdict::Nonexistence;
                cert.detail = format!(
                    "unique solution ({}!/{}) = {} is not an integer, so no class-wise codeword counts exist",
                    n - 1,
                    n,
                    uniform
                );
            }
        }
        LinearSolution::Affine { kernel, .. } => {
            cert.kernel_dim = Some(kernel.len());
            cert.detail = "basic system unexpectedly singular; no conclusion drawn".into();
        }
        LinearSolution::Inconsistent => {
            cert.verdict = Verdict::Nonexistence;
            cert.detail = "covering system is inconsistent; no codeword counts can exist".into();
        }
    }
    cert.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(cert)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn tuples_of_distinct_positions(n: usize, r: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for p in 1..=n as u8 {
            if !current.contains(&p) {
                current.push(p);
                rec(n, r, current, out);
                current.pop();
            }
        }
    }
    rec(n, r, &mut current, &mut out);
    out
}

/// Position tuple of the values `1..=r` in `sigma`.
fn tuple_of(sigma: &Permutation, r: usize) -> Vec<u8> {
    let inverse = sigma.inverse();
    (1..=r).map(|v| inverse.apply(v) as u8).collect()
}

/// Applies the adjacent swap `(i, i+1)` (1-based) to a position tuple.
fn swap_tuple(tuple: &[u8], i: u8) -> Vec<u8> {
    tuple
        .iter()
        .map(|&p| {
            if p == i {
                i + 1
            } else if p == i + 1 {
                i
            } else {
                p
            }
        })
        .collect()
}

/// Generalized covering system over classes indexed by the position tuple of
/// the values `1..=r`. Coefficients come from the tuple dynamics under the
/// identity and the `n - 1` adjacent swaps; the builder then re-verifies
/// them against brute-force ball counting (exhaustively for `n <= 7`, on
/// seeded samples above) and aborts on any mismatch.
pub fn build_pattern_system(n: usize, r: usize, seed: u64) -> Result<CoveringSystem> {
    if !(3..=MAX_N).contains(&n) {
        return Err(Error::Precondition(format!(
            "pattern system needs 3 <= n <= {MAX_N}, got {n}"
        )));
    }
    if r < 1 || r >= n {
        return Err(Error::Precondition(format!(
            "pattern tuple length must satisfy 1 <= r <= n - 1, got {r}"
        )));
    }
    let tuples = tuples_of_distinct_positions(n, r);
    if tuples.len() > PATTERN_CLASS_BUDGET {
        return Err(Error::CapacityExceeded {
            n: tuples.len(),
            limit: PATTERN_CLASS_BUDGET,
        });
    }
    let index: BTreeMap<Vec<u8>, usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let size = tuples.len();
    let mut matrix = vec![vec![BigRational::zero(); size]; size];
    for (col, tuple) in tuples.iter().enumerate() {
        // the codeword itself
        matrix[col][col] += BigRational::one();
        for i in 1..n as u8 {
            let moved = swap_tuple(tuple, i);
            let row = index[&moved];
            matrix[row][col] += BigRational::one();
        }
    }
    let class_size = big_factorial(n - r);
    let system = CoveringSystem {
        n,
        pattern_r: r,
        class_labels: tuples
            .iter()
            .map(|t| {
                let inner: Vec<String> = t.iter().map(|p| p.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect(),
        matrix,
        rhs: vec![BigRational::from_integer(class_size.clone()); size],
        class_size,
    };
    verify_pattern_coefficients(&system, &tuples, seed)?;
    Ok(system)
}

/// Brute-force check that every matrix coefficient equals the number of
/// radius-1 ball members of a class representative landing in each class,
/// independent of the representative chosen.
fn verify_pattern_coefficients(
    system: &CoveringSystem,
    tuples: &[Vec<u8>],
    seed: u64,
) -> Result<()> {
    let n = system.n;
    let r = system.pattern_r;
    let exhaustive = n <= 7;
    let index: BTreeMap<&[u8], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    for (col, tuple) in tuples.iter().enumerate() {
        let reps = class_representatives(n, tuple, exhaustive, seed.wrapping_add(col as u64));
        for sigma in reps {
            let mut counts = vec![0u64; tuples.len()];
            counts[index[tuple_of(&sigma, r).as_slice()]] += 1;
            for i in 1..n {
                let tau = sigma.adjacent_transpose(i)?;
                counts[index[tuple_of(&tau, r).as_slice()]] += 1;
            }
            for (row, &count) in counts.iter().enumerate() {
                if system.matrix[row][col] != ratio_int(count as i64) {
                    return Err(Error::InvarianceViolation(format!(
                        "class {} coefficient toward class {} is {} but representative [{sigma}] covers {count}",
                        system.class_labels[col], system.class_labels[row], system.matrix[row][col]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Members of the class with the given position tuple: all of them when
/// `exhaustive`, otherwise 20 seeded samples.
fn class_representatives(n: usize, tuple: &[u8], exhaustive: bool, seed: u64) -> Vec<Permutation> {
    let r = tuple.len();
    let free_positions: Vec<usize> = (1..=n)
        .filter(|p| !tuple.contains(&(*p as u8)))
        .collect();
    let free_values: Vec<u8> = (r as u8 + 1..=n as u8).collect();
    let place = |arrangement: &[u8]| -> Permutation {
        let mut image = vec![0u8; n];
        for (v, &p) in tuple.iter().enumerate() {
            image[p as usize - 1] = v as u8 + 1;
        }
        for (slot, &p) in free_positions.iter().enumerate() {
            image[p - 1] = arrangement[slot];
        }
        Permutation::new(image).expect("placement is a bijection")
    };
    if exhaustive {
        let mut out = Vec::new();
        let mut arrangement = free_values.clone();
        permute_all(&mut arrangement, 0, &mut |arr| out.push(place(arr)));
        out
    } else {
        let mut state = seed;
        (0..20)
            .map(|_| {
                let mut arrangement = free_values.clone();
                for i in (1..arrangement.len()).rev() {
                    let j = (splitmix64(&mut state) % (i as u64 + 1)) as usize;
                    arrangement.swap(i, j);
                }
                place(&arrangement)
            })
            .collect()
    }
}

fn permute_all(values: &mut Vec<u8>, k: usize, visit: &mut impl FnMut(&[u8])) {
    if k == values.len() {
        visit(values);
        return;
    }
    for i in k..values.len() {
        values.swap(k, i);
        permute_all(values, k + 1, visit);
        values.swap(k, i);
    }
}

/// Solves the pattern system and looks for nonnegative integral solutions.
/// Nonexistence when none exist; inconclusive when one does or when the
/// kernel is too large to enumerate.
pub fn pattern_nonexistence_check(n: usize, r: usize, seed: u64) -> Result<Certificate> {
    let start = Instant::now();
    let system = build_pattern_system(n, r, seed)?;
    let mut cert = Certificate::blank(n, Method::PatternSystem, Verdict::Inconclusive);
    cert.pattern_r = Some(r);
    cert.matrix_hash = Some(system.matrix_hash());
    cert.seed = Some(seed);
    let bound = BigRational::from_integer(system.class_size.clone());
    match solve_exact(&system) {
        LinearSolution::Unique(solution) => {
            cert.solution = Some(fractions(&solution));
            cert.kernel_dim = Some(0);
            let feasible = solution
                .iter()
                .all(|x| x.is_integer() && !x.is_negative() && *x <= bound);
            if feasible {
                cert.verdict = Verdict::Inconclusive;
                cert.detail =
                    "unique solution is a valid integral count vector; the system cannot rule the code out"
                        .into();
            } else {
                cert.verdict = Verdict::Nonexistence;
                cert.detail =
                    "unique solution is not a nonnegative integral count vector, so no perfect code exists"
                        .into();
            }
        }
        LinearSolution::Affine { particular, kernel } => {
            cert.solution = Some(fractions(&particular));
            cert.kernel_dim = Some(kernel.len());
            match integral_point_exists(&particular, &kernel, &bound) {
                Some((true, tried)) => {
                    cert.verdict = Verdict::Inconclusive;
                    cert.stats.nodes = tried;
                    cert.detail =
                        "an integral count vector exists in the solution space; the system cannot rule the code out"
                            .into();
                }
                Some((false, tried)) => {
                    cert.verdict = Verdict::Nonexistence;
                    cert.stats.nodes = tried;
                    cert.detail = format!(
                        "no nonnegative integral count vector exists (bounded enumeration over a dimension-{} kernel)",
                        kernel.len()
                    );
                }
                None => {
                    cert.verdict = Verdict::Inconclusive;
                    cert.detail = format!(
                        "kernel dimension {} is above the integral-enumeration budget",
                        kernel.len()
                    );
                }
            }
        }
        LinearSolution::Inconsistent => {
            cert.verdict = Verdict::Nonexistence;
            cert.detail = "covering system is inconsistent; no codeword counts can exist".into();
        }
    }
    cert.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(cert)
}

/// Searches `particular + span(kernel)` for a vector that is integral and
/// componentwise within `[0, bound]`. Only kernel dimensions 1 and 2 are
/// enumerated (by fixing pivot coordinates to integer grid values); `None`
/// means the search was out of budget.
fn integral_point_exists(
    particular: &[BigRational],
    kernel: &[Vec<BigRational>],
    bound: &BigRational,
) -> Option<(bool, u64)> {
    let bound_u = bound.to_integer().to_u64()?;
    let dims = kernel.len();
    if dims == 0 || dims > 2 {
        return None;
    }
    let points = (bound_u + 1).checked_pow(dims as u32)?;
    if points > KERNEL_POINT_BUDGET {
        return None;
    }
    let len = particular.len();
    let in_box = |x: &BigRational| x.is_integer() && !x.is_negative() && x <= bound;
    let mut tried = 0u64;
    if dims == 1 {
        let k = &kernel[0];
        let pivot = (0..len).find(|&i| !k[i].is_zero())?;
        for grid in 0..=bound_u {
            tried += 1;
            let t = (ratio_int(grid as i64) - &particular[pivot]) / &k[pivot];
            let candidate: Vec<BigRational> = (0..len)
                .map(|i| &particular[i] + &t * &k[i])
                .collect();
            if candidate.iter().all(in_box) {
                return Some((true, tried));
            }
        }
        return Some((false, tried));
    }
    // dims == 2: pick two coordinates with an invertible 2x2 minor
    let (k1, k2) = (&kernel[0], &kernel[1]);
    let mut pivots = None;
    'outer: for a in 0..len {
        for b in a + 1..len {
            let det = &k1[a] * &k2[b] - &k1[b] * &k2[a];
            if !det.is_zero() {
                pivots = Some((a, b, det));
                break 'outer;
            }
        }
    }
    let (a, b, det) = pivots?;
    for ga in 0..=bound_u {
        for gb in 0..=bound_u {
            tried += 1;
            let da = ratio_int(ga as i64) - &particular[a];
            let db = ratio_int(gb as i64) - &particular[b];
            let t1 = (&da * &k2[b] - &db * &k2[a]) / &det;
            let t2 = (&db * &k1[a] - &da * &k1[b]) / &det;
            let candidate: Vec<BigRational> = (0..len)
                .map(|i| &particular[i] + &t1 * &k1[i] + &t2 * &k2[i])
                .collect();
            if candidate.iter().all(in_box) {
                return Some((true, tried));
            }
        }
    }
    Some((false, tried))
}

/// For every choice of `r` increasing positions and `r` distinct values,
/// counts the codewords placing those values at those positions.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub r: usize,
    /// `|C| · (n - r)! / n!`, the count a perfectly uniform code would show.
    pub expected: BigRational,
    pub uniform: bool,
    pub min_count: u64,
    pub max_count: u64,
    /// `(positions, values) → count`, positions strictly increasing.
    pub counts: BTreeMap<(Vec<u8>, Vec<u8>), u64>,
}

pub fn verify_regularity(code: &CodeBook, r: usize) -> Result<RegularityReport> {
    let n = code.n();
    if r < 1 || r > n {
        return Err(Error::Precondition(format!(
            "regularity tuple length must satisfy 1 <= r <= n, got {r}"
        )));
    }
    if code.is_empty() {
        return Err(Error::Precondition("regularity needs a nonempty code".into()));
    }
    let mut positions = Vec::new();
    combinations(n, r, &mut Vec::new(), &mut positions);
    let value_tuples = tuples_of_distinct_positions(n, r);
    let mut counts = BTreeMap::new();
    let mut min_count = u64::MAX;
    let mut max_count = 0u64;
    for pos in &positions {
        for values in &value_tuples {
            let count = code
                .words()
                .iter()
                .filter(|sigma| {
                    pos.iter()
                        .zip(values)
                        .all(|(&p, &v)| sigma.apply(p as usize) == v as usize)
                })
                .count() as u64;
            min_count = min_count.min(count);
            max_count = max_count.max(count);
            counts.insert((pos.clone(), values.clone()), count);
        }
    }
    let expected = BigRational::new(
        BigInt::from(code.len()) * big_factorial(n - r),
        big_factorial(n),
    );
    let uniform = counts
        .values()
        .all(|&c| BigRational::from_integer(BigInt::from(c)) == expected);
    Ok(RegularityReport {
        r,
        expected,
        uniform,
        min_count,
        max_count,
        counts,
    })
}

fn combinations(n: usize, r: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if current.len() == r {
        out.push(current.clone());
        return;
    }
    let start = current.last().map_or(1, |&last| last + 1);
    for p in start..=n as u8 {
        current.push(p);
        combinations(n, r, current, out);
        current.pop();
    }
}

/// Replays a certificate's evidence and reports whether the recorded verdict
/// reproduces. Inconclusive verdicts make no mathematical claim and are
/// confirmed vacuously.
pub fn recheck(cert: &Certificate) -> Result<bool> {
    match cert.method {
        Method::Divisibility => {
            let (Some(space), Some(ball)) = (&cert.space_size, cert.ball_size) else {
                return Err(Error::Precondition(
                    "divisibility certificate lacks space/ball sizes".into(),
                ));
            };
            let space: BigInt = space
                .parse()
                .map_err(|_| Error::Parse("bad space size in certificate".into()))?;
            if space != big_factorial(cert.n) {
                return Ok(false);
            }
            let ball_now = crate::code::ball_size(cert.n, cert.radius, cert.metric)?;
            if ball_now != ball {
                return Ok(false);
            }
            let divides = (&space % BigInt::from(ball)).is_zero();
            Ok(divides == (cert.verdict != Verdict::Nonexistence))
        }
        Method::UniqueRationalSolutionNonIntegral => {
            let fresh = basic_nonexistence_check(cert.n)?;
            Ok(fresh.verdict == cert.verdict
                && fresh.matrix_hash == cert.matrix_hash
                && fresh.solution == cert.solution)
        }
        Method::PatternSystem => {
            let r = cert.pattern_r.ok_or_else(|| {
                Error::Precondition("pattern certificate lacks pattern_r".into())
            })?;
            let fresh = pattern_nonexistence_check(cert.n, r, cert.seed.unwrap_or(0))?;
            Ok(fresh.verdict == cert.verdict
                && fresh.matrix_hash == cert.matrix_hash
                && fresh.solution == cert.solution
                && fresh.kernel_dim == cert.kernel_dim)
        }
        Method::ExactCover => match cert.verdict {
            Verdict::ExistenceWitness => {
                let Some(code) = cert.witness_codebook()? else {
                    return Err(Error::Precondition(
                        "existence certificate lacks a witness".into(),
                    ));
                };
                let report = crate::code::verify_perfect(&code, cert.radius)?;
                Ok(report.is_perfect())
            }
            Verdict::Nonexistence => {
                let fresh = crate::code::exact_cover_perfect_search(
                    cert.n,
                    cert.radius,
                    cert.metric,
                    &crate::budget::SearchBudget::unlimited(),
                )?;
                Ok(fresh.verdict == Verdict::Nonexistence)
            }
            Verdict::Inconclusive => Ok(true),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::ball;

    #[test]
    fn basic_matrix_n4_matches_the_displayed_form() {
        let system = build_basic_system(4).unwrap();
        let expected: Vec<Vec<i64>> = vec![
            vec![3, 1, 0, 0],
            vec![1, 2, 1, 0],
            vec![0, 1, 2, 1],
            vec![0, 0, 1, 3],
        ];
        for (row, want) in system.matrix.iter().zip(&expected) {
            let got: Vec<BigRational> = row.clone();
            let want: Vec<BigRational> = want.iter().map(|&v| ratio_int(v)).collect();
            assert_eq!(got, want);
        }
        assert!(system.rhs.iter().all(|b| *b == ratio_int(6)));
    }

    #[test]
    fn basic_rows_and_columns_sum_to_n() {
        for n in 3..=9 {
            let system = build_basic_system(n).unwrap();
            for row in &system.matrix {
                let sum: BigRational = row.iter().cloned().sum();
                assert_eq!(sum, ratio_int(n as i64));
            }
            for sum in system.column_sums() {
                assert_eq!(sum, ratio_int(n as i64));
            }
        }
    }

    #[test]
    fn gerschgorin_examples() {
        assert!(gerschgorin_nonsingular(&build_basic_system(6).unwrap().matrix));
        let n4 = build_basic_system(4).unwrap();
        assert!(!gerschgorin_nonsingular(&n4.matrix));
        // yet exact rank shows it nonsingular
        assert_eq!(linalg::rank(&n4.matrix), 4);
        let identity: Vec<Vec<BigRational>> = (0..3)
            .map(|i| (0..3).map(|j| ratio_int((i == j) as i64)).collect())
            .collect();
        assert!(gerschgorin_nonsingular(&identity));
    }

    #[test]
    fn basic_solutions_are_uniform() {
        for (n, num, den) in [(5usize, 24i64, 5i64), (4, 6, 4)] {
            let system = build_basic_system(n).unwrap();
            match solve_exact(&system) {
                LinearSolution::Unique(x) => {
                    let uniform = BigRational::new(BigInt::from(num), BigInt::from(den));
                    assert!(x.iter().all(|v| *v == uniform));
                    assert!(linalg::verify(&system.matrix, &x, &system.rhs));
                }
                other => panic!("expected unique solution, got {other:?}"),
            }
        }
    }

    #[test]
    fn basic_check_verdicts() {
        assert_eq!(basic_nonexistence_check(5).unwrap().verdict, Verdict::Nonexistence);
        assert_eq!(basic_nonexistence_check(7).unwrap().verdict, Verdict::Nonexistence);
        assert_eq!(basic_nonexistence_check(4).unwrap().verdict, Verdict::Nonexistence);
        assert_eq!(basic_nonexistence_check(6).unwrap().verdict, Verdict::Inconclusive);
        assert!(basic_nonexistence_check(3).is_err());
    }

    #[test]
    fn n3_kernel_enumeration_is_inconclusive() {
        // the n = 3 basic matrix is singular and admits the integral count
        // vectors (0,2,0) and (1,0,1); a perfect code does exist in S_3
        let cert = pattern_nonexistence_check(3, 1, 42).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.kernel_dim, Some(1));
    }

    #[test]
    fn pattern_r1_reproduces_basic() {
        for n in 3..=8 {
            let basic = build_basic_system(n).unwrap();
            let pattern = build_pattern_system(n, 1, 42).unwrap();
            assert_eq!(basic.matrix, pattern.matrix);
            assert_eq!(basic.rhs, pattern.rhs);
            assert_eq!(basic.matrix_hash(), pattern.matrix_hash());
        }
    }

    #[test]
    fn pattern_n6_r2_shape() {
        let system = build_pattern_system(6, 2, 42).unwrap();
        assert_eq!(system.class_labels.len(), 30);
        assert_eq!(system.class_size, BigInt::from(24));
        assert!(system.rhs.iter().all(|b| *b == ratio_int(24)));
        for sum in system.column_sums() {
            assert_eq!(sum, ratio_int(6));
        }
    }

    #[test]
    fn pattern_coefficients_match_exhaustive_ball_counting_s5() {
        // independent oracle: count ball members landing in each class for
        // every member of every class, using the metric module's ball
        let n = 5;
        let r = 2;
        let system = build_pattern_system(n, r, 7).unwrap();
        let tuples = tuples_of_distinct_positions(n, r);
        for (col, tuple) in tuples.iter().enumerate() {
            for sigma in class_representatives(n, tuple, true, 0) {
                let members = ball(&sigma, 1, Metric::Kendall).unwrap();
                let mut counts = vec![0u64; tuples.len()];
                for member in &members {
                    let t = tuple_of(member, r);
                    let row = tuples.iter().position(|u| *u == t).unwrap();
                    counts[row] += 1;
                }
                for (row, &c) in counts.iter().enumerate() {
                    assert_eq!(system.matrix[row][col], ratio_int(c as i64));
                }
            }
        }
    }

    #[test]
    fn pattern_check_agrees_with_basic_for_n5() {
        let cert = pattern_nonexistence_check(5, 1, 42).unwrap();
        assert_eq!(cert.verdict, Verdict::Nonexistence);
        assert_eq!(
            basic_nonexistence_check(5).unwrap().verdict,
            cert.verdict
        );
        let cert6 = pattern_nonexistence_check(6, 1, 42).unwrap();
        assert_eq!(cert6.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn regularity_examples() {
        // the full space: every (value, position) count is (n-1)!
        let full = CodeBook::new(
            4,
            Metric::Kendall,
            crate::perm::iter_sn(4).collect(),
            None,
        )
        .unwrap();
        let report = verify_regularity(&full, 1).unwrap();
        assert!(report.uniform);
        assert!(report.counts.values().all(|&c| c == 6));
        let report2 = verify_regularity(&full, 2).unwrap();
        assert!(report2.uniform);
        assert!(report2.counts.values().all(|&c| c == 2));

        // the perfect cyclic code in S_5: 4 codewords per (value, position)
        let code = crate::code::s5_perfect_cyclic_code();
        let report = verify_regularity(&code, 1).unwrap();
        assert!(report.uniform);
        assert_eq!(report.expected, ratio_int(4));
        assert!(report.counts.values().all(|&c| c == 4));

        // a single word is nowhere near uniform
        let single = CodeBook::new(
            4,
            Metric::Kendall,
            vec![Permutation::identity(4)],
            None,
        )
        .unwrap();
        let report = verify_regularity(&single, 1).unwrap();
        assert!(!report.uniform);
        assert_eq!(report.min_count, 0);
        assert_eq!(report.max_count, 1);
    }

    #[test]
    fn recheck_reproduces_system_certificates() {
        let cert = basic_nonexistence_check(7).unwrap();
        assert!(recheck(&cert).unwrap());
        let cert = pattern_nonexistence_check(5, 2, 9).unwrap();
        assert!(recheck(&cert).unwrap());
        // tampering is caught
        let mut bad = basic_nonexistence_check(7).unwrap();
        bad.verdict = Verdict::Inconclusive;
        assert!(!recheck(&bad).unwrap());
    }

    #[test]
    fn recheck_reproduces_exact_cover_certificates() {
        use crate::budget::SearchBudget;
        use crate::code::exact_cover_perfect_search;

        let witness = exact_cover_perfect_search(3, 1, Metric::Kendall, &SearchBudget::unlimited())
            .unwrap();
        assert_eq!(witness.verdict, Verdict::ExistenceWitness);
        assert!(recheck(&witness).unwrap());

        let none = exact_cover_perfect_search(4, 1, Metric::Kendall, &SearchBudget::unlimited())
            .unwrap();
        assert_eq!(none.verdict, Verdict::Nonexistence);
        assert!(recheck(&none).unwrap());

        // a forged witness is refuted by the independent perfection check
        let mut forged = witness;
        forged.witness = Some(vec![vec![1, 2, 3], vec![2, 1, 3]]);
        assert!(!recheck(&forged).unwrap());
    }
}
