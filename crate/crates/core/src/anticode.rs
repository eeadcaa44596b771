//! Anticodes (sets of bounded diameter), optimal-anticode search, the
//! code-anticode bound, diameter-perfect verification, and the midpoint
//! probe showing the Kendall graph is not distance regular.

use crate::budget::SearchBudget;
use crate::clique::{self, Graph};
use crate::code::{identity_distance_order, CodeBook};
use crate::metric::{self, ball, distance_table, kendall_ball_size, Metric};
use crate::perm::{factorial, Permutation};
use crate::{Error, Result};

use num_traits::ToPrimitive;

/// A set of permutations together with its exact diameter (the maximum
/// pairwise distance), recomputed on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anticode {
    n: usize,
    metric: Metric,
    members: Vec<Permutation>,
    diameter: u32,
}

impl Anticode {
    pub fn new(n: usize, metric: Metric, mut members: Vec<Permutation>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Precondition("an anticode cannot be empty".into()));
        }
        for m in &members {
            if m.n() != n {
                return Err(Error::SizeMismatch(m.n(), n));
            }
        }
        members.sort();
        members.dedup();
        let diameter = metric::pairwise_max_distance(&members, metric)?;
        Ok(Anticode {
            n,
            metric,
            members,
            diameter,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// True when the member set equals `ball(center, radius)` for one of its
    /// own members (any ball contains its center).
    pub fn is_ball_of_radius(&self, radius: u32) -> Result<bool> {
        for center in &self.members {
            let b = ball(center, radius, self.metric)?;
            if b == self.members {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Exact maximum pairwise distance of a nonempty set.
pub fn diameter(members: &[Permutation], metric: Metric) -> Result<u32> {
    metric::pairwise_max_distance(members, metric)
}

/// The union of the radius-1 Kendall ball at the identity with its right
/// translate by the transposition `(1,2)`: an optimal anticode of diameter
/// 3 with exactly `2(n - 1)` members. Size and diameter are checked on
/// construction.
pub fn construct_diameter3_anticode(n: usize) -> Result<Anticode> {
    if n < 4 {
        return Err(Error::Precondition(
            "the diameter-3 anticode construction needs n >= 4".into(),
        ));
    }
    let e = Permutation::identity(n);
    let swap12 = e.adjacent_transpose(1)?;
    let sphere = ball(&e, 1, Metric::Kendall)?;
    let mut members = sphere.clone();
    for w in &sphere {
        members.push(w.compose(&swap12)?);
    }
    let anticode = Anticode::new(n, Metric::Kendall, members)?;
    assert_eq!(anticode.len(), 2 * (n - 1), "construction size must be 2(n-1)");
    assert_eq!(anticode.diameter(), 3, "construction diameter must be 3");
    Ok(anticode)
}

/// One permutation from each reverse pair: everything with symbol 1 before
/// symbol 2. Size `n!/2`; the diameter comes out to `C(n,2) - 1` because two
/// permutations reach the full diameter only by being mutual reverses, and
/// reversal flips the (1,2) order.
pub fn half_space_anticode(n: usize) -> Result<Anticode> {
    if n < 2 {
        return Err(Error::Precondition("half-space anticode needs n >= 2".into()));
    }
    if n > metric::MAX_TABLE_CAPACITY {
        return Err(Error::CapacityExceeded {
            n,
            limit: metric::MAX_TABLE_CAPACITY,
        });
    }
    let members: Vec<Permutation> = crate::perm::iter_sn(n)
        .filter(|sigma| {
            let positions = sigma.inverse();
            positions.apply(1) < positions.apply(2)
        })
        .collect();
    Anticode::new(n, Metric::Kendall, members)
}

/// The two-word code `{p, reverse(p)}`, at minimum Kendall distance
/// `C(n,2)`.
pub fn reverse_pair_code(p: &Permutation) -> Result<CodeBook> {
    let n = p.n();
    if n < 2 {
        return Err(Error::Precondition("reverse pair needs n >= 2".into()));
    }
    let d = (n * (n - 1) / 2) as u32;
    CodeBook::new(n, Metric::Kendall, vec![p.clone(), p.reverse()], Some(d))
}

/// Result of an exact optimal-anticode search.
#[derive(Debug, Clone)]
pub struct AnticodeSearchOutcome {
    pub n: usize,
    pub diameter: u32,
    pub metric: Metric,
    pub max_size: usize,
    /// False when the budget ran out, making `max_size` only a lower bound.
    pub proven: bool,
    pub witnesses: Vec<Anticode>,
    /// True when `witnesses` is the complete list of optima.
    pub enumerated_all: bool,
    /// For enumerated runs: whether every optimum is a radius-`⌊D/2⌋` ball.
    /// `None` means not checked (enumeration did not run or was cut short).
    pub all_optima_are_balls: Option<bool>,
    pub nodes: u64,
}

/// Enumeration (and the all-optima-are-balls classification) only runs when
/// the whole space fits a full search comfortably.
pub const ENUMERATION_MAX_N: usize = 5;

/// Maximum-size subset with pairwise distance at most `d`, by exact clique
/// search on the "close" graph. With `enumerate_optima` and `n <= 5`, every
/// optimum is listed and classified as ball / non-ball.
pub fn optimal_anticode_search(
    n: usize,
    d: u32,
    metric: Metric,
    enumerate_optima: bool,
    budget: &SearchBudget,
) -> Result<AnticodeSearchOutcome> {
    let size = factorial(n) as usize;
    let perms: Vec<Permutation> = (0..size as u64)
        .map(|rank| Permutation::unrank(n, rank))
        .collect::<Result<Vec<_>>>()?;
    let table = distance_table(n, metric)?;
    let graph = Graph::from_predicate(size, |a, b| {
        table.distance(&perms[a], &perms[b]).expect("same n") <= d
    });
    let order = identity_distance_order(&perms, &table);
    let run = clique::max_clique(&graph, &order, budget);
    let to_anticode = |vertices: &[usize]| -> Result<Anticode> {
        Anticode::new(n, metric, vertices.iter().map(|&v| perms[v].clone()).collect())
    };
    let mut outcome = AnticodeSearchOutcome {
        n,
        diameter: d,
        metric,
        max_size: run.best.len(),
        proven: run.proven,
        witnesses: vec![to_anticode(&run.best)?],
        enumerated_all: false,
        all_optima_are_balls: None,
        nodes: run.nodes,
    };
    if enumerate_optima && n <= ENUMERATION_MAX_N && run.proven {
        let (cliques, complete, enum_nodes) =
            clique::enumerate_cliques_of_size(&graph, outcome.max_size, budget);
        outcome.nodes += enum_nodes;
        if complete {
            outcome.witnesses = cliques
                .iter()
                .map(|c| to_anticode(c))
                .collect::<Result<Vec<_>>>()?;
            outcome.enumerated_all = true;
            let radius = d / 2;
            let mut all_balls = true;
            for w in &outcome.witnesses {
                if !w.is_ball_of_radius(radius)? {
                    all_balls = false;
                    break;
                }
            }
            outcome.all_optima_are_balls = Some(all_balls);
        }
    }
    Ok(outcome)
}

/// An upper bound on codes of minimum distance `d` from the largest
/// verified anticode of diameter at most `d - 1` this toolkit can produce.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub n: usize,
    pub d: u32,
    /// `floor(n! / anticode_size)`.
    pub bound: u64,
    pub anticode_size: u64,
    pub anticode_diameter: u32,
    pub anticode_used: String,
    /// False when the best anticode on hand has diameter strictly below
    /// `d - 1`, making the bound weaker than the code-anticode limit.
    pub exact_diameter_match: bool,
    /// A known code meeting the bound, when one exists.
    pub achieving_code: Option<CodeBook>,
}

/// Code-anticode bound for minimum Kendall distance `d`: picks the largest
/// anticode of diameter at most `d - 1` among the verified families (balls,
/// the diameter-3 construction, the reverse-pair half-space, the full
/// space) and divides it into `n!`.
pub fn code_anticode_bound(n: usize, d: u32) -> Result<BoundReport> {
    if d < 1 {
        return Err(Error::Precondition("minimum distance must be at least 1".into()));
    }
    let space = factorial(n);
    let full_diameter = (n * (n - 1) / 2) as u32;
    let target = d - 1;
    // (size, diameter, label)
    let mut candidates: Vec<(u64, u32, String)> = Vec::new();
    let radius = target / 2;
    let ball = kendall_ball_size(n, radius as u64)
        .to_u64()
        .ok_or_else(|| Error::Precondition("ball size exceeds u64".into()))?;
    candidates.push((
        ball,
        (2 * radius).min(full_diameter),
        format!("radius-{radius} ball"),
    ));
    if target >= 1 && n >= 2 {
        candidates.push((2, 1, "adjacent pair".into()));
    }
    if target >= 3 && n >= 4 {
        let anticode = construct_diameter3_anticode(n)?;
        candidates.push((
            anticode.len() as u64,
            anticode.diameter(),
            "diameter-3 double ball".into(),
        ));
    }
    if target >= full_diameter.saturating_sub(1) && n >= 2 {
        let half = half_space_anticode(n)?;
        candidates.push((
            half.len() as u64,
            half.diameter(),
            "reverse-pair half space".into(),
        ));
    }
    if target >= full_diameter {
        candidates.push((space, full_diameter, "full space".into()));
    }
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let (size, diam, label) = candidates.into_iter().next().expect("ball always present");
    let achieving_code = if d == full_diameter && n >= 2 {
        Some(reverse_pair_code(&Permutation::identity(n))?)
    } else if d > full_diameter {
        Some(CodeBook::new(
            n,
            Metric::Kendall,
            vec![Permutation::identity(n)],
            None,
        )?)
    } else {
        None
    };
    Ok(BoundReport {
        n,
        d,
        bound: space / size,
        anticode_size: size,
        anticode_diameter: diam,
        anticode_used: label,
        exact_diameter_match: diam == target,
        achieving_code,
    })
}

/// True when `|C| · |A| = n!` for a code and anticode at matching
/// parameters; the preconditions (same space, same metric, minimum distance
/// one more than the diameter) are errors, not a `false` verdict.
pub fn verify_diameter_perfect(code: &CodeBook, anticode: &Anticode) -> Result<bool> {
    if code.n() != anticode.n() {
        return Err(Error::SizeMismatch(code.n(), anticode.n()));
    }
    if code.metric() != anticode.metric() {
        return Err(Error::Precondition(
            "code and anticode must use the same metric".into(),
        ));
    }
    let min_distance = code.min_distance()?;
    if min_distance != anticode.diameter() + 1 {
        return Err(Error::Precondition(format!(
            "minimum distance {min_distance} does not exceed the anticode diameter {} by one",
            anticode.diameter()
        )));
    }
    Ok(code.len() as u64 * anticode.len() as u64 == factorial(code.n()))
}

/// Counts of common distance-1 neighbors for the two standard pairs at
/// Kendall distance 2. Unequal counts witness that the graph is not
/// distance regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidpointProbe {
    pub n: usize,
    pub distance_to_first: u32,
    pub distance_to_second: u32,
    pub midpoints_first: u64,
    pub midpoints_second: u64,
    pub not_distance_regular: bool,
}

/// Probes `σ = e`, `π = [3,1,2,4,…,n]`, `ρ = [2,1,4,3,5,…,n]`: both pairs
/// sit at distance 2 but have different numbers of common neighbors.
pub fn distance_regularity_probe(n: usize) -> Result<MidpointProbe> {
    if n < 4 {
        return Err(Error::Precondition("the midpoint probe needs n >= 4".into()));
    }
    let e = Permutation::identity(n);
    let mut first: Vec<u8> = (1..=n as u8).collect();
    first[0] = 3;
    first[1] = 1;
    first[2] = 2;
    let pi = Permutation::new(first)?;
    let mut second: Vec<u8> = (1..=n as u8).collect();
    second.swap(0, 1);
    second.swap(2, 3);
    let rho = Permutation::new(second)?;

    let count_midpoints = |target: &Permutation| -> Result<u64> {
        let mut count = 0;
        for i in 1..n {
            let alpha = e.adjacent_transpose(i)?;
            if metric::kendall_distance(&alpha, target)? == 1 {
                count += 1;
            }
        }
        Ok(count)
    };
    let midpoints_first = count_midpoints(&pi)?;
    let midpoints_second = count_midpoints(&rho)?;
    Ok(MidpointProbe {
        n,
        distance_to_first: metric::kendall_distance(&e, &pi)?,
        distance_to_second: metric::kendall_distance(&e, &rho)?,
        midpoints_first,
        midpoints_second,
        not_distance_regular: midpoints_first != midpoints_second,
    })
}

/// Sphere-packing / code-anticode consistency: `|C| · |A| <= n!` for any
/// code whose minimum distance exceeds the anticode diameter.
pub fn code_anticode_product_ok(code: &CodeBook, anticode: &Anticode) -> bool {
    code.len() as u64 * anticode.len() as u64 <= factorial(code.n())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(image: &[u8]) -> Permutation {
        Permutation::new(image.to_vec()).unwrap()
    }

    #[test]
    fn diameter_examples() {
        let square = vec![
            p(&[1, 2, 3, 4]),
            p(&[2, 1, 3, 4]),
            p(&[1, 2, 4, 3]),
            p(&[2, 1, 4, 3]),
        ];
        assert_eq!(diameter(&square, Metric::Kendall).unwrap(), 2);
        assert_eq!(diameter(&[p(&[3, 1, 2])], Metric::Kendall).unwrap(), 0);
        let sphere = ball(&Permutation::identity(5), 1, Metric::Kendall).unwrap();
        assert_eq!(diameter(&sphere, Metric::Kendall).unwrap(), 2);
        assert!(diameter(&[], Metric::Kendall).is_err());
    }

    #[test]
    fn diameter3_construction() {
        for n in 4..=6 {
            let anticode = construct_diameter3_anticode(n).unwrap();
            assert_eq!(anticode.len(), 2 * (n - 1));
            assert_eq!(anticode.diameter(), 3);
        }
        assert!(construct_diameter3_anticode(3).is_err());
        // the two balls overlap in exactly 2 permutations
        let n = 5;
        let e = Permutation::identity(n);
        let sphere = ball(&e, 1, Metric::Kendall).unwrap();
        let union = construct_diameter3_anticode(n).unwrap();
        assert_eq!(2 * sphere.len() - union.len(), 2);
    }

    #[test]
    fn half_space_n4() {
        let anticode = half_space_anticode(4).unwrap();
        assert_eq!(anticode.len(), 12);
        assert_eq!(anticode.diameter(), 5);
        // one member from each reverse pair
        for sigma in crate::perm::iter_sn(4) {
            let in_a = anticode.members().contains(&sigma);
            let rev_in_a = anticode.members().contains(&sigma.reverse());
            assert!(in_a != rev_in_a);
        }
    }

    #[test]
    fn reverse_pair_examples() {
        let code = reverse_pair_code(&p(&[1, 2, 3])).unwrap();
        assert_eq!(code.words(), &[p(&[1, 2, 3]), p(&[3, 2, 1])]);
        assert_eq!(code.min_distance().unwrap(), 3);
        assert_eq!(code.verify_claim().unwrap(), Some(true));
    }

    #[test]
    fn reverse_pair_with_half_space_is_diameter_perfect() {
        let code = reverse_pair_code(&Permutation::identity(4)).unwrap();
        let anticode = half_space_anticode(4).unwrap();
        assert!(verify_diameter_perfect(&code, &anticode).unwrap());
    }

    #[test]
    fn s5_cyclic_code_is_diameter_perfect_with_its_ball() {
        let code = crate::code::s5_perfect_cyclic_code();
        let members = ball(&Permutation::identity(5), 1, Metric::CyclicKendall).unwrap();
        let anticode = Anticode::new(5, Metric::CyclicKendall, members).unwrap();
        assert_eq!(anticode.diameter(), 2);
        assert!(verify_diameter_perfect(&code, &anticode).unwrap());
    }

    #[test]
    fn single_word_code_is_not_diameter_perfect() {
        let code = CodeBook::new(
            4,
            Metric::Kendall,
            vec![Permutation::identity(4)],
            None,
        )
        .unwrap();
        let anticode = half_space_anticode(4).unwrap();
        // precondition (min distance undefined for one word) is an error
        assert!(verify_diameter_perfect(&code, &anticode).is_err());
        // but the counting identity alone already fails: 1 * 12 != 24
        assert!(code.len() as u64 * anticode.len() as u64 != factorial(4));
    }

    #[test]
    fn bound_examples() {
        let b = code_anticode_bound(5, 4).unwrap();
        assert_eq!(b.bound, 15);
        assert_eq!(b.anticode_size, 8);
        assert!(b.exact_diameter_match);

        let b = code_anticode_bound(5, 3).unwrap();
        assert_eq!(b.bound, 24);
        assert_eq!(b.anticode_size, 5);

        let b = code_anticode_bound(4, 3).unwrap();
        assert_eq!(b.bound, 6);

        // d at the full diameter: half space, attained by a reverse pair
        let b = code_anticode_bound(4, 6).unwrap();
        assert_eq!(b.bound, 2);
        assert_eq!(b.anticode_size, 12);
        let achieving = b.achieving_code.unwrap();
        assert_eq!(achieving.len(), 2);

        // d beyond the full diameter: the whole space is an anticode
        let b = code_anticode_bound(4, 7).unwrap();
        assert_eq!(b.bound, 1);

        let b = code_anticode_bound(5, 2).unwrap();
        assert_eq!(b.bound, 60);
    }

    #[test]
    fn probe_counts() {
        for n in [5usize, 6] {
            let probe = distance_regularity_probe(n).unwrap();
            assert_eq!(probe.distance_to_first, 2);
            assert_eq!(probe.distance_to_second, 2);
            assert_eq!(probe.midpoints_first, 1);
            assert_eq!(probe.midpoints_second, 2);
            assert!(probe.not_distance_regular);
        }
        assert!(distance_regularity_probe(3).is_err());
    }

    #[test]
    fn anticode_search_s4() {
        let outcome =
            optimal_anticode_search(4, 2, Metric::Kendall, true, &SearchBudget::unlimited())
                .unwrap();
        assert_eq!(outcome.max_size, 4);
        assert!(outcome.proven);
        assert!(outcome.enumerated_all);
        // the non-ball optimum is among the witnesses
        let square = Anticode::new(
            4,
            Metric::Kendall,
            vec![
                p(&[1, 2, 3, 4]),
                p(&[2, 1, 3, 4]),
                p(&[1, 2, 4, 3]),
                p(&[2, 1, 4, 3]),
            ],
        )
        .unwrap();
        assert!(outcome.witnesses.contains(&square));
        assert!(!square.is_ball_of_radius(1).unwrap());
        assert_eq!(outcome.all_optima_are_balls, Some(false));
    }

    #[test]
    fn anticode_search_respects_ball_lower_bound() {
        // the radius-R ball is always a feasible anticode of diameter 2R
        let outcome =
            optimal_anticode_search(4, 4, Metric::Kendall, false, &SearchBudget::unlimited())
                .unwrap();
        let ball_size = kendall_ball_size(4, 2).to_u64().unwrap();
        assert!(outcome.max_size as u64 >= ball_size);
        assert_eq!(outcome.max_size, 9);
    }
}
