//! Rotation classes: the quotient of `S_n` by cyclic rotation of one-line
//! notation. There are `(n-1)!` classes of size `n` each. Two classes are
//! adjacent when some pair of representatives is at Kendall distance 1, and
//! class distance is the induced graph distance over that adjacency. Class
//! codes lift to cyclic-metric codes in `S_n` by taking all rotations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::code::CodeBook;
use crate::metric::{self, Metric};
use crate::perm::{factorial, Permutation};
use crate::{Error, Result};

/// An equivalence class of one-line rotations, identified by its
/// lexicographically minimal rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationClass {
    representative: Permutation,
}

impl RotationClass {
    pub fn n(&self) -> usize {
        self.representative.n()
    }

    pub fn representative(&self) -> &Permutation {
        &self.representative
    }

    /// Always `n`: the rotations of a permutation of distinct symbols are
    /// pairwise distinct.
    pub fn size(&self) -> usize {
        self.representative.n()
    }

    /// All `n` rotations, sorted.
    pub fn members(&self) -> Vec<Permutation> {
        let n = self.n();
        let mut out: Vec<Permutation> = (0..n).map(|k| self.representative.rotate_left(k)).collect();
        out.sort();
        debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
        out
    }
}

/// Canonical class of a permutation: the lex-min among its `n` rotations.
pub fn class_of(p: &Permutation) -> RotationClass {
    let representative = (0..p.n())
        .map(|k| p.rotate_left(k))
        .min()
        .expect("n >= 1");
    RotationClass { representative }
}

/// The quotient graph: one vertex per rotation class, edges between classes
/// holding representatives at Kendall distance 1.
pub struct ClassGraph {
    n: usize,
    reps: Vec<Permutation>,
    /// Permutation rank → class index.
    class_of_rank: Vec<u32>,
    adj: Vec<Vec<u32>>,
}

impl ClassGraph {
    pub fn build(n: usize) -> Result<ClassGraph> {
        if n < 2 || n > metric::table_capacity() {
            return Err(Error::CapacityExceeded {
                n,
                limit: metric::table_capacity(),
            });
        }
        let space = factorial(n) as usize;
        let mut class_of_rank = vec![u32::MAX; space];
        let mut reps: Vec<Permutation> = Vec::with_capacity(factorial(n - 1) as usize);
        for rank in 0..space as u64 {
            if class_of_rank[rank as usize] != u32::MAX {
                continue;
            }
            let sigma = Permutation::unrank(n, rank)?;
            // rank order visits the lex-min rotation first
            let class_index = reps.len() as u32;
            for k in 0..n {
                let member_rank = sigma.rotate_left(k).rank().index as usize;
                debug_assert!(class_of_rank[member_rank] == u32::MAX || k == 0);
                class_of_rank[member_rank] = class_index;
            }
            reps.push(sigma);
        }
        debug_assert_eq!(reps.len() as u64, factorial(n - 1));
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); reps.len()];
        for (index, rep) in reps.iter().enumerate() {
            for k in 0..n {
                let member = rep.rotate_left(k);
                for i in 1..n {
                    let neighbor = member.adjacent_transpose(i)?;
                    let other = class_of_rank[neighbor.rank().index as usize];
                    if other as usize != index && !adj[index].contains(&other) {
                        adj[index].push(other);
                    }
                }
            }
            adj[index].sort_unstable();
        }
        Ok(ClassGraph {
            n,
            reps,
            class_of_rank,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn representative(&self, index: usize) -> &Permutation {
        &self.reps[index]
    }

    pub fn class_index(&self, class: &RotationClass) -> Result<usize> {
        if class.n() != self.n {
            return Err(Error::SizeMismatch(class.n(), self.n));
        }
        Ok(self.class_of_rank[class.representative().rank().index as usize] as usize)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|nbrs| nbrs.len()).sum::<usize>() / 2
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|nbrs| nbrs.len()).collect()
    }

    fn bfs_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.class_count()];
        dist[source] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if dist[u as usize] == u32::MAX {
                    dist[u as usize] = dist[v] + 1;
                    queue.push_back(u as usize);
                }
            }
        }
        dist
    }

    /// Graph distance between two classes.
    pub fn distance(&self, a: &RotationClass, b: &RotationClass) -> Result<u32> {
        let source = self.class_index(a)?;
        let target = self.class_index(b)?;
        let dist = self.bfs_from(source);
        if dist[target] == u32::MAX {
            return Err(Error::Precondition("class graph is disconnected".into()));
        }
        Ok(dist[target])
    }

    /// Largest finite distance over all class pairs.
    pub fn graph_diameter(&self) -> u32 {
        (0..self.class_count())
            .map(|v| {
                self.bfs_from(v)
                    .into_iter()
                    .filter(|&d| d != u32::MAX)
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }
}

static GRAPH_CACHE: OnceLock<Mutex<HashMap<usize, Arc<ClassGraph>>>> = OnceLock::new();

/// Process-wide class graph for `n`, built once.
pub fn class_graph(n: usize) -> Result<Arc<ClassGraph>> {
    let cache = GRAPH_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("class graph cache poisoned");
    if let Some(graph) = guard.get(&n) {
        return Ok(Arc::clone(graph));
    }
    let graph = Arc::new(ClassGraph::build(n)?);
    guard.insert(n, Arc::clone(&graph));
    Ok(graph)
}

/// Distance between two rotation classes via the cached class graph.
pub fn class_distance(a: &RotationClass, b: &RotationClass) -> Result<u32> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    class_graph(a.n())?.distance(a, b)
}

/// Lifts a class code to `S_n` by taking every rotation of every class:
/// `n` times as many words, under the cyclic metric. The input classes must
/// be pairwise at class distance at least `d`; the lifted code's minimum
/// cyclic distance is then measured and recorded in the result (it is not
/// assumed to equal `d`).
pub fn lift_class_code(classes: &[RotationClass], d: u32) -> Result<CodeBook> {
    if classes.is_empty() {
        return Err(Error::Precondition("class code must be nonempty".into()));
    }
    let n = classes[0].n();
    for pair_a in 0..classes.len() {
        for pair_b in pair_a + 1..classes.len() {
            let dist = class_distance(&classes[pair_a], &classes[pair_b])?;
            if dist < d {
                return Err(Error::Precondition(format!(
                    "classes {:?} and {:?} are at class distance {dist} < {d}",
                    classes[pair_a].representative(),
                    classes[pair_b].representative()
                )));
            }
        }
    }
    let mut words = Vec::with_capacity(n * classes.len());
    for class in classes {
        words.extend(class.members());
    }
    let mut code = CodeBook::new(n, Metric::CyclicKendall, words, None)?;
    debug_assert_eq!(code.len(), n * classes.len());
    if code.len() >= 2 {
        code.claimed_min_distance = Some(code.min_distance()?);
    }
    Ok(code)
}

/// Experimental projection to `S_{n-1}`: rotate each class so symbol `n`
/// is last, then delete it. The minimum cyclic distance of the projected
/// code is measured and recorded, never asserted.
pub fn project_class_code(classes: &[RotationClass]) -> Result<CodeBook> {
    if classes.is_empty() {
        return Err(Error::Precondition("class code must be nonempty".into()));
    }
    let n = classes[0].n();
    if n < 3 {
        return Err(Error::Precondition("projection needs n >= 3".into()));
    }
    let mut words = Vec::with_capacity(classes.len());
    for class in classes {
        let rep = class.representative();
        let last_pos = rep
            .image()
            .iter()
            .position(|&v| v as usize == n)
            .expect("symbol n occurs");
        let rotated = rep.rotate_left((last_pos + 1) % n);
        debug_assert_eq!(rotated.apply(n), n);
        let image: Vec<u8> = rotated.image()[..n - 1].to_vec();
        words.push(Permutation::new(image)?);
    }
    let mut code = CodeBook::new(n - 1, Metric::CyclicKendall, words, None)?;
    if code.len() >= 2 {
        code.claimed_min_distance = Some(code.min_distance()?);
    }
    Ok(code)
}
