//! Exact maximum-clique search by branch and bound with greedy-coloring
//! upper bounds, plus enumeration of every clique of a given size. Used for
//! maximum-code and optimal-anticode searches; single-threaded and
//! deterministic for a fixed vertex order.

use std::time::Instant;

use crate::budget::SearchBudget;

pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    /// Builds the graph whose edges are the vertex pairs satisfying `f`.
    pub fn from_predicate(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if f(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a][b] = true;
            self.adj[b][a] = true;
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }
}

#[derive(Debug, Clone)]
pub struct CliqueRun {
    pub best: Vec<usize>,
    /// True when the search space was fully explored, so `best` is a
    /// maximum clique; false means `best` is only a lower bound.
    pub proven: bool,
    pub nodes: u64,
}

struct Searcher<'g> {
    graph: &'g Graph,
    budget: &'g SearchBudget,
    start: Instant,
    nodes: u64,
    best: Vec<usize>,
    exceeded: bool,
}

impl<'g> Searcher<'g> {
    /// Greedy coloring of `cand`; returns vertices reordered with their
    /// color numbers (1-based), colors nondecreasing.
    fn color_sort(&self, cand: &[usize]) -> Vec<(usize, usize)> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cand {
            let slot = classes
                .iter()
                .position(|class| class.iter().all(|&u| !self.graph.connected(u, v)));
            match slot {
                Some(k) => classes[k].push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut ordered = Vec::with_capacity(cand.len());
        for (k, class) in classes.iter().enumerate() {
            for &v in class {
                ordered.push((v, k + 1));
            }
        }
        ordered
    }

    fn expand(&mut self, current: &mut Vec<usize>, cand: &[usize]) {
        self.nodes += 1;
        if self.budget.exhausted(self.nodes, &self.start) {
            self.exceeded = true;
            return;
        }
        if cand.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        }
        let colored = self.color_sort(cand);
        for i in (0..colored.len()).rev() {
            let (v, color) = colored[i];
            if current.len() + color <= self.best.len() {
                return;
            }
            let next: Vec<usize> = colored[..i]
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| self.graph.connected(u, v))
                .collect();
            current.push(v);
            self.expand(current, &next);
            current.pop();
            if self.exceeded {
                return;
            }
        }
    }
}

/// Maximum clique of `graph`, visiting vertices in the given order.
pub fn max_clique(graph: &Graph, order: &[usize], budget: &SearchBudget) -> CliqueRun {
    let mut searcher = Searcher {
        graph,
        budget,
        start: Instant::now(),
        nodes: 0,
        best: Vec::new(),
        exceeded: false,
    };
    let cand: Vec<usize> = order.to_vec();
    searcher.expand(&mut Vec::new(), &cand);
    CliqueRun {
        best: searcher.best,
        proven: !searcher.exceeded,
        nodes: searcher.nodes,
    }
}

/// Every clique of exactly `size` vertices, each reported once in sorted
/// vertex order. The boolean is false when the budget cut enumeration short.
pub fn enumerate_cliques_of_size(
    graph: &Graph,
    size: usize,
    budget: &SearchBudget,
) -> (Vec<Vec<usize>>, bool, u64) {
    let start = Instant::now();
    let mut found = Vec::new();
    let mut nodes = 0u64;
    let mut complete = true;
    let cand: Vec<usize> = (0..graph.len()).collect();
    enumerate_rec(
        graph,
        size,
        budget,
        &start,
        &mut Vec::new(),
        &cand,
        &mut found,
        &mut nodes,
        &mut complete,
    );
    (found, complete, nodes)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    graph: &Graph,
    size: usize,
    budget: &SearchBudget,
    start: &Instant,
    current: &mut Vec<usize>,
    cand: &[usize],
    found: &mut Vec<Vec<usize>>,
    nodes: &mut u64,
    complete: &mut bool,
) {
    *nodes += 1;
    if budget.exhausted(*nodes, start) {
        *complete = false;
        return;
    }
    if current.len() == size {
        found.push(current.clone());
        return;
    }
    if current.len() + cand.len() < size {
        return;
    }
    for (i, &v) in cand.iter().enumerate() {
        let next: Vec<usize> = cand[i + 1..]
            .iter()
            .copied()
            .filter(|&u| graph.connected(u, v))
            .collect();
        current.push(v);
        enumerate_rec(graph, size, budget, start, current, &next, found, nodes, complete);
        current.pop();
        if !*complete {
            return;
        }
    }
}
