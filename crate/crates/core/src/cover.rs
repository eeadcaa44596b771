//! Exact cover by dancing links: select rows of a sparse 0/1 matrix so that
//! every column is covered exactly once. Column choice is
//! fewest-candidates-first, so the search is deterministic.

use std::time::Instant;

use crate::budget::SearchBudget;

const ROOT: usize = 0;

struct Node {
    left: usize,
    right: usize,
    up: usize,
    down: usize,
    /// Column header index for cell nodes; column size for header nodes.
    col_or_size: usize,
    /// Row id for cell nodes; unused on headers.
    row: usize,
}

/// A dancing-links matrix. Columns are fixed at construction; rows are
/// appended with [`ExactCover::add_row`].
pub struct ExactCover {
    nodes: Vec<Node>,
    num_rows: usize,
}

/// What a search run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    /// Row ids forming an exact cover (including preselected rows).
    Solution(Vec<usize>),
    /// The search space was exhausted without finding a cover.
    Exhausted,
    /// The node or time budget ran out first.
    BudgetExceeded,
}

pub struct CoverRun {
    pub outcome: CoverOutcome,
    pub nodes: u64,
}

impl ExactCover {
    pub fn new(num_cols: usize) -> Self {
        let mut nodes = Vec::with_capacity(num_cols + 1);
        for i in 0..=num_cols {
            nodes.push(Node {
                left: if i == 0 { num_cols } else { i - 1 },
                right: if i == num_cols { 0 } else { i + 1 },
                up: i,
                down: i,
                col_or_size: 0,
                row: usize::MAX,
            });
        }
        ExactCover { nodes, num_rows: 0 }
    }

    /// Appends a row covering the given columns (0-based) and returns its id.
    /// Column indices must be distinct.
    pub fn add_row(&mut self, cols: &[usize]) -> usize {
        let row = self.num_rows;
        self.num_rows += 1;
        let mut first_in_row = usize::MAX;
        for &c in cols {
            let header = c + 1;
            let idx = self.nodes.len();
            let up = self.nodes[header].up;
            self.nodes.push(Node {
                left: idx,
                right: idx,
                up,
                down: header,
                col_or_size: header,
                row,
            });
            self.nodes[up].down = idx;
            self.nodes[header].up = idx;
            self.nodes[header].col_or_size += 1;
            if first_in_row == usize::MAX {
                first_in_row = idx;
            } else {
                // splice into the circular row list before first_in_row
                let last = self.nodes[first_in_row].left;
                self.nodes[idx].left = last;
                self.nodes[idx].right = first_in_row;
                self.nodes[last].right = idx;
                self.nodes[first_in_row].left = idx;
            }
        }
        row
    }

    fn cover(&mut self, header: usize) {
        let (l, r) = (self.nodes[header].left, self.nodes[header].right);
        self.nodes[l].right = r;
        self.nodes[r].left = l;
        let mut i = self.nodes[header].down;
        while i != header {
            let mut j = self.nodes[i].right;
            while j != i {
                let (u, d) = (self.nodes[j].up, self.nodes[j].down);
                self.nodes[u].down = d;
                self.nodes[d].up = u;
                let c = self.nodes[j].col_or_size;
                self.nodes[c].col_or_size -= 1;
                j = self.nodes[j].right;
            }
            i = self.nodes[i].down;
        }
    }

    fn uncover(&mut self, header: usize) {
        let mut i = self.nodes[header].up;
        while i != header {
            let mut j = self.nodes[i].left;
            while j != i {
                let c = self.nodes[j].col_or_size;
                self.nodes[c].col_or_size += 1;
                let (u, d) = (self.nodes[j].up, self.nodes[j].down);
                self.nodes[u].down = j;
                self.nodes[d].up = j;
                j = self.nodes[j].left;
            }
            i = self.nodes[i].up;
        }
        let (l, r) = (self.nodes[header].left, self.nodes[header].right);
        self.nodes[l].right = header;
        self.nodes[r].left = header;
    }

    /// Forces a row into the partial solution by covering all of its columns.
    /// Panics if any of its columns is already covered.
    pub fn preselect_row(&mut self, row: usize, selected: &mut Vec<usize>) {
        let cell = self
            .nodes
            .iter()
            .position(|n| n.row == row)
            .expect("row exists");
        let mut headers = vec![self.nodes[cell].col_or_size];
        let mut j = self.nodes[cell].right;
        while j != cell {
            headers.push(self.nodes[j].col_or_size);
            j = self.nodes[j].right;
        }
        for header in headers {
            self.cover(header);
        }
        selected.push(row);
    }

    /// Depth-first Algorithm X for the first solution extending `selected`.
    /// `Exhausted` proves no cover exists (within the preselection).
    pub fn search_first(&mut self, selected: &mut Vec<usize>, budget: &SearchBudget) -> CoverRun {
        let start = Instant::now();
        let mut nodes = 0u64;
        let outcome = self.search_rec(selected, budget, &start, &mut nodes);
        CoverRun { outcome, nodes }
    }

    fn search_rec(
        &mut self,
        selected: &mut Vec<usize>,
        budget: &SearchBudget,
        start: &Instant,
        nodes: &mut u64,
    ) -> CoverOutcome {
        if self.nodes[ROOT].right == ROOT {
            return CoverOutcome::Solution(selected.clone());
        }
        if budget.exhausted(*nodes, start) {
            return CoverOutcome::BudgetExceeded;
        }
        // fewest-candidates-first column
        let mut best = usize::MAX;
        let mut best_size = usize::MAX;
        let mut c = self.nodes[ROOT].right;
        while c != ROOT {
            if self.nodes[c].col_or_size < best_size {
                best_size = self.nodes[c].col_or_size;
                best = c;
            }
            c = self.nodes[c].right;
        }
        if best_size == 0 {
            return CoverOutcome::Exhausted;
        }
        self.cover(best);
        let mut r = self.nodes[best].down;
        let mut budget_hit = false;
        while r != best {
            *nodes += 1;
            selected.push(self.nodes[r].row);
            let mut j = self.nodes[r].right;
            while j != r {
                self.cover(self.nodes[j].col_or_size);
                j = self.nodes[j].right;
            }
            let sub = self.search_rec(selected, budget, start, nodes);
            let mut j = self.nodes[r].left;
            while j != r {
                self.uncover(self.nodes[j].col_or_size);
                j = self.nodes[j].left;
            }
            selected.pop();
            match sub {
                CoverOutcome::Solution(s) => {
                    self.uncover(best);
                    return CoverOutcome::Solution(s);
                }
                CoverOutcome::BudgetExceeded => {
                    budget_hit = true;
                    break;
                }
                CoverOutcome::Exhausted => {}
            }
            r = self.nodes[r].down;
        }
        self.uncover(best);
        if budget_hit {
            CoverOutcome::BudgetExceeded
        } else {
            CoverOutcome::Exhausted
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Knuth's standard 7-column example: unique solution {row 0, 3, 4}.
    fn knuth_instance() -> ExactCover {
        let mut ec = ExactCover::new(7);
        ec.add_row(&[2, 4, 5]); // 0
        ec.add_row(&[0, 3, 6]); // 1
        ec.add_row(&[1, 2, 5]); // 2
        ec.add_row(&[0, 3]); // 3
        ec.add_row(&[1, 6]); // 4
        ec.add_row(&[3, 4, 6]); // 5
        ec
    }

    #[test]
    fn finds_the_unique_cover() {
        let mut ec = knuth_instance();
        let mut selected = Vec::new();
        let run = ec.search_first(&mut selected, &SearchBudget::unlimited());
        match run.outcome {
            CoverOutcome::Solution(mut rows) => {
                rows.sort();
                assert_eq!(rows, vec![0, 3, 4]);
            }
            other => panic!("expected a solution, got {other:?}"),
        }
    }

    #[test]
    fn preselection_constrains_the_search() {
        let mut ec = knuth_instance();
        let mut selected = Vec::new();
        ec.preselect_row(3, &mut selected);
        let run = ec.search_first(&mut selected, &SearchBudget::unlimited());
        match run.outcome {
            CoverOutcome::Solution(mut rows) => {
                rows.sort();
                assert_eq!(rows, vec![0, 3, 4]);
            }
            other => panic!("expected a solution, got {other:?}"),
        }
        // preselecting an incompatible pair exhausts
        let mut ec = knuth_instance();
        let mut selected = Vec::new();
        ec.preselect_row(1, &mut selected);
        let run = ec.search_first(&mut selected, &SearchBudget::unlimited());
        assert_eq!(run.outcome, CoverOutcome::Exhausted);
    }

    #[test]
    fn infeasible_instance_exhausts() {
        let mut ec = ExactCover::new(3);
        ec.add_row(&[0, 1]);
        ec.add_row(&[1, 2]);
        let run = ec.search_first(&mut Vec::new(), &SearchBudget::unlimited());
        assert_eq!(run.outcome, CoverOutcome::Exhausted);
    }

    #[test]
    fn node_budget_reports_exceeded() {
        let mut ec = knuth_instance();
        let budget = SearchBudget::with_max_nodes(0);
        let run = ec.search_first(&mut Vec::new(), &budget);
        assert_eq!(run.outcome, CoverOutcome::BudgetExceeded);
    }
}
