//! Exact linear algebra over the rationals: Gaussian elimination with
//! arbitrary-precision arithmetic, rank, kernel bases, and the strict
//! diagonal-dominance nonsingularity test. No floating point anywhere.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution {
    /// The matrix has full column rank and the system is consistent.
    Unique(Vec<BigRational>),
    /// Consistent but underdetermined: every solution is
    /// `particular + Σ tᵢ · kernel[i]` for rational `tᵢ`.
    Affine {
        particular: Vec<BigRational>,
        kernel: Vec<Vec<BigRational>>,
    },
    /// No solution exists.
    Inconsistent,
}

/// Strict row diagonal dominance: `|a_ii| > Σ_{j≠i} |a_ij|` for every row.
/// A `true` answer proves nonsingularity; `false` is merely inconclusive.
pub fn strictly_diagonally_dominant(matrix: &[Vec<BigRational>]) -> bool {
    matrix.iter().enumerate().all(|(i, row)| {
        let mut off_diagonal = BigRational::zero();
        for (j, entry) in row.iter().enumerate() {
            if j != i {
                off_diagonal += entry.abs();
            }
        }
        row.get(i).is_some_and(|d| d.abs() > off_diagonal)
    })
}

/// Rank of a rational matrix, by elimination.
pub fn rank(matrix: &[Vec<BigRational>]) -> usize {
    let mut work: Vec<Vec<BigRational>> = matrix.to_vec();
    reduce(&mut work).len()
}

/// Solves `A x = b` exactly. The returned solution (unique or particular) is
/// always re-substituted into the system before being returned.
pub fn solve_exact(matrix: &[Vec<BigRational>], rhs: &[BigRational]) -> LinearSolution {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "matrix and rhs dimensions must agree");
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut work: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut augmented = row.clone();
            augmented.push(b.clone());
            augmented
        })
        .collect();

    let pivots = reduce(&mut work);
    // A pivot in the augmented column means 0 = nonzero.
    if pivots.iter().any(|&(_, col)| col == cols) {
        return LinearSolution::Inconsistent;
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, col)| col).collect();
    let mut particular = vec![BigRational::zero(); cols];
    for &(row, col) in &pivots {
        particular[col] = work[row][cols].clone();
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    debug_assert!(verify(matrix, &particular, rhs), "solution must satisfy the system");

    if free_cols.is_empty() {
        return LinearSolution::Unique(particular);
    }

    let mut kernel = Vec::with_capacity(free_cols.len());
    for &free in &free_cols {
        let mut basis = vec![BigRational::zero(); cols];
        basis[free] = BigRational::one();
        for &(row, col) in &pivots {
            basis[col] = -work[row][free].clone();
        }
        kernel.push(basis);
    }
    LinearSolution::Affine { particular, kernel }
}

/// Substitutes `x` into `A x = b`.
pub fn verify(matrix: &[Vec<BigRational>], x: &[BigRational], rhs: &[BigRational]) -> bool {
    matrix.iter().zip(rhs).all(|(row, b)| {
        let mut sum = BigRational::zero();
        for (a, xi) in row.iter().zip(x) {
            sum += a * xi;
        }
        &sum == b
    })
}

/// In-place reduction to reduced row echelon form. Returns the pivot list
/// as `(row, column)` pairs in order.
#[allow(clippy::needless_range_loop)] // two rows of `work` are live at once
fn reduce(work: &mut [Vec<BigRational>]) -> Vec<(usize, usize)> {
    let rows = work.len();
    let cols = work.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(src) = (pivot_row..rows).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(pivot_row, src);
        let inv = work[pivot_row][col].recip();
        for entry in work[pivot_row].iter_mut() {
            *entry *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                for c in 0..cols {
                    let delta = &factor * &work[pivot_row][c];
                    work[r][c] -= delta;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn mat(entries: &[&[i64]]) -> Vec<Vec<BigRational>> {
        entries.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()
    }

    #[test]
    fn unique_solution() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let b = vec![r(5), r(10)];
        match solve_exact(&a, &b) {
            LinearSolution::Unique(x) => {
                assert_eq!(x, vec![r(1), r(3)]);
                assert!(verify(&a, &x, &b));
            }
            other => panic!("expected unique solution, got {other:?}"),
        }
    }

    #[test]
    fn exact_fractions_survive() {
        let a = mat(&[&[3, 0], &[0, 7]]);
        let b = vec![r(1), r(2)];
        match solve_exact(&a, &b) {
            LinearSolution::Unique(x) => {
                assert_eq!(x[0], BigRational::new(BigInt::from(1), BigInt::from(3)));
                assert_eq!(x[1], BigRational::new(BigInt::from(2), BigInt::from(7)));
            }
            other => panic!("expected unique solution, got {other:?}"),
        }
    }

    #[test]
    fn singular_gives_kernel() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let b = vec![r(6), r(12), r(3)];
        match solve_exact(&a, &b) {
            LinearSolution::Affine { particular, kernel } => {
                assert!(verify(&a, &particular, &b));
                assert_eq!(kernel.len(), 1);
                // kernel vectors map to zero
                let zero = vec![r(0), r(0), r(0)];
                assert!(verify(&a, &kernel[0], &zero));
            }
            other => panic!("expected affine solution, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_detected() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        let b = vec![r(1), r(2)];
        assert_eq!(solve_exact(&a, &b), LinearSolution::Inconsistent);
    }

    #[test]
    fn rank_and_dominance() {
        assert_eq!(rank(&mat(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert!(strictly_diagonally_dominant(&mat(&[&[1, 0], &[0, 1]])));
        assert!(!strictly_diagonally_dominant(&mat(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]])));
    }
}
