//! Brute-force reference spectra and seeded random trees.
//!
//! Nothing here uses the congruence diagonalization, so it can be used to
//! check it.

use alloc::vec;
use alloc::vec::Vec;
use alloc::collections::BinaryHeap;
use core::cmp::Reverse;

#[allow(unused_imports)]
use num_traits::Float;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::treediag::{RootedTree, SymmetricTreeMatrix};
use crate::Scalar;

/// Largest matrix [`dense_spectrum`] accepts.
pub const MAX_DENSE_ORDER: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("matrix of order {0} exceeds the dense limit of {MAX_DENSE_ORDER}")]
    SizeLimit(usize),
    #[error("tolerance must be positive")]
    BadTolerance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub tolerance: f64,
}

impl DenseSpectrum {
    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum of a non-empty matrix")
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Distance from `x` to the nearest eigenvalue.
    pub fn distance_to(&self, x: f64) -> f64 {
        self.eigenvalues.iter().map(|e| (e - x).abs()).fold(f64::INFINITY, f64::min)
    }

    pub fn count_below(&self, x: f64) -> usize {
        self.eigenvalues.iter().filter(|&&e| e < x).count()
    }

    pub fn count_above(&self, x: f64) -> usize {
        self.eigenvalues.iter().filter(|&&e| e > x).count()
    }
}

/// All eigenvalues of the dense form of `m`, by cyclic Jacobi rotations.
pub fn dense_spectrum<T: Scalar>(m: &SymmetricTreeMatrix<T>, tol: f64) -> Result<DenseSpectrum, OracleError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(OracleError::BadTolerance);
    }
    let n = m.len();
    if n > MAX_DENSE_ORDER {
        return Err(OracleError::SizeLimit(n));
    }
    let mut a = m.to_dense();
    let scale = a.iter().flatten().map(|x| x.abs()).fold(1.0, f64::max);
    // rotations drive the off-diagonal mass to roundoff level
    let target = (tol * 1e-3).min(1e-14) * scale;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigenvalues.sort_by(|x, y| x.total_cmp(y));
    Ok(DenseSpectrum { eigenvalues, tolerance: tol })
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for row in a.iter_mut() {
        let (akp, akq) = (row[p], row[q]);
        row[p] = c * akp - s * akq;
        row[q] = s * akp + c * akq;
    }
    let (mut row_p, mut row_q) = (core::mem::take(&mut a[p]), core::mem::take(&mut a[q]));
    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let (apk, aqk) = (*x, *y);
        *x = c * apk - s * aqk;
        *y = s * apk + c * aqk;
    }
    a[p] = row_p;
    a[q] = row_q;
}

/// Uniformly random labelled tree on `n` vertices rooted at `n − 1`.
///
/// The generator is `ChaCha8Rng::seed_from_u64(seed)`. It draws the Prüfer
/// sequence `s_0, …, s_{n−3}` in order, each with `random_range(0..n)`, and
/// the sequence is decoded by repeatedly joining the smallest current leaf
/// to the next sequence entry; the last two remaining vertices are joined.
pub fn random_tree(n: usize, seed: u64) -> RootedTree {
    assert!(n >= 1, "a tree needs at least one vertex");
    if n == 1 {
        return RootedTree::single_vertex();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.random_range(0..n)).collect();
    let edges = prufer_decode(n, &code);
    RootedTree::from_edges(n, &edges, n - 1).expect("a decoded Prüfer sequence is a tree")
}

/// Edges of the tree with Prüfer sequence `code` on `code.len() + 2` vertices.
pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treediag::MatrixKind;
    use approx::assert_abs_diff_eq;

    fn path(n: usize) -> RootedTree {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        RootedTree::from_edges(n, &edges, n - 1).unwrap()
    }

    fn spectrum(n: usize, kind: MatrixKind) -> Vec<f64> {
        let m = SymmetricTreeMatrix::<f64>::build(&path(n), kind).unwrap();
        dense_spectrum(&m, DEFAULT_TOL).unwrap().eigenvalues
    }

    #[test]
    fn small_path_spectra() {
        let s = spectrum(2, MatrixKind::Adjacency);
        assert_abs_diff_eq!(s[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s[1], 1.0, epsilon = 1e-12);

        let r2 = core::f64::consts::SQRT_2;
        for (got, want) in spectrum(3, MatrixKind::Adjacency).iter().zip([-r2, 0.0, r2]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        for (got, want) in spectrum(3, MatrixKind::Laplacian).iter().zip([0.0, 1.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn size_limit_and_tolerance() {
        let m = SymmetricTreeMatrix::<f64>::build(&path(65), MatrixKind::Adjacency).unwrap();
        assert_eq!(dense_spectrum(&m, 1e-10), Err(OracleError::SizeLimit(65)));
        let m = SymmetricTreeMatrix::<f64>::build(&path(3), MatrixKind::Adjacency).unwrap();
        assert_eq!(dense_spectrum(&m, 0.0), Err(OracleError::BadTolerance));
    }

    #[test]
    fn random_tree_small_cases() {
        assert_eq!(random_tree(1, 7).len(), 1);
        let t = random_tree(2, 99);
        assert_eq!(t.edges().collect::<Vec<_>>(), alloc::vec![(0, 1)]);
        assert_eq!(random_tree(8, 42), random_tree(8, 42));
        assert_eq!(random_tree(8, 42).root(), 7);
    }

    #[test]
    fn prufer_decoding_known_sequence() {
        // sequence (3, 3, 3) on 5 vertices is the star centred at 3
        let mut edges: Vec<_> = prufer_decode(5, &[3, 3, 3]).into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        assert_eq!(edges, alloc::vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn distinct_seeds_give_distinct_trees() {
        let distinct: alloc::collections::BTreeSet<Vec<(usize, usize)>> =
            (0..20).map(|s| random_tree(9, s).edges().collect()).collect();
        assert!(distinct.len() > 15);
    }
}
