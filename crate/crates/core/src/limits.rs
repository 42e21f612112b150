//! Starlike trees `T(l, m, n)` and the limits of their spectral radii.
//!
//! Along `T(1, n, n)` the adjacency spectral radius increases to
//! `√(2 + √5)` and the Laplacian one to `2 + ε`, `ε` the real root of
//! `x³ − 4x − 4`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::treediag::{MatrixKind, RootedTree, SymmetricTreeMatrix};

/// Three paths of `l`, `m` and `n_arm` vertices, each joined by one end to a
/// common center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarlikeSpec {
    pub l: usize,
    pub m: usize,
    pub n_arm: usize,
}

impl StarlikeSpec {
    pub fn new(l: usize, m: usize, n_arm: usize) -> Option<Self> {
        (l > 0 && m > 0 && n_arm > 0).then_some(Self { l, m, n_arm })
    }

    pub fn order(&self) -> usize {
        self.l + self.m + self.n_arm + 1
    }
}

/// The starlike tree rooted at its center, which is the last vertex. Arms
/// are numbered consecutively, each starting next to the center.
pub fn t_lmn(spec: &StarlikeSpec) -> RootedTree {
    let n = spec.order();
    let center = n - 1;
    let mut edges = alloc::vec::Vec::with_capacity(n - 1);
    let mut next = 0;
    for len in [spec.l, spec.m, spec.n_arm] {
        edges.push((center, next));
        for v in next + 1..next + len {
            edges.push((v - 1, v));
        }
        next += len;
    }
    RootedTree::from_edges(n, &edges, center).expect("starlike tree is a tree")
}

/// `√(2 + √5)`.
pub fn shearer_constant() -> f64 {
    (2.0 + 5.0.sqrt()).sqrt()
}

/// Real root of `x³ − 4x − 4`, by Cardano's formula.
pub fn guo_epsilon() -> f64 {
    let c = libm::cbrt(54.0 + 6.0 * 33.0.sqrt());
    c / 3.0 + 4.0 / c
}

/// `2 + ε`.
pub fn guo_constant() -> f64 {
    2.0 + guo_epsilon()
}

pub fn cubic_residual(x: f64) -> f64 {
    x * x * x - 4.0 * x - 4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitFamily {
    Adjacency,
    Laplacian,
}

impl LimitFamily {
    pub fn matrix_kind(self) -> MatrixKind {
        match self {
            LimitFamily::Adjacency => MatrixKind::Adjacency,
            LimitFamily::Laplacian => MatrixKind::Laplacian,
        }
    }

    pub fn limit(self) -> f64 {
        match self {
            LimitFamily::Adjacency => shearer_constant(),
            LimitFamily::Laplacian => guo_constant(),
        }
    }

    /// Spectral radius of `T(1, n_arm, n_arm)`.
    pub fn radius(self, n_arm: usize, tol: f64) -> f64 {
        assert!(n_arm > 0, "arms need at least one vertex");
        let tree = t_lmn(&StarlikeSpec { l: 1, m: n_arm, n_arm });
        SymmetricTreeMatrix::<f64>::build(&tree, self.matrix_kind())
            .expect("unit weights are valid")
            .spectral_radius(tol)
    }

    /// Limit minus the spectral radius of `T(1, n_arm, n_arm)`.
    pub fn gap(self, n_arm: usize, tol: f64) -> f64 {
        self.limit() - self.radius(n_arm, tol)
    }
}

pub fn adjacency_limit_gap(n_arm: usize, tol: f64) -> f64 {
    LimitFamily::Adjacency.gap(n_arm, tol)
}

pub fn laplacian_limit_gap(n_arm: usize, tol: f64) -> f64 {
    LimitFamily::Laplacian.gap(n_arm, tol)
}

/// Center value of the adjacency diagonalization of `T(1, n, n)` at shift
/// `λ`, computed arm by arm: `z₁ = −λ`, `z_{k+1} = −λ − 1/z_k` and the
/// center gets `−λ − 1/z₁ − 2/z_n`. It vanishes when `λ` is an eigenvalue
/// and no `z_k` does.
pub fn center_residual(n_arm: usize, lambda: f64) -> f64 {
    let z1 = -lambda;
    let mut z = z1;
    for _ in 1..n_arm {
        z = -lambda - 1.0 / z;
    }
    -lambda - 1.0 / z1 - 2.0 / z
}
