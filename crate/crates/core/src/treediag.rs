//! Tree-patterned symmetric matrices and eigenvalue location by congruence.
//!
//! A symmetric matrix whose nonzero off-diagonal pattern is a tree can be
//! reduced to a diagonal matrix congruent to `M − αI` in one bottom-up pass
//! over the tree. By Sylvester's law of inertia the signs of the resulting
//! diagonal values count the eigenvalues of `M` below, at and above `α`.
//!
//! Vertices are `0..n`. File formats and the command line use 1-based ids
//! and convert at the boundary.

use alloc::vec;
use alloc::vec::Vec;

use crate::Scalar;

/// Relative zero tolerance used by [`SymmetricTreeMatrix::diagonalize`] in
/// floating point. The scale is the largest `|m_ii − α|`.
pub const DIAG_ZERO_TOL: f64 = 1e-10;
/// Iteration cap for the bisection searches.
pub const MAX_BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} is out of range for {n} vertices")]
    BadVertex { vertex: usize, n: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} edges for a tree, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("edges do not connect all vertices (the graph has a cycle)")]
    Disconnected,
    #[error("edge weight between {0} and its parent is zero")]
    ZeroWeight(usize),
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("eigenvalue index {k} out of range 1..={n}")]
    BadIndex { k: usize, n: usize },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

/// A tree with parent links oriented toward a root and a postorder in which
/// every child precedes its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    postorder: Vec<usize>,
    root: usize,
}

impl RootedTree {
    /// Builds the tree on vertices `0..n` from an undirected edge list.
    /// Children are visited in ascending order when computing the postorder.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if root >= n {
            return Err(TreeError::BadVertex { vertex: root, n });
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(TreeError::BadVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            seen.push((u.min(v), u.max(v)));
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateEdge(w[0].0, w[0].1));
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount { expected: n - 1, found: edges.len() });
        }

        let mut parent = vec![None; n];
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adjacency[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(TreeError::Disconnected);
        }
        Ok(Self::from_parents(parent, root))
    }

    fn from_parents(parent: Vec<Option<usize>>, root: usize) -> Self {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        // children are pushed in ascending order already
        let mut postorder = Vec::with_capacity(n);
        let mut stack = vec![(root, 0usize)];
        while let Some((v, next)) = stack.pop() {
            if let Some(&c) = children[v].get(next) {
                stack.push((v, next + 1));
                stack.push((c, 0));
            } else {
                postorder.push(v);
            }
        }
        Self { parent, children, postorder, root }
    }

    pub fn single_vertex() -> Self {
        Self::from_parents(vec![None], 0)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children of `v` in ascending order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn postorder(&self) -> &[usize] {
        &self.postorder
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// `(child, parent)` pairs in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v, p)))
    }

    /// Neighbours of `v`: children then parent.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.children[v].iter().copied().chain(self.parent[v])
    }

    /// The same tree hung from a different root.
    pub fn rerooted(&self, root: usize) -> Result<Self, TreeError> {
        let edges: Vec<_> = self.edges().collect();
        Self::from_edges(self.len(), &edges, root)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    NormalizedLaplacian,
}

/// Counts of eigenvalues below, equal to and above a shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InertiaTriple {
    pub below: usize,
    pub equal: usize,
    pub above: usize,
}

impl InertiaTriple {
    pub fn total(&self) -> usize {
        self.below + self.equal + self.above
    }
}

/// Symmetric matrix whose graph is a [`RootedTree`].
///
/// `weight[v]` is the entry linking `v` to its parent; the root slot is
/// unused and stored as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTreeMatrix<T = f64> {
    tree: RootedTree,
    diag: Vec<T>,
    weight: Vec<T>,
}

impl<T: Scalar> SymmetricTreeMatrix<T> {
    pub fn new(tree: RootedTree, diag: Vec<T>, weight: Vec<T>) -> Result<Self, TreeError> {
        let n = tree.len();
        for found in [diag.len(), weight.len()] {
            if found != n {
                return Err(TreeError::LengthMismatch { expected: n, found });
            }
        }
        if let Some((v, _)) = tree.edges().find(|&(v, _)| weight[v].is_zero()) {
            return Err(TreeError::ZeroWeight(v));
        }
        let mut weight = weight;
        weight[tree.root()] = T::zero();
        Ok(Self { tree, diag, weight })
    }

    /// Adjacency, Laplacian or normalized Laplacian of `tree`.
    ///
    /// The normalized Laplacian needs `1/sqrt(deg u · deg v)`, so exact
    /// scalars only support it when every such product is a perfect square.
    pub fn build(tree: &RootedTree, kind: MatrixKind) -> Result<Self, TreeError> {
        let n = tree.len();
        let mut diag = Vec::with_capacity(n);
        let mut weight = Vec::with_capacity(n);
        for v in 0..n {
            let deg = tree.degree(v) as i64;
            diag.push(match kind {
                MatrixKind::Adjacency => T::zero(),
                MatrixKind::Laplacian => T::from_ratio(deg, 1),
                // an isolated vertex has a zero row in D^{-1/2} A D^{-1/2}
                MatrixKind::NormalizedLaplacian if deg == 0 => T::zero(),
                MatrixKind::NormalizedLaplacian => T::one(),
            });
            let w = match (kind, tree.parent(v)) {
                (_, None) => T::zero(),
                (MatrixKind::Adjacency, Some(_)) => T::one(),
                (MatrixKind::Laplacian, Some(_)) => -T::one(),
                (MatrixKind::NormalizedLaplacian, Some(p)) => {
                    let prod = (tree.degree(v) * tree.degree(p)) as u64;
                    -T::recip_sqrt(prod).ok_or(TreeError::Unsupported(
                        "normalized Laplacian weight is irrational",
                    ))?
                }
            };
            weight.push(w);
        }
        Self::new(tree.clone(), diag, weight)
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    /// Weight of the edge between `v` and its parent.
    pub fn parent_weight(&self, v: usize) -> Option<&T> {
        self.tree.parent(v).map(|_| &self.weight[v])
    }

    /// The same matrix with the tree hung from another root.
    pub fn rerooted(&self, root: usize) -> Result<Self, TreeError> {
        let tree = self.tree.rerooted(root)?;
        let mut weight = vec![T::zero(); self.len()];
        for (v, p) in self.tree.edges() {
            let w = self.weight[v].clone();
            if tree.parent(v) == Some(p) {
                weight[v] = w;
            } else {
                weight[p] = w;
            }
        }
        Self::new(tree, self.diag.clone(), weight)
    }

    /// Row-major dense copy as `f64`.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut m = vec![vec![0.0; n]; n];
        for (v, d) in self.diag.iter().enumerate() {
            m[v][v] = d.to_f64();
        }
        for (v, p) in self.tree.edges() {
            let w = self.weight[v].to_f64();
            m[v][p] = w;
            m[p][v] = w;
        }
        m
    }

    fn zero_scale(values: &[T]) -> f64 {
        values.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Diagonal of a matrix congruent to `M − shift·I`, indexed by vertex.
    ///
    /// Vertices are processed in postorder. When every remaining child `c` of
    /// `k` is nonzero, `a(k) −= m_ck² / a(c)`. Otherwise the smallest zero
    /// child `j` gets `a(j) = 2`, `a(k) = −m_jk²/2`, and the edge from `k` to
    /// its parent is dropped.
    pub fn diagonalize(&self, shift: &T) -> Vec<T> {
        self.diagonalize_with(shift, DIAG_ZERO_TOL)
    }

    fn diagonalize_with(&self, shift: &T, rel_tol: f64) -> Vec<T> {
        let mut values: Vec<T> = self.diag.iter().map(|d| d.clone() - shift.clone()).collect();
        let scale = Self::zero_scale(&values);
        let mut detached = vec![false; self.len()];
        let two = T::one() + T::one();
        for &k in self.tree.postorder() {
            let mut live = self.tree.children(k).iter().copied().filter(|&c| !detached[c]).peekable();
            if live.peek().is_none() {
                continue;
            }
            let live: Vec<usize> = live.collect();
            if let Some(&j) = live.iter().find(|&&c| values[c].is_negligible(scale, rel_tol)) {
                let w = self.weight[j].clone();
                values[k] = -(w.clone() * w) / two.clone();
                values[j] = two.clone();
                if self.tree.parent(k).is_some() {
                    detached[k] = true;
                }
            } else {
                for c in live {
                    let w = self.weight[c].clone();
                    values[k] = values[k].clone() - w.clone() * w / values[c].clone();
                }
            }
        }
        values
    }

    /// How many eigenvalues lie below, at and above `shift`.
    pub fn locate(&self, shift: &T) -> InertiaTriple {
        self.locate_with(shift, DIAG_ZERO_TOL)
    }

    /// [`locate`](Self::locate) with a given relative zero tolerance. With
    /// `rel_tol = 0` only exact zeros count as zero, which is what bisection
    /// needs: a tolerance there biases the result by about `rel_tol` times
    /// the matrix scale.
    pub fn locate_with(&self, shift: &T, rel_tol: f64) -> InertiaTriple {
        let values = self.diagonalize_with(shift, rel_tol);
        let scale = Self::zero_scale(
            &self.diag.iter().map(|d| d.clone() - shift.clone()).collect::<Vec<_>>(),
        );
        let mut out = InertiaTriple::default();
        for v in &values {
            if v.is_negligible(scale, rel_tol) {
                out.equal += 1;
            } else if v.is_negative() {
                out.below += 1;
            } else {
                out.above += 1;
            }
        }
        out
    }
}

impl SymmetricTreeMatrix<f64> {
    /// Interval containing every eigenvalue, from Gershgorin discs.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let mut radius = vec![0.0; self.len()];
        for (v, p) in self.tree.edges() {
            let w = self.weight[v].abs();
            radius[v] += w;
            radius[p] += w;
        }
        let lo = self.diag.iter().zip(&radius).map(|(d, r)| d - r).fold(f64::INFINITY, f64::min);
        let hi = self.diag.iter().zip(&radius).map(|(d, r)| d + r).fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    /// Largest eigenvalue to within `tol`, by bisection on "nothing above".
    pub fn spectral_radius(&self, tol: f64) -> f64 {
        let (lo, hi) = self.gershgorin_bounds();
        // invariant: something above `lo`, nothing above `hi`
        let (mut lo, mut hi) = (lo - 1.0, hi);
        for _ in 0..MAX_BISECTION_STEPS {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.locate_with(&mid, 0.0).above == 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `k`-th smallest eigenvalue (1-based) to within `tol`.
    pub fn kth_eigenvalue(&self, k: usize, tol: f64) -> Result<f64, TreeError> {
        let n = self.len();
        if k == 0 || k > n {
            return Err(TreeError::BadIndex { k, n });
        }
        let (lo, hi) = self.gershgorin_bounds();
        // invariant: fewer than k below `lo`, at least k below `hi`
        let (mut lo, mut hi) = (lo, hi + 1.0);
        for _ in 0..MAX_BISECTION_STEPS {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.locate_with(&mid, 0.0).below >= k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}
