//! Sign patterns of the generalized pendant-path recurrence.
//!
//! Diagonalizing `L − dI`, `d = 2 − 2/n` the average degree of a tree on `n`
//! vertices, along a path that starts at a vertex carrying `r` pendant
//! two-vertex paths gives the sequence
//!
//! ```text
//! b_1 = x_1 + r(1 − 1/x_2),    b_{j+1} = 2/n − 1/b_j,
//! ```
//!
//! with `x_1 = −1 + 2/n` and `x_2 = 2/n − 1/x_1`. Each positive `b_j` is one
//! Laplacian eigenvalue above `d`. This module computes how long the
//! alternating `−, +` pattern of `b_j` lasts (`mlas`), both from the closed
//! form and by an exact scan, and applies it to double brooms.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Signed, Zero};

use crate::recurrence::{OrbitResult, RecurrenceError, RecurrenceParams};
use crate::treediag::{InertiaTriple, MatrixKind, RootedTree, SymmetricTreeMatrix, TreeError};
use crate::{ratio, BigRational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignsError {
    #[error("tree order must be at least 3, got {0}")]
    TooSmall(usize),
    #[error("(n, r) = ({n}, {r}) is outside n >= 8, 1 <= r <= floor(n/4)")]
    OutOfDomain { n: usize, r: usize },
    #[error("no positive odd-indexed term among b_1..b_{j_max} for (n, r) = ({n}, {r})")]
    PatternNotFound { n: usize, r: usize, j_max: usize },
    #[error("double broom parameters must all be at least 1")]
    BadBroom,
    #[error("star-up precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Tree order `n` and number `r` of pendant two-vertex paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PendantConfig {
    n: usize,
    r: usize,
}

impl PendantConfig {
    pub fn new(n: usize, r: usize) -> Result<Self, SignsError> {
        if n < 3 {
            return Err(SignsError::TooSmall(n));
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Whether `n ≥ 8` and `1 ≤ r ≤ ⌊n/4⌋`.
    pub fn in_domain(&self) -> bool {
        self.n >= 8 && self.r >= 1 && self.r <= self.n / 4
    }

    fn require_domain(&self) -> Result<(), SignsError> {
        if self.in_domain() {
            Ok(())
        } else {
            Err(SignsError::OutOfDomain { n: self.n, r: self.r })
        }
    }

    /// `2/n`.
    pub fn alpha_exact(&self) -> BigRational {
        ratio(2, self.n as i64)
    }

    /// Average degree `2 − 2/n`.
    pub fn average_degree_exact(&self) -> BigRational {
        ratio(2 * self.n as i64 - 2, self.n as i64)
    }

    pub fn x1_exact(&self) -> BigRational {
        ratio(2 - self.n as i64, self.n as i64)
    }

    pub fn x2_exact(&self) -> BigRational {
        let n = self.n as i64;
        ratio(n * n + 2 * n - 4, n * (n - 2))
    }

    pub fn b1_exact(&self) -> BigRational {
        let r = BigRational::from_integer(self.r.into());
        self.x1_exact() + r * (BigRational::one() - self.x2_exact().recip())
    }

    pub fn b1(&self) -> f64 {
        self.b1_exact().to_f64()
    }

    /// `φ = arctan √(n² − 1)`, the rotation angle of the recurrence.
    pub fn angle(&self) -> f64 {
        let n = self.n as f64;
        (n * n - 1.0).sqrt().atan()
    }
}

/// `b_1, …, b_count`.
pub fn b_sequence(cfg: &PendantConfig, count: usize) -> Result<OrbitResult<f64>, SignsError> {
    let params = RecurrenceParams::new(2.0 / cfg.n as f64, -1.0)?;
    Ok(params.iterate(cfg.b1(), count)?)
}

/// [`b_sequence`] in exact arithmetic.
pub fn b_sequence_exact(cfg: &PendantConfig, count: usize) -> Result<OrbitResult<BigRational>, SignsError> {
    let params = RecurrenceParams::new(cfg.alpha_exact(), -BigRational::one())?;
    Ok(params.iterate(cfg.b1_exact(), count)?)
}

/// `r₀ = (n−2)(n²+2n−4) / (4n(n−1))`; `b_1 < 0` exactly when `r ≤ ⌊r₀⌋`.
pub fn r0(n: usize) -> Result<BigRational, SignsError> {
    if n < 3 {
        return Err(SignsError::TooSmall(n));
    }
    let n = n as i64;
    Ok(ratio((n - 2) * (n * n + 2 * n - 4), 4 * n * (n - 1)))
}

/// Period `P = π / arctan √(n² − 1)` of the extended solution.
pub fn period_n(n: usize) -> Result<f64, SignsError> {
    Ok(PI / PendantConfig::new(n, 0)?.angle())
}

/// Phase `ω_r = arctan((1 − n b_1)/√(n²−1)) − arctan √(n²−1)`.
///
/// Defined on the domain of [`PendantConfig::in_domain`] and also at `r = 0`,
/// where it equals `−φ/2`.
pub fn omega_r(cfg: &PendantConfig) -> Result<f64, SignsError> {
    if cfg.r != 0 {
        cfg.require_domain()?;
    }
    let n = cfg.n as f64;
    let s = (n * n - 1.0).sqrt();
    Ok(((1.0 - n * cfg.b1()) / s).atan() - s.atan())
}

/// `H(n, r, m) = 1/(P−2) + (ω_r − arctan(cot φ))/(φ(P−2)) − m P/(P−2)`.
pub fn h_function(cfg: &PendantConfig, m: i64) -> Result<f64, SignsError> {
    cfg.require_domain()?;
    let phi = cfg.angle();
    let p = PI / phi;
    let omega = omega_r(cfg)?;
    let cot_phi = 1.0 / phi.tan();
    Ok(1.0 / (p - 2.0) + (omega - cot_phi.atan()) / (phi * (p - 2.0)) - m as f64 * p / (p - 2.0))
}

/// Largest `k` with `b_{2k+1} < 0` in the initial alternating run.
pub fn k0(cfg: &PendantConfig) -> Result<usize, SignsError> {
    let h = h_function(cfg, 0)?;
    Ok(h.floor().max(0.0) as usize)
}

/// First positive zero of the extended solution, `(π/2 − φ − ω_r)/φ`.
pub fn j_star(cfg: &PendantConfig) -> Result<f64, SignsError> {
    cfg.require_domain()?;
    let phi = cfg.angle();
    Ok((FRAC_PI_2 - phi - omega_r(cfg)?) / phi)
}

/// Maximum length of the alternating sign run, `2 k₀ + 2`.
///
/// For `r = 0` this is the value for the bare path sequence,
/// `mlas₁(n) + 2`.
pub fn mlas(cfg: &PendantConfig) -> Result<usize, SignsError> {
    if cfg.r == 0 {
        let one = PendantConfig::new(cfg.n, 1)?;
        return mlas(&one).map(|m| m + 2);
    }
    Ok(2 * k0(cfg)? + 2)
}

/// Default scan length for [`mlas_direct`].
pub fn default_scan_length(n: usize) -> usize {
    4 * n
}

/// [`mlas`] by scanning the exact `b_j` for the first positive odd-indexed
/// term.
pub fn mlas_direct(cfg: &PendantConfig, j_max: usize) -> Result<usize, SignsError> {
    first_positive_odd(cfg, j_max).map(|j| j - 1)
}

fn first_positive_odd(cfg: &PendantConfig, j_max: usize) -> Result<usize, SignsError> {
    let not_found = SignsError::PatternNotFound { n: cfg.n, r: cfg.r, j_max };
    let params = RecurrenceParams::new(cfg.alpha_exact(), -BigRational::one())?;
    let mut b = cfg.b1_exact();
    if !b.is_negative() {
        return Err(not_found);
    }
    for j in 2..=j_max {
        b = params.forward(&b).map_err(|_| not_found.clone())?;
        if j % 2 == 1 && b.is_positive() {
            return Ok(j);
        }
    }
    Err(not_found)
}

/// `2⌊π(n−2)/8⌋ − 4(r−1)`, before clamping.
pub fn mlas_lower_bound_raw(cfg: &PendantConfig) -> Result<i64, SignsError> {
    cfg.require_domain()?;
    let base = (PI * (cfg.n as f64 - 2.0) / 8.0).floor() as i64;
    Ok(2 * base - 4 * (cfg.r as i64 - 1))
}

/// `max{2⌊π(n−2)/8⌋ − 4(r−1), 2}`, a lower bound for [`mlas`].
pub fn mlas_lower_bound(cfg: &PendantConfig) -> Result<i64, SignsError> {
    mlas_lower_bound_raw(cfg).map(|raw| raw.max(2))
}

/// One row of the mlas table.
#[derive(Debug, Clone, PartialEq)]
pub struct MlasReport {
    pub n: usize,
    pub r: usize,
    pub period: f64,
    pub phi_angle: f64,
    pub omega_r: f64,
    pub j_star: f64,
    pub h_value: f64,
    pub k0: usize,
    pub mlas: usize,
    pub lower_bound: i64,
    pub lower_bound_raw: i64,
    /// `b_{2k₀+2}`, the last term of the alternating run.
    pub b_last: f64,
    /// `b_{2k₀+3}`, the first positive odd-indexed term.
    pub b_next: f64,
}

pub fn mlas_report(cfg: &PendantConfig) -> Result<MlasReport, SignsError> {
    cfg.require_domain()?;
    let phi = cfg.angle();
    let k0 = k0(cfg)?;
    let mlas = 2 * k0 + 2;
    let orbit = b_sequence_exact(cfg, mlas + 1)?;
    let term = |j: usize| orbit.term(j).map_or(f64::NAN, |b| b.to_f64());
    Ok(MlasReport {
        n: cfg.n,
        r: cfg.r,
        period: PI / phi,
        phi_angle: phi,
        omega_r: omega_r(cfg)?,
        j_star: j_star(cfg)?,
        h_value: h_function(cfg, 0)?,
        k0,
        mlas,
        lower_bound: mlas_lower_bound(cfg)?,
        lower_bound_raw: mlas_lower_bound_raw(cfg)?,
        b_last: term(mlas),
        b_next: term(mlas + 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(x: &T) -> Self {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// Two stars joined through a degree-2 root: the left star carries `r`
/// pendant two-vertex paths and is `2q` path vertices from the root
/// (counting itself), the right one carries `rr` and is `2p` away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleBroom {
    r: usize,
    q: usize,
    p: usize,
    rr: usize,
}

impl DoubleBroom {
    pub fn new(r: usize, q: usize, p: usize, rr: usize) -> Result<Self, SignsError> {
        if r == 0 || q == 0 || p == 0 || rr == 0 {
            return Err(SignsError::BadBroom);
        }
        Ok(Self { r, q, p, rr })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rr(&self) -> usize {
        self.rr
    }

    /// `2r + 2R + 2q + 2p + 1`.
    pub fn order(&self) -> usize {
        2 * (self.r + self.rr + self.q + self.p) + 1
    }
}

/// Vertex ids of a built double broom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroomLayout {
    pub root: usize,
    pub left_star: usize,
    pub right_star: usize,
    /// From the star to the vertex next to the root.
    pub left_path: Vec<usize>,
    pub right_path: Vec<usize>,
}

/// The double broom as a tree rooted at its central vertex `0`.
pub fn double_broom_tree(b: &DoubleBroom) -> (RootedTree, BroomLayout) {
    let n = b.order();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    let mut side = |half: usize, pendants: usize, edges: &mut Vec<(usize, usize)>| {
        let path: Vec<usize> = (0..2 * half).map(|i| next + 2 * half - 1 - i).collect();
        next += 2 * half;
        edges.push((0, path[2 * half - 1]));
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
        }
        for _ in 0..pendants {
            edges.push((path[0], next));
            edges.push((next, next + 1));
            next += 2;
        }
        path
    };
    let left_path = side(b.q, b.r, &mut edges);
    let right_path = side(b.p, b.rr, &mut edges);
    let tree = RootedTree::from_edges(n, &edges, 0).expect("double broom is a tree");
    let layout = BroomLayout { root: 0, left_star: left_path[0], right_star: right_path[0], left_path, right_path };
    (tree, layout)
}

/// Result of [`double_broom_sigma`].
#[derive(Debug, Clone, PartialEq)]
pub struct BroomReport {
    pub n: usize,
    /// Laplacian eigenvalues strictly above the average degree.
    pub sigma: usize,
    /// `2/n − 1/b_{2q}(r) − 1/b_{2p}(R)`.
    pub root_value: BigRational,
    pub root_sign: Sign,
    /// Whether `2q` and `2p` are within the lower bounds and
    /// `r, R < ⌊(n−1)/4⌋`. When false, `sigma` is taken from `located`.
    pub hypotheses_met: bool,
    /// Exact inertia of `L − (2 − 2/n) I`.
    pub located: InertiaTriple,
    /// Whether the sign-count value agrees with `located.above`.
    pub agrees: bool,
}

/// `σ(T)` of a double broom from the pendant-path signs, checked against a
/// direct exact diagonalization.
pub fn double_broom_sigma(b: &DoubleBroom) -> Result<BroomReport, SignsError> {
    let n = b.order();
    let left = PendantConfig::new(n, b.r)?;
    let right = PendantConfig::new(n, b.rr)?;
    let hypotheses_met = side_ok(&left, b.q) && side_ok(&right, b.p);

    let end_value = |cfg: &PendantConfig, half: usize| -> Result<Option<BigRational>, SignsError> {
        let orbit = b_sequence_exact(cfg, 2 * half)?;
        Ok(orbit.term(2 * half).filter(|v| !v.is_zero()).cloned())
    };
    let root_value = match (end_value(&left, b.q)?, end_value(&right, b.p)?) {
        (Some(bl), Some(br)) => left.alpha_exact() - bl.recip() - br.recip(),
        _ => BigRational::zero(),
    };
    let root_sign = Sign::of(&root_value);

    let (tree, _) = double_broom_tree(b);
    let lap = SymmetricTreeMatrix::<BigRational>::build(&tree, MatrixKind::Laplacian)?;
    let located = lap.locate(&left.average_degree_exact());

    let formula = b.r + b.rr + b.q + b.p + usize::from(root_sign == Sign::Positive);
    let sigma = if hypotheses_met { formula } else { located.above };
    Ok(BroomReport {
        n,
        sigma,
        root_value,
        root_sign,
        hypotheses_met,
        located,
        agrees: formula == located.above,
    })
}

fn side_ok(cfg: &PendantConfig, half: usize) -> bool {
    let n = cfg.n;
    cfg.in_domain()
        && cfg.r < (n - 1) / 4
        && mlas_lower_bound(cfg).is_ok_and(|lb| 2 * half as i64 <= lb)
}

/// Shorten the path from `star` towards `anchor` by two vertices and hang
/// them on `star` as a new pendant two-vertex path.
///
/// With `star = w` and the path `w, v₁, v₂, v₃, …, anchor`, the edge
/// `{v₂, v₃}` is replaced by `{w, v₃}`. Vertex ids and the root are kept.
pub fn star_up(tree: &RootedTree, star: usize, anchor: usize) -> Result<RootedTree, SignsError> {
    let n = tree.len();
    if star >= n || anchor >= n {
        return Err(TreeError::BadVertex { vertex: star.max(anchor), n }.into());
    }
    if tree.degree(anchor) < 2 {
        return Err(SignsError::PreconditionViolated("anchor is a leaf"));
    }
    let towards = tree.rerooted(anchor)?;
    let mut path = Vec::new();
    let mut v = star;
    while let Some(u) = towards.parent(v) {
        path.push(u);
        if path.len() == 3 {
            break;
        }
        v = u;
    }
    let [v1, v2, v3] = path[..] else {
        return Err(SignsError::PreconditionViolated("fewer than two path vertices between star and anchor"));
    };
    if tree.degree(v1) != 2 || tree.degree(v2) != 2 {
        return Err(SignsError::PreconditionViolated("path vertices next to the star must have degree 2"));
    }
    let is_pendant_head = |x: usize| {
        tree.degree(x) == 2 && tree.neighbors(x).any(|y| y != star && tree.degree(y) == 1)
    };
    let mut pendants = 0;
    for x in tree.neighbors(star).filter(|&x| x != v1) {
        if !is_pendant_head(x) {
            return Err(SignsError::PreconditionViolated("star carries something other than pendant two-vertex paths"));
        }
        pendants += 1;
    }
    if pendants + 1 > n / 4 {
        return Err(SignsError::PreconditionViolated("star already carries floor(n/4) pendant paths"));
    }
    let edges: Vec<(usize, usize)> = tree
        .edges()
        .map(|(a, b)| if (a, b) == (v2, v3) || (a, b) == (v3, v2) { (star, v3) } else { (a, b) })
        .collect();
    Ok(RootedTree::from_edges(n, &edges, tree.root())?)
}

/// `σ(T)`: Laplacian eigenvalues strictly above the average degree, exactly.
pub fn sigma(tree: &RootedTree) -> Result<usize, SignsError> {
    let n = tree.len() as i64;
    let lap = SymmetricTreeMatrix::<BigRational>::build(tree, MatrixKind::Laplacian)?;
    Ok(lap.locate(&ratio(2 * n - 2, n)).above)
}
