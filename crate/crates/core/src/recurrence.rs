//! The first-order rational recurrence `x_{j+1} = α + γ/x_j`.
//!
//! [`RecurrenceParams`] carries the map `t ↦ α + γ/t` and its inverse
//! `t ↦ γ/(t − α)`. Orbit computations are generic over [`Scalar`] so that
//! "does the orbit reach zero" questions can be answered exactly with
//! rationals. The closed-form solution ([`ClosedFormSolution`]) is `f64` only;
//! it extends the sequence to real indices, which is what makes the zeros,
//! poles and period of the sequence computable.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

// unused when std is linked, whose inherent float methods take precedence
#[allow(unused_imports)]
use num_traits::Float;

use crate::Scalar;

/// Relative tolerance for "this term is zero" in floating point.
pub const ZERO_TOL: f64 = 1e-12;
/// Absolute tolerance on the discriminant below which the repeated-root
/// formula is used.
pub const DELTA_TOL: f64 = 1e-12;
/// Distance in `j` from a vertical asymptote at which [`ClosedFormSolution::eval`]
/// reports [`Evaluation::Pole`].
pub const POLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecurrenceError {
    #[error("gamma must be nonzero")]
    ZeroGamma,
    #[error("the map is undefined at t = 0")]
    ForwardAtZero,
    #[error("the inverse map is undefined at t = alpha (inverse step {step})")]
    BackwardAtAlpha { step: usize },
    #[error("the initial value must be nonzero")]
    ZeroInitial,
    #[error("an index of at least 1 is required")]
    ZeroIndex,
    #[error("empty interval")]
    EmptyInterval,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

/// Sign class of the discriminant `Δ = α² + 4γ` of `t² − αt − γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    /// `Δ = 0`: one repeated fixed point.
    Repeated,
    /// `Δ > 0`: two real fixed points.
    RealPair,
    /// `Δ < 0`: no real fixed point, the solution oscillates.
    ComplexPair,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaClass<T> {
    pub delta: T,
    pub kind: DeltaKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    Completed,
    /// The term with this 1-based index is zero; the orbit cannot continue.
    HitZero { step: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitResult<T> {
    /// `values[j - 1]` is `x_j`.
    pub values: Vec<T>,
    pub status: OrbitStatus,
}

impl<T> OrbitResult<T> {
    /// 1-based access.
    pub fn term(&self, j: usize) -> Option<&T> {
        j.checked_sub(1).and_then(|i| self.values.get(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalBehavior {
    Attracting,
    Repelling,
    Neutral,
}

/// The pair `(α, γ)`, `γ ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceParams<T = f64> {
    alpha: T,
    gamma: T,
}

impl<T: Scalar> RecurrenceParams<T> {
    pub fn new(alpha: T, gamma: T) -> Result<Self, RecurrenceError> {
        if gamma.is_zero() {
            return Err(RecurrenceError::ZeroGamma);
        }
        Ok(Self { alpha, gamma })
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn gamma(&self) -> &T {
        &self.gamma
    }

    fn zero_scale(&self) -> f64 {
        let a = self.alpha.to_f64().abs();
        a.max(self.gamma.to_f64().abs().sqrt())
    }

    fn is_zero_term(&self, t: &T) -> bool {
        t.is_negligible(self.zero_scale(), ZERO_TOL)
    }

    /// `α + γ/t`.
    pub fn forward(&self, t: &T) -> Result<T, RecurrenceError> {
        if self.is_zero_term(t) {
            return Err(RecurrenceError::ForwardAtZero);
        }
        Ok(self.alpha.clone() + self.gamma.clone() / t.clone())
    }

    /// `γ/(t − α)`, the inverse of [`forward`](Self::forward).
    pub fn backward(&self, t: &T) -> Result<T, RecurrenceError> {
        self.backward_step(t, 1)
    }

    fn backward_step(&self, t: &T, step: usize) -> Result<T, RecurrenceError> {
        let shifted = t.clone() - self.alpha.clone();
        if self.is_zero_term(&shifted) {
            return Err(RecurrenceError::BackwardAtAlpha { step });
        }
        Ok(self.gamma.clone() / shifted)
    }

    /// `α² + 4γ`.
    pub fn delta(&self) -> T {
        let four = T::one() + T::one() + T::one() + T::one();
        self.alpha.clone() * self.alpha.clone() + four * self.gamma.clone()
    }

    pub fn classify(&self) -> DeltaClass<T> {
        let delta = self.delta();
        let kind = if delta.is_negligible(1.0, DELTA_TOL) {
            DeltaKind::Repeated
        } else if delta.is_positive() {
            DeltaKind::RealPair
        } else {
            DeltaKind::ComplexPair
        };
        DeltaClass { delta, kind }
    }

    /// `x_1, …, x_count`, stopping at the first zero term.
    pub fn iterate(&self, x1: T, count: usize) -> Result<OrbitResult<T>, RecurrenceError> {
        if self.is_zero_term(&x1) {
            return Err(RecurrenceError::ZeroInitial);
        }
        let mut values = Vec::with_capacity(count);
        let mut current = x1;
        for step in 1..=count {
            let zero = self.is_zero_term(&current);
            values.push(current.clone());
            if zero {
                return Ok(OrbitResult { values, status: OrbitStatus::HitZero { step } });
            }
            if step < count {
                current = self.alpha.clone() + self.gamma.clone() / current;
            }
        }
        Ok(OrbitResult { values, status: OrbitStatus::Completed })
    }

    /// The backward orbit of zero: `[ψ(0), ψ²(0), …, ψ^count(0)]` where `ψ`
    /// is the inverse map. Starting the forward recurrence at `ψ^k(0)` reaches
    /// zero after exactly `k` steps.
    pub fn forbidden_initials(&self, count: usize) -> Result<Vec<T>, RecurrenceError> {
        let mut out = Vec::with_capacity(count);
        let mut current = T::zero();
        for step in 1..=count {
            current = self.backward_step(&current, step)?;
            out.push(current.clone());
        }
        Ok(out)
    }

    /// The unique `x_1` whose orbit has `x_r` at index `r`.
    pub fn reverse_initial(&self, x_r: T, r: usize) -> Result<T, RecurrenceError> {
        if r == 0 {
            return Err(RecurrenceError::ZeroIndex);
        }
        let mut current = x_r;
        for step in 1..r {
            current = self.backward_step(&current, step)?;
        }
        Ok(current)
    }
}

impl RecurrenceParams<f64> {
    /// Real roots of `t² − αt − γ`, ascending.
    pub fn fixed_points(&self) -> Vec<f64> {
        let class = self.classify();
        let half = self.alpha / 2.0;
        match class.kind {
            DeltaKind::Repeated => alloc::vec![half],
            DeltaKind::RealPair => {
                let s = class.delta.sqrt() / 2.0;
                alloc::vec![half - s, half + s]
            }
            DeltaKind::ComplexPair => Vec::new(),
        }
    }

    /// Whether iterates near `t` contract (`|γ|/t² < 1`) or expand.
    pub fn local_behavior(&self, t: f64) -> Result<LocalBehavior, RecurrenceError> {
        if self.is_zero_term(&t) {
            return Err(RecurrenceError::ForwardAtZero);
        }
        let neutral = self.gamma.abs().sqrt();
        if (t.abs() - neutral).abs() <= ZERO_TOL * neutral.max(1.0) {
            Ok(LocalBehavior::Neutral)
        } else if self.gamma.abs() / (t * t) < 1.0 {
            Ok(LocalBehavior::Attracting)
        } else {
            Ok(LocalBehavior::Repelling)
        }
    }

    /// Closed-form solution through `x_1`.
    pub fn solve(&self, x1: f64) -> Result<ClosedFormSolution, RecurrenceError> {
        if self.is_zero_term(&x1) {
            return Err(RecurrenceError::ZeroInitial);
        }
        if let Some(&theta) = self
            .fixed_points()
            .iter()
            .find(|&&fp| (x1 - fp).abs() <= ZERO_TOL * fp.abs().max(1.0))
        {
            return Ok(ClosedFormSolution::Constant { theta });
        }
        let class = self.classify();
        let alpha = self.alpha;
        let sol = match class.kind {
            DeltaKind::Repeated => {
                let theta = alpha / 2.0;
                ClosedFormSolution::RepeatedRoot { theta, beta: -1.0 + theta / (x1 - theta) }
            }
            DeltaKind::RealPair => {
                let s = class.delta.sqrt() / 2.0;
                let primary = real_pair(alpha / 2.0 + s, alpha / 2.0 - s, x1);
                let primary_dev = self.deviation_from_orbit(&primary, x1);
                if primary_dev > 1e-8 {
                    let swapped = real_pair(alpha / 2.0 - s, alpha / 2.0 + s, x1);
                    if self.deviation_from_orbit(&swapped, x1) < primary_dev {
                        return Ok(swapped);
                    }
                }
                primary
            }
            DeltaKind::ComplexPair if alpha == 0.0 => {
                ClosedFormSolution::Alternating { x1, gamma: self.gamma }
            }
            DeltaKind::ComplexPair => {
                let rho = (-self.gamma).sqrt();
                let mut angle = ((-class.delta).sqrt() / alpha).atan();
                if alpha < 0.0 {
                    angle += PI;
                }
                let cot = angle.cos() / angle.sin();
                let csc = 1.0 / angle.sin();
                let phase = normalize_phase(-angle + (cot - x1 / rho * csc).atan());
                ClosedFormSolution::Oscillating { rho, angle, phase }
            }
        };
        Ok(sol)
    }

    /// Largest relative gap between the closed form and the orbit at `j = 2, 3`.
    fn deviation_from_orbit(&self, sol: &ClosedFormSolution, x1: f64) -> f64 {
        let Ok(orbit) = self.iterate(x1, 3) else { return f64::INFINITY };
        let mut worst: f64 = 0.0;
        for (i, expected) in orbit.values.iter().enumerate().skip(1) {
            if let Evaluation::Value(v) = sol.eval((i + 1) as f64) {
                worst = worst.max((v - expected).abs() / expected.abs().max(1.0));
            }
        }
        worst
    }
}

fn real_pair(theta: f64, theta_prime: f64, x1: f64) -> ClosedFormSolution {
    let beta = theta_prime / theta * ((theta_prime - theta) / (x1 - theta) - 1.0);
    ClosedFormSolution::RealRoots { theta, theta_prime, beta }
}

/// Reduce a phase mod π into `(−π, π]`; `tan` has period π so the solution
/// is unchanged.
fn normalize_phase(mut phase: f64) -> f64 {
    while phase <= -PI {
        phase += PI;
    }
    while phase > PI {
        phase -= PI;
    }
    phase
}

/// Explicit solution `j ↦ x_j` of the recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormSolution {
    /// `x_1` is a fixed point.
    Constant { theta: f64 },
    /// `Δ = 0`: `x_j = θ(1 + 1/(β + j))`.
    RepeatedRoot { theta: f64, beta: f64 },
    /// `Δ > 0`: `x_j = θ + (θ' − θ)/(β(θ/θ')^j + 1)`.
    RealRoots { theta: f64, theta_prime: f64, beta: f64 },
    /// `Δ < 0`, `α ≠ 0`: `x_j = ρ(cos φ − sin φ · tan(jφ + ω))` with
    /// `angle = φ ∈ (0, π)` and `phase = ω ∈ (−π, π]`.
    Oscillating { rho: f64, angle: f64, phase: f64 },
    /// `α = 0`, `γ < 0`: `x_1, γ/x_1, x_1, …`. Only integer `j` are defined.
    Alternating { x1: f64, gamma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluation {
    Value(f64),
    /// `j` lies within [`POLE_TOL`] of a vertical asymptote.
    Pole,
    /// No real-valued extension at this `j`.
    Undefined,
}

impl Evaluation {
    pub fn value(self) -> Option<f64> {
        match self {
            Evaluation::Value(v) => Some(v),
            _ => None,
        }
    }
}

/// Real zeros and poles of an extended solution on an interval, ascending.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ZerosAndPoles {
    pub zeros: Vec<f64>,
    pub poles: Vec<f64>,
}

fn nearest_integer(j: f64) -> Option<i64> {
    let r = j.round();
    ((j - r).abs() <= POLE_TOL).then_some(r as i64)
}

impl ClosedFormSolution {
    pub fn eval(&self, j: f64) -> Evaluation {
        match *self {
            Self::Constant { theta } => Evaluation::Value(theta),
            Self::RepeatedRoot { theta, beta } => {
                let d = beta + j;
                if d.abs() <= POLE_TOL {
                    Evaluation::Pole
                } else {
                    Evaluation::Value(theta * (1.0 + 1.0 / d))
                }
            }
            Self::RealRoots { theta, theta_prime, beta } => {
                let q = theta / theta_prime;
                let power = if q > 0.0 {
                    if let Some(p) = self.real_roots_pole() {
                        if (j - p).abs() <= POLE_TOL {
                            return Evaluation::Pole;
                        }
                    }
                    q.powf(j)
                } else {
                    match nearest_integer(j) {
                        Some(k) => q.powi(k as i32),
                        None => return Evaluation::Undefined,
                    }
                };
                let denom = beta * power + 1.0;
                if denom.abs() <= POLE_TOL * (beta * power).abs().max(1.0) {
                    return Evaluation::Pole;
                }
                Evaluation::Value(theta + (theta_prime - theta) / denom)
            }
            Self::Oscillating { rho, angle, phase } => {
                let period = PI / angle;
                let s = (j * angle + phase - FRAC_PI_2) / PI;
                if (s - s.round()).abs() * period <= POLE_TOL {
                    return Evaluation::Pole;
                }
                Evaluation::Value(rho * (angle.cos() - angle.sin() * (j * angle + phase).tan()))
            }
            Self::Alternating { x1, gamma } => match nearest_integer(j) {
                Some(k) if k.rem_euclid(2) == 1 => Evaluation::Value(x1),
                Some(_) => Evaluation::Value(gamma / x1),
                None => Evaluation::Undefined,
            },
        }
    }

    /// Pole of the real-roots form when `θ/θ' > 0` and `β < 0`.
    fn real_roots_pole(&self) -> Option<f64> {
        match *self {
            Self::RealRoots { theta, theta_prime, beta } => {
                let q = theta / theta_prime;
                (q > 0.0 && beta < 0.0).then(|| (-1.0 / beta).ln() / q.ln())
            }
            _ => None,
        }
    }

    /// All zeros and poles in `[lo, hi]`. Between consecutive entries the sign
    /// of [`eval`](Self::eval) is constant.
    pub fn zeros_and_poles(&self, lo: f64, hi: f64) -> Result<ZerosAndPoles, RecurrenceError> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(RecurrenceError::EmptyInterval);
        }
        let inside = |j: &f64| *j >= lo && *j <= hi;
        let mut out = ZerosAndPoles::default();
        match *self {
            Self::Constant { .. } => {}
            Self::RepeatedRoot { beta, .. } => {
                out.zeros.extend(Some(-beta - 1.0).filter(inside));
                out.poles.extend(Some(-beta).filter(inside));
            }
            Self::RealRoots { theta, theta_prime, beta } => {
                let q = theta / theta_prime;
                if q <= 0.0 {
                    return Err(RecurrenceError::Unsupported(
                        "fixed points of opposite sign: no real continuous extension",
                    ));
                }
                // x_j = 0  <=>  β q^j = −θ'/θ
                let target = -theta_prime / (theta * beta);
                if beta != 0.0 && target > 0.0 {
                    out.zeros.extend(Some(target.ln() / q.ln()).filter(inside));
                }
                out.poles.extend(self.real_roots_pole().filter(inside));
            }
            Self::Oscillating { angle, phase, .. } => {
                // poles: jφ + ω = π/2 + kπ; zeros sit exactly one step earlier.
                let pole_at = |k: f64| (FRAC_PI_2 - phase + k * PI) / angle;
                let k_range = |a: f64, b: f64| {
                    let first = ((a * angle + phase - FRAC_PI_2) / PI).ceil() as i64;
                    let last = ((b * angle + phase - FRAC_PI_2) / PI).floor() as i64;
                    first..=last
                };
                out.poles.extend(k_range(lo, hi).map(|k| pole_at(k as f64)).filter(inside));
                out.zeros
                    .extend(k_range(lo + 1.0, hi + 1.0).map(|k| pole_at(k as f64) - 1.0).filter(inside));
            }
            Self::Alternating { .. } => {
                return Err(RecurrenceError::Unsupported(
                    "alpha = 0 has no continuous extension",
                ))
            }
        }
        Ok(out)
    }

    /// `π/φ` for oscillating solutions.
    pub fn period(&self) -> Result<f64, RecurrenceError> {
        match *self {
            Self::Oscillating { angle, .. } => Ok(PI / angle),
            _ => Err(RecurrenceError::Unsupported("only oscillating solutions are periodic")),
        }
    }
}
