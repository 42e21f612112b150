//! Rational recurrences of the form `x_{j+1} = α + γ/x_j` and eigenvalue
//! location on trees.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`recurrence`]: closed-form solutions of the recurrence, their extension
//!   to real indices, poles, zeros, periods and forbidden initial values.
//! * [`treediag`]: rooted trees, tree-patterned symmetric matrices and the
//!   linear-time congruence diagonalization that counts eigenvalues below,
//!   at and above a shift.
//! * [`oracle`]: a dense Jacobi eigensolver and a seeded random tree
//!   generator, used as an independent reference.
//! * [`signs`]: sign patterns of the pendant-path recurrence used to count
//!   Laplacian eigenvalues below the average degree.
//! * [`limits`]: starlike trees `T(l, m, n)` and the limits of their spectral
//!   radii.
//!
//! Arithmetic is generic over [`Scalar`], implemented for `f64` and for exact
//! rationals ([`BigRational`]).

#![no_std]

extern crate alloc;

pub mod limits;
pub mod oracle;
pub mod recurrence;
mod scalar;
pub mod signs;
pub mod treediag;

pub use num_rational::BigRational;
pub use scalar::{ratio, Scalar};
