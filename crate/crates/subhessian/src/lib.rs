//! Symbolic and numerical toolkit for the 2-Hessian calculus of
//! non-commuting vector-field systems.
//!
//! The crate combines an exact rational polynomial engine with grid-based
//! numerics to compute and verify, at desk scale:
//!
//! - vector-field systems, commutator algebra and structural condition
//!   checks (anti-self-adjointness, Hormander spanning, vanishing second
//!   commutators) — [`fields`];
//! - subelliptic Hessians, elementary symmetric operators, the modified
//!   2-Hessian family and k-convexity tests — [`hessian`];
//! - exact divergence identities, the MacLaurin inequality chain,
//!   p-subharmonicity and integral monotonicity — [`identities`];
//! - grid sampling, mollification, Hessian-measure pairings and weak
//!   continuity ladder experiments — [`grid`], [`measures`];
//! - Carnot-Caratheodory distance estimation, ball volumes, homogeneous
//!   dimension fits and the integrability/Holder exponent calculator —
//!   [`geometry`].
//!
//! Every symbolic path works over exact rationals: identities certified as
//! "zero" are the literal zero polynomial, not a small float. Floating
//! point enters only at evaluation boundaries (grids, quadrature, Monte
//! Carlo).
//!
//! The `examples/` directory carries one runnable example per capability;
//! the `subhessian` binary exposes the same operations as subcommands
//! emitting JSON/CSV reports.

// stencil kernels and small dense linear algebra read better with explicit
// index loops
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod grid;
pub mod hessian;
pub mod identities;
pub mod linalg;
pub mod measures;
pub mod quad;
pub mod sympoly;

pub use error::{Error, Result};
pub use fields::{FieldSystem, VectorField};
pub use sympoly::Polynomial;
