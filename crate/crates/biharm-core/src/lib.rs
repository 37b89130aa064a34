//! Exact classification and pointwise numerical verification of index-k
//! biharmonic and conformal-harmonic submanifolds of round spheres.
//!
//! The crate has two halves that check each other:
//!
//! * an exact half ([`exact`], [`classify`]) that decides every classification
//!   predicate in rational / quadratic-surd arithmetic, with no floating error;
//! * a numerical half ([`jet`], [`catalog`], [`geometry`], [`operators`],
//!   [`variation`]) that builds the classified submanifolds as analytic charts
//!   and evaluates the relevant differential operators pointwise through
//!   truncated Taylor jets, reporting residual norms.
//!
//! # Conventions
//!
//! Fixed once, crate-wide:
//!
//! * `δω = −tr_g ∇ω`, so the tension field of an isometric inclusion is
//!   `δTi = −m·H` with `H` the mean curvature vector.
//! * `Δ = δd` is the positive rough Laplacian on sections of the pulled-back
//!   tangent bundle: `ΔV = −g^{ij}(∇_i∇_j V − Γ^k_{ij} ∇_k V)`, where `∇` is
//!   the pullback of the ambient connection (`∇_i V = P_amb(∂_i V)`).
//!   With these signs `ΔH = (n−1)(b²/a²)·H` on the hypersphere `S^{n−1}(a)`,
//!   i.e. the eigenvalue is positive; tests pin both anchors.
//! * Jets store Taylor coefficients `c_α = ∂^α f / α!`; the accessor
//!   [`jet::Jet::partial`] multiplies back by `α!`.
//!
//! The crate is `no_std` (with `alloc`); everything IO-shaped lives in the
//! companion CLI crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod catalog;
pub mod classify;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod identities;
pub mod jet;
pub mod linalg;
pub mod operators;
pub mod quadrature;
pub mod scalar;
pub mod variation;

pub use error::Error;
pub use exact::{Rational, RootKind, RootSet, Surd};
pub use scalar::{Dd, Real};

/// Crate-wide `Result`.
pub type Result<T> = core::result::Result<T, Error>;
