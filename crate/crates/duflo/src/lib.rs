//! Exact-arithmetic toolkit for Lie algebras over the rationals.
//!
//! Given a Lie algebra by structure constants, this crate builds the symmetric
//! and enveloping algebras as convolution algebras of point-supported
//! distributions, the symmetrization map and its inverse, the Duflo map
//! `η(p) = exp_*(p·q)`, star products transported from the enveloping algebra
//! through a wheel-series twist, and the differential-operator calculus
//! (one-sided actions, operator extraction, adjoint-ideal membership) needed to
//! verify the resulting identities degree by degree — everything in exact
//! rational arithmetic, so every verdict is a theorem at the stated truncation,
//! not an approximation.
//!
//! The crate also ships a CLI harness (`duflo verify ...`) that runs named
//! verification suites over an (algebra × degree × wheel-profile) grid and
//! emits deterministic text or JSON reports.

#![forbid(unsafe_code)]

pub mod diffop;
pub mod error;
pub mod invariants;
pub mod jet;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod pbw;
pub mod poly;
pub mod rat;
pub mod star;

pub use error::{Error, Result};
pub use pbw::{Enveloping, PBWElement};
pub use star::{StarContext, WheelCoefficients, WheelProfile};
pub use jet::Jet;
pub use lie::LieAlgebra;
pub use matrix::PolyMatrix;
pub use poly::{MultiIndex, Poly};
pub use rat::Rat;
