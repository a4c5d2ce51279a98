//! Exact-arithmetic calculator and verifier for the combinatorial
//! multiplicity bounds used in birational-rigidity arguments for Fano
//! complete intersections cut out by quadrics and cubics.
//!
//! The crate computes the local bound `mubar(a, b)` on the admissible domain
//! `U = {(a, b) | a >= b^2}`, the word-tree machinery that realizes it, exact
//! lattice-point counts and rational volumes for the position simplex, the
//! floating-point analytic majorants, the global bound `mubar_total(a)` over
//! defect profiles, and a per-family rigidity checker. Every inequality it
//! verifies is recorded as a [`BoundCertificate`] with both sides kept exact
//! (unbounded integers and rationals; binary64 only where a bound is itself a
//! float formula).

pub mod analytic;
pub mod checker;
pub mod error;
pub mod global;
pub mod golden;
pub mod local;
pub mod model;
pub mod polytope;
pub mod rational;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use model::{
    is_admissible, BigInt, BoundCertificate, CertValue, FamilyParams, LocalPair, Relation,
};
pub use rational::ExactRational;
