//! Exact rational models of homogeneous spaces `G/U`, of the identity
//! component of their self-equivalence monoids, and of the left translation
//! `G -> aut_1(G/U)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`gca`] free graded-commutative algebras with Koszul signs and derivations;
//! * [`linalg`] exact row reduction over `Q`;
//! * [`poly`] the infix polynomial syntax used by problem files and the catalog;
//! * [`cohomology`] finite graded algebras with a chosen monomial basis and dual pairing;
//! * [`sullivan`] pure models, pair elimination, the flag-manifold tower and block partitions;
//! * [`hbs`] the function-space model on generators `v ⊗ b*` with augmentation and differential;
//! * [`visibility`] the linearised translation map, visible degrees, certificates and the catalog;
//! * [`cli`] problem files, reports and the command front end.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod gca;
pub mod hbs;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod sullivan;
pub mod visibility;

pub use error::{Error, Result};
pub use rational::Q;
