//! Exact-arithmetic toolkit for compatible Lie algebras.
//!
//! A compatible Lie algebra is a vector space carrying two Lie brackets such
//! that every linear combination of them is again a Lie bracket. This crate
//! represents brackets by structure constants over ℚ and provides
//!
//! * exact rational linear algebra ([`linalg`]),
//! * alternating cochains, unshuffles, the Nijenhuis–Richardson bracket,
//!   lifts to direct sums and the Chevalley–Eilenberg coboundary
//!   ([`multilinear`]),
//! * validation of brackets, compatible pairs and their representations
//!   ([`compat`]),
//! * the staircase cochain complex, its cohomology and the reduced
//!   subcomplex ([`cohomology`]),
//! * infinitesimal deformations and Nijenhuis operators ([`deformation`]),
//! * abelian and nonabelian extensions ([`extension`]),
//! * the Lie–Poisson representation on polynomial functions ([`poisson`]).
//!
//! The ground field is ℚ. Every operation here is rational-linear in the
//! structure constants, so nothing is lost compared to an algebraically
//! closed field of characteristic zero, and every answer is exact.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cohomology;
pub mod compat;
pub mod deformation;
mod error;
pub mod extension;
pub mod linalg;
pub mod multilinear;
pub mod poisson;
#[cfg(feature = "sample")]
pub mod sample;

pub use error::{Error, Verdict, Witness};
pub use linalg::{Matrix, Rational, SubspaceBasis};
pub use multilinear::{Bidegree, Cochain, Homogeneity, LiftedCochain, MixedMap, Side};
pub use compat::{CompatiblePair, LieBracket, RepPair};
