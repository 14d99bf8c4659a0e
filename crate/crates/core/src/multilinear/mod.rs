//! Alternating cochains, the Nijenhuis–Richardson bracket, lifts to
//! `g ⊕ V`, and the Chevalley–Eilenberg coboundary.

mod ce;
mod cochain;
pub mod combinatorics;
mod lift;
mod nr;

pub use ce::{adjoint_action, ce_coboundary, ce_coboundary_via_nr, ce_matrix};
pub use cochain::Cochain;
pub use combinatorics::{binomial, subset_rank, subsets, unshuffles, Unshuffle};
pub use lift::{lift, Bidegree, Homogeneity, LiftedCochain, MixedMap, Side};
pub use nr::{nr_bracket, nr_compose};
pub(crate) use nr::nr_bracket_first_nonzero;
