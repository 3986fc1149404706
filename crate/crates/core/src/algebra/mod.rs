//! Finite-dimensional C*-algebras as direct sums of matrix blocks, their
//! block-selection quotient maps, and pullbacks of projections along them.
//!
//! A [`Morphism`] sends target block `j` to `U_j x_{s_j} U_j*`. Onto maps are
//! exactly the ones selecting distinct source blocks; they forget the rest.
//! Pullbacks lift a target projection through the canonical section and cut
//! the spectrum of the compressed lift, so the image is hit exactly while the
//! order constraints in the source are kept.

mod element;
mod morphism;
mod pullback;
mod pushforward;

pub use element::{element_leq, element_lt, element_order_defect, AlgebraElement, BlockAlgebra};
pub use morphism::{BlockMap, Morphism, MorphismJson, UNITARY_TOL};
pub use pullback::{
    check_pullback, interpolate_pregap, pullback_projection, sandwich_pullback, Interpolation,
    PullbackCheck, IMAGE_EXACT_TOL, PULLBACK_DELTA,
};
pub use pushforward::{element_spectral_family, pushforward_spectral_bound_check, PushforwardReport};
