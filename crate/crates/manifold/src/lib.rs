//! 3-connected 8-dimensional Poincaré duality complexes `M`, presented by the
//! attaching map of the top cell on a wedge of `k` four-spheres.
//!
//! The Gram matrix of the attaching map is the intersection form and must be
//! unimodular. The stable vector `vᵢ = g_ii − 2lᵢ` (mod 24) carries the
//! stable invariants: `σ(M) = gcd(v, 24)` and `τ(ψ) = Σ nᵢvᵢ`.

mod file;
pub mod generate;
mod presentation;

pub use file::{PresentationError, PresentationFile};
pub use presentation::{
    change_basis, is_stably_trivial, parity, sigma, tau, transport_class, CohomologyClass4,
    ManifoldPresentation, Parity,
};
