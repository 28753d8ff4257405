//! Homotopy classification of 3-connected 11-dimensional Poincaré duality
//! complexes whose 7-skeleton is a wedge of copies of `S⁴ ∨ S⁷`.
//!
//! A complex of rank `r` is a connected sum of rank-one pieces `E_{λ,ε,δ}`
//! ([`EPresentation`]). Rank-one pieces are classified by orbits of three
//! self-equivalences of `S⁴ ∨ S⁷` ([`rank1_canonical`], [`table1`]). For
//! higher rank, [`normal_form`] rewrites a presentation with the
//! connected-sum identities into
//!
//! ```text
//! #^{r−2} E_{0,0,0} # E_{0,ε̂,0} # E_{λ,ε,δ}
//! ```
//!
//! and [`homotopy_equal`] compares normal forms.
//!
//! Two facts about the rewriting system shape the normal form:
//!
//! * When `8 | λ_s` the two even shapes coincide:
//!   `E_{0,1,0} # E_{8,ε,δ} ≃ E_{0,0,0} # E_{8,1+7ε,δ}` for even `ε`, and at
//!   `λ_s = 0` the summands can simply be swapped. The form with odd tail `ε`
//!   and `ε̂ = 0` is reported.
//! * For odd `λ_s` the identities do not always reach a normal shape. The
//!   shape is then read off two quantities every identity preserves:
//!   `ε̂ = [some summand with even λ has odd ε]` and
//!   `J = Σ_{λ≡1 (3)} (ε − δ) + Σ_{λ≡2 (3)} δ (mod 3)`.
//!
//! The loop space of every such complex of rank `r` is that of
//! `#^r (S⁴ × S⁷)`; this is not computed here.

mod normal;
mod presentation;
mod rank1;

pub use normal::{
    eps_hat_invariant, homotopy_equal, j_invariant, normal_form, normal_form_with_trace, Derivation, ENormalForm,
    Equality, NormalFormReport,
};
pub use presentation::{
    connect, connected_sum, multiply_by_unit, stable_invariants, ConnectCondition, EFactor, EFile, EFileError,
    EPresentation, EclassError, Rewrite, StableInvariants,
};
pub use rank1::{
    printed_representative, printed_representatives, rank1_canonical, rank1_equivalent, rank1_neighbors,
    rank1_orbit, table1, Rank1Move, RankOneClass, Table1, Table1Row,
};
