//! Classes `ψ ∈ H⁴(M)` that classify principal SU(2)-bundles with
//! 3-connected total space, and the stable invariants `λ(ψ)`, `ε_s(ψ)` of
//! the total space `E(ψ)`.
//!
//! `ψ` is admissible when it is primitive and `ψ∪ψ ≡ τ(ψ)` (mod 24). Since
//! `ψᵀGψ − τ(ψ) = 2Q(ψ)` with `Q` the `ν′` coefficient of `ψ̃∘L`, this is
//! `Q(ψ) ≡ 0` (mod 12), which splits into a condition mod 4 on `ψ` mod 8 and
//! a condition mod 3 on `ψ` mod 3. Searches run over those two factors.
//!
//! `λ(ψ) = gcd(24, τ(ψ^⊥))`, computed both from an adapted basis and directly
//! from `ψ^⊥`.

mod achievable;
mod adapt;
mod admissible;
mod error;
mod exec;
mod hypotheses;
mod lambda;
mod lift;
mod search;

pub use achievable::{achievable_lambdas, AchievableOptions, AchievableReport, LiftCheck};
pub use adapt::{adapt_basis, AdaptedBasis, BasisCase};
pub use admissible::{admissibility, is_admissible, AdmissibleClass, Admissibility, Verdict};
pub use error::{BundleError, Result};
pub use exec::{Exec, Limits};
pub use hypotheses::{hypothesis_h4, hypothesis_h8, HypothesisReport};
pub use lambda::{
    bundle_invariants, epsilon_of, lambda_from_adapted, lambda_of, lambda_via_perp, BundleInvariants, EpsilonS,
    LambdaResult, LambdaRoute,
};
pub use lift::{primitive_lift, primitive_lifts_in_box};
pub use search::{
    admissible_residues, enumerate_admissible_residues, enumerate_admissible_residues_direct,
    exists_bundle, local_lambda_part, FactoredResidues,
};
