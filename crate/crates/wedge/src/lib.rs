//! π₇ of a wedge of `k` four-spheres.
//!
//! An element is written
//!
//! ```text
//! L = Σ_{i<j} w_ij [αᵢ, αⱼ] + Σ sᵢ νᵢ + Σ tᵢ ν′ᵢ,     tᵢ ∈ Z/12
//! ```
//!
//! with `νᵢ = αᵢ∘ν` and `ν′ᵢ = αᵢ∘ν′`. A self-map of the wedge is an integer
//! matrix `A` whose rows expand the old generators in the new ones,
//! `αᵢ = Σⱼ A_ij α′ⱼ`. Composites are expanded with
//!
//! * `[ι₄, ι₄] = 2ν + ν′`, Whitehead products bilinear and symmetric;
//! * `(a·ι)∘ν = a²ν + C(a,2)ν′` with `C(a,2) = a(a−1)/2` for every integer `a`;
//! * `(Σ aⱼα′ⱼ)∘ν = Σ (aⱼα′ⱼ)∘ν + Σ_{j<j′} aⱼa_{j′}[α′ⱼ, α′_{j′}]`;
//! * `(Σ aⱼα′ⱼ)∘ν′ = Σ aⱼ ν′ⱼ`.

mod gram;
mod pi7;

pub use gram::{gram_of, GramMatrix};
pub use pi7::{compose_class, pushforward, stable_vector, Pi7Wedge};
