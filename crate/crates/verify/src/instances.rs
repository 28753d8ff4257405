//! Instance generators. Each draw is a function of `(seed, index)` alone.

use pdc_algebra::{random_unimodular, IntMatrix};
use pdc_bundles::Result;
use pdc_manifold::generate::{block_sum, conjugated_block_sum, even_blocks, random_l, random_odd_blocks, Block};
use pdc_manifold::{change_basis, ManifoldPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Instance;

pub fn rng_for(instance: Instance) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(instance.seed);
    rng.set_stream(instance.index);
    rng
}

/// `⊕(±1)` with at most one hyperbolic plane, random `l`, random basis.
pub fn odd_instance(k: usize, instance: Instance) -> Result<ManifoldPresentation> {
    let mut rng = rng_for(instance);
    let blocks = random_odd_blocks(k, &mut rng);
    let l = random_l(k, &mut rng);
    Ok(conjugated_block_sum(&blocks, &l, rng.gen(), 3 * k)?)
}

/// `k/2` hyperbolic planes, random `l`, random basis.
pub fn even_instance(k: usize, instance: Instance) -> Result<ManifoldPresentation> {
    let mut rng = rng_for(instance);
    let l = random_l(k, &mut rng);
    Ok(conjugated_block_sum(&even_blocks(k), &l, rng.gen(), 3 * k)?)
}

/// Even form of rank `k` in a random basis with `lᵢ = g_ii/2`, so that every
/// `vᵢ = g_ii − 2lᵢ` vanishes.
pub fn stably_trivial_instance(k: usize, instance: Instance) -> Result<ManifoldPresentation> {
    let mut rng = rng_for(instance);
    let g = block_sum(&even_blocks(k)).congruent(&random_unimodular(k, rng.gen(), 3 * k))?;
    let l: Vec<i64> = (0..k).map(|i| (g.get(i, i) / 2).rem_euclid(12)).collect();
    Ok(ManifoldPresentation::from_gram(&g, &l)?)
}

/// `diag(1, …, 1)` with `l = 0` in a random basis: odd, `σ = 1`.
pub fn odd_sigma_one_instance(k: usize, instance: Instance) -> Result<ManifoldPresentation> {
    let mut rng = rng_for(instance);
    Ok(conjugated_block_sum(&vec![Block::Plus; k], &vec![0; k], rng.gen(), 3 * k)?)
}

/// `S⁴ × S⁴`: the hyperbolic plane with `l = 0`.
pub fn s4xs4() -> ManifoldPresentation {
    hyperbolic_plane(0, 0)
}

pub fn hyperbolic_plane(l1: i64, l2: i64) -> ManifoldPresentation {
    ManifoldPresentation::from_gram(&block_sum(&[Block::Hyperbolic]), &[l1, l2]).expect("unimodular")
}

/// `G = diag(1, 1)`, `l = (2, 2)`: no admissible class.
pub fn k2odd() -> ManifoldPresentation {
    ManifoldPresentation::from_gram(&IntMatrix::identity(2), &[2, 2]).expect("unimodular")
}

/// `M` in a random basis; used to check basis independence.
pub fn rebased(m: &ManifoldPresentation, seed: u64) -> Result<ManifoldPresentation> {
    Ok(change_basis(m, &random_unimodular(m.k(), seed, 3 * m.k()))?)
}
