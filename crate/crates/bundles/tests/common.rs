#![allow(dead_code)]

use pdc_algebra::IntMatrix;
use pdc_manifold::generate::{conjugated_block_sum, random_l, random_odd_blocks, Block};
use pdc_manifold::ManifoldPresentation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn pres(rows: &[Vec<i64>], l: &[i64]) -> ManifoldPresentation {
    ManifoldPresentation::from_gram(&IntMatrix::from_rows(rows).unwrap(), l).unwrap()
}

pub fn hyp() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![1, 0]]
}

pub fn hyp2() -> Vec<Vec<i64>> {
    vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]
}

/// Random form of rank `k` (odd, or even when `k` is even and the coin says so).
pub fn random_presentation(k: usize, seed: u64) -> ManifoldPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = if k % 2 == 0 && rng.gen_bool(0.4) {
        vec![Block::Hyperbolic; k / 2]
    } else {
        random_odd_blocks(k, &mut rng)
    };
    let l = random_l(k, &mut rng);
    conjugated_block_sum(&blocks, &l, rng.gen(), 2 * k).unwrap()
}

pub fn all_vectors(m: i64, k: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
