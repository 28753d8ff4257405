use pdc_algebra::{random_unimodular, IntMatrix, Result};
use rand::Rng;
use serde::Serialize;

use crate::{change_basis, ManifoldPresentation};

/// Summands of an indefinite unimodular form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    /// `[[0,1],[1,0]]`
    Hyperbolic,
    /// `(1)`
    Plus,
    /// `(−1)`
    Minus,
}

impl Block {
    pub fn rank(self) -> usize {
        match self {
            Block::Hyperbolic => 2,
            Block::Plus | Block::Minus => 1,
        }
    }
}

pub fn block_sum(blocks: &[Block]) -> IntMatrix {
    let k = blocks.iter().map(|b| b.rank()).sum();
    let mut g = IntMatrix::zeros(k, k);
    let mut at = 0;
    for b in blocks {
        match b {
            Block::Hyperbolic => {
                g.set(at, at + 1, 1);
                g.set(at + 1, at, 1);
            }
            Block::Plus => g.set(at, at, 1),
            Block::Minus => g.set(at, at, -1),
        }
        at += b.rank();
    }
    g
}

/// Block sum with `ν′` coefficients `l`, rewritten in a random basis
/// (`random_unimodular(k, seed, moves)`).
pub fn conjugated_block_sum(blocks: &[Block], l: &[i64], seed: u64, moves: usize) -> Result<ManifoldPresentation> {
    let base = ManifoldPresentation::from_gram(&block_sum(blocks), l)?;
    change_basis(&base, &random_unimodular(base.k(), seed, moves))
}

/// Odd form of rank `k`: `(±1)` summands, possibly one hyperbolic plane,
/// at least one odd summand.
pub fn random_odd_blocks(k: usize, rng: &mut impl Rng) -> Vec<Block> {
    let mut blocks = Vec::new();
    let mut left = k;
    if k >= 3 && rng.gen_bool(0.5) {
        blocks.push(Block::Hyperbolic);
        left -= 2;
    }
    for _ in 0..left {
        blocks.push(if rng.gen_bool(0.5) { Block::Plus } else { Block::Minus });
    }
    blocks
}

/// Even indefinite form of even rank `k`: `k/2` hyperbolic planes.
pub fn even_blocks(k: usize) -> Vec<Block> {
    assert!(k % 2 == 0, "even indefinite unimodular forms of rank < 8 have even rank");
    vec![Block::Hyperbolic; k / 2]
}

pub fn random_l(k: usize, rng: &mut impl Rng) -> Vec<i64> {
    (0..k).map(|_| rng.gen_range(0..12)).collect()
}
