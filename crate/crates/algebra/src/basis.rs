use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::num::{gcd_all, mul_add};
use crate::{Error, IntMatrix, Result};

/// Unimodular `A` whose last row is `n`.
///
/// Elementary row operations `P` reduce the column `n` to `±eₖ`; the columns
/// of `P⁻¹` are tracked alongside, so `(P⁻¹)ᵀ` has last row `n`.
pub fn complete_primitive_to_basis(n: &[i64]) -> Result<IntMatrix> {
    let k = n.len();
    if k == 0 {
        return Err(Error::Precondition("empty vector".into()));
    }
    if gcd_all(n) != 1 {
        return Err(Error::Precondition(format!("{n:?} is not primitive")));
    }
    let mut x = n.to_vec();
    let mut q = IntMatrix::identity(k);
    let last = k - 1;
    loop {
        let nonzero: Vec<usize> = (0..k).filter(|&i| x[i] != 0).collect();
        if nonzero.len() == 1 {
            let i = nonzero[0];
            if i != last {
                x.swap(i, last);
                q.swap_cols(i, last);
            }
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| x[i].unsigned_abs()).unwrap();
        for &i in &nonzero {
            if i != p {
                let c = x[i] / x[p];
                // row_i -= c row_p on x; inverse is col_p += c col_i on q
                x[i] = mul_add(-c, x[p], x[i])?;
                q.add_col(p, i, c)?;
            }
        }
    }
    if x[last] == -1 {
        q.negate_col(last)?;
    }
    Ok(q.transpose())
}

/// Product of `move_count` random elementary row operations and sign flips,
/// deterministic in `seed`. Moves that would overflow are skipped.
pub fn random_unimodular(k: usize, seed: u64, move_count: usize) -> IntMatrix {
    assert!(k >= 1, "k must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = IntMatrix::identity(k);
    for _ in 0..move_count {
        if k == 1 || rng.gen_ratio(1, 5) {
            let i = rng.gen_range(0..k);
            a.negate_row(i).expect("negation of bounded entries");
        } else {
            let i = rng.gen_range(0..k);
            let mut j = rng.gen_range(0..k - 1);
            if j >= i {
                j += 1;
            }
            let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
            let mut b = a.clone();
            if b.add_row(i, j, c).is_ok() {
                a = b;
            }
        }
    }
    a
}
