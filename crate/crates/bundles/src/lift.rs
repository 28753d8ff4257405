use pdc_algebra::num::gcd_all;

/// A primitive integer vector congruent to `residue` (mod 24), if one exists.
///
/// For `k ≥ 2` one exists exactly when `gcd(residue, 24) = 1`; for `k = 1`
/// only `±1` lift.
pub fn primitive_lift(residue: &[i64]) -> Option<Vec<i64>> {
    if residue.is_empty() || residue.iter().fold(24, |g, &r| pdc_algebra::num::gcd(g, r)) != 1 {
        return None;
    }
    let centered: Vec<i64> = residue
        .iter()
        .map(|r| {
            let r = r.rem_euclid(24);
            if r > 12 {
                r - 24
            } else {
                r
            }
        })
        .collect();
    if residue.len() == 1 {
        return (centered[0].abs() == 1).then_some(centered);
    }
    let mut n = centered;
    if gcd_all(&n) == 1 {
        return Some(n);
    }
    if n[1..].iter().all(|&x| x == 0) {
        n[1] = 24;
    }
    // gcd(n₀ + 24t, g) = 1 for some small t: the primes of g not dividing 24
    // exclude one class of t each, the others never divide n₀.
    let base = n[0];
    for step in 0..10_000i64 {
        for t in [step, -step] {
            n[0] = base + 24 * t;
            if gcd_all(&n) == 1 {
                return Some(n);
            }
        }
    }
    None
}

/// All primitive integer vectors in `[−radius, radius]^k` congruent to
/// `residue` (mod 24), in lexicographic order.
pub fn primitive_lifts_in_box(residue: &[i64], radius: i64) -> Vec<Vec<i64>> {
    let choices: Vec<Vec<i64>> = residue
        .iter()
        .map(|r| {
            let r = r.rem_euclid(24);
            let lo = -radius + (r + radius).rem_euclid(24);
            (0..).map(|i| lo + 24 * i).take_while(|&x| x <= radius).collect()
        })
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; residue.len()];
    loop {
        let n: Vec<i64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if gcd_all(&n) == 1 {
            out.push(n);
        }
        let mut pos = residue.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts() {
        assert_eq!(primitive_lift(&[1]), Some(vec![1]));
        assert_eq!(primitive_lift(&[23]), Some(vec![-1]));
        assert_eq!(primitive_lift(&[5]), None);
        assert_eq!(primitive_lift(&[2, 4]), None);
        let n = primitive_lift(&[5, 0]).unwrap();
        assert_eq!(gcd_all(&n), 1);
        assert_eq!(n.iter().map(|x| x.rem_euclid(24)).collect::<Vec<_>>(), vec![5, 0]);
    }

    #[test]
    fn box_lifts() {
        let lifts = primitive_lifts_in_box(&[0, 1], 24);
        assert_eq!(lifts.len(), 5);
        assert!(lifts.contains(&vec![-24, 1]) && lifts.contains(&vec![24, -23]));
        assert!(primitive_lifts_in_box(&[5], 24).is_empty());
        assert_eq!(primitive_lifts_in_box(&[23], 24), vec![vec![-1]]);
    }
}
