use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LinError, Matrix, Rational};

/// Largest entry magnitude a shear may produce.
const ENTRY_BOUND: i64 = 8;

/// Deterministic pseudo-random `d x d` integer matrix with determinant `±1`.
///
/// Built as a product of a row permutation, sign flips and `2d` row shears
/// `row_i += k * row_j` with `k ∈ {±1, ±2}`; a shear is skipped when it would
/// push any entry above [`ENTRY_BOUND`] in magnitude.
pub fn random_unimodular(d: usize, seed: u64) -> Result<Matrix, LinError> {
    if d == 0 {
        return Err(LinError::EmptyDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(&mut rng);
    let mut a: Vec<Vec<i64>> = perm
        .iter()
        .map(|&p| {
            let mut r = vec![0; d];
            r[p] = if rng.gen_bool(0.5) { 1 } else { -1 };
            r
        })
        .collect();
    if d > 1 {
        for _ in 0..2 * d {
            let i = rng.gen_range(0..d);
            let mut j = rng.gen_range(0..d - 1);
            if j >= i {
                j += 1;
            }
            let k: i64 = *[-2, -1, 1, 2].choose(&mut rng).expect("nonempty");
            let fits = a[i].iter().zip(&a[j]).all(|(x, y)| (x + k * y).abs() <= ENTRY_BOUND);
            if fits {
                let src = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x += k * y;
                }
            }
        }
    }
    let rows = a.into_iter().map(|r| r.into_iter().map(Rational::from_int).collect()).collect();
    Matrix::from_rows(d, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_is_sign() {
        for seed in 0..10 {
            let m = random_unimodular(1, seed).unwrap();
            let x = m[(0, 0)].clone();
            assert!(x == Rational::one() || x == Rational::from_int(-1));
        }
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(random_unimodular(7, 42).unwrap(), random_unimodular(7, 42).unwrap());
        assert_ne!(random_unimodular(7, 42).unwrap(), random_unimodular(7, 43).unwrap());
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(random_unimodular(0, 1), Err(LinError::EmptyDimension)));
    }

    #[test]
    fn determinant_is_unit() {
        for seed in 0..20 {
            let det = random_unimodular(5, seed).unwrap().determinant().unwrap();
            assert!(det == Rational::one() || det == Rational::from_int(-1), "seed {seed}: {det}");
        }
    }
}
