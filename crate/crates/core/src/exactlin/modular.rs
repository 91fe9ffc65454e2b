//! Spans over `Q` computed modulo word-size primes, then lifted and certified.
//!
//! A set of vectors independent mod `p` is independent over `Q`, so the rank
//! found mod `p` is a lower bound. The RREF is lifted by CRT and rational
//! reconstruction; the lift is accepted only after every input vector is shown
//! to lie in its row space by exact arithmetic, which forces equality of spans.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::subspace::EchelonBuilder;
use super::{LinError, Matrix, Rational, Subspace};

const PRIMES: [u64; 8] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn int_mod(n: i64, p: u64) -> u64 {
    (n as i128).rem_euclid(p as i128) as u64
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

/// `x mod p`, or `None` when `p` divides the denominator.
fn rational_mod(x: &Rational, p: u64) -> Option<u64> {
    if x.is_zero() {
        return Some(0);
    }
    let (n, d) = match x.to_i64_pair() {
        Some((n, d)) => (int_mod(n, p), int_mod(d, p)),
        None => (big_mod(&x.numer(), p), big_mod(&x.denom(), p)),
    };
    match d {
        0 => None,
        1 => Some(n),
        _ => Some(mul_mod(n, inv_mod(d, p), p)),
    }
}

/// Fully reduced echelon form over `F_p`, rows sorted by pivot.
struct ModEchelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u128 + g as u128 * y as u128) % p as u128) as u64;
                }
            }
        }
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[lead], p);
        v.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
        for (_, row) in self.rows.iter_mut() {
            let f = row[lead];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for (x, &y) in row.iter_mut().zip(&v) {
                if y != 0 {
                    *x = ((*x as u128 + g as u128 * y as u128) % p as u128) as u64;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < lead);
        self.rows.insert(at, (lead, v));
        true
    }
}

fn echelon_mod<I>(ambient_dim: usize, vectors: I, p: u64) -> Option<ModEchelon>
where
    I: Iterator<Item = Vec<Rational>>,
{
    let mut e = ModEchelon { p, rows: Vec::new() };
    for v in vectors {
        if e.rows.len() == ambient_dim {
            break;
        }
        let r = v.iter().map(|x| rational_mod(x, p)).collect::<Option<Vec<u64>>>()?;
        e.insert(r);
    }
    Some(e)
}

/// Residues of one RREF under several primes, all sharing the same pivots.
struct Lift {
    pivots: Vec<usize>,
    primes: Vec<u64>,
    residues: Vec<Vec<Vec<u64>>>,
}

/// `n / d` with `n ≡ a d (mod m)` and `|n|, d <= sqrt(m / 2)`.
fn reconstruct_small(a: u64, m: u64) -> Option<Rational> {
    if a == 0 {
        return Some(Rational::zero());
    }
    let bound = (m / 2).sqrt() as i128;
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound || r1.gcd(&t1) != 1 {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Rational::new(n.try_into().ok()?, d.try_into().ok()?).ok()
}

fn reconstruct_big(a: &BigInt, m: &BigInt) -> Option<Rational> {
    if a.is_zero() {
        return Some(Rational::zero());
    }
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Rational::from_bigints(r1, t1).ok()
}

impl Lift {
    fn candidate(&self, ambient_dim: usize) -> Option<Subspace> {
        let rows = self
            .residues
            .iter()
            .map(|row| (0..ambient_dim).map(|c| self.entry(row, c)).collect::<Option<Vec<Rational>>>())
            .collect::<Option<Vec<_>>>()?;
        let basis = Matrix::from_rows(ambient_dim, rows).ok()?;
        Some(Subspace::from_rref_unchecked(ambient_dim, basis, self.pivots.clone()))
    }

    fn entry(&self, row: &[Vec<u64>], c: usize) -> Option<Rational> {
        if row.iter().all(|r| r[c] == 0) {
            return Some(Rational::zero());
        }
        if self.primes.len() == 1 {
            return reconstruct_small(row[0][c], self.primes[0]);
        }
        let mut m = BigInt::one();
        let mut a = BigInt::zero();
        for (k, &p) in self.primes.iter().enumerate() {
            // a + m t ≡ r (mod p)
            let am = big_mod(&a, p);
            let mm = big_mod(&m, p);
            let diff = (row[k][c] + p - am) % p;
            let t = mul_mod(diff, inv_mod(mm, p), p);
            a += &m * t;
            m *= p;
        }
        reconstruct_big(&a, &m)
    }
}

/// Span of the vectors produced by `vectors()`, which is called more than once
/// and must yield the same sequence each time.
pub(crate) fn span_certified<F, I>(ambient_dim: usize, vectors: F) -> Result<Subspace, LinError>
where
    F: Fn() -> I,
    I: Iterator<Item = Vec<Rational>>,
{
    let mut lift: Option<Lift> = None;
    for &p in &PRIMES {
        let Some(e) = echelon_mod(ambient_dim, vectors(), p) else {
            continue;
        };
        if e.rows.len() == ambient_dim {
            return Ok(Subspace::full(ambient_dim));
        }
        let pivots: Vec<usize> = e.rows.iter().map(|(q, _)| *q).collect();
        let rows: Vec<Vec<u64>> = e.rows.into_iter().map(|(_, r)| r).collect();
        match &mut lift {
            Some(l) if l.pivots == pivots => {
                l.primes.push(p);
                for (acc, r) in l.residues.iter_mut().zip(rows) {
                    acc.push(r);
                }
            }
            Some(l) if l.pivots.len() >= pivots.len() => continue,
            _ => {
                lift = Some(Lift { pivots, primes: vec![p], residues: rows.into_iter().map(|r| vec![r]).collect() });
            }
        }
        let l = lift.as_ref().expect("just set");
        let Some(candidate) = l.candidate(ambient_dim) else {
            continue;
        };
        let mut all_in = true;
        for v in vectors() {
            if !candidate.member(&v)? {
                all_in = false;
                break;
            }
        }
        if all_in {
            return Ok(candidate);
        }
    }
    let mut b = EchelonBuilder::new(ambient_dim);
    for v in vectors() {
        b.insert(v)?;
        if b.is_full() {
            break;
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn reconstruction_roundtrip() {
        let p = PRIMES[0];
        for x in [q(0, 1), q(3, 4), q(-7, 2), q(123456, 789), q(-1, 1)] {
            let r = rational_mod(&x, p).unwrap();
            assert_eq!(reconstruct_small(r, p), Some(x.clone()));
            assert_eq!(reconstruct_big(&BigInt::from(r), &BigInt::from(p)), Some(x));
        }
    }

    #[test]
    fn large_entries_need_several_primes() {
        let big = Rational::from_bigints(BigInt::from(1u8) << 80, BigInt::from(3)).unwrap();
        let vs = vec![vec![Rational::one(), big.clone()], vec![Rational::from_int(2), &big * &Rational::from_int(2)]];
        let s = span_certified(2, || vs.clone().into_iter()).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_vector(0), &[Rational::one(), big][..]);
    }

    #[test]
    fn agrees_with_builder() {
        let vs: Vec<Vec<Rational>> = vec![
            vec![q(1, 1), q(2, 1), q(3, 1), q(0, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1), q(0, 1)],
            vec![q(0, 1), q(1, 3), q(5, 1), q(-1, 1)],
            vec![q(1, 1), q(7, 3), q(8, 1), q(-1, 1)],
        ];
        let mut b = EchelonBuilder::new(4);
        vs.iter().for_each(|v| {
            b.insert(v.clone()).unwrap();
        });
        assert_eq!(span_certified(4, || vs.clone().into_iter()).unwrap(), b.finish());
    }
}
