use crate::exactlin::{LinError, Matrix, Rational};

use super::NilError;

/// Sparse vector: `(index, coefficient)` pairs, indices increasing, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// A finite-dimensional Lie algebra given by structure constants
/// `[x_i, x_j] = Σ_k c_ij^k x_k`.
///
/// Only pairs `i < j` are stored; antisymmetry supplies the rest. Jacobi is not
/// checked on construction (see [`verify_jacobi`]), and nilpotency is enforced
/// by [`super::lower_central_series`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentAlgebra {
    dim: usize,
    upper: Vec<SparseVec>,
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

fn check_len(dim: usize, v: &[Rational]) -> Result<(), NilError> {
    if v.len() != dim {
        return Err(LinError::DimensionMismatch { expected: dim, found: v.len() }.into());
    }
    Ok(())
}

impl NilpotentAlgebra {
    /// The abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        NilpotentAlgebra { dim, upper: vec![Vec::new(); dim * dim.saturating_sub(1) / 2] }
    }

    /// Builds an algebra from upper-triangular entries `(i, j, terms)` with `i < j`.
    /// Pairs that are not listed bracket to zero.
    pub fn from_brackets<I>(dim: usize, entries: I) -> Result<Self, NilError>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Rational)>)>,
    {
        let mut alg = Self::abelian(dim);
        let mut seen = vec![false; alg.upper.len()];
        for (i, j, terms) in entries {
            if i >= j || j >= dim {
                return Err(NilError::BadPair { i, j, dim });
            }
            let p = pair_index(dim, i, j);
            if seen[p] {
                return Err(NilError::DuplicatePair { i, j });
            }
            seen[p] = true;
            let mut terms: SparseVec = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            terms.sort_by_key(|(k, _)| *k);
            if let Some(&(k, _)) = terms.iter().find(|(k, _)| *k >= dim) {
                return Err(NilError::BadIndex { k, dim });
            }
            if terms.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(NilError::DuplicateTerm { i, j });
            }
            alg.upper[p] = terms;
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.upper.iter().all(Vec::is_empty)
    }

    /// `[x_i, x_j]` as a sparse vector.
    pub fn constant(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(self.dim, i, j)].clone(),
            std::cmp::Ordering::Greater => {
                self.upper[pair_index(self.dim, j, i)].iter().map(|(k, c)| (*k, -c)).collect()
            }
            std::cmp::Ordering::Equal => Vec::new(),
        }
    }

    /// Stored constants for `i < j`.
    pub(crate) fn upper(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.upper[pair_index(self.dim, i, j)]
    }

    /// Nonzero brackets `(i, j, [x_i, x_j])` with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Rational)])> + '_ {
        (0..self.dim).flat_map(move |i| {
            (i + 1..self.dim).filter_map(move |j| {
                let t = self.upper(i, j);
                (!t.is_empty()).then_some((i, j, t))
            })
        })
    }

    /// `acc += f * [x_i, x_j]`.
    fn add_scaled_constant(&self, acc: &mut [Rational], f: &Rational, i: usize, j: usize) {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => {
                for (k, c) in self.upper(i, j) {
                    acc[*k] += &(f * c);
                }
            }
            std::cmp::Ordering::Greater => {
                for (k, c) in self.upper(j, i) {
                    acc[*k] -= &(f * c);
                }
            }
            std::cmp::Ordering::Equal => {}
        }
    }

    /// Bilinear extension of the bracket to arbitrary vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, NilError> {
        check_len(self.dim, x)?;
        check_len(self.dim, y)?;
        let mut out = vec![Rational::zero(); self.dim];
        let ys: Vec<usize> = (0..self.dim).filter(|&j| !y[j].is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &j in &ys {
                if i != j {
                    self.add_scaled_constant(&mut out, &(xi * &y[j]), i, j);
                }
            }
        }
        Ok(out)
    }

    /// Rows `[x_i, v]` for every basis vector, so `[u, v] = Σ u_i row_i`.
    pub(crate) fn right_multiplication(&self, v: &[Rational]) -> Vec<Vec<Rational>> {
        let vs: Vec<usize> = (0..self.dim).filter(|&j| !v[j].is_zero()).collect();
        (0..self.dim)
            .map(|i| {
                let mut row = vec![Rational::zero(); self.dim];
                for &j in &vs {
                    if i != j {
                        self.add_scaled_constant(&mut row, &v[j], i, j);
                    }
                }
                row
            })
            .collect()
    }

    /// Structure constants in the basis whose `r`-th vector is row `r` of `m`
    /// (expressed in the current basis).
    pub fn change_basis(&self, m: &Matrix) -> Result<NilpotentAlgebra, NilError> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(LinError::DimensionMismatch { expected: self.dim, found: m.rows().max(m.cols()) }.into());
        }
        let inv = m.inverse().map_err(|e| match e {
            LinError::Singular => NilError::SingularBasis,
            other => other.into(),
        })?;
        let supports: Vec<Vec<(usize, Rational)>> = (0..self.dim)
            .map(|r| m.row(r).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect())
            .collect();
        let mut entries = Vec::new();
        let mut w = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                w.iter_mut().for_each(|x| *x = Rational::zero());
                for (k, a) in &supports[i] {
                    for (l, b) in &supports[j] {
                        if k != l {
                            self.add_scaled_constant(&mut w, &(a * b), *k, *l);
                        }
                    }
                }
                if w.iter().all(Rational::is_zero) {
                    continue;
                }
                let coords = inv.left_apply(&w)?;
                let terms: SparseVec =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                entries.push((i, j, terms));
            }
        }
        NilpotentAlgebra::from_brackets(self.dim, entries)
    }
}

/// Outcome of checking the Jacobi identity on every basis triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    /// Triples `i < j < k` with `[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] ≠ 0`.
    pub violations: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Coefficient ring for the Jacobi sweep.
trait JacobiScalar: Clone {
    type Acc: Clone;
    fn zero_acc() -> Self::Acc;
    fn fma(acc: &mut Self::Acc, a: &Self, b: &Self, negate: bool);
    fn take_nonzero(acc: &mut Self::Acc) -> bool;
}

impl JacobiScalar for Rational {
    type Acc = Rational;
    fn zero_acc() -> Rational {
        Rational::zero()
    }
    fn fma(acc: &mut Rational, a: &Rational, b: &Rational, negate: bool) {
        let t = a * b;
        if negate {
            *acc -= &t;
        } else {
            *acc += &t;
        }
    }
    fn take_nonzero(acc: &mut Rational) -> bool {
        !std::mem::take(acc).is_zero()
    }
}

// |entries| < 2^40 and at most 3 d^2 terms per slot keep sums inside i128
impl JacobiScalar for i64 {
    type Acc = i128;
    fn zero_acc() -> i128 {
        0
    }
    fn fma(acc: &mut i128, a: &i64, b: &i64, negate: bool) {
        let t = *a as i128 * *b as i128;
        if negate {
            *acc -= t;
        } else {
            *acc += t;
        }
    }
    fn take_nonzero(acc: &mut i128) -> bool {
        std::mem::take(acc) != 0
    }
}

const INT_ENTRY_BOUND: i64 = 1 << 40;

/// Constants scaled by a common denominator, when they stay small. Jacobi is
/// homogeneous of degree 2, so scaling does not change which triples fail.
fn integer_constants(a: &NilpotentAlgebra) -> Option<Vec<Vec<(usize, i64)>>> {
    if a.dim >= 1 << 20 {
        return None;
    }
    let mut den: i64 = 1;
    for t in &a.upper {
        for (_, c) in t {
            let (_, q) = c.to_i64_pair()?;
            den = num_integer::lcm(den, q);
            if den >= INT_ENTRY_BOUND {
                return None;
            }
        }
    }
    a.upper
        .iter()
        .map(|t| {
            t.iter()
                .map(|(k, c)| {
                    let (n, q) = c.to_i64_pair()?;
                    let v = n.checked_mul(den / q)?;
                    (v.abs() < INT_ENTRY_BOUND).then_some((*k, v))
                })
                .collect()
        })
        .collect()
}

fn jacobi_sweep<T: JacobiScalar>(d: usize, upper: &[Vec<(usize, T)>]) -> Vec<(usize, usize, usize)> {
    let idx = |i: usize, j: usize| pair_index(d, i, j);
    let mut violations = Vec::new();
    let mut acc = vec![T::zero_acc(); d];
    let mut touched = vec![false; d];
    let mut touched_list: Vec<usize> = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                // [[x_p, x_q], x_r] for the three cyclic rotations; (k, i) = -(i, k)
                for (p, q, r, flip) in [(i, j, k, false), (j, k, i, false), (i, k, j, true)] {
                    for (l, c) in &upper[idx(p, q)] {
                        if *l == r {
                            continue;
                        }
                        let (lo, hi, neg) = if *l < r { (*l, r, flip) } else { (r, *l, !flip) };
                        for (m, e) in &upper[idx(lo, hi)] {
                            T::fma(&mut acc[*m], c, e, neg);
                            if !touched[*m] {
                                touched[*m] = true;
                                touched_list.push(*m);
                            }
                        }
                    }
                }
                let mut bad = false;
                for &m in &touched_list {
                    bad |= T::take_nonzero(&mut acc[m]);
                    touched[m] = false;
                }
                touched_list.clear();
                if bad {
                    violations.push((i, j, k));
                }
            }
        }
    }
    violations
}

/// Checks the Jacobi identity on all basis triples `i < j < k`.
pub fn verify_jacobi(a: &NilpotentAlgebra) -> JacobiReport {
    let violations = match integer_constants(a) {
        Some(upper) => jacobi_sweep(a.dim, &upper),
        None => jacobi_sweep(a.dim, &a.upper),
    };
    JacobiReport { violations }
}

/// Free-function form of [`NilpotentAlgebra::bracket`].
pub fn bracket(a: &NilpotentAlgebra, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, NilError> {
    a.bracket(x, y)
}

/// Free-function form of [`NilpotentAlgebra::change_basis`].
pub fn change_basis(a: &NilpotentAlgebra, m: &Matrix) -> Result<NilpotentAlgebra, NilError> {
    a.change_basis(m)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactlin::unit_vector;

    pub(crate) fn heisenberg() -> NilpotentAlgebra {
        NilpotentAlgebra::from_brackets(3, [(0, 1, vec![(2, Rational::one())])]).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn bracket_examples() {
        let h = heisenberg();
        let v = vec![q(2), q(-1), q(5)];
        assert!(h.bracket(&v, &v).unwrap().iter().all(Rational::is_zero));
        assert_eq!(h.bracket(&unit_vector(3, 0), &unit_vector(3, 1)).unwrap(), unit_vector(3, 2));
        assert_eq!(h.bracket(&unit_vector(3, 1), &unit_vector(3, 0)).unwrap(), vec![q(0), q(0), q(-1)]);
        let ab = NilpotentAlgebra::abelian(4);
        assert!(ab.bracket(&vec![q(1); 4], &vec![q(3); 4]).unwrap().iter().all(Rational::is_zero));
        assert!(h.bracket(&[q(1)], &v).is_err());
    }

    #[test]
    fn malformed_entries_rejected() {
        assert!(matches!(NilpotentAlgebra::from_brackets(3, [(1, 1, vec![])]), Err(NilError::BadPair { .. })));
        assert!(matches!(NilpotentAlgebra::from_brackets(3, [(2, 1, vec![])]), Err(NilError::BadPair { .. })));
        assert!(matches!(
            NilpotentAlgebra::from_brackets(3, [(0, 1, vec![(3, q(1))])]),
            Err(NilError::BadIndex { .. })
        ));
        assert!(matches!(
            NilpotentAlgebra::from_brackets(3, [(0, 1, vec![]), (0, 1, vec![])]),
            Err(NilError::DuplicatePair { .. })
        ));
    }

    #[test]
    fn change_basis_examples() {
        let h = heisenberg();
        assert_eq!(h.change_basis(&Matrix::identity(3)).unwrap(), h);
        // y_0 = 2 x_0: [y_0, y_1] = 2 x_2 = 2 y_2
        let mut m = Matrix::identity(3);
        m[(0, 0)] = q(2);
        let h2 = h.change_basis(&m).unwrap();
        assert_eq!(h2.constant(0, 1), vec![(2, q(2))]);
        let m = Matrix::from_int_rows(&[vec![1, 1, 0], vec![0, 1, 3], vec![2, 1, 1]]).unwrap();
        let back = h.change_basis(&m).unwrap().change_basis(&m.inverse().unwrap()).unwrap();
        assert_eq!(back, h);
        let sing = Matrix::from_int_rows(&[vec![1, 0, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(h.change_basis(&sing), Err(NilError::SingularBasis)));
    }

    #[test]
    fn jacobi_detects_violation() {
        assert!(verify_jacobi(&NilpotentAlgebra::abelian(5)).is_ok());
        assert!(verify_jacobi(&heisenberg()).is_ok());
        // J(0,1,2) = [[x1,x2],x0] = -x3
        let bad = NilpotentAlgebra::from_brackets(
            4,
            [(0, 1, vec![(2, q(1))]), (1, 2, vec![(3, q(1))]), (0, 3, vec![(3, q(1))])],
        )
        .unwrap();
        assert!(!verify_jacobi(&bad).is_ok());
    }
}
