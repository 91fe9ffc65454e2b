use super::modular::span_certified;
use super::{LinError, Matrix, Rational};

/// A linear subspace of `Q^n`, stored as its canonical RREF basis.
///
/// Two subspaces are equal exactly when their representations are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref_with_pivots();
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    /// Span of the given vectors.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self, LinError>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let vectors: Vec<Vec<Rational>> = vectors.into_iter().collect();
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(LinError::DimensionMismatch { expected: ambient_dim, found: v.len() });
        }
        span_certified(ambient_dim, || vectors.iter().cloned())
    }

    /// Trusts `basis` to be in RREF with the given pivots.
    pub(crate) fn from_rref_unchecked(ambient_dim: usize, basis: Matrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace { ambient_dim, basis, pivots }
    }

    /// Span of coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().filter(|&i| i < ambient_dim).collect();
        idx.sort_unstable();
        idx.dedup();
        let rows = idx
            .iter()
            .map(|&i| {
                let mut r = vec![Rational::zero(); ambient_dim];
                r[i] = Rational::one();
                r
            })
            .collect();
        Subspace {
            ambient_dim,
            basis: Matrix::from_rows(ambient_dim, rows).expect("uniform rows"),
            pivots: idx,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Canonical RREF basis, one basis vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vector(&self, r: usize) -> &[Rational] {
        self.basis.row(r)
    }

    /// Pivot column of each basis row, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LinError> {
        if v.len() != self.ambient_dim {
            return Err(LinError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        Ok(())
    }

    /// `v` minus its projection along the basis: zero at every pivot column,
    /// and zero altogether iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>, LinError> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in w.iter_mut().zip(self.basis.row(r)) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        Ok(w)
    }

    pub fn member(&self, v: &[Rational]) -> Result<bool, LinError> {
        Ok(self.reduce(v)?.iter().all(Rational::is_zero))
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>, LinError> {
        if !self.member(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|r| other.member(self.basis.row(r)).unwrap_or(false))
    }
}

/// Kernel `{v : m v = 0}` of `m`, as a subspace of `Q^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let n = m.cols();
    let (red, pivots) = m.rref_with_pivots();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let rows: Vec<Vec<Rational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&red[(r, f)];
            }
            v
        })
        .collect();
    Subspace::row_space(&Matrix::from_rows(n, rows).expect("uniform rows"))
}

/// Incremental canonical RREF.
///
/// Every insertion keeps the rows fully reduced (pivot 1, zeros in all other
/// pivot columns), which keeps entries as small as the final RREF allows.
/// Each row also caches an `i64` form `numer / den` when it fits, used to
/// reject dependent integer vectors without rational arithmetic.
#[derive(Clone, Debug)]
pub(crate) struct EchelonBuilder {
    ambient_dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
    int_rows: Vec<Option<(Vec<i64>, i64)>>,
}

fn int_form(row: &[Rational]) -> Option<(Vec<i64>, i64)> {
    let mut den: i64 = 1;
    for x in row {
        let (_, d) = x.to_i64_pair()?;
        if d != 1 {
            den = num_integer::lcm(den, d);
            if den > (1 << 20) {
                return None;
            }
        }
    }
    let numer = row
        .iter()
        .map(|x| {
            let (n, d) = x.to_i64_pair().expect("checked above");
            n.checked_mul(den / d)
        })
        .collect::<Option<Vec<i64>>>()?;
    Some((numer, den))
}

impl EchelonBuilder {
    pub(crate) fn new(ambient_dim: usize) -> Self {
        EchelonBuilder { ambient_dim, rows: Vec::new(), int_rows: Vec::new() }
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    /// `Some(true)` if `v` provably lies in the current span, `Some(false)` if
    /// it provably does not, `None` if the integer fast path does not apply.
    fn int_member(&self, v: &[Rational]) -> Option<bool> {
        let vi: Vec<i64> = v
            .iter()
            .map(|x| match x.to_i64_pair() {
                Some((n, 1)) => Some(n),
                _ => None,
            })
            .collect::<Option<_>>()?;
        let mut scale: i64 = 1;
        let mut involved = Vec::new();
        for ((p, _), ir) in self.rows.iter().zip(&self.int_rows) {
            if vi[*p] != 0 {
                let (numer, den) = ir.as_ref()?;
                scale = num_integer::lcm(scale, *den);
                if scale > (1 << 20) {
                    return None;
                }
                involved.push((vi[*p], numer, *den));
            }
        }
        let mut acc: Vec<i128> = vi.iter().map(|&x| x as i128 * scale as i128).collect();
        for (f, numer, den) in involved {
            let m = f as i128 * (scale / den) as i128;
            for (a, &y) in acc.iter_mut().zip(numer) {
                if y != 0 {
                    *a = a.checked_sub(m.checked_mul(y as i128)?)?;
                }
            }
        }
        Some(acc.iter().all(|&a| a == 0))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, mut v: Vec<Rational>) -> Result<bool, LinError> {
        if v.len() != self.ambient_dim {
            return Err(LinError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        if self.is_full() || self.int_member(&v) == Some(true) {
            return Ok(false);
        }
        // reduced rows vanish at each other's pivots, so the multipliers are read off v directly
        let coeffs: Vec<(usize, Rational)> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, (p, _))| !v[*p].is_zero())
            .map(|(r, (p, _))| (r, v[*p].clone()))
            .collect();
        for (r, f) in coeffs {
            for (x, y) in v.iter_mut().zip(&self.rows[r].1) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[lead].recip().expect("nonzero");
        if !inv.is_one() {
            v.iter_mut().filter(|x| !x.is_zero()).for_each(|x| *x *= &inv);
        }
        for ((_, row), ir) in self.rows.iter_mut().zip(self.int_rows.iter_mut()) {
            if row[lead].is_zero() {
                continue;
            }
            let f = row[lead].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            *ir = int_form(row);
        }
        let at = self.rows.partition_point(|(p, _)| *p < lead);
        self.int_rows.insert(at, int_form(&v));
        self.rows.insert(at, (lead, v));
        Ok(true)
    }

    pub(crate) fn finish(self) -> Subspace {
        let n = self.ambient_dim;
        let (pivots, rows): (Vec<usize>, Vec<Vec<Rational>>) = self.rows.into_iter().unzip();
        Subspace { ambient_dim: n, basis: Matrix::from_rows(n, rows).expect("uniform rows"), pivots }
    }
}
