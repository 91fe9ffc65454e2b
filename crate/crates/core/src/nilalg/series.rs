use crate::exactlin::{kernel, primitive_integer_vector, span_certified, unit_vector, Matrix, Rational, Subspace};

use super::{NilError, NilpotentAlgebra};

/// The lower central series `n^1 = n ⊋ n^2 ⊋ ... ⊋ n^{c+1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    terms: Vec<Subspace>,
}

impl Filtration {
    /// Wraps a descending chain starting at the full space and ending at zero.
    pub fn from_terms(terms: Vec<Subspace>) -> Result<Self, NilError> {
        let ok = match (terms.first(), terms.last()) {
            (Some(first), Some(last)) => {
                first.dim() == first.ambient_dim()
                    && last.is_zero()
                    && terms.windows(2).all(|w| w[1].dim() < w[0].dim() && w[1].is_subspace_of(&w[0]))
            }
            _ => false,
        };
        if ok {
            Ok(Filtration { terms })
        } else {
            Err(NilError::NotAFiltration)
        }
    }

    /// Nilpotency class: the largest `i` with `n^i ≠ 0`.
    pub fn class(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.terms[0].ambient_dim()
    }

    /// `n^i` for `i >= 1`; the zero subspace past the class.
    pub fn term(&self, i: usize) -> Subspace {
        assert!(i >= 1, "filtration degrees start at 1");
        self.terms.get(i - 1).cloned().unwrap_or_else(|| Subspace::zero(self.ambient_dim()))
    }

    pub(crate) fn term_ref(&self, i: usize) -> Option<&Subspace> {
        i.checked_sub(1).and_then(|k| self.terms.get(k))
    }

    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    /// `dim n^1, dim n^2, ..., dim n^{c+1} = 0`.
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

fn products<'a>(
    vectors: &'a [Vec<Rational>],
    multipliers: &'a [Vec<Vec<Rational>>],
) -> impl Iterator<Item = Vec<Rational>> + 'a {
    vectors.iter().flat_map(move |u| {
        multipliers.iter().map(move |m| {
            let mut w = vec![Rational::zero(); m.first().map_or(0, Vec::len)];
            for (ui, row) in u.iter().zip(m) {
                if ui.is_zero() {
                    continue;
                }
                for (x, y) in w.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x += &(ui * y);
                    }
                }
            }
            w
        })
    })
}

fn integer_rows(s: &Subspace) -> Vec<Vec<Rational>> {
    (0..s.dim()).map(|r| primitive_integer_vector(s.basis_vector(r))).collect()
}

/// Computes `n^{i+1} = [n^i, n]` until it vanishes.
///
/// After `n^2 = [n, n]` is found, brackets are taken only against a complement
/// `V` of `n^2`: for a nilpotent algebra `V` generates, and `[n^i, n] = [n^i, V]`.
/// The shortcut is certified along the way: `[n, V] = n^2` is checked, and
/// reaching zero through `ad(V)` alone forces nilpotency.
pub fn lower_central_series(a: &NilpotentAlgebra) -> Result<Filtration, NilError> {
    let d = a.dim();
    let full = Subspace::full(d);
    if d == 0 {
        return Ok(Filtration { terms: vec![full] });
    }
    let second = span_certified(d, || {
        a.nonzero_brackets().map(|(_, _, terms)| {
            let mut v = vec![Rational::zero(); d];
            for (k, c) in terms {
                v[*k] = c.clone();
            }
            v
        })
    })?;
    if second.dim() == d {
        return Err(NilError::NotNilpotent { stalled_at: d });
    }
    let mut is_pivot = vec![false; d];
    second.pivots().iter().for_each(|&p| is_pivot[p] = true);
    let generators: Vec<Vec<Vec<Rational>>> =
        (0..d).filter(|&k| !is_pivot[k]).map(|k| a.right_multiplication(&unit_vector(d, k))).collect();

    let basis: Vec<Vec<Rational>> = (0..d).map(|k| unit_vector(d, k)).collect();
    if span_certified(d, || products(&basis, &generators))? != second {
        return Err(NilError::NotNilpotent { stalled_at: second.dim() });
    }

    let mut current = integer_rows(&second);
    let mut terms = vec![full, second];
    while !terms.last().expect("nonempty").is_zero() {
        let next = span_certified(d, || products(&current, &generators))?;
        let last = terms.last().expect("nonempty");
        if next.dim() >= last.dim() {
            return Err(NilError::NotNilpotent { stalled_at: last.dim() });
        }
        current = integer_rows(&next);
        terms.push(next);
    }
    Ok(Filtration { terms })
}

/// Linear coordinates on `n^i / n^{i+1}` relative to a chosen coset basis.
#[derive(Clone, Debug)]
struct CosetCoordinates {
    next: Subspace,
    pivots: Vec<usize>,
    // rows: coordinates in the representative basis of each RREF row
    transform: Matrix,
}

impl CosetCoordinates {
    fn new(next: Subspace, reps: &[Vec<Rational>]) -> Result<Self, NilError> {
        let d = next.ambient_dim();
        let t = reps.len();
        let mut aug = Vec::with_capacity(t);
        for (r, rep) in reps.iter().enumerate() {
            let mut row = next.reduce(rep)?;
            row.extend((0..t).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            aug.push(row);
        }
        let m = Matrix::from_rows(d + t, aug)?;
        let (red, pivots) = m.rref_with_pivots();
        if pivots.len() != t || pivots.last().is_some_and(|&p| p >= d) {
            return Err(NilError::InvalidRepresentatives);
        }
        let rows = (0..t).map(|r| red.row(r)[d..].to_vec()).collect();
        Ok(CosetCoordinates { next, pivots, transform: Matrix::from_rows(t, rows)? })
    }

    /// Coordinates of the coset `w + n^{i+1}`; `w` must lie in `n^i`.
    fn coords(&self, w: &[Rational]) -> Vec<Rational> {
        let reduced = self.next.reduce(w).expect("ambient dimension");
        let y: Vec<Rational> = self.pivots.iter().map(|&p| reduced[p].clone()).collect();
        self.transform.left_apply(&y).expect("sizes agree")
    }
}

/// `gr(n) = ⊕ n^i / n^{i+1}`, with a representative basis for each piece.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    filtration: Filtration,
    pieces: Vec<Vec<Vec<Rational>>>,
    coords: Vec<CosetCoordinates>,
}

impl GradedAlgebra {
    /// Uses `pieces[i - 1]` as the coset basis of `n^i / n^{i+1}`. Each
    /// representative must lie in `n^i`, and together they must be independent
    /// modulo `n^{i+1}` and of the right count.
    pub fn with_representatives(filtration: Filtration, pieces: Vec<Vec<Vec<Rational>>>) -> Result<Self, NilError> {
        let c = filtration.class();
        if pieces.len() != c {
            return Err(NilError::InvalidRepresentatives);
        }
        let mut coords = Vec::with_capacity(c);
        for (i, reps) in pieces.iter().enumerate() {
            let here = &filtration.terms[i];
            let next = &filtration.terms[i + 1];
            if reps.len() != here.dim() - next.dim() {
                return Err(NilError::InvalidRepresentatives);
            }
            for r in reps {
                if !here.member(r)? {
                    return Err(NilError::InvalidRepresentatives);
                }
            }
            coords.push(CosetCoordinates::new(next.clone(), reps)?);
        }
        Ok(GradedAlgebra { filtration, pieces, coords })
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    /// Representatives of `n^i / n^{i+1}` (empty past the class).
    pub fn piece(&self, i: usize) -> &[Vec<Rational>] {
        i.checked_sub(1).and_then(|k| self.pieces.get(k)).map_or(&[], Vec::as_slice)
    }

    pub fn pieces(&self) -> &[Vec<Vec<Rational>>] {
        &self.pieces
    }

    /// `dim gr^i` for `i = 1..=class`.
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(Vec::len).collect()
    }

    pub fn dim_at(&self, i: usize) -> usize {
        self.piece(i).len()
    }

    /// Coordinates of `w ∈ n^i` modulo `n^{i+1}` in the representative basis.
    pub fn coset_coordinates(&self, i: usize, w: &[Rational]) -> Vec<Rational> {
        match i.checked_sub(1).and_then(|k| self.coords.get(k)) {
            Some(c) => c.coords(w),
            None => Vec::new(),
        }
    }
}

/// Builds `gr(n)` with representatives taken from the RREF basis of each `n^i`:
/// the rows whose pivot columns are not pivots of `n^{i+1}`.
pub fn graded(_a: &NilpotentAlgebra, f: &Filtration) -> GradedAlgebra {
    let pieces = f
        .terms
        .windows(2)
        .map(|w| {
            let next: std::collections::HashSet<usize> = w[1].pivots().iter().copied().collect();
            w[0].pivots()
                .iter()
                .enumerate()
                .filter(|(_, p)| !next.contains(p))
                .map(|(r, _)| w[0].basis_vector(r).to_vec())
                .collect()
        })
        .collect();
    GradedAlgebra::with_representatives(f.clone(), pieces).expect("RREF completion is a valid coset basis")
}

/// The bracket-induced map `gr^i × gr^j → gr^{i+j}` in coset coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearPairing {
    pub i: usize,
    pub j: usize,
    /// `tensor[a][b]` = coordinates of `[u_a, v_b]` in `gr^{i+j}`.
    pub tensor: Vec<Vec<Vec<Rational>>>,
    pub left_dim: usize,
    pub right_dim: usize,
    pub target_dim: usize,
}

impl BilinearPairing {
    pub fn is_zero(&self) -> bool {
        self.tensor.iter().flatten().flatten().all(Rational::is_zero)
    }

    /// The `(a, k) × b` coefficient matrix whose kernel is the right kernel.
    fn right_matrix(&self) -> Matrix {
        let mut rows = Vec::new();
        for a in 0..self.left_dim {
            for k in 0..self.target_dim {
                rows.push((0..self.right_dim).map(|b| self.tensor[a][b][k].clone()).collect());
            }
        }
        Matrix::from_rows(self.right_dim, rows).expect("uniform rows")
    }

    fn left_matrix(&self) -> Matrix {
        let mut rows = Vec::new();
        for b in 0..self.right_dim {
            for k in 0..self.target_dim {
                rows.push((0..self.left_dim).map(|a| self.tensor[a][b][k].clone()).collect());
            }
        }
        Matrix::from_rows(self.left_dim, rows).expect("uniform rows")
    }

    /// Rank of the pairing viewed as a map `gr^j → Hom(gr^i, gr^{i+j})`.
    pub fn right_rank(&self) -> usize {
        self.right_matrix().rank()
    }
}

/// Computes `[u_a, v_b] mod n^{i+j+1}` for the representative bases of `gr^i` and `gr^j`.
/// Degrees past the class give the zero pairing into a zero-dimensional target.
pub fn graded_pairing(g: &GradedAlgebra, a: &NilpotentAlgebra, i: usize, j: usize) -> BilinearPairing {
    assert!(i >= 1 && j >= 1, "pairing degrees start at 1");
    let left = g.piece(i);
    let right = g.piece(j);
    let target_dim = g.dim_at(i + j);
    let tensor = left
        .iter()
        .map(|u| {
            right
                .iter()
                .map(|v| {
                    if target_dim == 0 {
                        return Vec::new();
                    }
                    let w = a.bracket(u, v).expect("representatives have ambient length");
                    debug_assert!(g.filtration.term_ref(i + j).is_some_and(|t| t.member(&w).unwrap_or(false)));
                    g.coset_coordinates(i + j, &w)
                })
                .collect()
        })
        .collect();
    BilinearPairing { i, j, tensor, left_dim: left.len(), right_dim: right.len(), target_dim }
}

/// `{w ∈ gr^j : p(u, w) = 0 for all u ∈ gr^i}`, in coordinates of the `gr^j` representatives.
pub fn right_kernel(p: &BilinearPairing) -> Subspace {
    kernel(&p.right_matrix())
}

/// `{u ∈ gr^i : p(u, w) = 0 for all w ∈ gr^j}`.
pub fn left_kernel(p: &BilinearPairing) -> Subspace {
    kernel(&p.left_matrix())
}

/// Structure constants of `gr(n)` in the basis formed by concatenating the
/// representative bases of `gr^1, gr^2, ...`.
pub fn graded_constants(g: &GradedAlgebra, a: &NilpotentAlgebra) -> NilpotentAlgebra {
    let c = g.filtration.class();
    let mut offsets = vec![0; c + 2];
    for i in 1..=c {
        offsets[i + 1] = offsets[i] + g.dim_at(i);
    }
    let mut entries = Vec::new();
    for i in 1..=c {
        for j in i..=c - i {
            let p = graded_pairing(g, a, i, j);
            for (x, row) in p.tensor.iter().enumerate() {
                for (y, coords) in row.iter().enumerate() {
                    if i == j && x >= y {
                        continue;
                    }
                    let terms: Vec<(usize, Rational)> =
                        coords.iter().enumerate().map(|(k, v)| (offsets[i + j] + k, v.clone())).collect();
                    entries.push((offsets[i] + x, offsets[j] + y, terms));
                }
            }
        }
    }
    NilpotentAlgebra::from_brackets(a.dim(), entries).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::nilradical;
    use crate::exactlin::random_unimodular;
    use crate::nilalg::algebra::tests::heisenberg;
    use crate::rootsys::{build_root_system, SimpleType};

    fn nil(s: &str) -> NilpotentAlgebra {
        nilradical(&build_root_system(s.parse::<SimpleType>().unwrap()))
    }

    #[test]
    fn lcs_examples() {
        let f = lower_central_series(&NilpotentAlgebra::abelian(4)).unwrap();
        assert_eq!((f.dims(), f.class()), (vec![4, 0], 1));
        let f = lower_central_series(&heisenberg()).unwrap();
        assert_eq!((f.dims(), f.class()), (vec![3, 1, 0], 2));
        let f = lower_central_series(&nil("B3")).unwrap();
        assert_eq!((f.dims(), f.class()), (vec![9, 6, 4, 2, 1, 0], 5));
        assert_eq!(f.term(7), Subspace::zero(9));
    }

    #[test]
    fn non_nilpotent_rejected() {
        // [x0, x1] = x1 is the 2-dim non-abelian solvable algebra
        let a = NilpotentAlgebra::from_brackets(2, [(0, 1, vec![(1, Rational::one())])]).unwrap();
        assert!(matches!(lower_central_series(&a), Err(NilError::NotNilpotent { .. })));
        // [x0, x1] = x2, [x0, x2] = x2: derived algebra is proper, yet stalls
        let a = NilpotentAlgebra::from_brackets(
            3,
            [(0, 1, vec![(2, Rational::one())]), (0, 2, vec![(2, Rational::one())])],
        )
        .unwrap();
        assert!(matches!(lower_central_series(&a), Err(NilError::NotNilpotent { .. })));
    }

    #[test]
    fn graded_dims_and_pieces() {
        let a = NilpotentAlgebra::abelian(3);
        let g = graded(&a, &lower_central_series(&a).unwrap());
        assert_eq!(g.dims(), vec![3]);
        let e6 = nil("E6");
        let g = graded(&e6, &lower_central_series(&e6).unwrap());
        assert_eq!(g.dim_at(4), 5);
        assert_eq!(g.dim_at(40), 0);
    }

    #[test]
    fn pairing_examples() {
        let b3 = nil("B3");
        let g = graded(&b3, &lower_central_series(&b3).unwrap());
        let p = graded_pairing(&g, &b3, 2, 3);
        assert_eq!((p.left_dim, p.right_dim, p.target_dim), (2, 2, 1));
        assert!(right_kernel(&p).is_zero());
        assert!(left_kernel(&p).is_zero());
        let far = graded_pairing(&g, &b3, 3, 4);
        assert!(far.is_zero() && far.target_dim == 0);
        assert_eq!(right_kernel(&far).dim(), far.right_dim);
        assert_eq!(left_kernel(&far).dim(), far.left_dim);
    }

    #[test]
    fn c3_kernel_is_the_long_root() {
        let c3 = nil("C3");
        let rs = build_root_system("C3".parse().unwrap());
        let g = graded(&c3, &lower_central_series(&c3).unwrap());
        let k = right_kernel(&graded_pairing(&g, &c3, 2, 3));
        assert_eq!(k.dim(), 1);
        let idx = rs.index_of(&crate::rootsys::Root::new(vec![0, 2, 1])).unwrap();
        let w = g.coset_coordinates(3, &crate::exactlin::unit_vector(9, idx));
        assert!(k.member(&w).unwrap());
    }

    #[test]
    fn left_kernel_mirrors_right_kernel() {
        let c4 = nil("C4");
        let g = graded(&c4, &lower_central_series(&c4).unwrap());
        for (i, j) in [(2, 5), (1, 3), (3, 3)] {
            let p = graded_pairing(&g, &c4, i, j);
            let q = graded_pairing(&g, &c4, j, i);
            assert_eq!(left_kernel(&p), right_kernel(&q));
        }
    }

    #[test]
    fn perturbed_representatives_keep_tensors() {
        let a = nil("B3");
        let f = lower_central_series(&a).unwrap();
        let g = graded(&a, &f);
        let mut pieces = g.pieces().to_vec();
        for (i, piece) in pieces.iter_mut().enumerate() {
            let next = f.term(i + 2);
            for (r, v) in piece.iter_mut().enumerate() {
                for b in 0..next.dim() {
                    let c = Rational::from_int((r + b) as i64 % 3 - 1);
                    for (x, y) in v.iter_mut().zip(next.basis_vector(b)) {
                        *x += &(&c * y);
                    }
                }
            }
        }
        let h = GradedAlgebra::with_representatives(f.clone(), pieces).unwrap();
        for i in 1..=5 {
            for j in 1..=5 {
                assert_eq!(graded_pairing(&g, &a, i, j), graded_pairing(&h, &a, i, j));
            }
        }
    }

    #[test]
    fn bad_representatives_rejected() {
        let a = heisenberg();
        let f = lower_central_series(&a).unwrap();
        let z = Rational::zero;
        // centre element is not a representative of gr^1
        let pieces = vec![vec![vec![Rational::one(), z(), z()], vec![z(), z(), Rational::one()]], vec![vec![z(), z(), Rational::one()]]];
        assert!(GradedAlgebra::with_representatives(f, pieces).is_err());
    }

    #[test]
    fn graded_constants_reproduce_canonical_nilradical() {
        for s in ["A3", "B3", "G2", "D4"] {
            let a = nil(s);
            let g = graded(&a, &lower_central_series(&a).unwrap());
            assert_eq!(graded_constants(&g, &a), a, "{s}");
        }
    }

    #[test]
    fn lcs_dims_survive_obfuscation() {
        let a = nil("F4");
        let b = a.change_basis(&random_unimodular(24, 11).unwrap()).unwrap();
        assert_eq!(lower_central_series(&a).unwrap().dims(), lower_central_series(&b).unwrap().dims());
    }
}
