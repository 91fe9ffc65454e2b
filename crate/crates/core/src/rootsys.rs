//! Positive root systems of the simple Lie algebras.
//!
//! Roots are stored in simple-root coordinates, so the degree of a root is the
//! sum of its coefficients. Simple roots follow Bourbaki numbering; the Cartan
//! matrix convention is `cartan[i][j] = <α_i, α_j^∨> = 2(α_i, α_j) / (α_j, α_j)`.

use serde::{Serialize, Serializer};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Default upper bound on the rank of the classical families.
pub const DEFAULT_MAX_RANK: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("{family}{rank} is not a simple type")]
    InvalidType { family: Family, rank: usize },
    #[error("unknown family {0:?} (expected one of A, B, C, D, E, F, G)")]
    UnknownFamily(String),
    #[error("{0:?} is not a positive root of this system")]
    NotARoot(Vec<i32>),
    #[error("simple roots have no simple predecessor")]
    SimpleRoot,
    #[error("root {0:?} has no simple predecessor")]
    NoPredecessor(Vec<i32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(RootError::UnknownFamily(s.to_string())),
        }
    }
}

/// A Cartan-Killing type such as `B4` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(RootError::InvalidType { family, rank })
        }
    }

    /// Label for a presentation outside the usual rank ranges (`B1`, `C1`).
    pub(crate) fn label(family: Family, rank: usize) -> Self {
        SimpleType { family, rank }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the simple Lie algebra of this type.
    pub fn dimension(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Family::F => 52,
            Family::G => 14,
        }
    }

    /// Every valid type with classical rank at most `max_rank`, plus the exceptionals.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D] {
            for n in 1..=max_rank {
                if let Ok(t) = SimpleType::new(family, n) {
                    out.push(t);
                }
            }
        }
        for (family, n) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
            out.push(SimpleType { family, rank: n });
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (fam, rank) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let family: Family = fam.parse()?;
        let rank = rank.parse().map_err(|_| RootError::UnknownFamily(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A root written in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root(coeffs)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    /// Sum of coefficients.
    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> Root {
        Root(self.0.iter().map(|a| k * a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn degree(r: &Root) -> i32 {
    r.degree()
}

fn chain_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

/// Cartan matrix of `t` in Bourbaki numbering.
pub fn cartan_matrix(t: SimpleType) -> Vec<Vec<i32>> {
    let n = t.rank;
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let edges: Vec<(usize, usize)> = match t.family {
        Family::A | Family::B | Family::C | Family::F | Family::G => chain_edges(n),
        Family::D => {
            let mut e = chain_edges(n - 1);
            e.push((n - 3, n - 1));
            e
        }
        Family::E => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            e
        }
    };
    for (i, j) in edges {
        c[i][j] = -1;
        c[j][i] = -1;
    }
    match t.family {
        Family::B => c[n - 2][n - 1] = -2,
        Family::C => c[n - 1][n - 2] = -2,
        Family::F => c[1][2] = -2,
        Family::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// Squared lengths `(α_i, α_i)` of the simple roots, normalized so short roots have length 2.
fn simple_root_norms(cartan: &[Vec<i32>]) -> Vec<i64> {
    let n = cartan.len();
    // lengths as fractions num/den, propagated along the (connected) Dynkin diagram
    let mut len: Vec<Option<(i64, i64)>> = vec![None; n];
    len[0] = Some((1, 1));
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let (p, q) = len[i].expect("visited");
        for j in 0..n {
            if j != i && cartan[i][j] != 0 && len[j].is_none() {
                // cartan[i][j] L_j = cartan[j][i] L_i
                let num = p * cartan[j][i] as i64;
                let den = q * cartan[i][j] as i64;
                let g = num_integer::gcd(num, den) * den.signum();
                len[j] = Some((num / g, den / g));
                stack.push(j);
            }
        }
    }
    let lens: Vec<(i64, i64)> = len.into_iter().map(|l| l.expect("Dynkin diagram is connected")).collect();
    let l = lens.iter().fold(1i64, |acc, &(_, d)| num_integer::lcm(acc, d));
    let ints: Vec<i64> = lens.iter().map(|&(p, q)| p * (l / q)).collect();
    let short = ints.iter().copied().min().expect("rank >= 1");
    ints.iter().map(|&x| 2 * x / short).collect()
}

/// Positive roots of a simple type in `(degree, lexicographic)` order.
#[derive(Clone, Debug)]
pub struct RootSystem {
    simple_type: SimpleType,
    cartan: Vec<Vec<i32>>,
    norms: Vec<i64>,
    positive_roots: Vec<Root>,
    index_of: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn len(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive_roots.is_empty()
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index_of.get(r).copied()
    }

    pub fn is_positive_root(&self, r: &Root) -> bool {
        self.index_of.contains_key(r)
    }

    /// Whether `r` is a root, positive or negative.
    pub fn is_root(&self, r: &Root) -> bool {
        self.is_positive_root(r) || self.is_positive_root(&r.neg())
    }

    /// Symmetric invariant form, normalized so that short roots have squared length 2.
    pub fn inner_product(&self, a: &Root, b: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b.0[j] != 0 && self.cartan[i][j] != 0 {
                    s += a.0[i] as i64 * b.0[j] as i64 * self.cartan[i][j] as i64 * self.norms[j] / 2;
                }
            }
        }
        s
    }

    /// `<r, α_i^∨>`.
    pub fn coroot_pairing(&self, r: &Root, i: usize) -> i32 {
        r.0.iter().zip(&self.cartan).map(|(c, row)| c * row[i]).sum()
    }

    /// Largest `k >= 0` with `b - k a` a root (positive or negative).
    pub fn string_below(&self, a: &Root, b: &Root) -> i32 {
        let mut k = 0;
        let mut cur = b.sub(a);
        while self.is_root(&cur) {
            k += 1;
            cur = cur.sub(a);
        }
        k
    }

    /// Number of positive roots of each degree; entry `i` counts degree `i + 1`.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let max = self.positive_roots.last().map_or(0, |r| r.degree() as usize);
        let mut h = vec![0; max];
        for r in &self.positive_roots {
            h[r.degree() as usize - 1] += 1;
        }
        h
    }

    /// The unique root of maximal degree.
    pub fn highest_root(&self) -> &Root {
        let top = self.positive_roots.last().expect("nonempty root system");
        let n_top = self.positive_roots.iter().filter(|r| r.degree() == top.degree()).count();
        assert_eq!(n_top, 1, "highest root of {} is not unique", self.simple_type);
        top
    }

    /// Smallest simple-root index `i` with `r - α_i` a positive root.
    pub fn simple_predecessor(&self, r: &Root) -> Result<usize, RootError> {
        if !self.is_positive_root(r) {
            return Err(RootError::NotARoot(r.0.clone()));
        }
        if r.degree() == 1 {
            return Err(RootError::SimpleRoot);
        }
        (0..self.rank())
            .find(|&i| self.is_positive_root(&r.sub(&Root::simple(self.rank(), i))))
            .ok_or_else(|| RootError::NoPredecessor(r.0.clone()))
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }
}

/// Enumerates the positive roots of `t` by closure from the simple roots.
///
/// `γ + α_i` is a root iff `p - <γ, α_i^∨> > 0`, where `p` is the length of
/// the `α_i`-string below `γ`.
pub fn build_root_system(t: SimpleType) -> RootSystem {
    let n = t.rank;
    let cartan = cartan_matrix(t);
    let norms = simple_root_norms(&cartan);
    let mut known: BTreeSet<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut level: Vec<Root> = known.iter().cloned().collect();
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for g in &level {
            for i in 0..n {
                let a = Root::simple(n, i);
                if *g == a {
                    continue;
                }
                let mut p = 0;
                let mut below = g.sub(&a);
                while known.contains(&below) {
                    p += 1;
                    below = below.sub(&a);
                }
                let pairing: i32 = g.0.iter().zip(&cartan).map(|(c, row)| c * row[i]).sum();
                if p - pairing > 0 {
                    next.insert(g.add(&a));
                }
            }
        }
        known.extend(next.iter().cloned());
        level = next.into_iter().collect();
    }
    let mut positive_roots: Vec<Root> = known.into_iter().collect();
    positive_roots.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    let index_of = positive_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    RootSystem { simple_type: t, cartan, norms, positive_roots, index_of }
}

pub fn degree_histogram(rs: &RootSystem) -> Vec<usize> {
    rs.degree_histogram()
}

pub fn highest_root(rs: &RootSystem) -> &Root {
    rs.highest_root()
}

pub fn simple_predecessor(rs: &RootSystem, r: &Root) -> Result<usize, RootError> {
    rs.simple_predecessor(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(f: Family, n: usize) -> SimpleType {
        SimpleType::new(f, n).unwrap()
    }

    #[test]
    fn invalid_types_rejected() {
        for (f, n) in [(Family::A, 0), (Family::B, 1), (Family::C, 1), (Family::D, 2), (Family::E, 5), (Family::E, 9), (Family::F, 3), (Family::G, 3)] {
            assert!(matches!(SimpleType::new(f, n), Err(RootError::InvalidType { .. })), "{f}{n}");
        }
        assert!("H3".parse::<SimpleType>().is_err());
        assert_eq!("e7".parse::<SimpleType>().unwrap(), t(Family::E, 7));
    }

    #[test]
    fn root_counts() {
        assert_eq!(build_root_system(t(Family::A, 1)).len(), 1);
        assert_eq!(build_root_system(t(Family::G, 2)).len(), 6);
        assert_eq!(build_root_system(t(Family::B, 3)).len(), 9);
        assert_eq!(build_root_system(t(Family::F, 4)).len(), 24);
        assert_eq!(build_root_system(t(Family::E, 6)).len(), 36);
        assert_eq!(build_root_system(t(Family::E, 7)).len(), 63);
        assert_eq!(build_root_system(t(Family::E, 8)).len(), 120);
    }

    #[test]
    fn histograms() {
        assert_eq!(build_root_system(t(Family::B, 3)).degree_histogram(), vec![3, 2, 2, 1, 1]);
        assert_eq!(build_root_system(t(Family::E, 6)).degree_histogram()[3], 5);
        assert_eq!(build_root_system(t(Family::B, 6)).degree_histogram()[3], 4);
        assert_eq!(build_root_system(t(Family::C, 6)).degree_histogram()[3], 4);
    }

    #[test]
    fn highest_roots() {
        let b3 = build_root_system(t(Family::B, 3));
        assert_eq!(b3.highest_root().coeffs(), &[1, 2, 2]);
        assert_eq!(b3.highest_root().degree(), 5);
        let c3 = build_root_system(t(Family::C, 3));
        assert_eq!(c3.highest_root().coeffs(), &[2, 2, 1]);
        let a1 = build_root_system(t(Family::A, 1));
        assert_eq!(a1.highest_root(), &Root::simple(1, 0));
        assert_eq!(build_root_system(t(Family::G, 2)).highest_root().coeffs(), &[3, 2]);
        assert_eq!(build_root_system(t(Family::F, 4)).highest_root().coeffs(), &[2, 3, 4, 2]);
        assert_eq!(build_root_system(t(Family::E, 8)).highest_root().coeffs(), &[2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn predecessors() {
        let b3 = build_root_system(t(Family::B, 3));
        let top = b3.highest_root().clone();
        let i = b3.simple_predecessor(&top).unwrap();
        assert!(b3.is_positive_root(&top.sub(&b3.simple_root(i))));
        assert_eq!(b3.simple_predecessor(&b3.simple_root(0)), Err(RootError::SimpleRoot));
        assert!(matches!(b3.simple_predecessor(&Root::new(vec![5, 0, 0])), Err(RootError::NotARoot(_))));
        for r in b3.positive_roots().iter().filter(|r| r.degree() == 2) {
            let i = b3.simple_predecessor(r).unwrap();
            assert_eq!(r.coeffs()[i], 1);
        }
    }

    #[test]
    fn norms_and_forms() {
        let g2 = build_root_system(t(Family::G, 2));
        assert_eq!(g2.inner_product(&g2.simple_root(0), &g2.simple_root(0)), 2);
        assert_eq!(g2.inner_product(&g2.simple_root(1), &g2.simple_root(1)), 6);
        let b3 = build_root_system(t(Family::B, 3));
        assert_eq!(b3.inner_product(&b3.simple_root(2), &b3.simple_root(2)), 2);
        assert_eq!(b3.inner_product(&b3.simple_root(0), &b3.simple_root(0)), 4);
        let c3 = build_root_system(t(Family::C, 3));
        assert_eq!(c3.inner_product(&c3.simple_root(2), &c3.simple_root(2)), 4);
        assert_eq!(c3.inner_product(&c3.simple_root(0), &c3.simple_root(0)), 2);
    }

    #[test]
    fn ordering_is_degree_then_lex() {
        let rs = build_root_system(t(Family::D, 5));
        for w in rs.positive_roots().windows(2) {
            assert!((w[0].degree(), &w[0]) < (w[1].degree(), &w[1]));
        }
    }
}
