//! Chevalley structure constants for the positive part of a simple Lie algebra.
//!
//! For each non-simple positive root `γ` the extraspecial pair `(α, β)` is the
//! decomposition `γ = α + β` with `α` earliest in the root order. Constants on
//! extraspecial pairs are fixed to `+(p + 1)`; every other `N_{ξ,η}` follows
//! from the four-root and three-root identities of a Chevalley basis, using the
//! normalization `N_{-α,-β} = -N_{α,β}`.

use std::collections::HashMap;

use crate::exactlin::Rational;
use crate::nilalg::NilpotentAlgebra;
use crate::rootsys::{Root, RootSystem};

struct ConstantTable<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(Root, Root), i64>,
}

impl<'a> ConstantTable<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        ConstantTable { rs, memo: HashMap::new() }
    }

    fn is_positive(&self, r: &Root) -> bool {
        self.rs.is_positive_root(r)
    }

    fn norm(&self, r: &Root) -> i64 {
        self.rs.inner_product(r, r)
    }

    /// Earliest positive `α` with `γ - α` a positive root.
    fn extraspecial(&self, g: &Root) -> (Root, Root) {
        self.rs
            .positive_roots()
            .iter()
            .take_while(|a| a.degree() < g.degree())
            .find_map(|a| {
                let b = g.sub(a);
                self.is_positive(&b).then(|| (a.clone(), b))
            })
            .expect("non-simple root has a decomposition")
    }

    /// `N_{a,b}` for roots `a`, `b`; zero when `a + b` is not a root.
    fn n(&mut self, a: &Root, b: &Root) -> i64 {
        let s = a.add(b);
        if s.is_zero() || !self.rs.is_root(&s) {
            return 0;
        }
        if let Some(&v) = self.memo.get(&(a.clone(), b.clone())) {
            return v;
        }
        let v = match (self.is_positive(a), self.is_positive(b)) {
            (true, true) => self.positive_pair(a, b, &s),
            (false, false) => -self.n(&a.neg(), &b.neg()),
            _ => {
                // a + b + c = 0: N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
                let c = s.neg();
                if self.is_positive(&c) == self.is_positive(b) {
                    exact_div(self.norm(&c) * self.n(b, &c), self.norm(a))
                } else {
                    exact_div(self.norm(&c) * self.n(&c, a), self.norm(b))
                }
            }
        };
        self.memo.insert((a.clone(), b.clone()), v);
        v
    }

    fn positive_pair(&mut self, xi: &Root, eta: &Root, s: &Root) -> i64 {
        let ix = self.rs.index_of(xi).expect("positive");
        let ie = self.rs.index_of(eta).expect("positive");
        if ix > ie {
            return -self.n(eta, xi);
        }
        let (alpha, beta) = self.extraspecial(s);
        let n_ab = self.rs.string_below(&alpha, &beta) as i64 + 1;
        if alpha == *xi {
            return n_ab;
        }
        // four roots α + β - ξ - η = 0
        let (mxi, meta) = (xi.neg(), eta.neg());
        let mut num = Rational::zero();
        let t1 = self.n(&beta, &mxi) * self.n(&alpha, &meta);
        if t1 != 0 {
            let d = beta.sub(xi);
            num += &Rational::new(t1, self.norm(&d)).expect("nonzero norm");
        }
        let t2 = self.n(&mxi, &alpha) * self.n(&beta, &meta);
        if t2 != 0 {
            let d = alpha.sub(xi);
            num += &Rational::new(t2, self.norm(&d)).expect("nonzero norm");
        }
        let v = &num * &Rational::new(self.norm(s), n_ab).expect("nonzero");
        let (p, q) = v.to_i64_pair().expect("small constant");
        assert_eq!(q, 1, "non-integral structure constant {v}");
        p
    }
}

fn exact_div(a: i64, b: i64) -> i64 {
    assert_eq!(a % b, 0, "inexact structure-constant ratio {a}/{b}");
    a / b
}

/// Structure constant `N_{α,β}` of the positive part, for positive roots `α`, `β`.
pub fn structure_constant(rs: &RootSystem, a: &Root, b: &Root) -> i64 {
    ConstantTable::new(rs).n(a, b)
}

/// The nilradical `⊕_{α > 0} g_α`, with basis vector `i` spanning the root
/// space of `rs.positive_roots()[i]`.
pub fn nilradical(rs: &RootSystem) -> NilpotentAlgebra {
    let roots = rs.positive_roots();
    let mut table = ConstantTable::new(rs);
    let mut entries = Vec::new();
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate().skip(i + 1) {
            let Some(k) = rs.index_of(&a.add(b)) else {
                continue;
            };
            let c = table.n(a, b);
            assert_ne!(c, 0, "vanishing constant on a root sum");
            entries.push((i, j, vec![(k, Rational::from_int(c))]));
        }
    }
    NilpotentAlgebra::from_brackets(roots.len(), entries).expect("well-formed constants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilalg::verify_jacobi;
    use crate::rootsys::{build_root_system, Family, SimpleType};

    fn rs(f: Family, n: usize) -> RootSystem {
        build_root_system(SimpleType::new(f, n).unwrap())
    }

    #[test]
    fn a1_is_abelian() {
        let a = nilradical(&rs(Family::A, 1));
        assert_eq!(a.dim(), 1);
        assert!(a.is_abelian());
    }

    #[test]
    fn a2_is_heisenberg() {
        let a = nilradical(&rs(Family::A, 2));
        assert_eq!(a.dim(), 3);
        let c = a.constant(0, 1);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, 2);
        assert!(c[0].1 == Rational::one() || c[0].1 == Rational::from_int(-1));
        assert!(a.constant(0, 2).is_empty() && a.constant(1, 2).is_empty());
    }

    #[test]
    fn magnitudes_are_string_lengths() {
        for (f, n) in [(Family::B, 4), (Family::C, 4), (Family::F, 4), (Family::G, 2), (Family::D, 5)] {
            let r = rs(f, n);
            let alg = nilradical(&r);
            let roots = r.positive_roots();
            for i in 0..roots.len() {
                for j in 0..roots.len() {
                    let sum = roots[i].add(&roots[j]);
                    let c = alg.constant(i, j);
                    match r.index_of(&sum) {
                        Some(k) => {
                            assert_eq!(c.len(), 1);
                            assert_eq!(c[0].0, k);
                            let p = r.string_below(&roots[i], &roots[j]) as i64 + 1;
                            assert_eq!(c[0].1.abs(), Rational::from_int(p));
                        }
                        None => assert!(c.is_empty()),
                    }
                }
            }
        }
    }

    #[test]
    fn three_only_in_g2() {
        let g2 = nilradical(&rs(Family::G, 2));
        let has_three = (0..6).any(|i| (0..6).any(|j| g2.constant(i, j).iter().any(|(_, c)| c.abs() == Rational::from_int(3))));
        assert!(has_three);
        let f4 = nilradical(&rs(Family::F, 4));
        assert!((0..24).all(|i| (0..24).all(|j| f4.constant(i, j).iter().all(|(_, c)| c.abs() <= Rational::from_int(2)))));
    }

    #[test]
    fn jacobi_small_types() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::G, 2), (Family::D, 4), (Family::F, 4)] {
            let alg = nilradical(&rs(f, n));
            assert!(verify_jacobi(&alg).is_ok(), "{f}{n}");
        }
    }

    #[test]
    fn extraspecial_pairs_positive() {
        let r = rs(Family::E, 6);
        for g in r.positive_roots().iter().filter(|g| g.degree() > 1) {
            let a = r.positive_roots().iter().find(|a| r.is_positive_root(&g.sub(a))).unwrap();
            assert!(structure_constant(&r, a, &g.sub(a)) > 0);
        }
    }
}
