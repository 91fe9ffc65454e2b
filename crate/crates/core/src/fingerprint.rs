//! Graded invariants of an anonymous nilpotent algebra and the decision
//! procedure that names the simple Lie algebra it came from.
//!
//! The path is: rank and dimension from the lower central series, a lookup in
//! the dimension table, then two refinements for the only collisions. `E6`
//! against `B6`/`C6` is split by the dimension of `gr^4`; `B_n` against `C_n`
//! by the right kernel of the pairing `gr^2 × gr^{2n-3} → gr^{2n-1}`. A final
//! comparison of the whole graded profile rejects anything that only matches
//! partially.

use serde::Serialize;
use thiserror::Error;

use crate::nilalg::{graded, graded_pairing, lower_central_series, right_kernel, Filtration, NilError, NilpotentAlgebra};
use crate::rootsys::{build_root_system, Family, SimpleType, DEFAULT_MAX_RANK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentifyError {
    #[error("unrecognized: {0}")]
    Unrecognized(String),
    #[error("not a B/C candidate: {0}")]
    NotBcCandidate(String),
    #[error(transparent)]
    Nil(#[from] NilError),
}

impl IdentifyError {
    pub fn is_not_nilpotent(&self) -> bool {
        matches!(self, IdentifyError::Nil(NilError::NotNilpotent { .. }))
    }
}

/// Outcome of [`bc_discriminator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BcBit {
    /// Zero right kernel: type `B`.
    #[serde(rename = "right-nondegenerate")]
    RightNondegenerate,
    /// Nonzero right kernel: type `C`.
    #[serde(rename = "right-degenerate")]
    RightDegenerate,
}

impl BcBit {
    pub fn family(self) -> Family {
        match self {
            BcBit::RightNondegenerate => Family::B,
            BcBit::RightDegenerate => Family::C,
        }
    }
}

/// `graded_dims[0]` is `dim gr^1`, so `graded_dims[i - 1] = dim gr^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub rank: usize,
    pub nil_dim: usize,
    pub simple_dim: usize,
    pub graded_dims: Vec<usize>,
    pub class: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bc_bit: Option<BcBit>,
}

impl Fingerprint {
    fn from_filtration(f: &Filtration) -> Self {
        let dims = f.dims();
        let graded_dims: Vec<usize> = dims.windows(2).map(|w| w[0] - w[1]).collect();
        let rank = graded_dims.first().copied().unwrap_or(0);
        let nil_dim = f.ambient_dim();
        Fingerprint { rank, nil_dim, simple_dim: 2 * nil_dim + rank, graded_dims, class: f.class(), bc_bit: None }
    }

    /// `dim gr^i` for `i >= 1`; zero past the class.
    pub fn graded_dim(&self, i: usize) -> usize {
        i.checked_sub(1).and_then(|k| self.graded_dims.get(k)).copied().unwrap_or(0)
    }
}

pub fn fingerprint(a: &NilpotentAlgebra) -> Result<Fingerprint, IdentifyError> {
    Ok(Fingerprint::from_filtration(&lower_central_series(a)?))
}

/// Canonical name among coincident presentations, with the other names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub canonical: SimpleType,
    pub aliases: Vec<SimpleType>,
}

impl Identification {
    /// Folds `C2` into `B2`, `D3` into `A3`, and lists `B1`, `C1` beside `A1`.
    pub fn of(t: SimpleType) -> Self {
        let label = SimpleType::label;
        let (canonical, aliases) = match (t.family(), t.rank()) {
            (Family::A, 1) => (t, vec![label(Family::B, 1), label(Family::C, 1)]),
            (Family::B | Family::C, 2) => (label(Family::B, 2), vec![label(Family::C, 2)]),
            (Family::A | Family::D, 3) => (label(Family::A, 3), vec![label(Family::D, 3)]),
            _ => (t, Vec::new()),
        };
        Identification { canonical, aliases }
    }
}

/// Output of [`identify_report`]: the identification and the invariants behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub canonical: SimpleType,
    pub aliases: Vec<SimpleType>,
    pub fingerprint: Fingerprint,
}

/// Types of rank `rank` whose simple algebra has dimension `simple_dim`,
/// sorted, with `D3` reported as `A3`.
pub fn dimension_table_lookup(rank: usize, simple_dim: usize) -> Vec<SimpleType> {
    let mut out: Vec<SimpleType> = Family::ALL
        .iter()
        .filter_map(|&f| SimpleType::new(f, rank).ok())
        .filter(|t| t.dimension() == simple_dim)
        .map(|t| if t.family() == Family::D && rank == 3 { SimpleType::label(Family::A, 3) } else { t })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn bc_from_filtration(a: &NilpotentAlgebra, f: &Filtration, n: usize) -> Result<BcBit, IdentifyError> {
    if n < 3 {
        return Err(IdentifyError::NotBcCandidate(format!("rank {n} is below 3")));
    }
    let fp = Fingerprint::from_filtration(f);
    let (src, tgt) = (fp.graded_dim(2 * n - 3), fp.graded_dim(2 * n - 1));
    if fp.class != 2 * n - 1 || src != 2 || tgt != 1 {
        return Err(IdentifyError::NotBcCandidate(format!(
            "need class {} with dim gr^{} = 2 and dim gr^{} = 1, found class {}, {src}, {tgt}",
            2 * n - 1,
            2 * n - 3,
            2 * n - 1,
            fp.class
        )));
    }
    let g = graded(a, f);
    let p = graded_pairing(&g, a, 2, 2 * n - 3);
    Ok(if right_kernel(&p).is_zero() { BcBit::RightNondegenerate } else { BcBit::RightDegenerate })
}

/// Right kernel of `gr^2 × gr^{2n-3} → gr^{2n-1}`: zero for `B_n`, nonzero for `C_n`.
pub fn bc_discriminator(a: &NilpotentAlgebra, n: usize) -> Result<BcBit, IdentifyError> {
    let f = lower_central_series(a)?;
    bc_from_filtration(a, &f, n)
}

pub fn identify(a: &NilpotentAlgebra) -> Result<Identification, IdentifyError> {
    identify_bounded(a, DEFAULT_MAX_RANK)
}

pub fn identify_bounded(a: &NilpotentAlgebra, max_rank: usize) -> Result<Identification, IdentifyError> {
    identify_report(a, max_rank).map(|r| Identification { canonical: r.canonical, aliases: r.aliases })
}

/// Full decision procedure; classical families are searched up to `max_rank`.
pub fn identify_report(a: &NilpotentAlgebra, max_rank: usize) -> Result<Report, IdentifyError> {
    let f = lower_central_series(a)?;
    let mut fp = Fingerprint::from_filtration(&f);
    let unrecognized = |why: String| Err(IdentifyError::Unrecognized(why));
    if fp.rank == 0 {
        return unrecognized("zero-dimensional algebra".into());
    }
    let candidates: Vec<SimpleType> = dimension_table_lookup(fp.rank, fp.simple_dim)
        .into_iter()
        .filter(|t| matches!(t.family(), Family::E | Family::F | Family::G) || t.rank() <= max_rank)
        .collect();
    let bc = |fp: &mut Fingerprint, n: usize| -> Result<SimpleType, IdentifyError> {
        if n == 2 {
            return Ok(SimpleType::label(Family::B, 2));
        }
        let bit = bc_from_filtration(a, &f, n).map_err(|e| IdentifyError::Unrecognized(e.to_string()))?;
        fp.bc_bit = Some(bit);
        Ok(SimpleType::new(bit.family(), n).expect("rank at least 3"))
    };
    let families: Vec<Family> = candidates.iter().map(SimpleType::family).collect();
    let chosen = match families.as_slice() {
        [] => {
            return unrecognized(format!("no simple type of rank {} has dimension {}", fp.rank, fp.simple_dim));
        }
        [_] => candidates[0],
        [Family::B, Family::C] => {
            let n = fp.rank;
            bc(&mut fp, n)?
        }
        [Family::B, Family::C, Family::E] => match fp.graded_dim(4) {
            5 => candidates[2],
            4 => bc(&mut fp, 6)?,
            k => return unrecognized(format!("dim gr^4 = {k} fits none of E6, B6, C6")),
        },
        _ => return unrecognized(format!("ambiguous table entry {candidates:?}")),
    };
    let expected = build_root_system(chosen).degree_histogram();
    if expected != fp.graded_dims {
        return unrecognized(format!("graded dimensions {:?} differ from {chosen} profile {expected:?}", fp.graded_dims));
    }
    let id = Identification::of(chosen);
    Ok(Report { canonical: id.canonical, aliases: id.aliases, fingerprint: fp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::nilradical;
    use crate::exactlin::{random_unimodular, Rational};
    use crate::rootsys::build_root_system;

    fn t(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    fn nil(s: &str) -> NilpotentAlgebra {
        nilradical(&build_root_system(t(s)))
    }

    #[test]
    fn fingerprint_examples() {
        let fp = fingerprint(&nil("A2")).unwrap();
        assert_eq!((fp.rank, fp.nil_dim, fp.simple_dim, fp.graded_dims.clone()), (2, 3, 8, vec![2, 1]));
        let fp = fingerprint(&nil("E6")).unwrap();
        assert_eq!((fp.rank, fp.simple_dim), (6, 78));
        let fp = fingerprint(&NilpotentAlgebra::abelian(1)).unwrap();
        assert_eq!((fp.rank, fp.nil_dim, fp.simple_dim), (1, 1, 3));
    }

    #[test]
    fn lookup_examples() {
        assert_eq!(dimension_table_lookup(6, 78), vec![t("B6"), t("C6"), t("E6")]);
        assert_eq!(dimension_table_lookup(3, 15), vec![t("A3")]);
        assert_eq!(dimension_table_lookup(2, 14), vec![t("G2")]);
        assert_eq!(dimension_table_lookup(2, 10), vec![t("B2"), t("C2")]);
        assert!(dimension_table_lookup(4, 50).is_empty());
    }

    #[test]
    fn lookup_collisions_are_only_bc_and_e6() {
        for r in 1..=12 {
            for sd in 0..400 {
                let hit = dimension_table_lookup(r, sd);
                if hit.len() > 1 {
                    let fams: Vec<Family> = hit.iter().map(SimpleType::family).collect();
                    assert!(fams == [Family::B, Family::C] || (fams == [Family::B, Family::C, Family::E] && r == 6));
                }
            }
        }
    }

    #[test]
    fn discriminator_examples() {
        assert_eq!(bc_discriminator(&nil("B4"), 4).unwrap(), BcBit::RightNondegenerate);
        assert_eq!(bc_discriminator(&nil("C4"), 4).unwrap(), BcBit::RightDegenerate);
        assert_eq!(bc_discriminator(&nil("C3"), 3).unwrap(), BcBit::RightDegenerate);
        assert!(matches!(bc_discriminator(&nil("B3"), 2), Err(IdentifyError::NotBcCandidate(_))));
        assert!(matches!(bc_discriminator(&nil("A4"), 4), Err(IdentifyError::NotBcCandidate(_))));
    }

    #[test]
    fn identify_examples() {
        let b4 = nil("B4").change_basis(&random_unimodular(16, 3).unwrap()).unwrap();
        assert_eq!(identify(&b4).unwrap(), Identification::of(t("B4")));
        let id = identify(&nil("C2")).unwrap();
        assert_eq!((id.canonical.to_string(), id.aliases[0].to_string()), ("B2".into(), "C2".into()));
        let heis = NilpotentAlgebra::from_brackets(3, [(0, 1, vec![(2, Rational::one())])]).unwrap();
        assert_eq!(identify(&heis).unwrap().canonical, t("A2"));
        assert_eq!(identify(&nil("E6")).unwrap().canonical, t("E6"));
        let id = identify(&nil("D3")).unwrap();
        assert_eq!((id.canonical, id.aliases.clone()), (t("A3"), vec![t("D3")]));
        let a1 = identify(&nil("A1")).unwrap();
        assert_eq!(a1.aliases.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["B1", "C1"]);
    }

    #[test]
    fn identify_rejects() {
        // 4-dim abelian: rank 4, simple dim 12, no type
        assert!(matches!(identify(&NilpotentAlgebra::abelian(4)), Err(IdentifyError::Unrecognized(_))));
        // free 2-step nilpotent on three generators: (3, 15) points at A3, profile [3, 3] does not
        let free = NilpotentAlgebra::from_brackets(
            6,
            [(0, 1, vec![(3, Rational::one())]), (0, 2, vec![(4, Rational::one())]), (1, 2, vec![(5, Rational::one())])],
        )
        .unwrap();
        assert!(matches!(identify(&free), Err(IdentifyError::Unrecognized(_))));
        assert!(matches!(identify(&NilpotentAlgebra::abelian(0)), Err(IdentifyError::Unrecognized(_))));
        let b9 = nil("B9");
        assert!(matches!(identify_bounded(&b9, 8), Err(IdentifyError::Unrecognized(_))));
        assert_eq!(identify_bounded(&b9, 9).unwrap().canonical, t("B9"));
    }

    #[test]
    fn report_carries_bc_bit_only_when_used() {
        let r = identify_report(&nil("C5"), 12).unwrap();
        assert_eq!(r.fingerprint.bc_bit, Some(BcBit::RightDegenerate));
        let r = identify_report(&nil("E7"), 12).unwrap();
        assert_eq!(r.fingerprint.bc_bit, None);
    }
}
