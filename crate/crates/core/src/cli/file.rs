//! The JSON interchange format for structure constants.
//!
//! Only pairs `i < j` are written, sorted, with terms sorted by `k` and every
//! coefficient as a lowest-terms `num`/`den` pair with `den > 0`.

use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::Rational;
use crate::nilalg::{verify_jacobi, NilError, NilpotentAlgebra};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read or write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("bracket ({i}, {j}), output {k}: {num}/{den} is not a lowest-terms fraction with positive denominator")]
    Fraction { i: usize, j: usize, k: usize, num: i64, den: i64 },
    #[error("coefficient {0} does not fit a 64-bit num/den pair")]
    Overflow(Rational),
    #[error(transparent)]
    Algebra(#[from] NilError),
    #[error("Jacobi identity fails on {count} basis triple(s), first at {first:?}")]
    Jacobi { count: usize, first: (usize, usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

/// Free-form provenance; never consulted when reading an algebra back.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub dim: usize,
    pub brackets: Vec<Bracket>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &NilpotentAlgebra, metadata: Option<Metadata>) -> Result<Self, FileError> {
        let brackets = a
            .nonzero_brackets()
            .map(|(i, j, terms)| {
                let terms = terms
                    .iter()
                    .map(|(k, c)| {
                        let (num, den) = c.to_i64_pair().ok_or_else(|| FileError::Overflow(c.clone()))?;
                        Ok(Term { k: *k, num, den })
                    })
                    .collect::<Result<_, FileError>>()?;
                Ok(Bracket { i, j, terms })
            })
            .collect::<Result<_, FileError>>()?;
        Ok(AlgebraFile { format_version: FORMAT_VERSION, dim: a.dim(), brackets, metadata })
    }

    /// Structural validation only; see [`load`] for the Jacobi check.
    pub fn to_algebra(&self) -> Result<NilpotentAlgebra, FileError> {
        if self.format_version != FORMAT_VERSION {
            return Err(FileError::Version(self.format_version));
        }
        let mut entries = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let mut terms = Vec::with_capacity(b.terms.len());
            for t in &b.terms {
                if t.den <= 0 || t.num.gcd(&t.den) != 1 {
                    return Err(FileError::Fraction { i: b.i, j: b.j, k: t.k, num: t.num, den: t.den });
                }
                terms.push((t.k, Rational::new(t.num, t.den).expect("positive denominator")));
            }
            entries.push((b.i, b.j, terms));
        }
        Ok(NilpotentAlgebra::from_brackets(self.dim, entries)?)
    }

    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Compact JSON with a trailing newline; identical inputs give identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

/// Parses, validates structure, and checks Jacobi on all basis triples.
pub fn parse(text: &str) -> Result<(NilpotentAlgebra, Option<Metadata>), FileError> {
    let file = AlgebraFile::from_json(text)?;
    let a = file.to_algebra()?;
    let report = verify_jacobi(&a);
    if let Some(&first) = report.violations.first() {
        return Err(FileError::Jacobi { count: report.violations.len(), first });
    }
    Ok((a, file.metadata))
}

pub fn load(path: &Path) -> Result<(NilpotentAlgebra, Option<Metadata>), FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

pub fn save(path: &Path, a: &NilpotentAlgebra, metadata: Option<Metadata>) -> Result<(), FileError> {
    let text = AlgebraFile::from_algebra(a, metadata)?.to_json();
    std::fs::write(path, text).map_err(|source| FileError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::nilradical;
    use crate::exactlin::random_unimodular;
    use crate::rootsys::build_root_system;

    fn nil(s: &str) -> NilpotentAlgebra {
        nilradical(&build_root_system(s.parse().unwrap()))
    }

    #[test]
    fn heisenberg_serialization() {
        let f = AlgebraFile::from_algebra(&nil("A2"), None).unwrap();
        assert_eq!(f.dim, 3);
        assert_eq!(f.brackets.len(), 1);
        let json = f.to_json();
        assert!(json.starts_with(r#"{"format_version":1,"dim":3,"brackets":[{"i":0,"j":1,"terms":[{"k":2,"#));
    }

    #[test]
    fn round_trip() {
        for s in ["G2", "B3", "E6"] {
            let a = nil(s);
            let meta = Metadata { source: Some(s.into()), seed: None };
            let (b, m) = parse(&AlgebraFile::from_algebra(&a, Some(meta.clone())).unwrap().to_json()).unwrap();
            assert_eq!((a, Some(meta)), (b, m));
        }
        let a = nil("C3").change_basis(&random_unimodular(9, 5).unwrap()).unwrap();
        let (b, _) = parse(&AlgebraFile::from_algebra(&a, None).unwrap().to_json()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn malformed_files_rejected() {
        let bad = [
            r#"{"dim":3,"brackets":[]}"#,
            r#"{"format_version":2,"dim":3,"brackets":[]}"#,
            r#"{"format_version":1,"dim":3,"brackets":[{"i":1,"j":0,"terms":[]}]}"#,
            r#"{"format_version":1,"dim":3,"brackets":[{"i":0,"j":1,"terms":[{"k":2,"num":2,"den":4}]}]}"#,
            r#"{"format_version":1,"dim":3,"brackets":[{"i":0,"j":1,"terms":[{"k":2,"num":1,"den":-1}]}]}"#,
            r#"{"format_version":1,"dim":3,"brackets":[{"i":0,"j":1,"terms":[{"k":3,"num":1,"den":1}]}]}"#,
            r#"{"format_version":1,"dim":3,"brackets":[{"i":0,"j":1,"terms":[]},{"i":0,"j":1,"terms":[]}]}"#,
            r#"{"format_version":1,"dim":3,"brackets":[],"extra":0}"#,
            r#"{"format_version":1,"dim":3,"brackets":[{"i":0,"j":1,"terms":[{"k":2,"num":1.5,"den":1}]}]}"#,
        ];
        for text in bad {
            assert!(parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn jacobi_checked_on_load() {
        let text = r#"{"format_version":1,"dim":4,"brackets":[
            {"i":0,"j":1,"terms":[{"k":2,"num":1,"den":1}]},
            {"i":1,"j":2,"terms":[{"k":3,"num":1,"den":1}]},
            {"i":0,"j":3,"terms":[{"k":3,"num":1,"den":1}]}]}"#;
        assert!(matches!(parse(text), Err(FileError::Jacobi { .. })));
    }
}
