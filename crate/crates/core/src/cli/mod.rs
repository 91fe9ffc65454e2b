//! Command implementations behind the `lienil` binary.
//!
//! Every command returns its stdout text or a [`CliError`] that fixes the exit
//! code: 1 for a well-formed input that is rejected, 2 for malformed input.

pub mod claims;
pub mod file;

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::chevalley::nilradical;
use crate::exactlin::random_unimodular;
use crate::fingerprint::{identify_report, Fingerprint, IdentifyError};
use crate::nilalg::{graded, graded_pairing, left_kernel, lower_central_series, right_kernel, NilError};
use crate::rootsys::{build_root_system, Family, SimpleType, DEFAULT_MAX_RANK};

pub use file::{AlgebraFile, FileError, Metadata};

pub const MAX_RANK_ENV: &str = "LIENIL_MAX_RANK";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Rejected(String),
    #[error("{0}")]
    Malformed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => 1,
            CliError::Malformed(_) => 2,
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<IdentifyError> for CliError {
    fn from(e: IdentifyError) -> Self {
        match e {
            IdentifyError::Nil(NilError::NotNilpotent { .. }) | IdentifyError::Unrecognized(_) => {
                CliError::Rejected(e.to_string())
            }
            other => CliError::Malformed(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Rank bound from `LIENIL_MAX_RANK`, else the default.
pub fn rank_bound_from_env() -> Result<usize, CliError> {
    match std::env::var(MAX_RANK_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| CliError::Malformed(format!("{MAX_RANK_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_RANK),
    }
}

/// Parses `FAMILY RANK`; classical ranks above `bound` are refused.
pub fn parse_type(family: &str, rank: usize, bound: usize) -> Result<SimpleType, CliError> {
    let family: Family = family.parse().map_err(|e: crate::rootsys::RootError| CliError::Malformed(e.to_string()))?;
    let t = SimpleType::new(family, rank).map_err(|e| CliError::Malformed(e.to_string()))?;
    if matches!(family, Family::A | Family::B | Family::C | Family::D) && rank > bound {
        return Err(CliError::Malformed(format!("rank {rank} exceeds the bound {bound} (set {MAX_RANK_ENV} to raise it)")));
    }
    Ok(t)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct TableRow {
    #[serde(rename = "type")]
    ty: SimpleType,
    rank: usize,
    dimension: usize,
}

pub fn cmd_table(max_rank: usize, format: Format) -> String {
    let rows: Vec<TableRow> = SimpleType::all_up_to(max_rank)
        .into_iter()
        .map(|t| TableRow { ty: t, rank: t.rank(), dimension: t.dimension() })
        .collect();
    match format {
        Format::Json => to_json(&rows),
        Format::Text => {
            let mut s = format!("{:<6}{:>6}{:>11}\n", "type", "rank", "dimension");
            for r in rows {
                s += &format!("{:<6}{:>6}{:>11}\n", r.ty.to_string(), r.rank, r.dimension);
            }
            s
        }
    }
}

#[derive(Serialize)]
struct RootsReport {
    #[serde(rename = "type")]
    ty: SimpleType,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<Vec<i32>>,
    degree_histogram: Vec<usize>,
    highest_root: Vec<i32>,
}

pub fn cmd_roots(t: SimpleType, format: Format) -> String {
    let rs = build_root_system(t);
    match format {
        Format::Json => to_json(&RootsReport {
            ty: t,
            rank: rs.rank(),
            cartan: rs.cartan().to_vec(),
            positive_roots: rs.positive_roots().iter().map(|r| r.coeffs().to_vec()).collect(),
            degree_histogram: rs.degree_histogram(),
            highest_root: rs.highest_root().coeffs().to_vec(),
        }),
        Format::Text => {
            let mut s = format!(
                "{t}: {} positive roots, highest root {:?}, degree histogram {:?}\n",
                rs.len(),
                rs.highest_root().coeffs(),
                rs.degree_histogram()
            );
            for (k, r) in rs.positive_roots().iter().enumerate() {
                s += &format!("{k:>4} {:>3}  {:?}\n", r.degree(), r.coeffs());
            }
            s
        }
    }
}

#[derive(Serialize)]
struct PairingSummary {
    i: usize,
    j: usize,
    right_rank: usize,
    right_kernel_dim: usize,
    left_kernel_dim: usize,
}

#[derive(Serialize)]
struct InvariantsReport {
    #[serde(rename = "type")]
    ty: SimpleType,
    lcs_dims: Vec<usize>,
    degree_histogram: Vec<usize>,
    fingerprint: Fingerprint,
    pairings: Vec<PairingSummary>,
}

/// Invariants of the canonical nilradical, with every nonzero-target pairing.
pub fn cmd_invariants(t: SimpleType) -> Result<String, CliError> {
    let rs = build_root_system(t);
    let a = nilradical(&rs);
    let f = lower_central_series(&a).map_err(|e| CliError::Rejected(e.to_string()))?;
    let report = identify_report(&a, t.rank().max(DEFAULT_MAX_RANK))?;
    let g = graded(&a, &f);
    let c = f.class();
    let mut pairings = Vec::new();
    for i in 1..c {
        for j in 1..=c - i {
            let p = graded_pairing(&g, &a, i, j);
            pairings.push(PairingSummary {
                i,
                j,
                right_rank: p.right_rank(),
                right_kernel_dim: right_kernel(&p).dim(),
                left_kernel_dim: left_kernel(&p).dim(),
            });
        }
    }
    Ok(to_json(&InvariantsReport {
        ty: t,
        lcs_dims: f.dims(),
        degree_histogram: rs.degree_histogram(),
        fingerprint: report.fingerprint,
        pairings,
    }))
}

pub fn cmd_emit(t: SimpleType, out: &Path) -> Result<(), CliError> {
    let a = nilradical(&build_root_system(t));
    file::save(out, &a, Some(Metadata { source: Some(t.to_string()), seed: None }))?;
    Ok(())
}

pub fn cmd_obfuscate(input: &Path, seed: u64, out: &Path) -> Result<(), CliError> {
    let (a, _) = file::load(input)?;
    lower_central_series(&a).map_err(|e| CliError::Rejected(e.to_string()))?;
    let m = random_unimodular(a.dim(), seed).map_err(|e| CliError::Malformed(e.to_string()))?;
    let b = a.change_basis(&m).map_err(|e| CliError::Malformed(e.to_string()))?;
    file::save(out, &b, Some(Metadata { source: None, seed: Some(seed) }))?;
    Ok(())
}

pub fn cmd_identify(input: &Path, bound: usize) -> Result<String, CliError> {
    let (a, _) = file::load(input)?;
    Ok(to_json(&identify_report(&a, bound)?))
}

/// Report lines and whether no claim failed.
pub fn cmd_verify_claims(max_rank: usize) -> (String, bool) {
    let results = claims::run_all(&claims::ClaimConfig::with_max_rank(max_rank));
    let ok = results.iter().all(|r| r.status != claims::Status::Fail);
    let text = results.iter().map(|r| format!("{r}\n")).collect();
    (text, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let t = cmd_table(8, Format::Text);
        assert!(t.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["E7", "7", "133"]));
        assert!(t.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["F4", "4", "52"]));
        assert!(t.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["A1", "1", "3"]));
        let j: serde_json::Value = serde_json::from_str(&cmd_table(2, Format::Json)).unwrap();
        assert_eq!(j[0]["type"], "A1");
    }

    #[test]
    fn type_parsing() {
        assert!(parse_type("b", 4, 12).is_ok());
        assert_eq!(parse_type("B", 13, 12).unwrap_err().exit_code(), 2);
        assert!(parse_type("E", 8, 3).is_ok());
        assert_eq!(parse_type("Q", 2, 12).unwrap_err().exit_code(), 2);
        assert_eq!(parse_type("E", 5, 12).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn roots_output() {
        let s = cmd_roots("B3".parse().unwrap(), Format::Text);
        assert!(s.starts_with("B3: 9 positive roots, highest root [1, 2, 2]"));
        let j: serde_json::Value = serde_json::from_str(&cmd_roots("G2".parse().unwrap(), Format::Json)).unwrap();
        assert_eq!(j["highest_root"], serde_json::json!([3, 2]));
    }

    #[test]
    fn invariants_output() {
        let j: serde_json::Value = serde_json::from_str(&cmd_invariants("C3".parse().unwrap()).unwrap()).unwrap();
        assert_eq!(j["lcs_dims"], serde_json::json!([9, 6, 4, 2, 1, 0]));
        assert_eq!(j["fingerprint"]["bc_bit"], "right-degenerate");
        let p = j["pairings"].as_array().unwrap().iter().find(|p| p["i"] == 2 && p["j"] == 3).unwrap();
        assert_eq!(p["right_kernel_dim"], 1);
    }
}
