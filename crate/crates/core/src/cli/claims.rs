//! Executable checks of the structural facts the identification rests on.
//!
//! Each claim runs over every type of rank at most `max_rank` and reports a
//! witness; a claim with nothing in scope is skipped rather than passed.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chevalley::nilradical;
use crate::exactlin::{random_unimodular, unit_vector, Rational, Subspace};
use crate::fingerprint::{bc_discriminator, fingerprint, identify_bounded, BcBit, Identification};
use crate::nilalg::{
    graded, graded_constants, graded_pairing, lower_central_series, right_kernel, verify_jacobi, GradedAlgebra,
    NilpotentAlgebra,
};
use crate::rootsys::{build_root_system, Family, Root, RootSystem, SimpleType, DEFAULT_MAX_RANK};

#[derive(Clone, Debug)]
pub struct ClaimConfig {
    pub max_rank: usize,
    pub seeds: Vec<u64>,
    pub perturbations: usize,
    pub perturb_max_rank: usize,
}

impl ClaimConfig {
    pub fn with_max_rank(max_rank: usize) -> Self {
        ClaimConfig { max_rank, ..Self::default() }
    }
}

impl Default for ClaimConfig {
    fn default() -> Self {
        ClaimConfig { max_rank: 8, seeds: (1..=5).collect(), perturbations: 20, perturb_max_rank: 5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Nothing to check at this rank bound.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub id: &'static str,
    pub status: Status,
    pub witness: String,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for ClaimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.id, self.witness)
    }
}

const MAX_LISTED: usize = 5;

/// Accumulates per-item outcomes; the witness lists failures, or a summary.
struct Tally {
    id: &'static str,
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new(id: &'static str) -> Self {
        Tally { id, checked: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self) -> ClaimResult {
        let status = match (self.failures.is_empty(), self.checked) {
            (false, _) => Status::Fail,
            (true, 0) => Status::Skip,
            _ => Status::Pass,
        };
        let witness = if !self.failures.is_empty() {
            let shown: Vec<&str> = self.failures.iter().take(MAX_LISTED).map(String::as_str).collect();
            let more = if self.failures.len() > MAX_LISTED { "; ..." } else { "" };
            format!("{} of {} checks failed: {}{more}", self.failures.len(), self.checked, shown.join("; "))
        } else if self.checked == 0 {
            "nothing in scope at this rank bound".to_string()
        } else {
            format!("{} checks; {}", self.checked, self.notes.join(", "))
        };
        ClaimResult { id: self.id, status, witness }
    }
}

/// Every type of rank `<= max_rank`, classical families first.
pub fn types_in_scope(max_rank: usize) -> Vec<SimpleType> {
    SimpleType::all_up_to(max_rank).into_iter().filter(|t| t.rank() <= max_rank).collect()
}

fn nil(t: SimpleType) -> (RootSystem, NilpotentAlgebra) {
    let rs = build_root_system(t);
    let a = nilradical(&rs);
    (rs, a)
}

fn bc(f: Family, n: usize) -> SimpleType {
    SimpleType::new(f, n).expect("B/C rank at least 2")
}

pub fn dimension_table(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("dimension-table");
    for ty in types_in_scope(cfg.max_rank) {
        let (_, a) = nil(ty);
        let got = 2 * a.dim() + ty.rank();
        t.check(got == ty.dimension(), || format!("{ty}: 2*{}+{} != {}", a.dim(), ty.rank(), ty.dimension()));
        if matches!(ty.family(), Family::E | Family::F | Family::G) {
            t.note(format!("{ty}={got}"));
        }
    }
    t.finish()
}

pub fn rank_recovery(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("rank-recovery");
    for ty in types_in_scope(cfg.max_rank) {
        let (_, a) = nil(ty);
        match fingerprint(&a) {
            Ok(fp) => t.check(fp.rank == ty.rank(), || format!("{ty}: dim gr^1 = {}", fp.rank)),
            Err(e) => t.check(false, || format!("{ty}: {e}")),
        }
    }
    t.note("dim gr^1 = rank for every type".into());
    t.finish()
}

pub fn lcs_is_degree_filtration(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("lcs-equals-degree-filtration");
    let mut terms = 0;
    for ty in types_in_scope(cfg.max_rank) {
        let (rs, a) = nil(ty);
        let Ok(f) = lower_central_series(&a) else {
            t.check(false, || format!("{ty}: not nilpotent"));
            continue;
        };
        let top = rs.highest_root().degree() as usize;
        let ok = f.class() == top
            && (1..=top + 1).all(|i| {
                let idx = rs.positive_roots().iter().enumerate().filter(|(_, r)| r.degree() as usize >= i).map(|(k, _)| k);
                f.term(i) == Subspace::coordinate(a.dim(), idx)
            });
        terms += top + 1;
        t.check(ok, || format!("{ty}: filtration differs from degree filtration"));
    }
    t.note(format!("{terms} subspaces compared"));
    t.finish()
}

pub fn bc_histograms_equal(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("bc-histograms-equal");
    for n in 2..=cfg.max_rank {
        let hb = build_root_system(bc(Family::B, n)).degree_histogram();
        let hc = build_root_system(bc(Family::C, n)).degree_histogram();
        t.check(hb == hc, || format!("n={n}: B {hb:?} vs C {hc:?}"));
        if n == cfg.max_rank {
            t.note(format!("n=2..{n}, B{n}/C{n} histogram {hb:?}"));
        }
    }
    t.finish()
}

pub fn e6_degree_four(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("e6-degree-4");
    if cfg.max_rank < 6 {
        return t.finish();
    }
    for (ty, want) in [("E6", 5), ("B6", 4), ("C6", 4)] {
        let ty: SimpleType = ty.parse().expect("valid type");
        match fingerprint(&nil(ty).1) {
            Ok(fp) => {
                let got = fp.graded_dim(4);
                t.check(got == want, || format!("{ty}: dim gr^4 = {got}, expected {want}"));
                t.note(format!("{ty}:{got}"));
            }
            Err(e) => t.check(false, || format!("{ty}: {e}")),
        }
    }
    t.finish()
}

/// `2 e_2` in simple-root coordinates of `C_n`: `(0, 2, ..., 2, 1)`.
fn c_long_root(n: usize) -> Root {
    let mut c = vec![2; n];
    c[0] = 0;
    c[n - 1] = 1;
    Root::new(c)
}

pub fn bc_discriminator_claim(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("bc-discriminator");
    let mut dims = Vec::new();
    for n in 3..=cfg.max_rank {
        for fam in [Family::B, Family::C] {
            let ty = bc(fam, n);
            let (rs, a) = nil(ty);
            let f = lower_central_series(&a).expect("nilradical is nilpotent");
            let g = graded(&a, &f);
            let k = right_kernel(&graded_pairing(&g, &a, 2, 2 * n - 3));
            let bit = bc_discriminator(&a, n);
            dims.push(format!("{ty}:{}", k.dim()));
            match fam {
                Family::B => t.check(k.is_zero() && bit == Ok(BcBit::RightNondegenerate), || {
                    format!("{ty}: right kernel dimension {}", k.dim())
                }),
                _ => {
                    let idx = rs.index_of(&c_long_root(n)).expect("2e_2 is a root of C_n");
                    let w = g.coset_coordinates(2 * n - 3, &unit_vector(a.dim(), idx));
                    let contains = k.member(&w).unwrap_or(false);
                    t.check(k.dim() >= 1 && contains && bit == Ok(BcBit::RightDegenerate), || {
                        format!("{ty}: kernel dimension {}, contains 2e_2 coset: {contains}", k.dim())
                    });
                }
            }
        }
    }
    t.note(format!("right kernel dims {}", dims.join(" ")));
    t.finish()
}

fn round_trip_one(ty: SimpleType, seed: u64, bound: usize) -> Result<(), String> {
    let (_, a) = nil(ty);
    let m = random_unimodular(a.dim(), seed).map_err(|e| e.to_string())?;
    let b = a.change_basis(&m).map_err(|e| e.to_string())?;
    let want = Identification::of(ty);
    match identify_bounded(&b, bound) {
        Ok(id) if id == want => Ok(()),
        Ok(id) => Err(format!("{ty} seed {seed}: identified as {}", id.canonical)),
        Err(e) => Err(format!("{ty} seed {seed}: {e}")),
    }
}

pub fn round_trip(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("round-trip-identification");
    let jobs: Vec<(SimpleType, u64)> =
        types_in_scope(cfg.max_rank).into_iter().flat_map(|ty| cfg.seeds.iter().map(move |&s| (ty, s))).collect();
    let bound = cfg.max_rank.max(DEFAULT_MAX_RANK);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    let results: Vec<Result<(), String>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let jobs = &jobs;
                s.spawn(move || {
                    jobs.iter()
                        .enumerate()
                        .filter(|(k, _)| k % workers == w)
                        .map(|(k, &(ty, seed))| (k, round_trip_one(ty, seed, bound)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut all: Vec<(usize, Result<(), String>)> =
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect();
        all.sort_by_key(|(k, _)| *k);
        all.into_iter().map(|(_, r)| r).collect()
    });
    for r in results {
        t.check(r.is_ok(), || r.clone().unwrap_err());
    }
    t.note(format!("{} types x {} seeds", types_in_scope(cfg.max_rank).len(), cfg.seeds.len()));
    t.finish()
}

/// `nilradical(B3)` with the sign of its first nonzero constant flipped.
pub fn sign_flipped_b3() -> NilpotentAlgebra {
    let a = nil(bc(Family::B, 3)).1;
    let entries: Vec<_> = a
        .nonzero_brackets()
        .enumerate()
        .map(|(n, (i, j, terms))| {
            let terms = terms.iter().map(|(k, c)| (*k, if n == 0 { -c } else { c.clone() })).collect();
            (i, j, terms)
        })
        .collect();
    NilpotentAlgebra::from_brackets(a.dim(), entries).expect("same shape")
}

pub fn jacobi_soundness(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("jacobi-soundness");
    for ty in types_in_scope(cfg.max_rank) {
        let r = verify_jacobi(&nil(ty).1);
        t.check(r.is_ok(), || format!("{ty}: {} violating triples", r.violations.len()));
    }
    let r = verify_jacobi(&sign_flipped_b3());
    t.check(!r.is_ok(), || "sign-flipped B3 passes Jacobi".into());
    t.note(format!("sign-flipped B3 has {} violating triples", r.violations.len()));
    t.finish()
}

pub fn graded_equals_nilradical(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("graded-equals-nilradical");
    for ty in types_in_scope(cfg.max_rank) {
        let (_, a) = nil(ty);
        let g = graded(&a, &lower_central_series(&a).expect("nilpotent"));
        t.check(graded_constants(&g, &a) == a, || format!("{ty}: graded constants differ"));
    }
    t.note("exact equality in the root basis".into());
    t.finish()
}

fn all_pairings(g: &GradedAlgebra, a: &NilpotentAlgebra) -> Vec<crate::nilalg::BilinearPairing> {
    let c = g.filtration().class();
    (1..=c).flat_map(|i| (1..=c).map(move |j| (i, j))).map(|(i, j)| graded_pairing(g, a, i, j)).collect()
}

/// Shifts every representative by a random integer combination of `n^{i+1}`.
fn perturb(g: &GradedAlgebra, rng: &mut ChaCha8Rng) -> GradedAlgebra {
    let f = g.filtration();
    let pieces = g
        .pieces()
        .iter()
        .enumerate()
        .map(|(i, piece)| {
            let next = f.term(i + 2);
            piece
                .iter()
                .map(|v| {
                    let mut v = v.clone();
                    for b in 0..next.dim() {
                        let c = Rational::from_int(rng.gen_range(-3..=3));
                        for (x, y) in v.iter_mut().zip(next.basis_vector(b)) {
                            *x += &(&c * y);
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    GradedAlgebra::with_representatives(f.clone(), pieces).expect("shifted representatives stay valid")
}

pub fn pairing_well_defined(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("pairing-well-defined");
    let types: Vec<SimpleType> =
        types_in_scope(cfg.max_rank).into_iter().filter(|ty| ty.rank() <= cfg.perturb_max_rank).collect();
    let mut tensors = 0;
    for (n, ty) in types.iter().enumerate() {
        let (_, a) = nil(*ty);
        let g = graded(&a, &lower_central_series(&a).expect("nilpotent"));
        let base = all_pairings(&g, &a);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
        for k in 0..cfg.perturbations {
            let h = perturb(&g, &mut rng);
            tensors += base.len();
            t.check(all_pairings(&h, &a) == base, || format!("{ty}: perturbation {k} changed a pairing"));
        }
    }
    t.note(format!("{} types, {} perturbations each, {tensors} tensors compared", types.len(), cfg.perturbations));
    t.finish()
}

pub fn simple_predecessor_claim(cfg: &ClaimConfig) -> ClaimResult {
    let mut t = Tally::new("simple-predecessor");
    let mut roots = 0;
    for ty in types_in_scope(cfg.max_rank) {
        let (rs, a) = nil(ty);
        for (k, r) in rs.positive_roots().iter().enumerate().filter(|(_, r)| r.degree() >= 2) {
            roots += 1;
            let ok = rs.simple_predecessor(r).is_ok_and(|i| {
                let prev = rs.index_of(&r.sub(&rs.simple_root(i))).expect("predecessor is a root");
                let simple = rs.index_of(&rs.simple_root(i)).expect("simple roots are positive");
                a.constant(prev, simple).iter().any(|(out, c)| *out == k && !c.is_zero())
            });
            t.check(ok, || format!("{ty}: root {:?}", r.coeffs()));
        }
    }
    t.note(format!("{roots} roots of degree >= 2"));
    t.finish()
}

type Claim = fn(&ClaimConfig) -> ClaimResult;

/// All claims in a fixed order.
pub const CLAIMS: [Claim; 11] = [
    dimension_table,
    rank_recovery,
    lcs_is_degree_filtration,
    bc_histograms_equal,
    e6_degree_four,
    bc_discriminator_claim,
    round_trip,
    jacobi_soundness,
    graded_equals_nilradical,
    pairing_well_defined,
    simple_predecessor_claim,
];

/// Runs every claim concurrently; results come back in [`CLAIMS`] order.
pub fn run_all(cfg: &ClaimConfig) -> Vec<ClaimResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CLAIMS.iter().map(|c| s.spawn(move || c(cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("claim panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ClaimConfig {
        ClaimConfig { max_rank: 3, seeds: vec![1], perturbations: 2, perturb_max_rank: 3 }
    }

    #[test]
    fn long_root_coordinates() {
        assert_eq!(c_long_root(3).coeffs(), &[0, 2, 1]);
        assert_eq!(c_long_root(5).coeffs(), &[0, 2, 2, 2, 1]);
    }

    #[test]
    fn cheap_claims_pass_at_low_rank() {
        let cfg = small();
        for c in [dimension_table, rank_recovery, bc_histograms_equal, bc_discriminator_claim, simple_predecessor_claim] {
            let r = c(&cfg);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn failure_lists_the_item() {
        let mut t = Tally::new("x");
        t.check(true, || unreachable!());
        t.check(false, || "bad item".into());
        let r = t.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.to_string(), "FAIL x: 1 of 2 checks failed: bad item");
    }

    #[test]
    fn empty_scope_is_skipped() {
        let cfg = ClaimConfig { max_rank: 1, ..small() };
        assert_eq!(bc_histograms_equal(&cfg).status, Status::Skip);
        assert_eq!(e6_degree_four(&cfg).status, Status::Skip);
        assert_eq!(types_in_scope(2).iter().map(|t| t.to_string()).collect::<Vec<_>>(), ["A1", "A2", "B2", "C2", "G2"]);
    }
}
