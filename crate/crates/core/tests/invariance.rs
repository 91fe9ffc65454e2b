//! Invariants of the canonical nilradicals must not depend on the basis.

use lienil::chevalley::nilradical;
use lienil::exactlin::random_unimodular;
use lienil::fingerprint::{fingerprint, identify};
use lienil::nilalg::{graded, graded_pairing, lower_central_series, right_kernel, NilpotentAlgebra};
use lienil::rootsys::{build_root_system, SimpleType};
use proptest::prelude::*;

const SMALL: [&str; 9] = ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "C4"];

fn canonical(name: &str) -> NilpotentAlgebra {
    let t: SimpleType = name.parse().unwrap();
    nilradical(&build_root_system(t))
}

/// Right kernel dimensions of every pairing with a nonzero target.
fn kernel_profile(a: &NilpotentAlgebra) -> Vec<usize> {
    let f = lower_central_series(a).unwrap();
    let g = graded(a, &f);
    let c = f.class();
    (1..c).flat_map(|i| (1..=c - i).map(move |j| (i, j))).map(|(i, j)| right_kernel(&graded_pairing(&g, a, i, j)).dim()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_and_pairings_are_basis_free(k in 0..SMALL.len(), seed in any::<u64>()) {
        let a = canonical(SMALL[k]);
        let b = a.change_basis(&random_unimodular(a.dim(), seed).unwrap()).unwrap();
        let (fa, fb) = (lower_central_series(&a).unwrap(), lower_central_series(&b).unwrap());
        prop_assert_eq!(fa.dims(), fb.dims());
        prop_assert_eq!(graded(&a, &fa).dims(), graded(&b, &fb).dims());
        prop_assert_eq!(kernel_profile(&a), kernel_profile(&b));
        prop_assert_eq!(fingerprint(&a).unwrap(), fingerprint(&b).unwrap());
    }

    #[test]
    fn identification_is_basis_free(k in 0..SMALL.len(), seed in any::<u64>()) {
        let a = canonical(SMALL[k]);
        let b = a.change_basis(&random_unimodular(a.dim(), seed).unwrap()).unwrap();
        prop_assert_eq!(identify(&a).unwrap(), identify(&b).unwrap());
    }

    #[test]
    fn change_basis_composes(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = canonical("B3");
        let m = random_unimodular(a.dim(), s1).unwrap();
        let n = random_unimodular(a.dim(), s2).unwrap();
        let stepwise = a.change_basis(&m).unwrap().change_basis(&n).unwrap();
        prop_assert_eq!(&stepwise, &a.change_basis(&n.mul(&m).unwrap()).unwrap());
        let back = a.change_basis(&m).unwrap().change_basis(&m.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}
