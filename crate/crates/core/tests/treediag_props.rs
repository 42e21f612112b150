use proptest::prelude::*;
use treesign_core::oracle::{dense_spectrum, random_tree, DEFAULT_TOL};
use treesign_core::treediag::{InertiaTriple, MatrixKind, SymmetricTreeMatrix};
use treesign_core::{ratio, BigRational};

const KINDS: [MatrixKind; 3] = [MatrixKind::Adjacency, MatrixKind::Laplacian, MatrixKind::NormalizedLaplacian];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn locate_matches_dense_oracle(n in 1usize..20, seed in any::<u64>(), shift in -3.0..6.0) {
        let tree = random_tree(n, seed);
        for kind in KINDS {
            let m = SymmetricTreeMatrix::<f64>::build(&tree, kind).unwrap();
            let spec = dense_spectrum(&m, DEFAULT_TOL).unwrap();
            prop_assume!(spec.distance_to(shift) > 1e-6);
            let got = m.locate(&shift);
            prop_assert_eq!(got, InertiaTriple { below: spec.count_below(shift), equal: 0, above: spec.count_above(shift) });
        }
    }

    #[test]
    fn inertia_does_not_depend_on_root(n in 2usize..16, seed in any::<u64>(), new_root in any::<prop::sample::Index>(), shift in -3.0..6.0) {
        let tree = random_tree(n, seed);
        let m = SymmetricTreeMatrix::<f64>::build(&tree, MatrixKind::Laplacian).unwrap();
        let spec = dense_spectrum(&m, DEFAULT_TOL).unwrap();
        prop_assume!(spec.distance_to(shift) > 1e-6);
        let other = m.rerooted(new_root.index(n)).unwrap();
        prop_assert_eq!(m.locate(&shift), other.locate(&shift));
    }

    #[test]
    fn radius_and_kth_match_oracle(n in 2usize..20, seed in any::<u64>(), k in any::<prop::sample::Index>()) {
        let tree = random_tree(n, seed);
        for kind in KINDS {
            let m = SymmetricTreeMatrix::<f64>::build(&tree, kind).unwrap();
            let spec = dense_spectrum(&m, DEFAULT_TOL).unwrap();
            prop_assert!((m.spectral_radius(1e-11) - spec.max()).abs() < 1e-8);
            let k = k.index(n) + 1;
            prop_assert!((m.kth_eigenvalue(k, 1e-11).unwrap() - spec.eigenvalues[k - 1]).abs() < 1e-8);
        }
    }

    #[test]
    fn exact_and_float_backends_agree_off_spectrum(n in 2usize..14, seed in any::<u64>(), p in -30i64..60, q in 1i64..7) {
        let tree = random_tree(n, seed);
        let shift = p as f64 / q as f64;
        for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian] {
            let float = SymmetricTreeMatrix::<f64>::build(&tree, kind).unwrap();
            let exact = SymmetricTreeMatrix::<BigRational>::build(&tree, kind).unwrap();
            let spec = dense_spectrum(&float, DEFAULT_TOL).unwrap();
            let e = exact.locate(&ratio(p, q));
            prop_assert_eq!(e.total(), n);
            if spec.distance_to(shift) > 1e-6 {
                prop_assert_eq!(float.locate(&shift), e);
            }
        }
    }
}

#[test]
fn laplacian_zero_eigenvalue_is_found_exactly() {
    for seed in 0..50 {
        let tree = random_tree(2 + seed as usize % 15, seed);
        let lap = SymmetricTreeMatrix::<BigRational>::build(&tree, MatrixKind::Laplacian).unwrap();
        let inertia = lap.locate(&ratio(0, 1));
        assert_eq!((inertia.below, inertia.equal), (0, 1));
    }
}

#[test]
fn random_trees_are_deterministic_per_seed() {
    for seed in 0..20 {
        assert_eq!(random_tree(30, seed), random_tree(30, seed));
    }
}
