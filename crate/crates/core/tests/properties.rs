mod common;

use std::collections::BTreeSet;

use num::ToPrimitive;
use proptest::prelude::*;

use common::*;
use mtf_core::mtf::build_mtf_fan;
use mtf_core::oracle::{verify_direct_sum, verify_point, verify_structure};
use mtf_core::polyhedra::Q;
use mtf_core::stability::{
    canonical_sequences_in, is_m_tf_equivalent, is_m_tf_equivalent_by_definition, StabilityVector,
};
use mtf_core::sublattice::{enumerate_submodules, newton_polytope};
use mtf_core::{DimVector, Module};

fn small_module() -> impl Strategy<Value = Module> {
    (
        0usize..3,
        prop_oneof![Just(2u32), Just(3u32)],
        proptest::collection::vec(0usize..=2, 3),
        proptest::collection::vec(0u32..3, 1..12),
    )
        .prop_filter("keep the total dimension small", |(_, _, dims, _)| dims.iter().sum::<usize>() <= 4)
        .prop_map(|(kind, p, dims, entries)| module(kind, p, &dims, &entries))
}

fn theta_for(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, n)
}

fn with_theta() -> impl Strategy<Value = (Module, Vec<i64>, Vec<i64>)> {
    small_module().prop_flat_map(|m| {
        let n = m.n();
        (Just(m), theta_for(n), theta_for(n))
    })
}

fn ints(v: &[Q]) -> Vec<i64> {
    v.iter().map(|x| x.to_integer().to_i64().unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn enumeration_matches_brute_force(m in small_module()) {
        let set = enumerate_submodules(&m).unwrap();
        let brute = brute_submodules(&m);
        prop_assert_eq!(set.len(), brute.len());
        let dims: BTreeSet<Vec<i64>> = set.dim_vectors().iter().map(|d| d.0.clone()).collect();
        prop_assert_eq!(dims, brute_dim_vectors(&m));
    }

    #[test]
    fn newton_vertices_match_hull(m in small_module()) {
        let poly = newton_polytope(&m).unwrap();
        let got: BTreeSet<Vec<i64>> = poly.vertices().iter().map(|v| ints(v)).collect();
        prop_assert_eq!(got, hull_vertices(&brute_dim_vectors(&m)));
    }

    #[test]
    fn submodules_of_quotient_are_the_upper_interval(m in small_module()) {
        let set = enumerate_submodules(&m).unwrap();
        for i in 0..set.len() {
            let q = m.quotient(set.get(i)).unwrap();
            let expected = DimVector(m.dims().iter().zip(&set.dim_vector(i).0).map(|(&a, b)| a as i64 - b).collect());
            prop_assert_eq!(q.dim_vector(), expected);
            let above = set.interval(i, set.full_index());
            prop_assert_eq!(enumerate_submodules(&q).unwrap().len(), above.len());
            let below = set.interval(set.zero_index(), i);
            let restricted = m.restrict(set.get(i)).unwrap();
            prop_assert_eq!(enumerate_submodules(&restricted).unwrap().len(), below.len());
        }
    }

    #[test]
    fn torsion_parts_are_extreme_maximizers((m, theta, _) in with_theta()) {
        let fan = build_mtf_fan(&m).unwrap();
        let (_, data) = fan.class_of(&StabilityVector::from_ints(&theta)).unwrap();
        let (t, tbar) = brute_torsion(&m, &to_r(&theta));
        prop_assert_eq!(&data.t_dim().0, &t);
        prop_assert_eq!(&data.tbar_dim().0, &tbar);
        let total: Vec<i64> = m.dims().iter().map(|&d| d as i64).collect();
        let f: Vec<i64> = total.iter().zip(&tbar).map(|(a, b)| a - b).collect();
        let w: Vec<i64> = tbar.iter().zip(&t).map(|(a, b)| a - b).collect();
        prop_assert_eq!(data.f_dim().0, f);
        prop_assert_eq!(data.w_dim().0, w);
    }

    #[test]
    fn located_class_agrees_with_definitions((m, theta, _) in with_theta()) {
        let fan = build_mtf_fan(&m).unwrap();
        let report = verify_point(&fan, &StabilityVector::from_ints(&theta));
        prop_assert!(report.is_ok(), "{:?}", report.violations);
    }

    #[test]
    fn equivalence_routes_agree((m, theta, eta) in with_theta()) {
        let fan = build_mtf_fan(&m).unwrap();
        let (a, b) = (StabilityVector::from_ints(&theta), StabilityVector::from_ints(&eta));
        let set = fan.submodules();
        let by_tset = is_m_tf_equivalent(&a, &b, set).unwrap();
        let by_def = is_m_tf_equivalent_by_definition(&a, &b, set).unwrap();
        let same_cone = fan.locate(&a).unwrap() == fan.locate(&b).unwrap();
        prop_assert_eq!(by_tset, by_def);
        prop_assert_eq!(by_tset, same_cone);
        prop_assert!(is_m_tf_equivalent(&a, &a, set).unwrap());
    }

    #[test]
    fn canonical_sequence_is_consistent((m, theta, _) in with_theta()) {
        let set = enumerate_submodules(&m).unwrap();
        let theta = StabilityVector::from_ints(&theta);
        let cs = canonical_sequences_in(&theta, &set).unwrap();
        let report = cs.verify(&theta, &m).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report.violations);
    }

    #[test]
    fn fan_structure_holds(m in small_module()) {
        let fan = build_mtf_fan(&m).unwrap();
        let report = verify_structure(&fan, 2);
        prop_assert!(report.is_ok(), "{:?}", report.violations);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn direct_sums_are_minkowski_sums(
        kind in 0usize..2,
        p in prop_oneof![Just(2u32), Just(3u32)],
        a in proptest::collection::vec(0usize..=1, 2),
        b in proptest::collection::vec(0usize..=2, 2),
        entries in proptest::collection::vec(0u32..3, 1..8),
    ) {
        let m = module(kind, p, &a, &entries);
        let n = module(kind, p, &b, &entries[1..].iter().chain(&entries[..1]).copied().collect::<Vec<_>>());
        let report = verify_direct_sum(&m, &n).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report.violations);
    }
}
