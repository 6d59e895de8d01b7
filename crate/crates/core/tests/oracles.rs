mod common;

use std::collections::BTreeSet;

use num::ToPrimitive;

use common::*;
use mtf_core::mtf::build_mtf_fan;
use mtf_core::polyhedra::{grid_points, Q};
use mtf_core::presets::{self, PRESET_NAMES};
use mtf_core::stability::StabilityVector;
use mtf_core::sublattice::{enumerate_submodules, newton_polytope, submodule_dim_vectors};
use mtf_core::Module;

fn ints(v: &[Q]) -> Vec<i64> {
    v.iter()
        .map(|x| {
            assert!(x.is_integer());
            x.to_integer().to_i64().unwrap()
        })
        .collect()
}

fn all_presets() -> Vec<(&'static str, Module)> {
    PRESET_NAMES.iter().map(|&n| (n, presets::preset(n).unwrap())).collect()
}

#[test]
fn submodule_counts_match_brute_force() {
    for (name, m) in all_presets() {
        let brute = brute_submodules(&m);
        let set = enumerate_submodules(&m).unwrap();
        assert_eq!(set.len(), brute.len(), "{name}");
        let dims: BTreeSet<Vec<i64>> = submodule_dim_vectors(&m).unwrap().into_iter().map(|d| d.0).collect();
        assert_eq!(dims, brute_dim_vectors(&m), "{name}");
    }
}

#[test]
fn newton_vertices_match_hull_oracle() {
    for (name, m) in all_presets() {
        let poly = newton_polytope(&m).unwrap();
        let got: BTreeSet<Vec<i64>> = poly.vertices().iter().map(|v| ints(v)).collect();
        assert_eq!(got, hull_vertices(&brute_dim_vectors(&m)), "{name}");
    }
}

#[test]
fn torsion_parts_match_maximizers_on_grid() {
    for (name, m) in all_presets() {
        let fan = build_mtf_fan(&m).unwrap();
        let bound = if m.n() > 2 { 2 } else { 3 };
        for point in grid_points(m.n(), bound) {
            let theta = StabilityVector::new(point.clone());
            let coords: Vec<i64> = ints(&point);
            let (_, data) = fan.class_of(&theta).unwrap();
            let (t, tbar) = brute_torsion(&m, &to_r(&coords));
            assert_eq!(data.t_dim().0, t, "{name} t at {coords:?}");
            assert_eq!(data.tbar_dim().0, tbar, "{name} tbar at {coords:?}");
        }
    }
}

#[test]
fn known_small_lattices() {
    // F_2^2 has five subspaces; F_3^2 has six.
    assert_eq!(all_subspaces(2, 2).len(), 5);
    assert_eq!(all_subspaces(3, 2).len(), 6);
    assert_eq!(all_subspaces(2, 3).len(), 16);
    // The semisimple module of dimension (1,1) over A2 has four submodules;
    // the indecomposable projective has three.
    assert_eq!(brute_submodules(&module(0, 2, &[1, 1], &[0])).len(), 4);
    assert_eq!(brute_submodules(&presets::a2_p1()).len(), 3);
}

#[test]
fn hull_oracle_self_check() {
    let square: BTreeSet<Vec<i64>> = [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().collect();
    assert_eq!(hull_vertices(&square), square);
    let mut with_centre = square.clone();
    with_centre.insert(vec![2, 2]);
    with_centre.insert(vec![1, 1]);
    let v = hull_vertices(&with_centre);
    assert!(!v.contains(&vec![1, 1]));
    assert_eq!(v.len(), 4);
}
