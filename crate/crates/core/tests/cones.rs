use std::collections::BTreeSet;

use num_bigint::BigInt;

use zonocone::exact::{big, dot, rank_int, to_rationals};
use zonocone::golden::{compare, golden};
use zonocone::pipeline::build;
use zonocone::rigid::{generators_for, is_rigid};
use zonocone::symmetry::table1_columns;
use zonocone::verify::family::family_63;
use zonocone::{conic_hull, face_dimension, is_2_neighborly, Error};

#[test]
fn four_two_cone_is_the_plucker_cone() {
    let art = build(4, 2).unwrap();
    assert_eq!(art.cone.rays(), &[big(&[0, 1, 1]), big(&[1, 0, 1]), big(&[1, 1, 0])]);
    assert_eq!(art.cone.facets(), &[big(&[-1, 1, 1]), big(&[1, -1, 1]), big(&[1, 1, -1])]);
    assert_eq!(art.scheme.order_labels(), ["12|34", "13|24", "14|23"]);
    assert!(compare(&golden(4, 2).unwrap(), &art).is_empty());
}

#[test]
fn generators_are_rigid_and_deduplicated() {
    for ((n, d), count) in [((4, 2), 3), ((6, 2), 25), ((6, 3), 30)] {
        let gens = generators_for(n, d).unwrap();
        assert_eq!(gens.len(), count);
        let rays: BTreeSet<&Vec<BigInt>> = gens.iter().map(|g| &g.ray).collect();
        assert_eq!(rays.len(), count);
        assert!(gens.iter().all(|g| is_rigid(&g.configuration()).unwrap()));
    }
    assert!(matches!(generators_for(5, 2), Err(Error::Indivisible { .. }) | Err(Error::Unsupported { .. })));
}

#[test]
fn six_two_golden_and_reference_columns() {
    let art = build(6, 2).unwrap();
    assert!(compare(&golden(6, 2).unwrap(), &art).is_empty());
    let t = art.table1.as_ref().unwrap();
    assert!(t.bijection);
    let cols = table1_columns(&art.scheme).unwrap();
    let orbit_of = |v: &Vec<BigInt>| {
        let f = art.cone.facet_index(v).expect("reference column is a facet");
        art.orbits.iter().position(|o| o.members.contains(&f)).unwrap()
    };
    let hit: BTreeSet<usize> = cols.iter().map(orbit_of).collect();
    assert_eq!(hit.len(), 8);
}

#[test]
fn six_two_is_two_neighborly() {
    let art = build(6, 2).unwrap();
    assert!(is_2_neighborly(&art.cone));
    let all: Vec<usize> = (0..art.cone.rays().len()).collect();
    assert_eq!(face_dimension(&art.cone, &all).unwrap(), 15);
    assert_eq!(face_dimension(&art.cone, &[0]).unwrap(), 1);
    assert_eq!(face_dimension(&art.cone, &[3, 17]).unwrap(), 2);
}

#[test]
fn four_two_faces() {
    let c = build(4, 2).unwrap().cone;
    assert_eq!(face_dimension(&c, &[0, 1]).unwrap(), 2);
    assert_eq!(face_dimension(&c, &[0, 1, 2]).unwrap(), 3);
    assert!(is_2_neighborly(&c));
}

#[test]
fn six_three_family_and_coordinates() {
    let art = build(6, 3).unwrap();
    assert!(compare(&golden(6, 3).unwrap(), &art).is_empty());
    let facets: BTreeSet<Vec<BigInt>> = art.cone.facets().iter().cloned().collect();
    let family: BTreeSet<Vec<BigInt>> = family_63().unwrap().normals().into_iter().collect();
    assert_eq!(facets, family);
    for i in 0..10 {
        let mut e = vec![BigInt::from(0); 10];
        e[i] = BigInt::from(1);
        assert!(facets.contains(&e));
    }
}

#[test]
fn dual_of_built_cones_round_trips() {
    for (n, d) in [(4, 2), (6, 3)] {
        let art = build(n, d).unwrap();
        let points: Vec<_> = art.cone.facets().iter().map(|f| to_rationals(f)).collect();
        let dual = conic_hull(&points).unwrap();
        assert_eq!(dual.facets(), art.cone.rays(), "({n},{d})");
        assert_eq!(dual.rays(), art.cone.facets(), "({n},{d})");
    }
}

/// Every ray is nonnegative on all facets and tight on a rank-14 subset of them, so each
/// ray is a facet of the dual cone.
#[test]
fn six_two_rays_are_dual_facets() {
    let art = build(6, 2).unwrap();
    for r in art.cone.rays() {
        let tight: Vec<Vec<BigInt>> = art.cone.facets().iter().filter(|f| dot(f, r) == BigInt::from(0)).cloned().collect();
        assert!(art.cone.facets().iter().all(|f| dot(f, r) >= BigInt::from(0)));
        assert_eq!(rank_int(&tight), 14);
    }
}

#[test]
fn artifact_json_is_stable() {
    let a = serde_json::to_string(&build(6, 3).unwrap().to_json()).unwrap();
    let b = serde_json::to_string(&build(6, 3).unwrap().to_json()).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["counts"]["rays_by_type"]["A1"], 15);
    assert_eq!(v["counts"]["rays_by_type"]["A2"], 15);
    assert_eq!(v["cone"]["incidence"].as_array().unwrap().len(), 30);
}
