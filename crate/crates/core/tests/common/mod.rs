#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use zonocone::config_space::big_phi;
use zonocone::exact::{det, int, ints, rank, rat, Rational};
use zonocone::verify::family::{complement_symmetry_residuals, grassmann_plucker_residuals_63, plucker_residual_42};
use zonocone::{conic_hull, enumerate_scheme, Zonotope};

pub const CASES: u32 = 256;

pub fn config(seed: u64) -> Config {
    Config {
        cases: CASES,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(seed),
        ..Config::default()
    }
}

/// Runs `test` over `CASES` seeded instances; `Err` carries the first failure.
pub fn run<S: Strategy>(
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    TestRunner::new(config(seed)).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn square(n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, n), n)
}

pub fn vectors(count: usize, dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, dim), count)
}

/// Generator lists of `count` zonotopes in `R^dim`, one to three generators each.
pub fn zonotope_gens(count: usize, dim: usize) -> impl Strategy<Value = Vec<Vec<Vec<i64>>>> {
    prop::collection::vec(prop::collection::vec(prop::collection::vec(-4i64..=4, dim), 1..=3), count)
}

pub fn zonotope(dim: usize, gens: &[Vec<i64>]) -> Zonotope {
    Zonotope::from_vectors(dim, gens.iter().map(|g| ints(g)).collect()).unwrap()
}

pub fn zonotopes(dim: usize, gens: &[Vec<Vec<i64>>]) -> Vec<Zonotope> {
    gens.iter().map(|g| zonotope(dim, g)).collect()
}

pub fn to_rat(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| ints(r)).collect()
}

/// Sum over permutations of signed products.
pub fn leibniz(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let prod: i64 = (0..n).map(|i| m[i][p[i]]).product();
        total += if inversions % 2 == 0 { prod } else { -prod };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `det` agrees with the Leibniz sum, flips sign under a row swap, and is transpose
/// invariant; `rank(M) = rank(Mᵀ)`.
pub fn det_alternation(m: Vec<Vec<i64>>, i: usize, j: usize) -> Result<(), TestCaseError> {
    let n = m.len();
    let (i, j) = (i % n, j % n);
    let a = to_rat(&m);
    prop_assert_eq!(det(&a), int(leibniz(&m)));
    prop_assert_eq!(det(&to_rat(&transpose(&m))), det(&a));
    if i != j {
        let mut s = m.clone();
        s.swap(i, j);
        prop_assert_eq!(det(&to_rat(&s)), -det(&a));
    }
    prop_assert_eq!(rank(&a), rank(&to_rat(&transpose(&m))));
    Ok(())
}

pub fn det_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, usize, usize)> {
    (1usize..=4).prop_flat_map(|n| (square(n, 6), 0..n, 0..n))
}

pub const CASES_ND: [(usize, usize); 3] = [(4, 2), (6, 2), (6, 3)];

#[derive(Debug, Clone)]
pub struct MultilinearCase {
    pub case: usize,
    pub bodies: Vec<Vec<Vec<i64>>>,
    pub extra: Vec<Vec<i64>>,
    pub slot: usize,
    pub lambda: (i64, i64),
}

pub fn multilinear_strategy() -> impl Strategy<Value = MultilinearCase> {
    (0usize..3).prop_flat_map(|case| {
        let (n, d) = CASES_ND[case];
        (
            zonotope_gens(n, d),
            prop::collection::vec(prop::collection::vec(-4i64..=4, d), 1..=3),
            0..n,
            (1i64..=6, 1i64..=6),
        )
            .prop_map(move |(bodies, extra, slot, lambda)| MultilinearCase { case, bodies, extra, slot, lambda })
    })
}

/// `Φ` is additive under Minkowski sum and positively homogeneous in each body.
pub fn phi_multilinear(c: MultilinearCase) -> Result<(), TestCaseError> {
    let (n, d) = CASES_ND[c.case];
    let scheme = enumerate_scheme(n, d).unwrap();
    let base = zonotopes(d, &c.bodies);
    let extra = zonotope(d, &c.extra);
    let mut replaced = base.clone();
    replaced[c.slot] = extra.clone();
    let mut summed = base.clone();
    summed[c.slot] = base[c.slot].minkowski_add(&extra).unwrap();
    let lambda = rat(c.lambda.0, c.lambda.1);
    let mut scaled = base.clone();
    scaled[c.slot] = base[c.slot].scaled(&lambda);

    let p = big_phi(&base, &scheme).unwrap().values;
    let q = big_phi(&replaced, &scheme).unwrap().values;
    let s = big_phi(&summed, &scheme).unwrap().values;
    let expected: Vec<Rational> = p.iter().zip(&q).map(|(a, b)| a + b).collect();
    prop_assert_eq!(s, expected);
    let l = big_phi(&scaled, &scheme).unwrap().values;
    prop_assert_eq!(l, p.iter().map(|a| a * &lambda).collect::<Vec<_>>());
    Ok(())
}

/// `Φ(gK) = |det g|^{n/d} Φ(K)` for an integer matrix `g`.
pub fn phi_linear_image(case: usize, bodies: Vec<Vec<Vec<i64>>>, g: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let (n, d) = CASES_ND[case];
    let g = &g[..d];
    let g: Vec<Vec<i64>> = g.iter().map(|r| r[..d].to_vec()).collect();
    let scheme = enumerate_scheme(n, d).unwrap();
    let mapped: Vec<Vec<Vec<i64>>> = bodies
        .iter()
        .map(|b| b.iter().map(|u| g.iter().map(|row| row.iter().zip(u).map(|(a, x)| a * x).sum()).collect()).collect())
        .collect();
    let factor = int(leibniz(&g).abs());
    let mut scale = int(1);
    for _ in 0..n / d {
        scale *= &factor;
    }
    let p = big_phi(&zonotopes(d, &bodies), &scheme).unwrap().values;
    let q = big_phi(&zonotopes(d, &mapped), &scheme).unwrap().values;
    prop_assert_eq!(q, p.iter().map(|a| a * &scale).collect::<Vec<_>>());
    Ok(())
}

pub fn linear_image_strategy() -> impl Strategy<Value = (usize, Vec<Vec<Vec<i64>>>, Vec<Vec<i64>>)> {
    (0usize..3).prop_flat_map(|case| {
        let (n, d) = CASES_ND[case];
        (Just(case), zonotope_gens(n, d), square(3, 3))
    })
}

/// Determinant identities of the `(4,2)` and `(6,3)` cones vanish on arbitrary vectors.
pub fn plucker_residuals(u4: Vec<Vec<i64>>, u6: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    prop_assert!(plucker_residual_42(&to_rat(&u4)).unwrap().is_zero());
    for r in grassmann_plucker_residuals_63(&to_rat(&u6)).unwrap() {
        prop_assert!(r.is_zero());
    }
    Ok(())
}

pub fn plucker_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (vectors(4, 2, 9), vectors(6, 3, 9))
}

/// `vv_I = vv_{I^c}` from determinants, and on the monomials of six segments in `R³`.
pub fn complement_symmetry(u6: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    for r in complement_symmetry_residuals(&to_rat(&u6)).unwrap() {
        prop_assert!(r.is_zero());
    }
    let scheme = enumerate_scheme(6, 3).unwrap();
    let segs: Vec<Zonotope> = u6.iter().map(|v| Zonotope::segment(ints(v))).collect();
    let phi = big_phi(&segs, &scheme).unwrap();
    let pv = zonocone::pure_config(&segs, &scheme).unwrap();
    for (p, part) in scheme.partitions().iter().enumerate() {
        let b = part.blocks();
        let vi = &pv.values[scheme.subset_index(&b[0]).unwrap()];
        let vc = &pv.values[scheme.subset_index(&b[0].complement(6)).unwrap()];
        prop_assert_eq!(&phi.values[p], &(vi * vc));
        prop_assert_eq!(&phi.values[p], &(vc * vi));
    }
    Ok(())
}

fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |a, b| a.gcd(b));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Normal of the hyperplane through `dim - 1` vectors in `R^dim`, by cofactors.
fn cofactor_normal(rows: &[Vec<i64>]) -> Vec<i64> {
    let dim = rows.len() + 1;
    (0..dim)
        .map(|c| {
            let minor: Vec<Vec<i64>> =
                rows.iter().map(|r| (0..dim).filter(|&j| j != c).map(|j| r[j]).collect()).collect();
            let m = if minor.is_empty() { 1 } else { leibniz(&minor) };
            if c % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Facets of a full-dimensional pointed cone by brute force over `(dim-1)`-subsets.
pub fn brute_force_facets(points: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let dim = points[0].len();
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let mut out = BTreeSet::new();
    for s in subsets(points.len(), dim - 1) {
        let rows: Vec<Vec<i64>> = s.iter().map(|&i| points[i].clone()).collect();
        let normal = cofactor_normal(&rows);
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        for sign in [1, -1] {
            let a: Vec<i64> = normal.iter().map(|x| sign * x).collect();
            if points.iter().all(|p| dot(&a, p) >= 0) {
                out.insert(primitive(a));
            }
        }
    }
    out
}

pub fn duality_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (3usize..=4).prop_flat_map(|dim| {
        prop::collection::vec(
            (prop::collection::vec(-3i64..=3, dim - 1), 1i64..=3).prop_map(|(mut v, last)| {
                v.push(last);
                v
            }),
            dim..=dim + 4,
        )
    })
}

fn as_big(v: &BTreeSet<Vec<i64>>) -> Vec<Vec<BigInt>> {
    v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// The cone engine agrees with brute force, and hulling its facets returns its rays.
pub fn duality_roundtrip(points: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    prop_assume!(rank(&to_rat(&points)) == points[0].len());
    let cone = conic_hull(&to_rat(&points)).unwrap();
    let expected = as_big(&brute_force_facets(&points));
    prop_assert_eq!(cone.facets(), expected.as_slice());
    let dual_input: Vec<Vec<Rational>> =
        cone.facets().iter().map(|f| f.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let dual = conic_hull(&dual_input).unwrap();
    prop_assert_eq!(dual.facets(), cone.rays());
    for r in cone.rays() {
        prop_assert!(r.iter().any(|x| !x.is_zero()));
        let tight = cone.facets().iter().filter(|f| zonocone::exact::dot(f, r).is_zero()).count();
        prop_assert!(tight >= points[0].len() - 1);
        prop_assert!(cone.facets().iter().all(|f| !zonocone::exact::dot(f, r).is_negative()));
    }
    Ok(())
}
