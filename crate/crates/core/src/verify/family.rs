//! The closed-form inequality family for six bodies in `R³` and the determinant
//! identities behind it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::config_space::plucker_coordinates;
use crate::exact::Rational;
use crate::scheme::{enumerate_scheme, PartitionScheme, Subset};
use crate::Result;

/// Position of `vv_I` (equivalently `vv_{I^c}`) in the `(6,3)` coordinate order.
pub fn vv_index(scheme: &PartitionScheme, labels: &[u8]) -> usize {
    let subset = Subset::new(labels.to_vec()).expect("distinct labels");
    let rest = subset.complement(6);
    let p = crate::scheme::Partition::new(vec![subset, rest], 6).expect("two complementary triples");
    scheme.partition_index(&p).expect("partition of [6] into triples")
}

#[derive(Clone, Debug)]
pub struct InequalityFamily63 {
    pub coordinate: Vec<Vec<BigInt>>,
    pub lower: Vec<Vec<BigInt>>,
    pub upper: Vec<Vec<BigInt>>,
}

impl InequalityFamily63 {
    /// All normals, deduplicated and sorted.
    pub fn normals(&self) -> Vec<Vec<BigInt>> {
        let all: BTreeSet<Vec<BigInt>> =
            self.coordinate.iter().chain(&self.lower).chain(&self.upper).cloned().collect();
        all.into_iter().collect()
    }
}

/// For every pair `J` and `ℓ ∉ J`:
///
/// * lower: `Σ_{m ∉ J∪ℓ} vv_{J∪m} − vv_{J∪ℓ} ≥ 0`
/// * upper: `vv_{J∪ℓ} + Σ vv_I − Σ_{m ∉ J∪ℓ} vv_{J∪m} ≥ 0`, the middle sum over triples
///   `I ∋ ℓ` meeting `J` in exactly one label,
///
/// plus the ten coordinate inequalities.
pub fn family_63() -> Result<InequalityFamily63> {
    let scheme = enumerate_scheme(6, 3)?;
    let zero = || vec![BigInt::from(0); 10];
    let coordinate = (0..10)
        .map(|i| {
            let mut v = zero();
            v[i] = BigInt::from(1);
            v
        })
        .collect();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for j in crate::scheme::combinations(&[1u8, 2, 3, 4, 5, 6], 2) {
        for l in (1..=6u8).filter(|x| !j.contains(x)) {
            let others: Vec<u8> = (1..=6u8).filter(|x| !j.contains(x) && *x != l).collect();
            let with = |m: u8| vv_index(&scheme, &[j[0], j[1], m]);
            let mut lo = zero();
            let mut up = zero();
            lo[with(l)] -= 1;
            up[with(l)] += 1;
            for &m in &others {
                lo[with(m)] += 1;
                up[with(m)] -= 1;
            }
            for &a in &j {
                for &m in &others {
                    up[vv_index(&scheme, &[a, l, m])] += 1;
                }
            }
            lower.push(lo);
            upper.push(up);
        }
    }
    Ok(InequalityFamily63 { coordinate, lower, upper })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyComparison {
    pub equal: bool,
    pub family_size: usize,
    pub facet_count: usize,
    /// In the family but not among the facets.
    pub missing: Vec<Vec<String>>,
    /// Among the facets but not in the family.
    pub extra: Vec<Vec<String>>,
}

pub fn compare_family(family: &[Vec<BigInt>], facets: &[Vec<BigInt>]) -> FamilyComparison {
    let a: BTreeSet<&Vec<BigInt>> = family.iter().collect();
    let b: BTreeSet<&Vec<BigInt>> = facets.iter().collect();
    let show = |v: &&Vec<BigInt>| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let missing: Vec<_> = a.difference(&b).map(show).collect();
    let extra: Vec<_> = b.difference(&a).map(show).collect();
    FamilyComparison {
        equal: missing.is_empty() && extra.is_empty(),
        family_size: a.len(),
        facet_count: b.len(),
        missing,
        extra,
    }
}

/// Compares the closed-form family with the given facets of the `(6,3)` cone.
pub fn check_family_equals_facets(facets: &[Vec<BigInt>]) -> Result<FamilyComparison> {
    Ok(compare_family(&family_63()?.normals(), facets))
}

/// `p₁₂p₃₄ − p₁₃p₂₄ + p₁₄p₂₃` for four planar vectors; identically zero.
pub fn plucker_residual_42(u: &[Vec<Rational>]) -> Result<Rational> {
    let s = enumerate_scheme(4, 2)?;
    let p = plucker_coordinates(u, &s);
    // subsets in order 12,13,14,23,24,34
    Ok(&p[0] * &p[5] - &p[1] * &p[4] + &p[2] * &p[3])
}

/// `x_I = det(u_I)·det(u_{I^c})` over the 3-subsets of `[6]`, in subset order.
pub fn complement_products(u: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let s = enumerate_scheme(6, 3)?;
    let p = plucker_coordinates(u, &s);
    Ok(s.subsets()
        .iter()
        .map(|i| &p[s.subset_index(i).expect("subset")] * &p[s.subset_index(&i.complement(6)).expect("complement")])
        .collect())
}

fn x_of(x: &[Rational], labels: &str) -> Rational {
    let s: Subset = labels.parse().expect("label string");
    let n = enumerate_scheme(6, 3).expect("(6,3)");
    x[n.subset_index(&s).expect("3-subset")].clone()
}

/// Residuals of the determinant identities for six vectors in `R³`:
/// `x₁₂₃ − x₁₂₄ + x₁₂₅ − x₁₂₆`, the two auxiliary three-term relations, and the
/// expansion of `x₁₂₃ + x₁₂₄ + x₁₂₅` after complement substitution.
pub fn grassmann_plucker_residuals_63(u: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let x = complement_products(u)?;
    let v = |s: &str| x_of(&x, s);
    Ok(vec![
        v("123") - v("124") + v("125") - v("126"),
        v("124") - v("134") - v("145") + v("146"),
        v("124") + v("234") + v("245") - v("246"),
        v("123") + v("124") + v("125")
            - (v("126") + v("256") + v("236") - v("146") - v("156") - v("136") + v("246")),
    ])
}

/// `x_I − x_{I^c}` for every 3-subset.
pub fn complement_symmetry_residuals(u: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let x = complement_products(u)?;
    let s = enumerate_scheme(6, 3)?;
    Ok(s.subsets()
        .iter()
        .enumerate()
        .map(|(i, sub)| &x[i] - &x[s.subset_index(&sub.complement(6)).expect("complement")])
        .collect())
}
