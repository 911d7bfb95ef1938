//! Exact double description of pointed polyhedral cones.
//!
//! [`conic_hull`] takes generators of a full-dimensional cone and computes its facet
//! normals as the extreme rays of the dual cone `{a : ⟨g, a⟩ ≥ 0 for every generator g}`.
//! Constraints are inserted one at a time in input order; two dual rays are adjacent
//! when no third ray is tight on every constraint both of them are tight on.

use std::collections::BTreeSet;

use log::debug;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bitset::BitSet;
use crate::exact::{clear_denominators, dot, is_zero_vec, kernel_basis, make_primitive, rank_int, Rational};
use crate::{Error, Result};

/// A pointed cone in both descriptions, with the ray/facet incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    /// `incidence[r].contains(f)` iff ray `r` lies on facet `f`.
    incidence: Vec<BitSet>,
}

impl Cone {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays, primitive, sorted lexicographically.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// Facet normals `a` with `⟨a, x⟩ ≥ 0` on the cone, primitive, sorted lexicographically.
    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn incidence(&self) -> &[BitSet] {
        &self.incidence
    }

    pub fn ray_index(&self, ray: &[BigInt]) -> Option<usize> {
        self.rays.binary_search_by(|r| r.as_slice().cmp(ray)).ok()
    }

    pub fn facet_index(&self, facet: &[BigInt]) -> Option<usize> {
        self.facets.binary_search_by(|f| f.as_slice().cmp(facet)).ok()
    }

    /// JSON with the named coordinate order; incidence rows are `'0'/'1'` strings over facets.
    pub fn to_json(&self, order: &[String]) -> serde_json::Value {
        #[derive(Serialize)]
        struct ConeJson<'a> {
            ambient: usize,
            order: &'a [String],
            rays: Vec<Vec<String>>,
            facets: Vec<Vec<String>>,
            incidence: Vec<String>,
        }
        let ints = |vs: &[Vec<BigInt>]| -> Vec<Vec<String>> {
            vs.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect()
        };
        serde_json::to_value(ConeJson {
            ambient: self.ambient_dim,
            order,
            rays: ints(&self.rays),
            facets: ints(&self.facets),
            incidence: self
                .incidence
                .iter()
                .map(|row| (0..self.facets.len()).map(|f| if row.contains(f) { '1' } else { '0' }).collect())
                .collect(),
        })
        .expect("plain struct serializes")
    }

    /// Facets as CSV: one header row of coordinate labels, one row per facet.
    pub fn facets_csv(&self, order: &[String]) -> String {
        let mut out = order.join(",");
        out.push('\n');
        for f in &self.facets {
            let row: Vec<String> = f.iter().map(ToString::to_string).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

struct DualRay {
    vector: Vec<BigInt>,
    /// Constraints (input generators) this ray is tight on.
    zeros: BitSet,
}

/// Double description of the cone generated by `points`.
///
/// Errors when the points are all zero, do not span the ambient space, or generate a
/// cone containing a line.
pub fn conic_hull(points: &[Vec<Rational>]) -> Result<Cone> {
    let ambient = points.first().map(Vec::len).ok_or(Error::EmptyInput)?;
    if let Some(p) = points.iter().find(|p| p.len() != ambient) {
        return Err(Error::DimensionMismatch { expected: ambient, found: p.len() });
    }
    // dedupe positive multiples, keep first-seen order
    let mut seen = BTreeSet::new();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for p in points {
        let mut v = clear_denominators(p);
        if is_zero_vec(&v) {
            continue;
        }
        make_primitive(&mut v);
        if seen.insert(v.clone()) {
            gens.push(v);
        }
    }
    if gens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let r = rank_int(&gens);
    if r < ambient {
        return Err(Error::NotFullDimensional { rank: r, ambient });
    }

    let m = gens.len();
    let basis = independent_rows(&gens, ambient);
    let mut rays = initial_rays(&gens, &basis, m);
    let mut processed = vec![false; m];
    for &b in &basis {
        processed[b] = true;
    }
    for c in 0..m {
        if processed[c] {
            continue;
        }
        rays = insert_constraint(rays, &gens, c, ambient);
        processed[c] = true;
        debug!("constraint {c}/{m}: {} dual rays", rays.len());
    }

    let mut facets: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.vector).collect();
    facets.sort();
    let fr = rank_int(&facets);
    if fr < ambient {
        return Err(Error::NotPointed { rank: fr, ambient });
    }

    // a generator is extreme iff the facets through it have rank ambient - 1
    let mut extreme: Vec<Vec<BigInt>> = gens
        .into_iter()
        .filter(|g| {
            let tight: Vec<Vec<BigInt>> = facets.iter().filter(|f| dot(f, g).is_zero()).cloned().collect();
            rank_int(&tight) == ambient - 1
        })
        .collect();
    extreme.sort();
    let incidence = extreme
        .iter()
        .map(|r| {
            let mut row = BitSet::new(facets.len());
            for (j, f) in facets.iter().enumerate() {
                if dot(f, r).is_zero() {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    Ok(Cone { ambient_dim: ambient, rays: extreme, facets, incidence })
}

/// First `dim` linearly independent rows, scanning in order.
fn independent_rows(rows: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::with_capacity(dim);
    let mut picked: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for (i, r) in rows.iter().enumerate() {
        picked.push(r.clone());
        if rank_int(&picked) == picked.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        } else {
            picked.pop();
        }
    }
    chosen
}

/// The simplicial dual cone of the basis rows: ray `i` is tight on every basis row but `i`.
fn initial_rays(gens: &[Vec<BigInt>], basis: &[usize], m: usize) -> Vec<DualRay> {
    basis
        .iter()
        .map(|&i| {
            let others: Vec<Vec<BigInt>> = basis.iter().filter(|&&j| j != i).map(|&j| gens[j].clone()).collect();
            let mut v = kernel_basis(&others, gens[i].len()).pop().expect("corank one");
            if dot(&gens[i], &v).is_negative() {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            let mut zeros = BitSet::new(m);
            for &j in basis {
                if j != i {
                    zeros.insert(j);
                }
            }
            DualRay { vector: v, zeros }
        })
        .collect()
}

fn insert_constraint(rays: Vec<DualRay>, gens: &[Vec<BigInt>], c: usize, dim: usize) -> Vec<DualRay> {
    let g = &gens[c];
    let values: Vec<BigInt> = rays.iter().map(|r| dot(g, &r.vector)).collect();
    let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
    let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

    let mut new_rays = Vec::new();
    if !neg.is_empty() {
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.len() + 2 < dim {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                // s_p > 0 > s_q, so both coefficients are positive
                let (sp, sq) = (&values[p], &values[q]);
                let mut v: Vec<BigInt> = rays[p]
                    .vector
                    .iter()
                    .zip(&rays[q].vector)
                    .map(|(a, b)| sp * b - sq * a)
                    .collect();
                make_primitive(&mut v);
                let mut zeros = common;
                zeros.insert(c);
                new_rays.push(DualRay { vector: v, zeros });
            }
        }
    }

    let mut kept: Vec<DualRay> = rays
        .into_iter()
        .zip(values)
        .filter(|(_, v)| !v.is_negative())
        .map(|(mut r, v)| {
            if v.is_zero() {
                r.zeros.insert(c);
            }
            r
        })
        .collect();
    kept.extend(new_rays);
    kept
}

/// Dimension of the smallest face containing the given extreme rays (by index).
pub fn face_dimension(cone: &Cone, rays: &[usize]) -> Result<usize> {
    if let Some(&bad) = rays.iter().find(|&&r| r >= cone.rays.len()) {
        return Err(Error::NotExtreme(bad));
    }
    let mut common = BitSet::new(cone.facets.len());
    for f in 0..cone.facets.len() {
        common.insert(f);
    }
    for &r in rays {
        common = common.intersection(&cone.incidence[r]);
    }
    let on_face: Vec<Vec<BigInt>> = cone
        .incidence
        .iter()
        .zip(&cone.rays)
        .filter(|(row, _)| common.is_subset(row))
        .map(|(_, r)| r.clone())
        .collect();
    Ok(rank_int(&on_face))
}

/// True iff every pair of distinct extreme rays spans a 2-dimensional face.
pub fn is_2_neighborly(cone: &Cone) -> bool {
    let n = cone.rays.len();
    (0..n).all(|i| (i + 1..n).all(|j| face_dimension(cone, &[i, j]) == Ok(2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Inside,
    Boundary,
    Outside,
}

/// Result of evaluating every facet inequality at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub status: PointStatus,
    /// `⟨a, x⟩` for each facet, exact.
    pub values: Vec<Rational>,
    pub violated: Vec<usize>,
    pub tight: Vec<usize>,
}

pub fn check_point(cone: &Cone, x: &[Rational]) -> Result<Membership> {
    if x.len() != cone.ambient_dim {
        return Err(Error::DimensionMismatch { expected: cone.ambient_dim, found: x.len() });
    }
    // one common denominator keeps the facet sweep in integer arithmetic
    let scale = crate::exact::denominator_lcm(x);
    let y = clear_denominators(x);
    let values: Vec<Rational> = cone
        .facets
        .iter()
        .map(|f| Rational::new(dot(f, &y), scale.clone()))
        .collect();
    let violated: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_negative()).collect();
    let tight: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_zero()).collect();
    let status = if !violated.is_empty() {
        PointStatus::Outside
    } else if !tight.is_empty() {
        PointStatus::Boundary
    } else {
        PointStatus::Inside
    };
    Ok(Membership { status, values, violated, tight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, int, ints};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| ints(r)).collect()
    }

    #[test]
    fn plucker_cone() {
        let c = conic_hull(&pts(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        assert_eq!(c.facets(), &[big(&[-1, 1, 1]), big(&[1, -1, 1]), big(&[1, 1, -1])]);
        assert_eq!(c.rays(), &[big(&[0, 1, 1]), big(&[1, 0, 1]), big(&[1, 1, 0])]);
        // each ray lies on the two facets it does not oppose
        for row in c.incidence() {
            assert_eq!(row.len(), 2);
        }
        assert_eq!(face_dimension(&c, &[0]).unwrap(), 1);
        assert_eq!(face_dimension(&c, &[0, 2]).unwrap(), 2);
        assert_eq!(face_dimension(&c, &[0, 1, 2]).unwrap(), 3);
        assert!(is_2_neighborly(&c));
        assert_eq!(face_dimension(&c, &[7]), Err(Error::NotExtreme(7)));
    }

    #[test]
    fn square_cone_is_not_neighborly() {
        let c = conic_hull(&pts(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]])).unwrap();
        assert_eq!(c.facets().len(), 4);
        assert!(!is_2_neighborly(&c));
        let diag = [c.ray_index(&big(&[1, 0, 1])).unwrap(), c.ray_index(&big(&[-1, 0, 1])).unwrap()];
        assert_eq!(face_dimension(&c, &diag).unwrap(), 3);
    }

    #[test]
    fn redundant_and_duplicate_generators() {
        let c = conic_hull(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[2, 0, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(c.rays().len(), 3);
        assert_eq!(c.facets(), &[big(&[0, 0, 1]), big(&[0, 1, 0]), big(&[1, 0, 0])]);
    }

    #[test]
    fn errors() {
        assert_eq!(conic_hull(&[]), Err(Error::EmptyInput));
        assert_eq!(conic_hull(&pts(&[&[0, 0]])), Err(Error::EmptyInput));
        assert_eq!(
            conic_hull(&pts(&[&[1, 0, 0], &[0, 1, 0]])),
            Err(Error::NotFullDimensional { rank: 2, ambient: 3 })
        );
        // a half-space contains the line spanned by e2
        let line = conic_hull(&pts(&[&[1, 0], &[0, 1], &[0, -1]]));
        assert!(matches!(line, Err(Error::NotPointed { .. })));
    }

    #[test]
    fn point_membership() {
        let c = conic_hull(&pts(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        let m = check_point(&c, &ints(&[0, 1, 1])).unwrap();
        assert_eq!(m.status, PointStatus::Boundary);
        assert_eq!(m.tight.len(), 2);
        assert_eq!(check_point(&c, &ints(&[2, 2, 2])).unwrap().status, PointStatus::Inside);
        let out = check_point(&c, &ints(&[3, 1, 1])).unwrap();
        assert_eq!(out.status, PointStatus::Outside);
        assert_eq!(out.violated, vec![0]);
        assert_eq!(out.values[0], int(-1));
        assert!(check_point(&c, &ints(&[1, 1])).is_err());
    }

    #[test]
    fn csv_and_json_exports() {
        let c = conic_hull(&pts(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        let order = vec!["12|34".to_string(), "13|24".into(), "14|23".into()];
        assert_eq!(c.facets_csv(&order), "12|34,13|24,14|23\n-1,1,1\n1,-1,1\n1,1,-1\n");
        let j = c.to_json(&order);
        assert_eq!(j["ambient"], 3);
        assert_eq!(j["incidence"][0], "011");
    }
}
