//! Six planar bodies, two of them triangles, on which one facet orbit of the `(6,2)`
//! cone fails, while every zonotope tuple satisfies it.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{dot_rational, ints, Rational};
use crate::mixed_volume::{mv_polygons, ConvexPolygon, Point2};
use crate::scheme::{enumerate_scheme, PartitionScheme};
use crate::symmetry::{all_actions, table1_columns};
use crate::verify::sampling::{random_zonotope, trial_rng};
use crate::config_space::big_phi;
use crate::Result;

const BODIES: &str = include_str!("../../data/counterexample.json");

fn point(v: &serde_json::Value) -> Result<Point2> {
    let c = v.as_array().filter(|c| c.len() == 2).ok_or_else(|| crate::Error::Parse(format!("bad point {v}")))?;
    Ok([crate::exact::rational_from_json(&c[0])?, crate::exact::rational_from_json(&c[1])?])
}

/// Four segments `[0,u]` and two triangles, as convex polygons.
pub fn counterexample_bodies() -> Result<Vec<ConvexPolygon>> {
    let v: serde_json::Value = serde_json::from_str(BODIES).map_err(|e| crate::Error::Parse(e.to_string()))?;
    let bodies = v["bodies"].as_array().ok_or_else(|| crate::Error::Parse("missing bodies".into()))?;
    bodies
        .iter()
        .map(|b| {
            let verts = b.as_array().ok_or_else(|| crate::Error::Parse("bad body".into()))?;
            ConvexPolygon::new(verts.iter().map(point).collect::<Result<Vec<_>>>()?)
        })
        .collect()
}

/// `Φ` of planar bodies given as polygons, with pairwise mixed areas by polarization.
pub fn polygon_phi(bodies: &[ConvexPolygon], scheme: &PartitionScheme) -> Vec<Rational> {
    let pv: Vec<Rational> = scheme
        .subsets()
        .iter()
        .map(|s| {
            let m = s.members();
            mv_polygons(&bodies[m[0] as usize - 1], &bodies[m[1] as usize - 1])
        })
        .collect();
    (0..scheme.partitions().len())
        .map(|p| scheme.block_indices(p).iter().fold(Rational::one(), |acc, &i| acc * &pv[i]))
        .collect()
}

/// Distinct relabelings of a normal under `S_6`.
pub fn orbit_images(normal: &[BigInt], scheme: &PartitionScheme) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = all_actions(scheme).iter().map(|a| a.apply(normal)).collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub type_number: usize,
    pub orbit_size: usize,
    pub minimum: String,
    pub violated_images: usize,
    pub witness_normal: Vec<String>,
    pub mixed_areas: Vec<String>,
    pub seed: u64,
    pub trials: usize,
    pub random_minimum: Option<String>,
    pub random_violations: usize,
    pub passed: bool,
}

/// Evaluates every relabeling of reference type `type_number` on the six bodies, and on
/// `trials` random zonotope tuples.
pub fn counterexample_check(type_number: usize, trials: usize, seed: u64) -> Result<CounterexampleReport> {
    let scheme = enumerate_scheme(6, 2)?;
    let normal = table1_columns(&scheme)?
        .into_iter()
        .nth(type_number.wrapping_sub(1))
        .ok_or_else(|| crate::Error::InvalidIndex(format!("type {type_number}")))?;
    let images = orbit_images(&normal, &scheme);
    let bodies = counterexample_bodies()?;
    let x = polygon_phi(&bodies, &scheme);
    let values: Vec<Rational> = images.iter().map(|a| dot_rational(a, &x)).collect();
    let (imin, minimum) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, v)| (i, v.clone()))
        .expect("nonempty orbit");
    let violated_images = values.iter().filter(|v| v.is_negative()).count();
    let mixed_areas = scheme
        .subsets()
        .iter()
        .map(|s| {
            let m = s.members();
            format!("V{s}={}", mv_polygons(&bodies[m[0] as usize - 1], &bodies[m[1] as usize - 1]))
        })
        .collect();

    let random: Vec<Rational> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let tuple: Vec<_> = (0..6).map(|_| random_zonotope(&mut rng, 2, 9)).collect();
            let phi = big_phi(&tuple, &scheme)?;
            Ok(images.iter().map(|a| dot_rational(a, &phi.values)).min().expect("nonempty orbit"))
        })
        .collect::<Result<Vec<_>>>()?;
    let random_minimum = random.iter().min().cloned();
    let random_violations = random.iter().filter(|v| v.is_negative()).count();
    Ok(CounterexampleReport {
        type_number,
        orbit_size: images.len(),
        minimum: minimum.to_string(),
        violated_images,
        witness_normal: images[imin].iter().map(ToString::to_string).collect(),
        mixed_areas,
        seed,
        trials,
        random_minimum: random_minimum.map(|m| m.to_string()),
        random_violations,
        passed: minimum.is_negative() && random_violations == 0,
    })
}

/// A random 6-tuple of planar bodies mixing segments and triangles, for experiments on
/// the other orbits.
pub fn random_polygon_tuple(rng: &mut ChaCha8Rng) -> Vec<ConvexPolygon> {
    (0..6)
        .map(|_| loop {
            let k = rng.gen_range(2..=3);
            let mut pts: Vec<Point2> = (0..k)
                .map(|_| {
                    let v = ints(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
                    [v[0].clone(), v[1].clone()]
                })
                .collect();
            if k == 3 {
                let e1 = [&pts[1][0] - &pts[0][0], &pts[1][1] - &pts[0][1]];
                let e2 = [&pts[2][0] - &pts[0][0], &pts[2][1] - &pts[0][1]];
                if (&e1[0] * &e2[1] - &e1[1] * &e2[0]).is_negative() {
                    pts.swap(1, 2);
                }
            }
            if let Ok(p) = ConvexPolygon::new(pts) {
                break p;
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeEvidence {
    pub type_number: usize,
    pub minimum: String,
    pub tuples_violating: usize,
}

/// Smallest value of each reference type over random tuples of segments and triangles.
/// Gathers evidence only; no outcome is expected.
pub fn general_body_experiment(trials: usize, seed: u64) -> Result<Vec<TypeEvidence>> {
    let scheme = enumerate_scheme(6, 2)?;
    let orbits: Vec<Vec<Vec<BigInt>>> =
        table1_columns(&scheme)?.iter().map(|c| orbit_images(c, &scheme)).collect();
    let minima: Vec<Vec<Rational>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let x = polygon_phi(&random_polygon_tuple(&mut rng), &scheme);
            orbits
                .iter()
                .map(|imgs| imgs.iter().map(|a| dot_rational(a, &x)).min().expect("nonempty orbit"))
                .collect()
        })
        .collect();
    Ok((0..orbits.len())
        .map(|k| TypeEvidence {
            type_number: k + 1,
            minimum: minima.iter().map(|m| &m[k]).min().map(ToString::to_string).unwrap_or_else(|| "none".into()),
            tuples_violating: minima.iter().filter(|m| m[k].is_negative()).count(),
        })
        .collect())
}
