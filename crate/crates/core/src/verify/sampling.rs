//! Seeded random zonotope tuples pushed through `Φ` and tested against the cone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cone::{check_point, Cone, PointStatus};
use crate::config_space::big_phi;
use crate::exact::{int, Rational};
use crate::mixed_volume::Zonotope;
use crate::scheme::PartitionScheme;
use crate::symmetry::FacetOrbit;
use crate::Result;

/// Generator for trial `trial` of a run seeded with `seed`; independent of scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A zonotope with 1 to 3 generators, integer coordinates in `-bound..=bound`.
pub fn random_zonotope(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Zonotope {
    let k = rng.gen_range(1..=3);
    let gens = (0..k)
        .map(|_| (0..dim).map(|_| int(rng.gen_range(-bound..=bound))).collect())
        .collect();
    Zonotope::from_vectors(dim, gens).expect("dimension matches")
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSlack {
    pub orbit: usize,
    pub size: usize,
    pub min_slack: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub inside: usize,
    pub boundary: usize,
    pub violations: Vec<serde_json::Value>,
    pub min_slack_per_orbit: Vec<OrbitSlack>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Draws `trials` tuples, evaluates every facet at `Φ`, and records the smallest
/// facet value per orbit. Results do not depend on the thread count.
pub fn sample_inequalities(
    scheme: &PartitionScheme,
    cone: &Cone,
    orbits: &[FacetOrbit],
    trials: usize,
    seed: u64,
) -> Result<SampleReport> {
    let (n, d) = (scheme.n(), scheme.d());
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let tuple: Vec<Zonotope> = (0..n).map(|_| random_zonotope(&mut rng, d, 9)).collect();
            let phi = big_phi(&tuple, scheme)?;
            let m = check_point(cone, &phi.values)?;
            Ok((tuple, m))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut orbit_of = vec![0usize; cone.facets().len()];
    for (o, orbit) in orbits.iter().enumerate() {
        for &f in &orbit.members {
            orbit_of[f] = o;
        }
    }
    let mut mins: Vec<Option<Rational>> = vec![None; orbits.len()];
    let mut report = SampleReport {
        n,
        d,
        trials,
        seed,
        inside: 0,
        boundary: 0,
        violations: Vec::new(),
        min_slack_per_orbit: Vec::new(),
    };
    for (t, (tuple, m)) in outcomes.into_iter().enumerate() {
        match m.status {
            PointStatus::Inside => report.inside += 1,
            PointStatus::Boundary => report.boundary += 1,
            PointStatus::Outside => report.violations.push(serde_json::json!({
                "trial": t,
                "bodies": tuple.iter().map(Zonotope::to_json).collect::<Vec<_>>(),
                "violated_facets": m.violated,
            })),
        }
        for (f, v) in m.values.into_iter().enumerate() {
            let slot = &mut mins[orbit_of[f]];
            if slot.as_ref().is_none_or(|cur| v < *cur) {
                *slot = Some(v);
            }
        }
    }
    report.min_slack_per_orbit = mins
        .into_iter()
        .enumerate()
        .map(|(o, v)| OrbitSlack {
            orbit: o,
            size: orbits[o].size(),
            min_slack: v.map(|x| x.to_string()).unwrap_or_else(|| "none".into()),
        })
        .collect();
    Ok(report)
}

/// Smallest value of the given normals over the sampled tuples, for experiments that
/// must not presume an outcome.
pub fn min_over_samples(
    normals: &[Vec<num_bigint::BigInt>],
    samples: &[Vec<Rational>],
) -> Option<(Rational, usize)> {
    samples
        .iter()
        .enumerate()
        .flat_map(|(i, x)| normals.iter().map(move |a| (crate::exact::dot_rational(a, x), i)))
        .min_by(|a, b| a.0.cmp(&b.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::build;

    #[test]
    fn streams_are_deterministic() {
        let a: Vec<u32> = (0..4).map(|t| trial_rng(7, t).gen()).collect();
        let b: Vec<u32> = (0..4).map(|t| trial_rng(7, t).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn small_sample_of_four() {
        let art = build(4, 2).unwrap();
        let r = sample_inequalities(&art.scheme, &art.cone, &art.orbits, 50, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.inside + r.boundary, 50);
        let again = sample_inequalities(&art.scheme, &art.cone, &art.orbits, 50, 3).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
    }
}
