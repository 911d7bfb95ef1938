//! Expected counts and explicit vectors for the supported cones, checked into the repo.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::pipeline::BuildArtifact;
use crate::{Error, Result};

#[derive(Clone, Debug, Deserialize)]
pub struct Golden {
    pub n: usize,
    pub d: usize,
    pub rays: usize,
    pub rays_by_type: BTreeMap<String, usize>,
    pub facets: usize,
    /// Absent where no orbit count is fixed.
    pub orbits: Option<usize>,
    #[serde(default)]
    pub explicit_rays: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub explicit_facets: Option<Vec<Vec<i64>>>,
}

pub fn golden(n: usize, d: usize) -> Result<Golden> {
    let text = match (n, d) {
        (4, 2) => include_str!("../data/golden/4_2.json"),
        (6, 2) => include_str!("../data/golden/6_2.json"),
        (6, 3) => include_str!("../data/golden/6_3.json"),
        _ => return Err(Error::Unsupported { n, d }),
    };
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn sorted_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let mut v: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    v.sort();
    v
}

/// Human-readable differences between a build and its golden file; empty on a match.
pub fn compare(golden: &Golden, artifact: &BuildArtifact) -> Vec<String> {
    let counts = artifact.counts();
    let mut diffs = Vec::new();
    let mut check = |what: &str, expected: usize, found: usize| {
        if expected != found {
            diffs.push(format!("{what}: expected {expected}, found {found}"));
        }
    };
    check("rays", golden.rays, counts.rays);
    check("facets", golden.facets, counts.facets);
    if let Some(o) = golden.orbits {
        check("orbits", o, counts.orbits);
    }
    for (kind, &expected) in &golden.rays_by_type {
        check(&format!("rays of type {kind}"), expected, counts.rays_by_type.get(kind).copied().unwrap_or(0));
    }
    if let Some(rays) = &golden.explicit_rays {
        if sorted_big(rays) != artifact.cone.rays() {
            diffs.push("explicit rays differ".into());
        }
    }
    if let Some(facets) = &golden.explicit_facets {
        if sorted_big(facets) != artifact.cone.facets() {
            diffs.push("explicit facets differ".into());
        }
    }
    if let Some(t) = &artifact.table1 {
        if !t.bijection {
            diffs.push("reference table columns do not match the orbits one-to-one".into());
        }
    }
    diffs
}
