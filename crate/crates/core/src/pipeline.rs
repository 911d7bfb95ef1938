//! End-to-end construction of a cone: scheme, generators, double description, orbits.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cone::{conic_hull, Cone};
use crate::exact::to_rationals;
use crate::rigid::{generators_for, Generator};
use crate::scheme::{enumerate_scheme, PartitionScheme};
use crate::symmetry::{match_table1, orbit_classify, orbit_report, FacetOrbit, Table1Match};
use crate::Result;

pub const SUPPORTED: [(usize, usize); 3] = [(4, 2), (6, 2), (6, 3)];

pub struct BuildArtifact {
    pub scheme: PartitionScheme,
    pub generators: Vec<Generator>,
    pub cone: Cone,
    pub orbits: Vec<FacetOrbit>,
    pub table1: Option<Table1Match>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub rays: usize,
    pub rays_by_type: BTreeMap<String, usize>,
    pub facets: usize,
    pub orbits: usize,
}

pub fn build(n: usize, d: usize) -> Result<BuildArtifact> {
    let scheme = enumerate_scheme(n, d)?;
    let generators = generators_for(n, d)?;
    log::info!("({n},{d}): {} generators", generators.len());
    let points: Vec<_> = generators.iter().map(|g| to_rationals(&g.ray)).collect();
    let cone = conic_hull(&points)?;
    log::info!("({n},{d}): {} rays, {} facets", cone.rays().len(), cone.facets().len());
    let orbits = orbit_classify(cone.facets(), &scheme)?;
    let table1 = if (n, d) == (6, 2) {
        Some(match_table1(&orbits, cone.facets(), &scheme)?)
    } else {
        None
    };
    Ok(BuildArtifact { scheme, generators, cone, orbits, table1 })
}

impl BuildArtifact {
    /// Generators whose ray survived as an extreme ray of the cone.
    pub fn extreme_generators(&self) -> Vec<&Generator> {
        self.generators.iter().filter(|g| self.cone.ray_index(&g.ray).is_some()).collect()
    }

    pub fn counts(&self) -> Counts {
        let mut rays_by_type = BTreeMap::new();
        for g in self.extreme_generators() {
            *rays_by_type.entry(g.kind.to_string()).or_insert(0) += 1;
        }
        Counts {
            rays: self.cone.rays().len(),
            rays_by_type,
            facets: self.cone.facets().len(),
            orbits: self.orbits.len(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let order = self.scheme.order_labels();
        serde_json::json!({
            "n": self.scheme.n(),
            "d": self.scheme.d(),
            "counts": self.counts(),
            "generators": self.generators.iter().map(Generator::to_json).collect::<Vec<_>>(),
            "cone": self.cone.to_json(&order),
            "orbits": orbit_report(&self.orbits, self.table1.as_ref()),
            "table1": self.table1,
        })
    }
}
