//! The action of `S_n` on monomial coordinates by relabeling bodies, facet orbits, and
//! the reference inequality table for six planar bodies.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use crate::rigid::permutations;
use crate::scheme::{Partition, PartitionScheme};
use crate::{Error, Result};

/// A permutation of `[n]`, stored as the 1-based images `sigma[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if sorted != (1..=images.len() as u8).collect::<Vec<_>>() {
            return Err(Error::InvalidIndex(format!("{images:?} is not a permutation")));
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn transposition(n: usize, a: u8, b: u8) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a as usize - 1, b as usize - 1);
        p
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize - 1]).collect())
    }

    /// All `n!` permutations in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        permutations(n)
            .into_iter()
            .map(|p| Permutation(p.into_iter().map(|i| i as u8 + 1).collect()))
            .collect()
    }
}

/// The coordinate permutation induced by relabeling bodies: coordinate `i` moves to
/// position `action[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPermutation {
    pub source: Permutation,
    pub action: Vec<usize>,
}

impl InducedPermutation {
    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.action[i]] = x.clone();
        }
        out
    }
}

pub fn induced_action(sigma: &Permutation, scheme: &PartitionScheme) -> InducedPermutation {
    let action = scheme
        .partitions()
        .iter()
        .map(|p| {
            scheme
                .partition_index(&p.relabel(sigma.images()))
                .expect("relabeled partition is in the scheme")
        })
        .collect();
    InducedPermutation { source: sigma.clone(), action }
}

/// Induced actions of every element of `S_n`.
pub fn all_actions(scheme: &PartitionScheme) -> Vec<InducedPermutation> {
    Permutation::all(scheme.n()).iter().map(|s| induced_action(s, scheme)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetOrbit {
    pub canonical_representative: Vec<BigInt>,
    pub members: Vec<usize>,
}

impl FacetOrbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Lexicographically least image of `v` over the given actions.
pub fn canonical_form(v: &[BigInt], actions: &[InducedPermutation]) -> Vec<BigInt> {
    actions.iter().map(|a| a.apply(v)).min().unwrap_or_else(|| v.to_vec())
}

/// Partitions `facets` into orbits, ordered by canonical representative.
///
/// Fails with [`Error::NotClosed`] naming a facet whose image leaves the set.
pub fn orbit_classify(facets: &[Vec<BigInt>], scheme: &PartitionScheme) -> Result<Vec<FacetOrbit>> {
    let actions = all_actions(scheme);
    let position: HashMap<&[BigInt], usize> = facets.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut assigned = vec![false; facets.len()];
    let mut orbits = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut members = Vec::new();
        let mut rep: Option<Vec<BigInt>> = None;
        for a in &actions {
            let image = a.apply(f);
            let j = *position.get(image.as_slice()).ok_or(Error::NotClosed(i))?;
            if !assigned[j] {
                assigned[j] = true;
                members.push(j);
            }
            if rep.as_ref().is_none_or(|r| image < *r) {
                rep = Some(image);
            }
        }
        members.sort_unstable();
        orbits.push(FacetOrbit { canonical_representative: rep.expect("at least one action"), members });
    }
    orbits.sort_by(|a, b| a.canonical_representative.cmp(&b.canonical_representative));
    Ok(orbits)
}

const TABLE1: &str = include_str!("../data/table1.csv");

/// The eight reference inequality columns for `(6,2)`, as vectors in the scheme's
/// coordinate order.
pub fn table1_columns(scheme: &PartitionScheme) -> Result<Vec<Vec<BigInt>>> {
    if (scheme.n(), scheme.d()) != (6, 2) {
        return Err(Error::Unsupported { n: scheme.n(), d: scheme.d() });
    }
    let mut lines = TABLE1.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty table".into()))?;
    let types = header.split(',').count() - 1;
    let mut columns = vec![vec![BigInt::from(0); scheme.partitions().len()]; types];
    let mut rows = 0;
    for line in lines {
        let mut cells = line.split(',');
        let label = cells.next().unwrap_or_default();
        let p: Partition = label.parse()?;
        let pos = scheme
            .partition_index(&p)
            .ok_or_else(|| Error::Parse(format!("row {label} is not a partition of [6]")))?;
        for (t, cell) in cells.enumerate() {
            let value: i64 = cell.trim().parse().map_err(|_| Error::Parse(format!("bad entry {cell:?}")))?;
            *columns
                .get_mut(t)
                .ok_or_else(|| Error::Parse(format!("row {label} is too long")))?
                .get_mut(pos)
                .expect("position in range") = BigInt::from(value);
        }
        rows += 1;
    }
    if rows != scheme.partitions().len() {
        return Err(Error::Parse(format!("table has {rows} rows")));
    }
    Ok(columns)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnMatch {
    pub type_number: usize,
    pub is_facet: bool,
    pub orbit: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Match {
    pub columns: Vec<ColumnMatch>,
    pub bijection: bool,
}

/// Locates each reference column among the facets and their orbits.
pub fn match_table1(orbits: &[FacetOrbit], facets: &[Vec<BigInt>], scheme: &PartitionScheme) -> Result<Table1Match> {
    let columns = table1_columns(scheme)?;
    let mut orbit_of = HashMap::new();
    for (o, orbit) in orbits.iter().enumerate() {
        for &m in &orbit.members {
            orbit_of.insert(facets[m].as_slice(), o);
        }
    }
    let columns: Vec<ColumnMatch> = columns
        .iter()
        .enumerate()
        .map(|(t, c)| {
            let orbit = orbit_of.get(c.as_slice()).copied();
            ColumnMatch { type_number: t + 1, is_facet: orbit.is_some(), orbit }
        })
        .collect();
    let mut hit: Vec<usize> = columns.iter().filter_map(|c| c.orbit).collect();
    hit.sort_unstable();
    hit.dedup();
    let bijection = columns.iter().all(|c| c.is_facet) && hit.len() == columns.len() && hit.len() == orbits.len();
    Ok(Table1Match { columns, bijection })
}

#[derive(Serialize)]
struct OrbitJson {
    id: usize,
    size: usize,
    canonical_representative: Vec<String>,
    table1_type: Option<usize>,
}

/// Orbit report with reference type numbers where known.
pub fn orbit_report(orbits: &[FacetOrbit], table: Option<&Table1Match>) -> serde_json::Value {
    let type_of: BTreeMap<usize, usize> = table
        .map(|t| t.columns.iter().filter_map(|c| c.orbit.map(|o| (o, c.type_number))).collect())
        .unwrap_or_default();
    let rows: Vec<OrbitJson> = orbits
        .iter()
        .enumerate()
        .map(|(id, o)| OrbitJson {
            id,
            size: o.size(),
            canonical_representative: o.canonical_representative.iter().map(ToString::to_string).collect(),
            table1_type: type_of.get(&id).copied(),
        })
        .collect();
    serde_json::to_value(rows).expect("plain struct serializes")
}
