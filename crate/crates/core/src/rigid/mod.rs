//! Projective point configurations, locked and free points, and the labeled segment
//! tuples of rigid configurations that generate the cones.

pub mod search;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::config_space::{big_phi, segments_of};
use crate::exact::{big, cross3, dot, is_zero_vec, normalize_projective, rank_int};
use crate::scheme::{enumerate_scheme, PartitionScheme};
use crate::{Error, Result};

/// A labeled multiset of points in `RP^dim`, each stored as a primitive integer vector
/// with its last nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveConfiguration {
    dim: usize,
    points: Vec<Vec<BigInt>>,
}

impl ProjectiveConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 || dim > 2 {
            return Err(Error::Unsupported { n: points.len(), d: dim + 1 });
        }
        let points = points
            .into_iter()
            .map(|mut p| {
                if p.len() != dim + 1 {
                    return Err(Error::DimensionMismatch { expected: dim + 1, found: p.len() });
                }
                if is_zero_vec(&p) {
                    return Err(Error::InvalidIndex("zero vector is not a projective point".into()));
                }
                normalize_projective(&mut p);
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjectiveConfiguration { dim, points })
    }

    pub fn from_i64(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| big(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distinct points in first-seen order.
    pub fn distinct_points(&self) -> Vec<Vec<BigInt>> {
        let mut seen = HashSet::new();
        self.points.iter().filter(|p| seen.insert(p.to_vec())).cloned().collect()
    }

    /// Multiplicity of each point of [`Self::distinct_points`].
    pub fn multiplicities(&self) -> Vec<usize> {
        self.distinct_points()
            .iter()
            .map(|d| self.points.iter().filter(|p| *p == d).count())
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        rank_int(&self.points) == self.dim + 1
    }

    /// The configuration with one copy of point `index` removed.
    pub fn without(&self, index: usize) -> ProjectiveConfiguration {
        let mut points = self.points.clone();
        points.remove(index);
        ProjectiveConfiguration { dim: self.dim, points }
    }
}

/// Hyperplanes spanned by points of the configuration, as normalized normal vectors.
///
/// In `RP¹` these are the distinct points; in `RP²` the distinct lines through pairs of
/// distinct points.
pub fn hyperplanes_of(config: &ProjectiveConfiguration) -> Vec<Vec<BigInt>> {
    let pts = config.distinct_points();
    let mut out: Vec<Vec<BigInt>> = match config.dim {
        1 => pts.iter().map(|p| vec![-p[1].clone(), p[0].clone()]).collect(),
        _ => {
            let mut lines = Vec::new();
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    lines.push(cross3(&pts[i], &pts[j]));
                }
            }
            lines
        }
    };
    for h in out.iter_mut() {
        normalize_projective(h);
    }
    out.sort();
    out.dedup();
    out
}

/// A point is locked when it lies on `dim` distinct hyperplanes spanned by the rest.
pub fn is_locked(config: &ProjectiveConfiguration, index: usize) -> Result<bool> {
    if !config.is_nondegenerate() {
        return Err(Error::DegenerateConfiguration);
    }
    let p = config
        .points
        .get(index)
        .ok_or_else(|| Error::InvalidIndex(format!("point {index} of {}", config.len())))?;
    let through = hyperplanes_of(&config.without(index))
        .iter()
        .filter(|h| dot(h, p).is_zero())
        .count();
    Ok(through >= config.dim)
}

/// Every point locked.
pub fn is_rigid(config: &ProjectiveConfiguration) -> Result<bool> {
    for i in 0..config.len() {
        if !is_locked(config, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ordered assignment of labels to the distinct points of a configuration:
/// `parts[j]` holds the labels placed at point `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Labeling {
    pub parts: Vec<Vec<u8>>,
}

impl Labeling {
    pub fn new(parts: Vec<Vec<u8>>, n: usize) -> Result<Self> {
        let mut all: Vec<u8> = parts.iter().flatten().copied().collect();
        all.sort_unstable();
        if all != (1..=n as u8).collect::<Vec<_>>() {
            return Err(Error::InvalidIndex(format!("{parts:?} is not an ordered partition of [{n}]")));
        }
        Ok(Labeling { parts })
    }

    /// Vector tuple placing label `i` at the point of its part.
    pub fn realize(&self, points: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n: usize = self.parts.iter().map(Vec::len).sum();
        let mut out = vec![Vec::new(); n];
        for (part, p) in self.parts.iter().zip(points) {
            for &label in part {
                out[label as usize - 1] = p.clone();
            }
        }
        out
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<String>())
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Multiple points in `RP¹` with the given multiplicities, e.g. `(3,3)`.
    Line(Vec<usize>),
    /// Three non-collinear double points in `RP²`.
    A1,
    /// Six simple points, the pairwise intersections of four lines in `RP²`.
    A2,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Line(sizes) => {
                let s: Vec<String> = sizes.iter().map(ToString::to_string).collect();
                write!(f, "({})", s.join(","))
            }
            GeneratorKind::A1 => f.write_str("A1"),
            GeneratorKind::A2 => f.write_str("A2"),
        }
    }
}

/// A labeled rigid segment tuple together with the primitive ray of its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vectors: Vec<Vec<BigInt>>,
    pub labeling: Labeling,
    pub kind: GeneratorKind,
    pub ray: Vec<BigInt>,
}

impl Generator {
    pub fn configuration(&self) -> ProjectiveConfiguration {
        let dim = self.vectors[0].len() - 1;
        ProjectiveConfiguration::new(dim, self.vectors.clone()).expect("generator vectors are valid points")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.kind.to_string(),
            "labeling": self.labeling.parts,
            "vectors": self.vectors.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "ray": self.ray.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// Points `0 = (0:1)`, `1 = (1:1)`, `∞ = (1:0)` of `RP¹`.
fn line_points(count: usize) -> Vec<Vec<BigInt>> {
    match count {
        2 => vec![big(&[0, 1]), big(&[1, 0])],
        _ => vec![big(&[0, 1]), big(&[1, 1]), big(&[1, 0])],
    }
}

pub fn a1_points() -> Vec<Vec<BigInt>> {
    vec![big(&[0, 0, 1]), big(&[1, 0, 1]), big(&[0, 1, 1])]
}

pub fn a2_points() -> Vec<Vec<BigInt>> {
    vec![
        big(&[0, 0, 1]),
        big(&[1, 0, 1]),
        big(&[0, 1, 1]),
        big(&[1, 1, 1]),
        big(&[1, 0, 0]),
        big(&[0, 1, 0]),
    ]
}

/// Set partitions of `[n]` with block sizes in `min..=max` and at most `max_blocks`
/// blocks, blocks ordered by minimum element.
fn set_partitions(n: usize, min: usize, max: usize, max_blocks: usize) -> Vec<Vec<Vec<u8>>> {
    fn go(next: u8, n: u8, blocks: &mut Vec<Vec<u8>>, bounds: (usize, usize, usize), out: &mut Vec<Vec<Vec<u8>>>) {
        let (min, max, max_blocks) = bounds;
        if next > n {
            if blocks.iter().all(|b| b.len() >= min) {
                out.push(blocks.clone());
            }
            return;
        }
        for i in 0..blocks.len() {
            if blocks[i].len() < max {
                blocks[i].push(next);
                go(next + 1, n, blocks, bounds, out);
                blocks[i].pop();
            }
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![next]);
            go(next + 1, n, blocks, bounds, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n as u8, &mut Vec::new(), (min, max, max_blocks), &mut out);
    out
}

fn push_unique(
    out: &mut Vec<Generator>,
    seen: &mut HashSet<Vec<BigInt>>,
    scheme: &PartitionScheme,
    labeling: Labeling,
    points: &[Vec<BigInt>],
    kind: GeneratorKind,
) -> Result<()> {
    let vectors = labeling.realize(points);
    let phi = big_phi(&segments_of(&vectors), scheme)?;
    if phi.is_zero() {
        return Ok(());
    }
    let ray = phi.primitive_ray();
    if seen.insert(ray.clone()) {
        out.push(Generator { vectors, labeling, kind, ray });
    }
    Ok(())
}

/// Labeled rigid segment tuples whose images generate the cone for `(n, d)`, with
/// duplicate rays removed. Supported: `(4,2)`, `(6,2)`, `(6,3)`.
pub fn generators_for(n: usize, d: usize) -> Result<Vec<Generator>> {
    let scheme = enumerate_scheme(n, d)?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    match (n, d) {
        (4, 2) | (6, 2) => {
            // at most three distinct points keeps the configuration projectively unique;
            // a point of multiplicity above n/2 forces the image to vanish
            for blocks in set_partitions(n, 2, n / 2, 3) {
                if blocks.len() < 2 {
                    continue;
                }
                let mut sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                let points = line_points(blocks.len());
                let labeling = Labeling::new(blocks, n)?;
                push_unique(&mut out, &mut seen, &scheme, labeling, &points, GeneratorKind::Line(sizes))?;
            }
        }
        (6, 3) => {
            let pairs = enumerate_scheme(6, 2)?;
            let a1 = a1_points();
            for p in pairs.partitions() {
                let parts = p.blocks().iter().map(|b| b.members().to_vec()).collect();
                push_unique(&mut out, &mut seen, &scheme, Labeling::new(parts, 6)?, &a1, GeneratorKind::A1)?;
            }
            let a2 = a2_points();
            for perm in permutations(6) {
                // label i sits at point perm[i-1]
                let mut parts = vec![Vec::new(); 6];
                for (i, &slot) in perm.iter().enumerate() {
                    parts[slot].push(i as u8 + 1);
                }
                push_unique(&mut out, &mut seen, &scheme, Labeling::new(parts, 6)?, &a2, GeneratorKind::A2)?;
            }
        }
        _ => return Err(Error::Unsupported { n, d }),
    }
    Ok(out)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}
