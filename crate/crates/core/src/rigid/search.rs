//! Desk-scale searches for rigid configurations: exhaustive in `RP¹` over a fixed set of
//! positions, and over a small integer grid in `RP²`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{a1_points, a2_points, hyperplanes_of, is_rigid, ProjectiveConfiguration};
use crate::exact::{big, cross3, dot, normalize_projective};
use crate::scheme::combinations;
use crate::Result;
use num_traits::Zero;

/// Positions used by the `RP¹` sweep.
pub const LINE_POSITIONS: [[i64; 2]; 6] = [[0, 1], [1, 0], [1, 1], [1, 2], [2, 1], [1, -1]];

#[derive(Clone, Debug, Serialize)]
pub struct LineSweepReport {
    pub configurations: usize,
    pub rigid: usize,
    /// Configurations where rigidity disagreed with "every point is multiple".
    pub mismatches: Vec<Vec<usize>>,
}

/// All ways of placing `n` labeled-up-to-multiplicity points on [`LINE_POSITIONS`],
/// skipping the degenerate ones with a single distinct point.
pub fn line_sweep(n: usize) -> Result<LineSweepReport> {
    let mut report = LineSweepReport { configurations: 0, rigid: 0, mismatches: Vec::new() };
    for mult in compositions(n, LINE_POSITIONS.len()) {
        if mult.iter().filter(|&&m| m > 0).count() < 2 {
            continue;
        }
        let mut points = Vec::new();
        for (pos, &m) in LINE_POSITIONS.iter().zip(&mult) {
            for _ in 0..m {
                points.push(big(pos));
            }
        }
        let config = ProjectiveConfiguration::new(1, points)?;
        let rigid = is_rigid(&config)?;
        let all_multiple = mult.iter().all(|&m| m != 1);
        report.configurations += 1;
        report.rigid += usize::from(rigid);
        if rigid != all_multiple {
            report.mismatches.push(mult);
        }
    }
    Ok(report)
}

/// Weak compositions of `n` into `parts` non-negative parts.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Multiplicities (descending) and sizes of lines carrying at least three distinct
/// points (descending). Invariant under projective transformations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signature {
    pub multiplicities: Vec<usize>,
    pub rich_lines: Vec<usize>,
}

pub fn signature(config: &ProjectiveConfiguration) -> Signature {
    let mut multiplicities = config.multiplicities();
    multiplicities.sort_unstable_by(|a, b| b.cmp(a));
    let distinct = config.distinct_points();
    let mut rich_lines: Vec<usize> = if config.dim() == 2 {
        hyperplanes_of(config)
            .iter()
            .map(|h| distinct.iter().filter(|p| dot(h, p).is_zero()).count())
            .filter(|&c| c >= 3)
            .collect()
    } else {
        Vec::new()
    };
    rich_lines.sort_unstable_by(|a, b| b.cmp(a));
    Signature { multiplicities, rich_lines }
}

pub fn a1_configuration() -> ProjectiveConfiguration {
    let mut pts = a1_points();
    pts.extend(a1_points());
    ProjectiveConfiguration::new(2, pts).expect("valid points")
}

pub fn a2_configuration() -> ProjectiveConfiguration {
    ProjectiveConfiguration::new(2, a2_points()).expect("valid points")
}

/// Primitive normalized points of `RP²` with coordinates in `-r..=r`.
pub fn grid_points(r: i64) -> Vec<Vec<BigInt>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                if x == 0 && y == 0 && z == 0 {
                    continue;
                }
                let mut p = big(&[x, y, z]);
                normalize_projective(&mut p);
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GridSearchReport {
    pub grid_points: usize,
    pub supports_checked: u64,
    pub configurations_checked: u64,
    pub rigid_found: u64,
    pub signatures: BTreeMap<String, u64>,
    /// The same rigid configurations re-tested with the general predicate.
    pub cross_checked: usize,
    pub cross_check_failures: usize,
}

struct Grid {
    points: Vec<Vec<BigInt>>,
    /// `line[i][j]`: mask of grid points on the line through `i` and `j`.
    line: Vec<Vec<u64>>,
    /// Per point, the distinct lines through it carrying at least three grid points.
    rich_through: Vec<Vec<u64>>,
}

impl Grid {
    fn new(points: Vec<Vec<BigInt>>) -> Grid {
        assert!(points.len() <= 64, "grid must fit a 64-bit mask");
        let m = points.len();
        let mut line = vec![vec![0u64; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let normal = cross3(&points[i], &points[j]);
                let mask = (0..m)
                    .filter(|&k| dot(&normal, &points[k]).is_zero())
                    .fold(0u64, |acc, k| acc | 1 << k);
                line[i][j] = mask;
                line[j][i] = mask;
            }
        }
        let rich_through = (0..m)
            .map(|i| {
                let mut lines: Vec<u64> = (0..m)
                    .filter(|&j| j != i && line[i][j].count_ones() >= 3)
                    .map(|j| line[i][j])
                    .collect();
                lines.sort_unstable();
                lines.dedup();
                lines
            })
            .collect();
        Grid { points, line, rich_through }
    }

    /// Number of lines through `i` with at least three points of `support`.
    fn rich_count(&self, i: usize, support: u64) -> usize {
        self.rich_through[i]
            .iter()
            .filter(|&&l| (l & support).count_ones() >= 3)
            .count()
    }
}

/// Multiplicity patterns of `n` points on `k` distinct points (descending partitions).
fn integer_partitions(n: usize, k: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in integer_partitions(n - first, k - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Distinct assignments of a multiplicity pattern to `k` ordered points.
fn assignments(pattern: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = super::permutations(pattern.len())
        .into_iter()
        .map(|p| p.iter().map(|&i| pattern[i]).collect())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every configuration of `n` points whose support is a subset of the grid of size at least 3.
///
/// A multiple point is always locked in a non-degenerate configuration; a simple point is
/// locked iff it lies on two lines each carrying two other distinct points.
pub fn grid_search(n: usize, r: i64, cross_check_limit: usize) -> Result<GridSearchReport> {
    let grid = Grid::new(grid_points(r));
    let m = grid.points.len();
    let mut report = GridSearchReport {
        grid_points: m,
        supports_checked: 0,
        configurations_checked: 0,
        rigid_found: 0,
        signatures: BTreeMap::new(),
        cross_checked: 0,
        cross_check_failures: 0,
    };
    let mut examples: Vec<ProjectiveConfiguration> = Vec::new();
    for k in 3..=n.min(m) {
        let patterns: Vec<Vec<Vec<usize>>> =
            integer_partitions(n, k, n).iter().map(|p| assignments(p)).collect();
        let partial = (0..m)
            .into_par_iter()
            .map(|first| {
                let mut local = LocalTally::default();
                let rest: Vec<usize> = (first + 1..m).collect();
                for tail in combinations(&rest, k - 1) {
                    let mut idx = Vec::with_capacity(k);
                    idx.push(first);
                    idx.extend_from_slice(&tail);
                    let support = idx.iter().fold(0u64, |acc, &i| acc | 1 << i);
                    local.supports += 1;
                    if support & !grid.line[idx[0]][idx[1]] == 0 {
                        continue;
                    }
                    let good: Vec<bool> = idx.iter().map(|&i| grid.rich_count(i, support) >= 2).collect();
                    for assignment in patterns.iter().flatten() {
                        local.configurations += 1;
                        let rigid = assignment.iter().zip(&good).all(|(&mult, &g)| mult > 1 || g);
                        if rigid {
                            local.rigid.push((idx.clone(), assignment.clone()));
                        }
                    }
                }
                local
            })
            .collect::<Vec<_>>();
        for local in partial {
            report.supports_checked += local.supports;
            report.configurations_checked += local.configurations;
            for (idx, mult) in local.rigid {
                let mut pts = Vec::new();
                for (&i, &c) in idx.iter().zip(&mult) {
                    for _ in 0..c {
                        pts.push(grid.points[i].clone());
                    }
                }
                let config = ProjectiveConfiguration::new(2, pts)?;
                let sig = signature(&config);
                report.rigid_found += 1;
                *report.signatures.entry(signature_label(&sig)).or_default() += 1;
                if examples.len() < cross_check_limit {
                    examples.push(config);
                }
            }
        }
    }
    report.cross_checked = examples.len();
    report.cross_check_failures = examples
        .par_iter()
        .map(|c| is_rigid(c).map(|r| usize::from(!r)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(report)
}

#[derive(Default)]
struct LocalTally {
    supports: u64,
    configurations: u64,
    rigid: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn signature_label(sig: &Signature) -> String {
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    format!("mult[{}] lines[{}]", join(&sig.multiplicities), join(&sig.rich_lines))
}

/// Seven points cut out by three concurrent lines and two transversals, the second
/// transversal through `(1,0)` with slope `p/q`.
///
/// Returns `None` for the slopes where points coincide.
pub fn seven_point_configuration(p: i64, q: i64) -> Option<ProjectiveConfiguration> {
    // the transversal meets x = 0 at height -p/q; heights 0, 1, 2 are taken
    if q == 0 || p == 0 || p == -q || p == -2 * q {
        return None;
    }
    let pts: [&[i64]; 7] = [
        &[0, 0, 1],
        &[0, 1, 1],
        &[0, 2, 1],
        &[1, 0, 1],
        &[p + q, p, p],
        &[p + 2 * q, 2 * p, p],
        &[1, 0, 0],
    ];
    ProjectiveConfiguration::from_i64(2, &pts).ok()
}
