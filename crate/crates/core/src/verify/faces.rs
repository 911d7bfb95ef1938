//! Two-dimensional faces of the `(6,2)` cone: explicit witness tuples for the faces that
//! lie in the image of `Φ`, and the coordinate obstructions for those that do not.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cone::{face_dimension, Cone};
use crate::config_space::{big_phi, segments_of};
use crate::exact::{int, ints, primitive_ray, rat, Rational};
use crate::mixed_volume::{Segment, Zonotope};
use crate::rigid::{Generator, GeneratorKind};
use crate::scheme::{enumerate_scheme, Partition, PartitionScheme, Subset};
use crate::symmetry::Permutation;
use crate::verify::sampling::trial_rng;
use crate::{Error, Result};

fn segment_tuple(cols: &[[i64; 2]]) -> Vec<Zonotope> {
    cols.iter().map(|c| Zonotope::segment(ints(c))).collect()
}

fn phi(bodies: &[Zonotope], scheme: &PartitionScheme) -> Result<Vec<Rational>> {
    Ok(big_phi(bodies, scheme)?.values)
}

fn generator_phi(g: &Generator, scheme: &PartitionScheme) -> Result<Vec<Rational>> {
    phi(&segments_of(&g.vectors), scheme)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaSplitReport {
    pub equal: bool,
    pub nonzero: usize,
    pub nonzero_values: Vec<String>,
    pub relabelings_checked: usize,
    pub relabelings_equal: bool,
    pub passed: bool,
}

/// Three copies of each of two points versus the same with one copy moved to a third point.
pub fn lemma_split_check() -> Result<LemmaSplitReport> {
    let scheme = enumerate_scheme(6, 2)?;
    let u = [[0, 1], [0, 1], [0, 1], [1, 1], [1, 1], [1, 1]];
    let u_split = [[0, 1], [0, 1], [0, 1], [1, 1], [1, 1], [1, 0]];
    let a = phi(&segment_tuple(&u), &scheme)?;
    let b = phi(&segment_tuple(&u_split), &scheme)?;
    let nonzero: Vec<&Rational> = a.iter().filter(|v| !v.is_zero()).collect();
    let mut nonzero_values: Vec<String> = nonzero.iter().map(|v| v.to_string()).collect();
    nonzero_values.dedup();
    let perms = Permutation::all(6);
    let relabelings_equal = perms.par_iter().all(|sigma| {
        let relabel = |cols: &[[i64; 2]; 6]| -> Vec<[i64; 2]> {
            let mut out = [[0, 0]; 6];
            for (i, c) in cols.iter().enumerate() {
                out[sigma.images()[i] as usize - 1] = *c;
            }
            out.to_vec()
        };
        let pa = phi(&segment_tuple(&relabel(&u)), &scheme);
        let pb = phi(&segment_tuple(&relabel(&u_split)), &scheme);
        matches!((pa, pb), (Ok(x), Ok(y)) if x == y)
    });
    let equal = a == b;
    let passed = equal && nonzero.len() == 6 && nonzero.iter().all(|v| **v == rat(1, 8)) && relabelings_equal;
    Ok(LemmaSplitReport {
        equal,
        nonzero: nonzero.len(),
        nonzero_values,
        relabelings_checked: perms.len(),
        relabelings_equal,
        passed,
    })
}

/// Rational parameters at which witness tuples are evaluated.
pub fn parameters() -> Vec<Rational> {
    vec![int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)]
}

fn combination(a: &[Rational], b: &[Rational], lambda: &Rational) -> Vec<Rational> {
    let mu = int(1) - lambda;
    a.iter().zip(b).map(|(x, y)| &mu * x + lambda * y).collect()
}

fn subset(labels: &[u8]) -> Subset {
    Subset::new(labels.to_vec()).expect("labels are distinct")
}

fn parts(g: &Generator) -> Vec<Subset> {
    g.labeling.parts.iter().map(|p| subset(p)).collect()
}

fn intersect(a: &Subset, b: &Subset) -> Vec<u8> {
    a.members().iter().copied().filter(|&x| b.contains(x)).collect()
}

fn minus(a: &Subset, b: &Subset) -> Vec<u8> {
    a.members().iter().copied().filter(|&x| !b.contains(x)).collect()
}

/// Places body `bodies[k]` at every label of `groups[k]`.
fn assemble(groups: &[(Vec<u8>, Zonotope)]) -> Vec<Zonotope> {
    let mut out = vec![Zonotope::point(2); 6];
    for (labels, body) in groups {
        for &l in labels {
            out[l as usize - 1] = body.clone();
        }
    }
    out
}

fn e1() -> Vec<Rational> {
    ints(&[1, 0])
}

fn e2() -> Vec<Rational> {
    ints(&[0, 1])
}

/// Witness for a pair of splits `(A, B)`, `(A', B')` with `|A ∩ A'| = 2`: the common pair
/// on `e₂`, `A ∖ A'` on `e₁ + e₂`, the label of `B ∩ A'` on the parallelogram
/// `(1−λ)[0,e₁] + λ[0,e₂]`, and `B ∩ B'` on `e₁`.
pub fn split_pair_witness(g1: &Generator, g2: &Generator, lambda: &Rational) -> Result<Vec<Zonotope>> {
    let p1 = parts(g1);
    let p2 = parts(g2);
    let (a, b) = (&p1[0], &p1[1]);
    let (a2, b2) = if intersect(a, &p2[0]).len() == 2 { (&p2[0], &p2[1]) } else { (&p2[1], &p2[0]) };
    if intersect(a, a2).len() != 2 {
        return Err(Error::InvalidIndex(format!("{} and {} are not distinct splits", g1.labeling, g2.labeling)));
    }
    let mu = int(1) - lambda;
    let parallelogram = Zonotope::new(
        2,
        vec![Segment::new(e1()).scaled(&mu), Segment::new(e2()).scaled(lambda)],
    )?;
    Ok(assemble(&[
        (intersect(a, a2), Zonotope::segment(e2())),
        (minus(a, a2), Zonotope::segment(ints(&[1, 1]))),
        (intersect(b, a2), parallelogram),
        (intersect(b, b2), Zonotope::segment(e1())),
    ]))
}

/// True when some part of the matching lies inside a side of the split.
pub fn is_refinement_compatible(split: &Generator, matching: &Generator) -> bool {
    let s = parts(split);
    parts(matching).iter().any(|m| s.iter().any(|side| m.is_subset_of(side)))
}

/// Witness for a split `(A, B)` and a matching with a pair `I ⊂ A`: `I` on `e₂`, the
/// remaining `a ∈ A` on `λe₁ + e₂`, the partner `b` of `a` on `e₁ + e₂`, and the last
/// pair on `e₁`.
pub fn mixed_pair_witness(split: &Generator, matching: &Generator, lambda: &Rational) -> Result<Vec<Zonotope>> {
    let sides = parts(split);
    let pairs = parts(matching);
    let (inner, side) = pairs
        .iter()
        .find_map(|m| sides.iter().find(|s| m.is_subset_of(s)).map(|s| (m, s)))
        .ok_or_else(|| Error::InvalidIndex(format!("{} does not refine {}", matching.labeling, split.labeling)))?;
    let a = minus(side, inner)[0];
    let partner_pair = pairs.iter().find(|m| m.contains(a)).expect("matching covers a");
    let b = partner_pair.members().iter().copied().find(|&x| x != a).expect("pair has two labels");
    let last = pairs.iter().find(|m| *m != inner && *m != partner_pair).expect("three pairs");
    let moving = vec![lambda.clone(), int(1)];
    Ok(assemble(&[
        (inner.members().to_vec(), Zonotope::segment(e2())),
        (vec![a], Zonotope::segment(moving)),
        (vec![b], Zonotope::segment(ints(&[1, 1]))),
        (last.members().to_vec(), Zonotope::segment(e1())),
    ]))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConstructiveReport {
    pub pairs: usize,
    pub evaluations: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub pairs: usize,
    /// Pairs whose coordinates on the face force the degenerate quadratic identity.
    pub pattern_confirmed: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchClass {
    pub class: String,
    pub faces: usize,
    pub hits: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoFaceReport {
    pub two_faces: bool,
    pub split_pairs: ConstructiveReport,
    pub mixed_compatible_pairs: ConstructiveReport,
    pub mixed_incompatible_pairs: usize,
    pub matching_pairs_sharing_part: ObstructionReport,
    pub seed: u64,
    pub trials: usize,
    /// Random tuples whose image landed in the relative interior of an obstructed face.
    pub search: Vec<SearchClass>,
    pub passed: bool,
}

fn kind_is(g: &Generator, label: &str) -> bool {
    matches!(&g.kind, GeneratorKind::Line(_)) && g.kind.to_string() == label
}

fn check_witnesses(
    pairs: &[(&Generator, &Generator)],
    scheme: &PartitionScheme,
    witness: impl Fn(&Generator, &Generator, &Rational) -> Result<Vec<Zonotope>> + Sync,
) -> Result<ConstructiveReport> {
    let lambdas = parameters();
    let results = pairs
        .par_iter()
        .map(|(g1, g2)| {
            let r1 = generator_phi(g1, scheme)?;
            let r2 = generator_phi(g2, scheme)?;
            let mut failures = Vec::new();
            for l in &lambdas {
                let z = witness(g1, g2, l)?;
                if phi(&z, scheme)? != combination(&r1, &r2, l) {
                    failures.push(format!("{} / {} at {l}", g1.labeling, g2.labeling));
                }
            }
            Ok(failures)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstructiveReport {
        pairs: pairs.len(),
        evaluations: pairs.len() * lambdas.len(),
        failures: results.into_iter().flatten().collect(),
    })
}

/// `(α, β)` with `α s + β t` the coordinate of `s·ρ₁ + t·ρ₂` at partition `p`,
/// scaled so generator values are integers.
fn coefficients(r1: &[Rational], r2: &[Rational], scheme: &PartitionScheme, p: &Partition) -> (Rational, Rational) {
    let i = scheme.partition_index(p).expect("partition of [6]");
    (&r1[i] * int(8), &r2[i] * int(8))
}

/// For matchings sharing the part `{5,6}` after relabeling, reads the mixed areas
/// `V_ij` (with `V_{i5} = V_{i6} = 1`) off the face and evaluates
/// `V₁₂V₃₄ + V₁₃V₂₄ − V₁₄V₂₃` as a quadratic form in `(s, t)`.
fn obstruction_pattern(g1: &Generator, g2: &Generator, scheme: &PartitionScheme) -> Result<Option<String>> {
    let p1 = parts(g1);
    let p2 = parts(g2);
    let shared = p1.iter().find(|p| p2.contains(p)).expect("caller checked").clone();
    let others1: Vec<&Subset> = p1.iter().filter(|p| **p != shared).collect();
    let a = others1[0].members()[0];
    let b = others1[0].members()[1];
    let c = p2.iter().find(|p| p.contains(a)).expect("covers a").members().iter().copied().find(|&x| x != a).expect("pair");
    let d = (1..=6u8).find(|x| ![a, b, c].contains(x) && !shared.contains(*x)).expect("six labels");
    let sigma = [a, b, c, d, shared.members()[0], shared.members()[1]];
    let map = |labels: &[u8]| subset(&labels.iter().map(|&l| sigma[l as usize - 1]).collect::<Vec<_>>());
    let r1 = generator_phi(g1, scheme)?;
    let r2 = generator_phi(g2, scheme)?;
    let mut v = std::collections::BTreeMap::new();
    for (i, j) in [(1u8, 2u8), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
        let rest: Vec<u8> = (1..=4u8).filter(|x| *x != i && *x != j).collect();
        let options = [
            Partition::new(vec![map(&[i, j]), map(&[rest[0], 5]), map(&[rest[1], 6])], 6)?,
            Partition::new(vec![map(&[i, j]), map(&[rest[0], 6]), map(&[rest[1], 5])], 6)?,
        ];
        let first = coefficients(&r1, &r2, scheme, &options[0]);
        if coefficients(&r1, &r2, scheme, &options[1]) != first {
            return Ok(Some(format!("V{i}{j} is not well defined on the face")));
        }
        v.insert((i, j), first);
    }
    let on_56 = scheme
        .partitions()
        .iter()
        .filter(|p| p.blocks().contains(&map(&[5, 6])))
        .all(|p| coefficients(&r1, &r2, scheme, p) == (int(0), int(0)));
    if !on_56 {
        return Ok(Some("coordinates through the shared pair are not zero".into()));
    }
    // (α₁s + β₁t)(α₂s + β₂t) as coefficients of s², st, t²
    let product = |x: &(Rational, Rational), y: &(Rational, Rational)| {
        [&x.0 * &y.0, &x.0 * &y.1 + &x.1 * &y.0, &x.1 * &y.1]
    };
    let q12 = product(&v[&(1, 2)], &v[&(3, 4)]);
    let q13 = product(&v[&(1, 3)], &v[&(2, 4)]);
    let q14 = product(&v[&(1, 4)], &v[&(2, 3)]);
    let q: Vec<Rational> = (0..3).map(|k| &q12[k] + &q13[k] - &q14[k]).collect();
    Ok(if q[0].is_zero() && q[2].is_zero() && q[1].is_negative() {
        None
    } else {
        Some(format!("quadratic form {:?} does not force s·t = 0", q.iter().map(ToString::to_string).collect::<Vec<_>>()))
    })
}

fn random_tuple(rng: &mut ChaCha8Rng) -> Vec<Zonotope> {
    (0..6)
        .map(|_| {
            let k = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(2..=3) };
            let gens = (0..k).map(|_| ints(&[rng.gen_range(-2..=2), rng.gen_range(-2..=2)])).collect();
            Zonotope::from_vectors(2, gens).expect("planar")
        })
        .collect()
}

/// `x = s·ρ₁ + t·ρ₂` with `s, t > 0`.
fn in_relative_interior(x: &[BigInt], r1: &[BigInt], r2: &[BigInt]) -> bool {
    let support = |v: &[BigInt]| v.iter().map(|c| !c.is_zero()).collect::<Vec<_>>();
    let (sx, s1, s2) = (support(x), support(r1), support(r2));
    if (0..x.len()).any(|i| sx[i] != (s1[i] || s2[i])) {
        return false;
    }
    let n = x.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = &r1[i] * &r2[j] - &r1[j] * &r2[i];
            if det.is_zero() {
                continue;
            }
            let s = Rational::new(&x[i] * &r2[j] - &x[j] * &r2[i], det.clone());
            let t = Rational::new(&r1[i] * &x[j] - &r1[j] * &x[i], det);
            let q = |v: &BigInt| Rational::from_integer(v.clone());
            return s.is_positive()
                && t.is_positive()
                && (0..n).all(|k| q(&x[k]) == &s * q(&r1[k]) + &t * q(&r2[k]));
        }
    }
    false
}

/// Runs the constructive and obstruction checks on the 2-faces of the `(6,2)` cone.
pub fn two_face_checks(generators: &[Generator], cone: &Cone, trials: usize, seed: u64) -> Result<TwoFaceReport> {
    let scheme = enumerate_scheme(6, 2)?;
    let splits: Vec<&Generator> = generators.iter().filter(|g| kind_is(g, "(3,3)")).collect();
    let matchings: Vec<&Generator> = generators.iter().filter(|g| kind_is(g, "(2,2,2)")).collect();
    let pairs_of = |v: &[&'_ Generator]| -> Vec<(usize, usize)> {
        (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).collect()
    };

    let two_faces = generators.iter().enumerate().all(|(i, gi)| {
        generators[i + 1..].iter().all(|gj| {
            match (cone.ray_index(&gi.ray), cone.ray_index(&gj.ray)) {
                (Some(a), Some(b)) => face_dimension(cone, &[a, b]) == Ok(2),
                _ => false,
            }
        })
    });

    let split_pairs: Vec<(&Generator, &Generator)> =
        pairs_of(&splits).into_iter().map(|(i, j)| (splits[i], splits[j])).collect();
    let split_report = check_witnesses(&split_pairs, &scheme, split_pair_witness)?;

    let mut compatible = Vec::new();
    let mut incompatible = Vec::new();
    for s in &splits {
        for m in &matchings {
            if is_refinement_compatible(s, m) {
                compatible.push((*s, *m));
            } else {
                incompatible.push((*s, *m));
            }
        }
    }
    let mixed_report = check_witnesses(&compatible, &scheme, mixed_pair_witness)?;

    let mut sharing = Vec::new();
    let mut disjoint = Vec::new();
    for (i, j) in pairs_of(&matchings) {
        let (a, b) = (parts(matchings[i]), parts(matchings[j]));
        if a.iter().filter(|p| b.contains(p)).count() == 1 {
            sharing.push((matchings[i], matchings[j]));
        } else {
            disjoint.push((matchings[i], matchings[j]));
        }
    }
    let mut obstruction = ObstructionReport { pairs: sharing.len(), pattern_confirmed: 0, failures: Vec::new() };
    for (g1, g2) in &sharing {
        match obstruction_pattern(g1, g2, &scheme)? {
            None => obstruction.pattern_confirmed += 1,
            Some(why) => obstruction.failures.push(format!("{} / {}: {why}", g1.labeling, g2.labeling)),
        }
    }

    let classes: Vec<(&str, &Vec<(&Generator, &Generator)>)> = vec![
        ("(2,2,2) pairs sharing a part", &sharing),
        ("(2,2,2) pairs sharing no part", &disjoint),
        ("(3,3)/(2,2,2) pairs without a refining part", &incompatible),
    ];
    let hits: Vec<Vec<usize>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let x = primitive_ray(&phi(&random_tuple(&mut rng), &scheme)?);
            Ok(classes
                .iter()
                .map(|(_, pairs)| pairs.iter().filter(|(g1, g2)| in_relative_interior(&x, &g1.ray, &g2.ray)).count())
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let search: Vec<SearchClass> = classes
        .iter()
        .enumerate()
        .map(|(c, (name, pairs))| SearchClass {
            class: name.to_string(),
            faces: pairs.len(),
            hits: hits.iter().map(|h| h[c]).sum(),
        })
        .collect();

    let passed = two_faces
        && split_report.failures.is_empty()
        && mixed_report.failures.is_empty()
        && obstruction.failures.is_empty()
        && search.iter().all(|s| s.hits == 0);
    Ok(TwoFaceReport {
        two_faces,
        split_pairs: split_report,
        mixed_compatible_pairs: mixed_report,
        mixed_incompatible_pairs: incompatible.len(),
        matching_pairs_sharing_part: obstruction,
        seed,
        trials,
        search,
        passed,
    })
}
