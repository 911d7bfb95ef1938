//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use zonocone::exact::{big, Rational};
use zonocone::pipeline::build;
use zonocone::rigid::is_rigid;
use zonocone::rigid::search::{grid_search, line_sweep, seven_point_configuration};
use zonocone::symmetry::table1_columns;
use zonocone::verify::faces::parameters;
use zonocone::verify::family::family_63;
use zonocone::verify::{
    counterexample_bodies, counterexample_check, fiber_rank_check, lemma_split_check, sample_inequalities,
    two_face_checks,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c4_2() -> Outcome {
    let art = build(4, 2).map_err(err)?;
    let rays = vec![big(&[0, 1, 1]), big(&[1, 0, 1]), big(&[1, 1, 0])];
    let facets = vec![big(&[-1, 1, 1]), big(&[1, -1, 1]), big(&[1, 1, -1])];
    ensure(art.cone.rays() == rays.as_slice(), format!("rays {:?}", art.cone.rays()))?;
    ensure(art.cone.facets() == facets.as_slice(), format!("facets {:?}", art.cone.facets()))?;
    Ok("rays (0,1,1),(1,0,1),(1,1,0); facets (-1,1,1),(1,-1,1),(1,1,-1)".into())
}

fn c6_2() -> Outcome {
    let art = build(6, 2).map_err(err)?;
    let c = art.counts();
    ensure(c.rays == 25, format!("{} rays", c.rays))?;
    let by_type = (c.rays_by_type.get("(3,3)").copied(), c.rays_by_type.get("(2,2,2)").copied());
    ensure(by_type == (Some(10), Some(15)), format!("rays by type {:?}", c.rays_by_type))?;
    ensure(c.facets == 975, format!("{} facets", c.facets))?;
    ensure(c.orbits == 8, format!("{} orbits", c.orbits))?;
    let mut hit = BTreeSet::new();
    for (k, col) in table1_columns(&art.scheme).map_err(err)?.iter().enumerate() {
        let f = art.cone.facet_index(col).ok_or(format!("type {} is not a facet", k + 1))?;
        hit.insert(art.orbits.iter().position(|o| o.members.contains(&f)).expect("facet has an orbit"));
    }
    ensure(hit.len() == 8, format!("reference columns hit {} orbits", hit.len()))?;
    let sizes: Vec<usize> = art.orbits.iter().map(|o| o.size()).collect();
    Ok(format!("25 rays (10 + 15), 975 facets, 8 orbits of sizes {sizes:?}; 8 columns in 8 orbits"))
}

fn c6_3() -> Outcome {
    let art = build(6, 3).map_err(err)?;
    ensure(art.cone.rays().len() == 30, format!("{} rays", art.cone.rays().len()))?;
    ensure(art.cone.facets().len() == 130, format!("{} facets", art.cone.facets().len()))?;
    let family = family_63().map_err(err)?;
    ensure(family.coordinate.len() == 10, "coordinate inequalities")?;
    let computed: BTreeSet<Vec<BigInt>> = art.cone.facets().iter().cloned().collect();
    let closed: BTreeSet<Vec<BigInt>> = family.normals().into_iter().collect();
    ensure(computed == closed, format!("{} facets outside the family", computed.difference(&closed).count()))?;
    Ok("30 rays, 130 facets, equal to the closed-form family with 10 coordinate inequalities".into())
}

/// Twice the area of the convex hull of integer points.
fn doubled_hull_area(mut pts: Vec<(i64, i64)>) -> i64 {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    (0..lower.len()).map(|i| cross((0, 0), lower[i], lower[(i + 1) % lower.len()])).sum::<i64>().abs()
}

fn counterexample() -> Outcome {
    let bodies = counterexample_bodies().map_err(err)?;
    let verts: Vec<Vec<(i64, i64)>> = bodies
        .iter()
        .map(|b| {
            b.vertices()
                .iter()
                .map(|p| (p[0].to_integer().to_i64().unwrap(), p[1].to_integer().to_i64().unwrap()))
                .collect()
        })
        .collect();
    let mut expected = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let sum: Vec<(i64, i64)> =
                verts[i].iter().flat_map(|a| verts[j].iter().map(move |b| (a.0 + b.0, a.1 + b.1))).collect();
            let q = doubled_hull_area(sum) - doubled_hull_area(verts[i].clone()) - doubled_hull_area(verts[j].clone());
            expected.push(format!("V{}{}={}", i + 1, j + 1, Rational::new(q.into(), 4.into())));
        }
    }
    let r = counterexample_check(3, 1000, 2024).map_err(err)?;
    ensure(r.mixed_areas == expected, format!("mixed areas {:?} vs oracle {:?}", r.mixed_areas, expected))?;
    ensure(r.minimum.starts_with('-'), format!("minimum {}", r.minimum))?;
    ensure(r.random_violations == 0, format!("{} random violations", r.random_violations))?;
    ensure(r.trials == 1000, "trial count")?;
    Ok(format!(
        "type 3 minimum {} on {} of {} images; random minimum {} over 1000 tuples",
        r.minimum,
        r.violated_images,
        r.orbit_size,
        r.random_minimum.unwrap_or_default()
    ))
}

fn fiber() -> Outcome {
    let mut ranks = Vec::new();
    for n in [4, 6, 8] {
        let r = fiber_rank_check(n).map_err(err)?;
        let edges = n * (n - 1) / 2;
        ensure(r.edges == edges && r.rank_f == edges - n + 1, format!("n={n}: rank f {}", r.rank_f))?;
        ensure(r.rank_g == n, format!("n={n}: rank g {}", r.rank_g))?;
        ensure(r.composition_is_ones && r.exact, format!("n={n}: composition or exactness"))?;
        ranks.push(format!("n={n}: rank f {} rank g {}", r.rank_f, r.rank_g));
    }
    Ok(ranks.join("; "))
}

fn rigidity() -> Outcome {
    let sweep = line_sweep(6).map_err(err)?;
    ensure(sweep.mismatches.is_empty(), format!("{} line mismatches", sweep.mismatches.len()))?;
    let grid = grid_search(6, 2, 2000).map_err(err)?;
    // three doubled points in general position, and the complete quadrilateral
    let allowed: BTreeSet<&str> = ["mult[2,2,2] lines[]", "mult[1,1,1,1,1,1] lines[3,3,3,3]"].into();
    let found: BTreeSet<&str> = grid.signatures.keys().map(String::as_str).collect();
    ensure(found == allowed, format!("signatures {found:?}"))?;
    ensure(grid.cross_check_failures == 0, format!("{} cross-check failures", grid.cross_check_failures))?;
    let mut rigid_slopes = Vec::new();
    for (p, q) in [(1, 1), (2, 1), (1, 2), (3, 1), (-3, 1)] {
        let c = seven_point_configuration(p, q).ok_or("degenerate slope")?;
        if is_rigid(&c).map_err(err)? {
            rigid_slopes.push(format!("{p}/{q}"));
        }
    }
    ensure(rigid_slopes.len() >= 3, format!("rigid slopes {rigid_slopes:?}"))?;
    Ok(format!(
        "{} line configurations, {} grid configurations, signatures {:?}; 7 points rigid at {}",
        sweep.configurations,
        grid.configurations_checked,
        grid.signatures,
        rigid_slopes.join(", ")
    ))
}

fn sampling() -> Outcome {
    let mut parts = Vec::new();
    for (n, d) in [(4, 2), (6, 2), (6, 3)] {
        let art = build(n, d).map_err(err)?;
        let r = sample_inequalities(&art.scheme, &art.cone, &art.orbits, 1000, 7).map_err(err)?;
        ensure(r.trials == 1000 && r.inside + r.boundary == 1000, "trial count")?;
        ensure(r.violations.is_empty(), format!("({n},{d}): {} violations", r.violations.len()))?;
        parts.push(format!("({n},{d}) {} inside {} boundary", r.inside, r.boundary));
    }
    Ok(parts.join("; "))
}

fn two_faces() -> Outcome {
    let split = lemma_split_check().map_err(err)?;
    ensure(split.equal && split.passed, "split equality")?;
    let art = build(6, 2).map_err(err)?;
    let r = two_face_checks(&art.generators, &art.cone, 1000, 3).map_err(err)?;
    let k = parameters().len();
    ensure(k == 5, format!("{k} parameters"))?;
    for (name, c) in [("split", &r.split_pairs), ("mixed", &r.mixed_compatible_pairs)] {
        ensure(c.pairs > 0 && c.evaluations == c.pairs * k, format!("{name}: {} evaluations", c.evaluations))?;
        ensure(c.failures.is_empty(), format!("{name}: {:?}", c.failures))?;
    }
    Ok(format!(
        "split equality over {} relabelings; {} split pairs and {} mixed pairs at {k} parameters",
        split.relabelings_checked, r.split_pairs.pairs, r.mixed_compatible_pairs.pairs
    ))
}

fn properties() -> Outcome {
    use common::*;
    let results = [
        ("determinant alternation", run(1, det_strategy(), |(m, i, j)| det_alternation(m, i, j))),
        ("multilinearity", run(2, multilinear_strategy(), phi_multilinear)),
        ("Plucker residuals", run(3, plucker_strategy(), |(a, b)| plucker_residuals(a, b))),
        ("complement symmetry", run(4, vectors(6, 3, 9), complement_symmetry)),
        ("duality round-trip", run(5, duality_strategy(), duality_roundtrip)),
    ];
    let failed: Vec<String> = results.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!("{} properties x {CASES} cases", results.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("(4,2) reproduction", c4_2, Duration::from_secs(1)),
        ("(6,2) reproduction", c6_2, Duration::from_secs(300)),
        ("(6,3) reproduction", c6_3, Duration::from_secs(300)),
        ("counterexample", counterexample, Duration::from_secs(60)),
        ("fiber ranks", fiber, Duration::from_secs(10)),
        ("rigidity classification", rigidity, Duration::from_secs(300)),
        ("sampling soundness", sampling, Duration::from_secs(120)),
        ("2-face constructions", two_faces, Duration::from_secs(60)),
        ("property suites", properties, Duration::from_secs(600)),
    ];
    let mut all = true;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        all &= outcome.is_ok();
        println!("{tag} criterion {}: {name} [{elapsed:.2?}] {detail}", i + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
