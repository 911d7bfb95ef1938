//! Named groups of checks, as run from the command line and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::pipeline::{build, SUPPORTED};
use crate::rigid::search::{grid_search, line_sweep, seven_point_configuration, signature, signature_label};
use crate::rigid::search::{a1_configuration, a2_configuration};
use crate::rigid::is_rigid;
use crate::{Error, Result};

use super::{
    check_family_equals_facets, counterexample::general_body_experiment, counterexample_check, fiber_rank_check,
    lemma_split_check, sample_inequalities, two_face_checks,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Counterexample,
    Fiber,
    Family,
    Split,
    Faces,
    Rigid,
    Sampling,
    Experiment,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 10] =
        ["table1", "counterexample", "fiber", "family", "split", "faces", "rigid", "sampling", "experiment", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "table1" => Suite::Table1,
            "counterexample" => Suite::Counterexample,
            "fiber" => Suite::Fiber,
            "family" => Suite::Family,
            "split" => Suite::Split,
            "faces" => Suite::Faces,
            "rigid" => Suite::Rigid,
            "sampling" => Suite::Sampling,
            "experiment" => Suite::Experiment,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", ")))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::Table1,
            Suite::Counterexample,
            Suite::Fiber,
            Suite::Family,
            Suite::Split,
            Suite::Faces,
            Suite::Rigid,
            Suite::Sampling,
            Suite::Experiment,
            Suite::All,
        ]
        .iter()
        .position(|s| s == self)
        .expect("listed");
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Restricts the fiber and sampling suites to one `n` (and `d` for sampling).
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { n: None, d: None, trials: 1000, seed: 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub details: serde_json::Value,
}

fn report<T: Serialize>(name: impl Into<String>, passed: bool, details: &T) -> CheckReport {
    CheckReport { name: name.into(), passed, details: serde_json::to_value(details).expect("report serializes") }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let wants = |s: Suite| suite == s || (suite == Suite::All && s != Suite::Experiment);
    if wants(Suite::Table1) {
        let art = build(6, 2)?;
        let t = art.table1.clone().expect("(6,2) build matches the table");
        out.push(report("table1", t.bijection, &t));
    }
    if wants(Suite::Counterexample) {
        let r = counterexample_check(3, opts.trials, opts.seed)?;
        out.push(report("counterexample", r.passed, &r));
    }
    if wants(Suite::Fiber) {
        let ns = match opts.n {
            Some(n) => vec![n],
            None => vec![4, 6, 8],
        };
        for n in ns {
            let r = fiber_rank_check(n)?;
            out.push(report(format!("fiber n={n}"), r.passed, &r));
        }
    }
    if wants(Suite::Family) {
        let art = build(6, 3)?;
        let r = check_family_equals_facets(art.cone.facets())?;
        out.push(report("family", r.equal, &r));
    }
    if wants(Suite::Split) {
        let r = lemma_split_check()?;
        out.push(report("split", r.passed, &r));
    }
    if wants(Suite::Faces) {
        let art = build(6, 2)?;
        let r = two_face_checks(&art.generators, &art.cone, opts.trials.max(1) * 10, opts.seed)?;
        out.push(report("faces", r.passed, &r));
    }
    if wants(Suite::Rigid) {
        out.extend(rigidity_reports()?);
    }
    if wants(Suite::Sampling) {
        let cases: Vec<(usize, usize)> = match (opts.n, opts.d) {
            (Some(n), Some(d)) => vec![(n, d)],
            _ => SUPPORTED.to_vec(),
        };
        for (n, d) in cases {
            let art = build(n, d)?;
            let r = sample_inequalities(&art.scheme, &art.cone, &art.orbits, opts.trials, opts.seed)?;
            out.push(report(format!("sampling ({n},{d})"), r.passed(), &r));
        }
    }
    if suite == Suite::Experiment {
        let r = general_body_experiment(opts.trials, opts.seed)?;
        // evidence only
        out.push(report("experiment", true, &r));
    }
    Ok(out)
}

#[derive(Serialize)]
struct SevenPoint {
    slope: String,
    rigid: bool,
}

/// The line sweep, the grid search, and the seven-point family.
pub fn rigidity_reports() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let sweep = line_sweep(6)?;
    out.push(report("rigid line sweep", sweep.mismatches.is_empty() && sweep.rigid > 0, &sweep));

    let grid = grid_search(6, 2, 2000)?;
    let expected = [signature_label(&signature(&a1_configuration())), signature_label(&signature(&a2_configuration()))];
    let only_known = grid.signatures.keys().all(|k| expected.contains(k));
    let both_found = expected.iter().all(|k| grid.signatures.contains_key(k));
    out.push(report(
        "rigid grid search",
        only_known && both_found && grid.cross_check_failures == 0,
        &grid,
    ));

    let mut seven = Vec::new();
    for (p, q) in [(1, 1), (2, 1), (1, 2), (3, 1), (-3, 1)] {
        let c = seven_point_configuration(p, q).ok_or_else(|| Error::InvalidIndex(format!("slope {p}/{q}")))?;
        seven.push(SevenPoint { slope: format!("{p}/{q}"), rigid: is_rigid(&c)? });
    }
    let rigid_count = seven.iter().filter(|s| s.rigid).count();
    out.push(report("rigid seven-point family", rigid_count >= 3, &seven));
    Ok(out)
}
