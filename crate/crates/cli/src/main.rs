use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zonocone::golden::{compare, golden};
use zonocone::mixed_volume::{mv_polygons, mv_zonotopes, ConvexPolygon, Zonotope};
use zonocone::pipeline::{build, SUPPORTED};
use zonocone::verify::{run_suite, CheckReport, Suite, SuiteOptions};

#[derive(Parser)]
#[command(name = "zonocone", version, about = "Exact cones of mixed volumes of zonotopes")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Builds a cone from its rigid generators and compares it with the stored counts.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Skip the comparison with the stored counts.
        #[arg(long)]
        no_golden: bool,
    },
    /// Runs a named group of checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Mixed volume of the bodies listed in a JSON file.
    MixedVolume {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Bad flags or input: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ZONOCONE_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("thread pool")?;
    }
    match cli.command {
        Command::Build { n, d, out, format, no_golden } => cmd_build(n, d, out.as_deref(), format, no_golden),
        Command::Verify { suite, n, d, seed, trials, out, format } => {
            let suite: Suite = suite.parse().map_err(|e: zonocone::Error| usage(e.to_string()))?;
            cmd_verify(suite, SuiteOptions { n, d, trials, seed }, out.as_deref(), format)
        }
        Command::MixedVolume { input, out } => cmd_mixed_volume(&input, out.as_deref()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn cmd_build(n: usize, d: usize, out: Option<&Path>, format: Format, no_golden: bool) -> Result<bool> {
    if !SUPPORTED.contains(&(n, d)) {
        return Err(usage(format!("unsupported (n,d) = ({n},{d}); expected one of (4,2), (6,2), (6,3)")));
    }
    let start = Instant::now();
    let art = build(n, d)?;
    log::info!("({n},{d}) built in {:.3}s", start.elapsed().as_secs_f64());
    let text = match format {
        Format::Json => pretty(&art.to_json()),
        Format::Csv => art.cone.facets_csv(&art.scheme.order_labels()),
    };
    emit(out, &text)?;
    let c = art.counts();
    eprintln!("({n},{d}): {} rays, {} facets, {} orbits", c.rays, c.facets, c.orbits);
    if no_golden {
        return Ok(true);
    }
    let diffs = compare(&golden(n, d)?, &art);
    for diff in &diffs {
        eprintln!("golden mismatch: {diff}");
    }
    Ok(diffs.is_empty())
}

fn cmd_verify(suite: Suite, opts: SuiteOptions, out: Option<&Path>, format: Format) -> Result<bool> {
    if let (Some(n), Some(d)) = (opts.n, opts.d) {
        if !SUPPORTED.contains(&(n, d)) {
            return Err(usage(format!("unsupported (n,d) = ({n},{d})")));
        }
    }
    if let Some(n) = opts.n {
        if suite == Suite::Fiber && (n < 4 || n % 2 == 1 || n > 8) {
            return Err(usage(format!("fiber check needs even n in 4..=8, got {n}")));
        }
    }
    let start = Instant::now();
    let reports = run_suite(suite, &opts)?;
    log::info!("suite {suite} finished in {:.3}s", start.elapsed().as_secs_f64());
    let text = match format {
        Format::Json => pretty(&json!({
            "suite": suite.to_string(),
            "seed": opts.seed,
            "trials": opts.trials,
            "passed": reports.iter().all(|r| r.passed),
            "checks": reports,
        })),
        Format::Csv => {
            let mut s = String::from("check,passed\n");
            for r in &reports {
                s.push_str(&format!("{},{}\n", r.name, r.passed));
            }
            s
        }
    };
    emit(out, &text)?;
    for r in &reports {
        eprintln!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name);
    }
    match reports.iter().find(|r: &&CheckReport| !r.passed) {
        Some(r) => {
            eprintln!("first failing check: {}", r.name);
            Ok(false)
        }
        None => Ok(true),
    }
}

/// Input: `{"bodies": [...]}` where each body is `{"zonotope": [generators]}`,
/// `{"polygon": [vertices]}`, or a bare list of zonotope generators.
fn cmd_mixed_volume(input: &Path, out: Option<&Path>) -> Result<bool> {
    let text = fs::read_to_string(input).map_err(|e| usage(format!("reading {}: {e}", input.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("malformed JSON: {e}")))?;
    let bodies = v
        .get("bodies")
        .and_then(Value::as_array)
        .ok_or_else(|| usage("expected an object with a \"bodies\" list"))?;
    let value = mixed_volume_of(bodies).map_err(|e| usage(e.to_string()))?;
    emit(out, &format!("{value}\n"))?;
    Ok(true)
}

enum Body {
    Zonotope(Zonotope),
    Polygon(ConvexPolygon),
}

fn parse_body(b: &Value) -> Result<Body> {
    if let Some(z) = b.get("zonotope") {
        return Ok(Body::Zonotope(Zonotope::from_json(z)?));
    }
    if let Some(p) = b.get("polygon") {
        return Ok(Body::Polygon(ConvexPolygon::from_json(p)?));
    }
    if b.is_array() {
        return Ok(Body::Zonotope(Zonotope::from_json(b)?));
    }
    bail!("unrecognized body {b}")
}

fn mixed_volume_of(bodies: &[Value]) -> Result<zonocone::exact::Rational> {
    let parsed = bodies.iter().map(parse_body).collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        bail!("no bodies given");
    }
    if parsed.iter().all(|b| matches!(b, Body::Zonotope(_))) {
        let zs: Vec<Zonotope> = parsed
            .into_iter()
            .map(|b| match b {
                Body::Zonotope(z) => z,
                Body::Polygon(_) => unreachable!(),
            })
            .collect();
        return Ok(mv_zonotopes(&zs)?);
    }
    if parsed.len() != 2 {
        bail!("polygons are planar: expected 2 bodies, found {}", parsed.len());
    }
    let polys = parsed
        .into_iter()
        .map(|b| match b {
            Body::Zonotope(z) => Ok(z.to_polygon()?),
            Body::Polygon(p) => Ok(p),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(mv_polygons(&polys[0], &polys[1]))
}
