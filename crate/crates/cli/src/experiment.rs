//! Batch suites. Each run expands `--params` and every `--sweep` range into a
//! list of instances, pairs each with the requested models and writes one
//! CSV row per (instance, model, target).
//!
//! Keys the family does not take must be model parameters: `r` (integer)
//! or `a` (a fraction p/q). A family key named `r`, or an `a` written as a
//! fraction, also feeds the model, so `--family cliquepath --params r=3`
//! pairs H(n, 3) with r = 3.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;
use tdl_core::bounds::{role_bounds, stabilization_bounds, BoundReport};
use tdl_core::construct::{Family, FamilyParams};
use tdl_core::dynamics::{max_stabilization, SweepMode, EXHAUSTIVE_NODE_CAP};
use tdl_core::solve::{binomial, count_sets_of_size, node_cap_from_env};
use tdl_core::{min_set, Alpha, Exec, Graph, ModelSpec, Role, SolveOptions};

use crate::{input_error, parse_model, CliError, Jobs};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Suite {
    /// Maximum stabilization time and period over starting configurations.
    Stabilization,
    /// Exact minimum dynamo and monotone dynamo next to the catalog bounds.
    DynamoBounds,
    /// Exact minimum robust and eternal sets next to the catalog bounds.
    RobustEternal,
    /// Number of size-r dynamos in the r-threshold model.
    DenseDynamos,
}

#[derive(Args)]
pub(crate) struct ExperimentArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    family: String,
    /// Fixed parameters as k=v,k=v.
    #[arg(long, default_value = "")]
    params: String,
    /// Inclusive integer range key=lo..hi (or key=v); repeat to sweep
    /// several keys as a grid.
    #[arg(long)]
    sweep: Vec<String>,
    /// Model spec, or a bare kind (rthresh, rmono, athresh, amono) that takes
    /// r or a from the parameters. Repeatable.
    #[arg(long)]
    model: Vec<String>,
    /// Sample this many starting configurations instead of all 2^n.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fill the wall_ms column; without it the output is byte-identical
    /// across runs.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    jobs: Jobs,
}

/// One CSV row. Empty cells are columns that do not apply to the suite.
#[derive(Serialize)]
struct ExperimentRow {
    family: String,
    params: String,
    model: String,
    target: String,
    exact: Option<u64>,
    lower: Option<i64>,
    upper: Option<i64>,
    #[serde(rename = "T")]
    stabilization_time: Option<usize>,
    period: Option<usize>,
    wall_ms: Option<u128>,
    seed: u64,
}

struct Instance {
    family: FamilyParams,
    r: Option<u32>,
    alpha: Option<Alpha>,
}

fn parse_pairs(s: &str) -> Result<Vec<(String, String)>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CliError::Usage(format!("{p:?} is not key=value")))
        })
        .collect()
}

fn parse_sweep(s: &str) -> Result<(String, Vec<String>), CliError> {
    let (key, range) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("sweep {s:?} is not key=lo..hi")))?;
    let int =
        |t: &str| t.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("sweep bound {t:?} is not an integer")));
    let (lo, hi) = match range.split_once("..") {
        Some((lo, hi)) => (int(lo)?, int(hi)?),
        None => (int(range)?, int(range)?),
    };
    if lo > hi {
        return Err(CliError::Usage(format!("empty sweep range {range:?}")));
    }
    Ok((key.trim().to_string(), (lo..=hi).map(|v| v.to_string()).collect()))
}

fn instance(family: Family, assignment: &[(String, String)]) -> Result<Instance, CliError> {
    let mut inst = Instance { family: FamilyParams::new(family), r: None, alpha: None };
    for (key, value) in assignment {
        let family_key = family.keys().contains(&key.as_str());
        if family_key {
            inst.family.set(key, value.as_str())?;
        }
        match key.as_str() {
            "r" => inst.r = Some(value.parse().map_err(|_| CliError::Input(format!("r={value:?} is not an integer")))?),
            "a" if !family_key || value.contains('/') => inst.alpha = Some(value.parse().map_err(input_error)?),
            _ if family_key => {}
            _ => {
                return Err(CliError::Input(format!(
                    "family {family} takes {:?}; other keys must be r or a",
                    family.keys()
                )))
            }
        }
    }
    Ok(inst)
}

fn instances(args: &ExperimentArgs) -> Result<Vec<Instance>, CliError> {
    let family: Family = args.family.parse()?;
    let fixed = parse_pairs(&args.params)?;
    let sweeps = args.sweep.iter().map(|s| parse_sweep(s)).collect::<Result<Vec<_>, _>>()?;
    let mut grid: Vec<Vec<(String, String)>> = vec![fixed];
    for (key, values) in &sweeps {
        grid = grid
            .into_iter()
            .flat_map(|point| {
                values.iter().map(move |v| {
                    let mut p = point.clone();
                    p.retain(|(k, _)| k != key);
                    p.push((key.clone(), v.clone()));
                    p
                })
            })
            .collect();
    }
    grid.iter().map(|point| instance(family, point)).collect()
}

fn default_kind(suite: Suite, inst: &Instance) -> &'static str {
    match (suite, inst.r, inst.alpha) {
        (Suite::Stabilization, Some(_), _) => "rmono",
        (_, Some(_), _) => "rthresh",
        (_, None, Some(_)) => "athresh",
        (_, None, None) => "majority",
    }
}

fn models(suite: Suite, requested: &[String], inst: &Instance) -> Result<Vec<ModelSpec>, CliError> {
    let default = [default_kind(suite, inst).to_string()];
    let specs = if requested.is_empty() { &default[..] } else { requested };
    specs
        .iter()
        .map(|spec| {
            let full = match spec.as_str() {
                "rthresh" | "rmono" => match inst.r {
                    Some(r) => format!("{spec}:r={r}"),
                    None => return Err(CliError::Input(format!("model {spec} needs an r parameter"))),
                },
                "athresh" | "amono" => match inst.alpha {
                    Some(a) => format!("{spec}:a={a}"),
                    None => return Err(CliError::Input(format!("model {spec} needs an a=p/q parameter"))),
                },
                _ => spec.clone(),
            };
            let model = parse_model(&full)?;
            if suite == Suite::DenseDynamos && !matches!(model, ModelSpec::RThreshold { .. }) {
                return Err(CliError::Input("dense-dynamos runs the r-threshold model only".into()));
            }
            Ok(model)
        })
        .collect()
}

struct Context<'a> {
    args: &'a ExperimentArgs,
    exec: Exec,
}

impl Context<'_> {
    fn row(&self, inst: &Instance, model: &ModelSpec, target: &str, started: Instant) -> ExperimentRow {
        let label = inst.family.to_string();
        let params = label.split_once(':').map(|(_, p)| p.to_string()).unwrap_or_default();
        ExperimentRow {
            family: inst.family.family.to_string(),
            params,
            model: model.to_string(),
            target: target.to_string(),
            exact: None,
            lower: None,
            upper: None,
            stabilization_time: None,
            period: None,
            wall_ms: self.args.timing.then(|| started.elapsed().as_millis()),
            seed: self.args.seed,
        }
    }

    fn with_bounds(mut row: ExperimentRow, report: &BoundReport) -> ExperimentRow {
        row.lower = report.best_lower();
        row.upper = report.best_upper();
        row
    }

    fn stabilization(&self, inst: &Instance, g: &Graph, model: &ModelSpec) -> Result<ExperimentRow, CliError> {
        let started = Instant::now();
        let mode = match self.args.samples {
            Some(samples) => SweepMode::Sampled { samples, seed: self.args.seed },
            None if g.node_count() <= EXHAUSTIVE_NODE_CAP => SweepMode::Exhaustive,
            None => {
                return Err(CliError::Cap(format!(
                    "{} has {} nodes; exhaustive sweeps stop at {EXHAUSTIVE_NODE_CAP}, pass --samples",
                    inst.family,
                    g.node_count()
                )))
            }
        };
        let stats = max_stabilization(g, model, mode, self.exec)?;
        if stats.cap_hits > 0 {
            return Err(CliError::Cap(format!("{} {model}: step cap reached", inst.family)));
        }
        let report = stabilization_bounds(g.node_count(), g.edge_count(), g.min_degree(), model)?;
        let mut row = self.row(inst, model, "stabilization", started);
        row.stabilization_time = Some(stats.max_time);
        row.period = Some(stats.max_period);
        Ok(Self::with_bounds(row, &report))
    }

    fn exact(&self, inst: &Instance, g: &Graph, model: &ModelSpec, role: Role) -> Result<ExperimentRow, CliError> {
        let started = Instant::now();
        let opts = SolveOptions { exec: self.exec, node_cap: node_cap_from_env(), ..SolveOptions::default() };
        let found = min_set(g, model, role, opts).map_err(|e| describe(inst, e))?;
        let report = role_bounds(g, model, role)?;
        let mut row = self.row(inst, model, role.name(), started);
        row.exact = Some(found.minimum_size as u64);
        Ok(Self::with_bounds(row, &report))
    }

    fn dense(&self, inst: &Instance, g: &Graph, model: &ModelSpec) -> Result<ExperimentRow, CliError> {
        let started = Instant::now();
        let r = model.threshold().expect("r-threshold checked") as usize;
        let count = count_sets_of_size(g, model, Role::Dynamo, r, self.exec).map_err(|e| describe(inst, e))?;
        let mut row = self.row(inst, model, "size-r dynamo count", started);
        row.exact = Some(count);
        row.lower = Some(1);
        row.upper = i64::try_from(binomial(g.node_count(), r)).ok();
        Ok(row)
    }
}

/// Prefixes a library error with the instance it came from.
fn describe(inst: &Instance, e: tdl_core::Error) -> CliError {
    match CliError::from(e) {
        CliError::Cap(m) => CliError::Cap(format!("{}: {m}", inst.family)),
        CliError::Input(m) => CliError::Input(format!("{}: {m}", inst.family)),
        other => other,
    }
}

pub(crate) fn run(args: &ExperimentArgs) -> Result<(), CliError> {
    let ctx = Context { args, exec: args.jobs.exec()? };
    let mut rows = Vec::new();
    for inst in instances(args)? {
        let g = inst.family.build().map_err(|e| describe(&inst, e))?;
        for model in models(args.suite, &args.model, &inst)? {
            match args.suite {
                Suite::Stabilization => rows.push(ctx.stabilization(&inst, &g, &model)?),
                Suite::DynamoBounds => {
                    for role in [Role::Dynamo, Role::MonotoneDynamo] {
                        rows.push(ctx.exact(&inst, &g, &model, role)?);
                    }
                }
                Suite::RobustEternal => {
                    for role in [Role::Robust, Role::Eternal] {
                        rows.push(ctx.exact(&inst, &g, &model, role)?);
                    }
                }
                Suite::DenseDynamos => rows.push(ctx.dense(&inst, &g, &model)?),
            }
        }
    }
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    for row in &rows {
        writer.serialize(row).map_err(input_error)?;
    }
    writer.flush().map_err(input_error)
}
