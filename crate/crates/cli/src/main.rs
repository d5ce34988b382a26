//! `tdl`: simulate, certify, solve, construct, bound and batch-run threshold
//! and majority dynamics on graphs.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 cap exceeded.

mod experiment;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use tdl_core::bounds::{role_bounds, stabilization_bounds, BoundReport};
use tdl_core::certify::certify;
use tdl_core::construct::{bipartite_double, Family, FamilyParams};
use tdl_core::io::{graph_to_json, read_graph};
use tdl_core::solve::{binomial, count_sets_of_size, node_cap_from_env};
use tdl_core::{min_set, simulate, Configuration, Exec, Graph, ModelSpec, Role, SolveOptions};

#[derive(Parser)]
#[command(name = "tdl", version, about = "Threshold and majority opinion dynamics on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the dynamics from one configuration until it cycles.
    Simulate(SimulateArgs),
    /// Check whether a node set has a role.
    Certify(CertifyArgs),
    /// Exact minimum set for a role, or the number of sets of a given size.
    Find(FindArgs),
    /// Build a graph from a named family.
    Construct(ConstructArgs),
    /// Catalog lower and upper bounds for a graph and model.
    Bounds(BoundsArgs),
    /// Batch experiments written as CSV.
    Experiment(experiment::ExperimentArgs),
}

#[derive(Args)]
struct GraphModel {
    /// Graph file: JSON `{"n":..,"edges":[[u,v],..]}` or an edge list.
    #[arg(long)]
    graph: PathBuf,
    /// rthresh:r=2 | rmono:r=2 | athresh:a=1/2 | amono:a=2/3 | majority
    #[arg(long)]
    model: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    input: GraphModel,
    /// Initial configuration as a bitstring (node 0 first) or @file.
    #[arg(long)]
    init: String,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: GraphModel,
    /// dynamo | monotone-dynamo | robust | eternal
    #[arg(long)]
    role: String,
    /// Comma-separated node ids.
    #[arg(long, default_value = "")]
    set: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct FindArgs {
    /// dynamo | monotone-dynamo | robust | eternal
    #[arg(long)]
    target: String,
    #[command(flatten)]
    input: GraphModel,
    /// Count the sets of exactly this size instead of minimizing.
    #[arg(long)]
    count_size: Option<usize>,
    /// Give up above this set size.
    #[arg(long)]
    size_cap: Option<usize>,
    /// Start the search at the smallest admissible size instead of the
    /// best catalog lower bound.
    #[arg(long)]
    no_bound_seed: bool,
    #[command(flatten)]
    jobs: Jobs,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Edges,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    /// Family parameters as k=v,k=v.
    #[arg(long, default_value = "")]
    params: String,
    /// Base graph for the double family, instead of base=/n= parameters.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: GraphModel,
    /// dynamo | monotone-dynamo | robust | eternal | stabilization | all
    #[arg(long, default_value = "all")]
    target: String,
}

#[derive(Args, Clone, Copy)]
pub(crate) struct Jobs {
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
}

impl Jobs {
    pub(crate) fn exec(self) -> Result<Exec, CliError> {
        match self.jobs {
            Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
            Some(1) => Ok(Exec::Sequential),
            Some(n) => {
                init_pool(n);
                Ok(Exec::Parallel)
            }
            None => Ok(Exec::default()),
        }
    }
}

#[cfg(feature = "parallel")]
fn init_pool(threads: usize) {
    // Fails only if a pool already exists, which is harmless here.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
}

#[cfg(not(feature = "parallel"))]
fn init_pool(_threads: usize) {}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Input(String),
    Cap(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl From<tdl_core::Error> for CliError {
    fn from(e: tdl_core::Error) -> Self {
        match e {
            tdl_core::Error::CapExceeded { .. } | tdl_core::Error::NoSolution { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub(crate) fn input_error(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub(crate) fn parse_model(s: &str) -> Result<ModelSpec, CliError> {
    s.parse::<ModelSpec>().map_err(input_error)
}

fn load(input: &GraphModel) -> Result<(Graph, ModelSpec), CliError> {
    let g = read_graph(&input.graph)?;
    let model = parse_model(&input.model)?;
    g.validate(&model)?;
    Ok((g, model))
}

fn parse_role(s: &str) -> Result<Role, CliError> {
    s.parse::<Role>().map_err(input_error)
}

fn parse_set(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Input(format!("{t:?} is not a node id"))))
        .collect()
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let (g, model) = load(&args.input)?;
    let bits = match args.init.strip_prefix('@') {
        Some(path) => read_text(Path::new(path))?,
        None => args.init.clone(),
    };
    let start = Configuration::parse_bitstring(bits.trim(), g.node_count())?;
    let traj = simulate(&g, &model, &start, args.max_steps)?;
    match args.format {
        Format::Json => println!("{}", traj.to_json()),
        Format::Text => {
            for (t, c) in traj.configs.iter().enumerate() {
                println!("t={t:<4} {c}");
            }
            if traj.step_cap_hit {
                println!("no cycle within {} steps", traj.configs.len() - 1);
            } else {
                println!(
                    "stabilization time {}, period {}, all black: {}",
                    traj.stabilization_time,
                    traj.period,
                    traj.reaches_all_black()
                );
            }
        }
    }
    if traj.step_cap_hit {
        return Err(CliError::Cap(format!("step cap of {} reached", traj.configs.len() - 1)));
    }
    Ok(())
}

fn cmd_certify(args: &CertifyArgs) -> Result<(), CliError> {
    let (g, model) = load(&args.input)?;
    let role = parse_role(&args.role)?;
    let cert = certify(&g, &model, role, &parse_set(&args.set)?)?;
    match args.format {
        Format::Json => println!("{}", cert.to_json()),
        Format::Text => {
            println!("{} {:?}: {}", cert.role, cert.witness_set, cert.verdict);
            println!("evidence: {}", cert.evidence.to_json());
        }
    }
    Ok(())
}

fn cmd_find(args: &FindArgs) -> Result<(), CliError> {
    let exec = args.jobs.exec()?;
    let (g, model) = load(&args.input)?;
    let role = parse_role(&args.target)?;
    if let Some(size) = args.count_size {
        if size > g.node_count() {
            return Err(CliError::Input(format!("size {size} exceeds n = {}", g.node_count())));
        }
        let count = count_sets_of_size(&g, &model, role, size, exec)?;
        let out = json!({
            "target": role.name(),
            "size": size,
            "count": count,
            "candidates": binomial(g.node_count(), size),
        });
        println!("{out}");
        return Ok(());
    }
    let opts = SolveOptions {
        size_cap: args.size_cap,
        use_bound_seed: !args.no_bound_seed,
        exec,
        node_cap: node_cap_from_env(),
    };
    println!("{}", min_set(&g, &model, role, opts)?.to_json());
    Ok(())
}

fn cmd_construct(args: &ConstructArgs) -> Result<(), CliError> {
    let family: Family = args.family.parse()?;
    let g = match (&args.graph, family) {
        (Some(path), Family::Double) => {
            if !args.params.trim().is_empty() {
                return Err(CliError::Usage("--graph and --params are exclusive for double".into()));
            }
            bipartite_double(&read_graph(path)?)
        }
        (Some(_), _) => return Err(CliError::Usage("--graph only applies to --family double".into())),
        (None, _) => FamilyParams::parse(family, &args.params)?.build()?,
    };
    match args.format {
        GraphFormat::Json => println!("{}", graph_to_json(&g)),
        GraphFormat::Edges => {
            println!("# n = {}", g.node_count());
            for &(u, v) in g.edges() {
                println!("{u} {v}");
            }
        }
    }
    Ok(())
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), CliError> {
    let (g, model) = load(&args.input)?;
    let stabilization = || stabilization_bounds(g.node_count(), g.edge_count(), g.min_degree(), &model);
    let reports: Vec<BoundReport> = match args.target.as_str() {
        "all" => {
            let mut v = Role::ALL.iter().map(|&r| role_bounds(&g, &model, r)).collect::<Result<Vec<_>, _>>()?;
            v.push(stabilization()?);
            v
        }
        "stabilization" => vec![stabilization()?],
        other => vec![role_bounds(&g, &model, parse_role(other)?)?],
    };
    let out: Vec<_> = reports.iter().map(BoundReport::to_json).collect();
    if out.len() == 1 {
        println!("{}", out[0]);
    } else {
        println!("{}", serde_json::Value::Array(out));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Certify(a) => cmd_certify(&a),
        Command::Find(a) => cmd_find(&a),
        Command::Construct(a) => cmd_construct(&a),
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Experiment(a) => experiment::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
