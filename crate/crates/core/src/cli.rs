//! The `fuss` command line: `run` replicated experiments, `generate`
//! random instances, `inspect` instance files.
//!
//! Every flag that is not given falls back to the per-problem defaults in
//! [`ProblemKind::defaults`]. CSV files go to the output directory, the
//! summary CSV goes to stdout, and progress messages go to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::engine::{GaParams, GaRng, StopRule};
use crate::error::Error;
use crate::harness::{
    instance_rng, run_experiment, run_experiment_with_diversity, write_outputs, write_summary_csv,
    DiversityConfig, ExperimentResult, ExperimentSpec,
};
use crate::problem::{Orientation, Problem};
use crate::problems::cuboid::{CuboidFunctionSpec, CuboidProblem};
use crate::problems::deceptive::{Deceptive2d, Deceptive2dSpec};
use crate::problems::sat::{CnfFormula, MaxSat};
use crate::problems::scp::{ScpInstance, ScpProblem};
use crate::problems::tsp::{TspInstance, TspProblem};
use crate::selection::SelectionScheme;

/// Budget used when `--budget` is omitted, in generations.
pub const DEFAULT_BUDGET_GENERATIONS: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    Deceptive2d,
    Cuboid,
    Tsp,
    TspRandom,
    Scp,
    Sat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDefaults {
    pub population: usize,
    /// `None` means a full initial population.
    pub initial_population: Option<usize>,
    pub crossover_probability: f64,
    pub mutate_probability: f64,
    pub replications: usize,
    pub schemes: Vec<SelectionScheme>,
}

impl ProblemKind {
    pub fn defaults(self) -> ProblemDefaults {
        use SelectionScheme::*;
        let d = |population,
                 initial_population,
                 crossover_probability,
                 mutate_probability,
                 replications,
                 schemes| {
            ProblemDefaults {
                population,
                initial_population,
                crossover_probability,
                mutate_probability,
                replications,
                schemes,
            }
        };
        match self {
            ProblemKind::Deceptive2d => d(
                10_000,
                Some(10),
                0.25,
                0.5,
                20,
                vec![FussInteger, RandomSearch, Tournament(2), Tournament(5)],
            ),
            ProblemKind::Cuboid => d(
                10_000,
                None,
                0.5,
                0.5,
                10,
                vec![FussInteger, Tournament(2), Tournament(5)],
            ),
            ProblemKind::TspRandom => d(
                5_000,
                None,
                0.5,
                0.5,
                50,
                vec![FussReal, Tournament(2), Tournament(5), Tournament(15)],
            ),
            ProblemKind::Tsp => d(
                5_000,
                None,
                1.0,
                0.2,
                5,
                vec![FussReal, Tournament(2), Tournament(5), Tournament(15)],
            ),
            ProblemKind::Scp => d(
                5_000,
                None,
                1.0,
                0.5,
                30,
                vec![FussInteger, Tournament(2), Tournament(5), Tournament(15)],
            ),
            ProblemKind::Sat => d(
                10_000,
                None,
                0.5,
                0.5,
                30,
                vec![FussInteger, Tournament(2), Tournament(5), Tournament(15)],
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    Cuboid,
    TspRandom,
}

#[derive(Debug, Parser)]
#[command(
    name = "fuss",
    version,
    about = "Steady-state GA experiments with fitness uniform and tournament selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a replicated experiment and write CSV results
    Run(RunArgs),
    /// Write a random problem instance to a file
    Generate(GenerateArgs),
    /// Print a summary of a problem instance
    Inspect(ProblemArgs),
}

#[derive(Debug, Args)]
struct ProblemArgs {
    #[arg(long, value_enum)]
    problem: ProblemKind,
    /// Instance file (required for tsp, scp and sat; optional for cuboid)
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Strip width of the deceptive 2D problem
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Left edge of the vertical strip (deceptive 2D)
    #[arg(long, default_value_t = 0.45)]
    strip_a: f64,
    /// Lower edge of the horizontal strip (deceptive 2D)
    #[arg(long, default_value_t = 0.45)]
    strip_b: f64,
    /// City count for tsp-random
    #[arg(long, default_value_t = 20)]
    cities: usize,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Selection scheme: fuss, fussint, tourN or rand (repeatable)
    #[arg(long = "scheme")]
    schemes: Vec<SelectionScheme>,
    /// Maximum population size
    #[arg(long)]
    pop: Option<usize>,
    /// Initial population size
    #[arg(long)]
    init_pop: Option<usize>,
    #[arg(long, value_parser = probability)]
    crossover_prob: Option<f64>,
    #[arg(long, value_parser = probability)]
    mutate_prob: Option<f64>,
    /// Iteration budget per run [default: 100 generations]
    #[arg(long)]
    budget: Option<u64>,
    /// Stop when the objective reaches this value (tour length and cover
    /// cost are minimized) [default: the known optimum, if any]
    #[arg(long, allow_hyphen_values = true)]
    target: Option<f64>,
    /// Replications per scheme
    #[arg(long)]
    reps: Option<usize>,
    /// Base seed; replication r uses seed + r
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Record Hamming diversity columns (sat only)
    #[arg(long)]
    diversity: bool,
    /// Iterations between trace samples [default: pop / 10]
    #[arg(long)]
    stride: Option<u64>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: GenerateKind,
    #[arg(long, default_value_t = 20)]
    cities: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file
    #[arg(long)]
    out: PathBuf,
}

fn probability(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("{p} is not in [0, 1]"))
    }
}

/// Where a run's problem instances come from.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSource {
    Deceptive2d(Deceptive2dSpec),
    /// A fixed function file, or a fresh random function per replication.
    Cuboid(Option<PathBuf>),
    Tsp(PathBuf),
    TspRandom {
        cities: usize,
    },
    Scp(PathBuf),
    Sat(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kind: ProblemKind,
    pub problem: ProblemSource,
    pub schemes: Vec<SelectionScheme>,
    /// True when `schemes` came from the defaults rather than `--scheme`.
    pub default_schemes: bool,
    pub params: GaParams,
    pub replications: usize,
    /// Target in display orientation.
    pub target: Option<f64>,
    pub seed: u64,
    pub out: PathBuf,
    pub diversity: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateConfig {
    pub kind: GenerateKind,
    pub cities: usize,
    pub seed: u64,
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliConfig {
    Run(RunConfig),
    Generate(GenerateConfig),
    Inspect(ProblemSource),
}

fn usage(msg: impl std::fmt::Display) -> clap::Error {
    Cli::command().error(ErrorKind::ValueValidation, msg)
}

fn resolve_problem(args: &ProblemArgs) -> Result<ProblemSource, clap::Error> {
    let instance = |required: bool| -> Result<Option<PathBuf>, clap::Error> {
        match &args.instance {
            Some(p) if !p.is_file() => Err(usage(format!(
                "instance file {} does not exist",
                p.display()
            ))),
            Some(p) => Ok(Some(p.clone())),
            None if required => Err(Cli::command().error(
                ErrorKind::MissingRequiredArgument,
                format!("--instance is required for --problem {:?}", args.problem),
            )),
            None => Ok(None),
        }
    };
    Ok(match args.problem {
        ProblemKind::Deceptive2d => ProblemSource::Deceptive2d(
            Deceptive2dSpec::new(args.strip_a, args.strip_b, args.delta).map_err(usage)?,
        ),
        ProblemKind::Cuboid => ProblemSource::Cuboid(instance(false)?),
        ProblemKind::Tsp => ProblemSource::Tsp(instance(true)?.unwrap()),
        ProblemKind::TspRandom => {
            if args.cities < 2 {
                return Err(usage("--cities must be at least 2"));
            }
            ProblemSource::TspRandom {
                cities: args.cities,
            }
        }
        ProblemKind::Scp => ProblemSource::Scp(instance(true)?.unwrap()),
        ProblemKind::Sat => ProblemSource::Sat(instance(true)?.unwrap()),
    })
}

fn resolve_run(args: RunArgs) -> Result<RunConfig, clap::Error> {
    let kind = args.problem.problem;
    let problem = resolve_problem(&args.problem)?;
    let defaults = kind.defaults();
    let max_population = args.pop.unwrap_or(defaults.population);
    if max_population == 0 {
        return Err(usage("--pop must be positive"));
    }
    let initial_population = args
        .init_pop
        .or(defaults.initial_population.map(|n| n.min(max_population)))
        .unwrap_or(max_population);
    let default_schemes = args.schemes.is_empty();
    let schemes = if default_schemes {
        defaults.schemes
    } else {
        args.schemes
    };
    if args.diversity && kind != ProblemKind::Sat {
        return Err(usage("--diversity is only available for --problem sat"));
    }
    let params = GaParams {
        max_population,
        initial_population,
        crossover_probability: args
            .crossover_prob
            .unwrap_or(defaults.crossover_probability),
        mutate_probability: args.mutate_prob.unwrap_or(defaults.mutate_probability),
        iteration_budget: args
            .budget
            .unwrap_or(DEFAULT_BUDGET_GENERATIONS * max_population as u64),
        rng_seed: args.seed,
        trace_stride: args.stride,
    };
    params.validate().map_err(usage)?;
    let replications = args.reps.unwrap_or(defaults.replications);
    if replications == 0 {
        return Err(usage("--reps must be at least 1"));
    }
    Ok(RunConfig {
        kind,
        problem,
        schemes,
        default_schemes,
        params,
        replications,
        target: args.target,
        seed: args.seed,
        out: args.out,
        diversity: args.diversity,
    })
}

/// Parses and resolves a full argument vector (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    match cli.command {
        Command::Run(args) => resolve_run(args).map(CliConfig::Run),
        Command::Generate(args) => {
            if args.kind == GenerateKind::TspRandom && args.cities < 2 {
                return Err(usage("--cities must be at least 2"));
            }
            Ok(CliConfig::Generate(GenerateConfig {
                kind: args.kind,
                cities: args.cities,
                seed: args.seed,
                out: args.out,
            }))
        }
        Command::Inspect(args) => {
            if args.problem == ProblemKind::Cuboid && args.instance.is_none() {
                return Err(Cli::command().error(
                    ErrorKind::MissingRequiredArgument,
                    "--instance is required to inspect a cuboid function",
                ));
            }
            resolve_problem(&args).map(CliConfig::Inspect)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(fs::read_to_string(path)?)
}

fn parse_file<T>(
    path: &Path,
    parse: impl Fn(&str) -> Result<T, crate::error::ParseError>,
) -> Result<T, Error> {
    parse(&read(path)?).map_err(|source| Error::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Serialized instance text for `generate`. Uses the same generator as
/// replication 0 of `run --seed <seed>`.
pub fn generate_instance(config: &GenerateConfig) -> Result<String, Error> {
    let mut rng = instance_rng(config.seed, 0);
    Ok(match config.kind {
        GenerateKind::Cuboid => CuboidFunctionSpec::generate(&mut rng).to_text(),
        GenerateKind::TspRandom => TspInstance::random(config.cities, &mut rng)?.to_text(),
    })
}

/// Human-readable `key: value` description of an instance.
pub fn inspect(source: &ProblemSource) -> Result<String, Error> {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(&v);
        out.push('\n');
    };
    match source {
        ProblemSource::Deceptive2d(s) => {
            line("problem", "deceptive2d".into());
            line("strips", format!("a={} b={} delta={}", s.a, s.b, s.delta));
            line("optimum_area", (s.delta * s.delta).to_string());
        }
        ProblemSource::Cuboid(path) => {
            let path = path
                .as_ref()
                .ok_or_else(|| Error::Argument("cuboid inspection needs a file".into()))?;
            let spec = parse_file(path, CuboidFunctionSpec::from_text)?;
            line("problem", "cuboid".into());
            line("cuboids", spec.cuboids.len().to_string());
            line("true_maximum", spec.true_maximum.to_string());
            line("argmax_witness", format!("{:?}", spec.argmax_witness.0));
            line(
                "invariants",
                spec.check_invariants().err().unwrap_or_else(|| "ok".into()),
            );
        }
        ProblemSource::Tsp(path) => {
            let inst = parse_file(path, TspInstance::parse)?;
            line("problem", "tsp".into());
            line("cities", inst.len().to_string());
        }
        ProblemSource::TspRandom { cities } => {
            line("problem", "tsp-random".into());
            line("cities", cities.to_string());
        }
        ProblemSource::Scp(path) => {
            let inst = parse_file(path, ScpInstance::parse_orlib)?;
            line("problem", "scp".into());
            line("rows", inst.rows().to_string());
            line("columns", inst.columns().to_string());
            line("integer_costs", inst.integer_costs().to_string());
        }
        ProblemSource::Sat(path) => {
            let f = parse_file(path, CnfFormula::parse_dimacs)?;
            line("problem", "sat".into());
            line("variables", f.num_vars().to_string());
            line("clauses", f.num_clauses().to_string());
            let max_len = f.clauses().iter().map(Vec::len).max().unwrap_or(0);
            let min_len = f.clauses().iter().map(Vec::len).min().unwrap_or(0);
            line("clause_sizes", format!("{min_len}..={max_len}"));
        }
    }
    Ok(out)
}

fn spec_for<P: Problem>(config: &RunConfig, sample: &P) -> ExperimentSpec {
    let schemes = config
        .schemes
        .iter()
        .map(|&s| match s {
            SelectionScheme::FussInteger if config.default_schemes && !sample.integer_fitness() => {
                SelectionScheme::FussReal
            }
            s => s,
        })
        .collect();
    let mut spec = ExperimentSpec::new(schemes, config.params.clone(), config.replications);
    spec.base_seed = config.seed;
    spec.stop = match config.target {
        Some(t) => StopRule::target(sample.orientation().from_display(t)),
        None => StopRule::budget(),
    };
    spec.stop_at_optimum = config.target.is_none();
    spec
}

fn experiment<P>(
    config: &RunConfig,
    make: impl Fn(usize, &mut GaRng) -> Result<P, Error>,
) -> Result<ExperimentResult, Error>
where
    P: Problem,
{
    let sample = make(0, &mut instance_rng(config.seed, 0))?;
    run_experiment(&spec_for(config, &sample), make)
}

/// Runs the configured experiment and writes its CSV outputs.
pub fn execute_run(config: &RunConfig) -> Result<ExperimentResult, Error> {
    let result = match &config.problem {
        ProblemSource::Deceptive2d(spec) => {
            let spec = *spec;
            experiment(config, move |_, _| Ok(Deceptive2d::new(spec)))?
        }
        ProblemSource::Cuboid(Some(path)) => {
            let spec = parse_file(path, CuboidFunctionSpec::from_text)?;
            experiment(config, |_, _| Ok(CuboidProblem::new(spec.clone())))?
        }
        ProblemSource::Cuboid(None) => experiment(config, |_, rng| {
            Ok(CuboidProblem::new(CuboidFunctionSpec::generate(rng)))
        })?,
        ProblemSource::Tsp(path) => {
            let inst = parse_file(path, TspInstance::parse)?;
            experiment(config, |_, _| Ok(TspProblem::new(inst.clone())))?
        }
        ProblemSource::TspRandom { cities } => {
            let n = *cities;
            experiment(config, move |_, rng| {
                Ok(TspProblem::new(TspInstance::random(n, rng)?))
            })?
        }
        ProblemSource::Scp(path) => {
            let inst = parse_file(path, ScpInstance::parse_orlib)?;
            experiment(config, |_, _| Ok(ScpProblem::new(inst.clone())))?
        }
        ProblemSource::Sat(path) => {
            let formula = parse_file(path, CnfFormula::parse_dimacs)?;
            let make = |_: usize, _: &mut GaRng| Ok(MaxSat::new(formula.clone()));
            let sample = MaxSat::new(formula.clone());
            let spec = spec_for(config, &sample);
            if config.diversity {
                run_experiment_with_diversity(&spec, DiversityConfig::default(), make)?
            } else {
                run_experiment(&spec, make)?
            }
        }
    };
    write_outputs(&result, &config.out)?;
    Ok(result)
}

fn describe(orientation: Orientation) -> &'static str {
    match orientation {
        Orientation::Maximize => "maximize",
        Orientation::Minimize => "minimize",
    }
}

fn dispatch(config: CliConfig) -> Result<(), Error> {
    let stdout = io::stdout();
    match config {
        CliConfig::Run(cfg) => {
            eprintln!(
                "running {:?}: {} scheme(s) x {} replication(s), population {}, budget {}",
                cfg.kind,
                cfg.schemes.len(),
                cfg.replications,
                cfg.params.max_population,
                cfg.params.iteration_budget
            );
            let result = execute_run(&cfg)?;
            eprintln!(
                "objective: {}; wrote {}",
                describe(result.orientation),
                cfg.out.display()
            );
            write_summary_csv(stdout.lock(), &result.summaries())?;
        }
        CliConfig::Generate(cfg) => {
            fs::write(&cfg.out, generate_instance(&cfg)?)?;
            eprintln!("wrote {}", cfg.out.display());
        }
        CliConfig::Inspect(source) => {
            stdout.lock().write_all(inspect(&source)?.as_bytes())?;
        }
    }
    Ok(())
}

/// Entry point of the `fuss` binary. Usage errors exit with status 2,
/// runtime failures with status 1.
pub fn main_with_args<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
