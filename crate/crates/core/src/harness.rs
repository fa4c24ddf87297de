//! Replicated experiments over several selection schemes.
//!
//! Replication `r` uses run seed `base_seed + r` for every scheme, and its
//! problem instance is built once from an independent stream of the same
//! seed, so all schemes in a replication see the same instance and the same
//! initial population; only selection differs.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rayon::prelude::*;

use crate::diversity::{DiversitySnapshot, DEFAULT_SAMPLE_CAP, DEFAULT_TOP_FRACTION};
use crate::engine::{run_with_observer, GaParams, GaRng, RunRecord, StopRule};
use crate::error::{EngineError, Error};
use crate::problem::{Orientation, Problem};
use crate::selection::SelectionScheme;
use crate::stats::{summarize, SummaryStat};

/// Generator for building the instance of replication `r`.
pub fn instance_rng(base_seed: u64, replication: usize) -> GaRng {
    let mut rng = GaRng::seed_from_u64(base_seed.wrapping_add(replication as u64));
    rng.set_stream(1);
    rng
}

/// Generator for diversity subsampling, independent of the run itself.
fn diversity_rng(run_seed: u64) -> GaRng {
    let mut rng = GaRng::seed_from_u64(run_seed);
    rng.set_stream(2);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiversityConfig {
    pub fraction: f64,
    pub sample_cap: usize,
}

impl Default for DiversityConfig {
    fn default() -> Self {
        DiversityConfig {
            fraction: DEFAULT_TOP_FRACTION,
            sample_cap: DEFAULT_SAMPLE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub schemes: Vec<SelectionScheme>,
    /// `rng_seed` is ignored; each replication derives its own.
    pub params: GaParams,
    pub replications: usize,
    pub stop: StopRule,
    /// Stop each run at its instance's known optimum when `stop` has no target.
    pub stop_at_optimum: bool,
    pub base_seed: u64,
}

impl ExperimentSpec {
    pub fn new(schemes: Vec<SelectionScheme>, params: GaParams, replications: usize) -> Self {
        ExperimentSpec {
            schemes,
            params,
            replications,
            stop: StopRule::budget(),
            stop_at_optimum: false,
            base_seed: 0,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.replications == 0 {
            return Err(Error::Argument("replications must be at least 1".into()));
        }
        if self.schemes.is_empty() {
            return Err(Error::Argument(
                "at least one selection scheme is required".into(),
            ));
        }
        self.params.validate()?;
        Ok(())
    }

    fn stop_for<P: Problem>(&self, problem: &P) -> StopRule {
        match (self.stop.target, self.stop_at_optimum) {
            (None, true) => StopRule {
                target: problem.known_optimum(),
            },
            _ => self.stop,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationRecord {
    pub scheme: SelectionScheme,
    pub replication: usize,
    pub seed: u64,
    pub run: RunRecord,
    pub diversity: Vec<DiversitySnapshot>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub orientation: Orientation,
    pub schemes: Vec<SelectionScheme>,
    /// Ordered by scheme (in `ExperimentSpec::schemes` order), then replication.
    pub records: Vec<ReplicationRecord>,
}

/// One row of the per-experiment summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSummary {
    pub scheme: SelectionScheme,
    pub stat: Option<SummaryStat>,
    pub failures: usize,
}

/// Mean Hamming diversity across replications at one snapshot iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiversityPoint {
    pub iteration: u64,
    pub generation: f64,
    pub whole: Option<f64>,
    pub top: Option<f64>,
}

/// Mean best-ever fitness across replications at one trace iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub iteration: u64,
    pub generation: f64,
    pub stat: SummaryStat,
}

impl ExperimentResult {
    pub fn records_for(
        &self,
        scheme: SelectionScheme,
    ) -> impl Iterator<Item = &ReplicationRecord> + '_ {
        self.records.iter().filter(move |r| r.scheme == scheme)
    }

    /// Generations to reach the target; runs that never reach it are
    /// excluded from the statistic and counted as failures.
    pub fn generations_summary(&self, scheme: SelectionScheme) -> SchemeSummary {
        let (hits, misses): (Vec<_>, Vec<_>) = self
            .records_for(scheme)
            .map(|r| r.run.generations_to_target())
            .partition(Option::is_some);
        let values: Vec<f64> = hits.into_iter().flatten().collect();
        SchemeSummary {
            scheme,
            stat: summarize(&values).ok(),
            failures: misses.len(),
        }
    }

    /// Final best-ever objective value in display orientation.
    pub fn final_best_summary(&self, scheme: SelectionScheme) -> SchemeSummary {
        let values: Vec<f64> = self
            .records_for(scheme)
            .map(|r| self.orientation.to_display(r.run.best_ever))
            .collect();
        SchemeSummary {
            scheme,
            stat: summarize(&values).ok(),
            failures: 0,
        }
    }

    /// Mean best-ever curve (display orientation) over the union of trace
    /// iterations. Runs that stopped early hold their final value.
    pub fn mean_curve(&self, scheme: SelectionScheme) -> Vec<CurvePoint> {
        let runs: Vec<&RunRecord> = self.records_for(scheme).map(|r| &r.run).collect();
        let Some(first) = runs.first() else {
            return Vec::new();
        };
        let mut iterations: Vec<u64> = runs
            .iter()
            .flat_map(|r| r.trace.iter().map(|p| p.iteration))
            .collect();
        iterations.sort_unstable();
        iterations.dedup();
        iterations
            .into_iter()
            .map(|it| {
                let values: Vec<f64> = runs
                    .iter()
                    .map(|r| self.orientation.to_display(r.best_ever_at(it).unwrap()))
                    .collect();
                CurvePoint {
                    iteration: it,
                    generation: it as f64 / first.max_population as f64,
                    stat: summarize(&values).expect("at least one replication"),
                }
            })
            .collect()
    }

    /// Replication-mean diversity at each snapshot iteration. Runs without a
    /// snapshot at an iteration (because they stopped early) are skipped.
    pub fn mean_diversity(&self, scheme: SelectionScheme) -> Vec<DiversityPoint> {
        let mut acc: BTreeMap<u64, [(f64, usize); 2]> = BTreeMap::new();
        let mut max_population = 1;
        for rec in self.records_for(scheme) {
            max_population = rec.run.max_population;
            for snap in &rec.diversity {
                let slot = acc.entry(snap.iteration).or_default();
                for (i, v) in [snap.whole_population_diversity, snap.top_fraction_diversity]
                    .into_iter()
                    .enumerate()
                {
                    if let Some(v) = v {
                        slot[i].0 += v;
                        slot[i].1 += 1;
                    }
                }
            }
        }
        let mean = |(sum, n): (f64, usize)| (n > 0).then(|| sum / n as f64);
        acc.into_iter()
            .map(|(iteration, [whole, top])| DiversityPoint {
                iteration,
                generation: iteration as f64 / max_population as f64,
                whole: mean(whole),
                top: mean(top),
            })
            .collect()
    }

    /// Summary rows: generations-to-target when runs had a target,
    /// otherwise final best-ever value.
    pub fn summaries(&self) -> Vec<SchemeSummary> {
        let targeted = self.records.iter().any(|r| r.run.target_reached());
        self.schemes
            .iter()
            .map(|&s| {
                if targeted {
                    self.generations_summary(s)
                } else {
                    self.final_best_summary(s)
                }
            })
            .collect()
    }
}

/// Runs every scheme on every replication's instance.
///
/// `make_problem(r, rng)` builds the instance for replication `r`.
pub fn run_experiment<P, F>(
    spec: &ExperimentSpec,
    make_problem: F,
) -> Result<ExperimentResult, Error>
where
    P: Problem,
    F: Fn(usize, &mut GaRng) -> Result<P, Error>,
{
    execute(spec, make_problem, |problem, scheme, params, stop| {
        run_with_observer(problem, scheme, params, stop, |_, _| {}).map(|run| (run, Vec::new()))
    })
}

/// Like [`run_experiment`], also recording a diversity snapshot at every
/// trace sample.
pub fn run_experiment_with_diversity<P, F>(
    spec: &ExperimentSpec,
    config: DiversityConfig,
    make_problem: F,
) -> Result<ExperimentResult, Error>
where
    P: Problem,
    P::Genome: AsRef<[bool]>,
    F: Fn(usize, &mut GaRng) -> Result<P, Error>,
{
    execute(spec, make_problem, move |problem, scheme, params, stop| {
        let mut rng = diversity_rng(params.rng_seed);
        let mut snapshots = Vec::new();
        let run = run_with_observer(problem, scheme, params, stop, |it, pop| {
            snapshots.push(DiversitySnapshot::capture(
                it,
                pop,
                config.fraction,
                config.sample_cap,
                &mut rng,
            ));
        })?;
        Ok((run, snapshots))
    })
}

type RunOutput = (RunRecord, Vec<DiversitySnapshot>);

fn execute<P, F, X>(
    spec: &ExperimentSpec,
    make_problem: F,
    run_one: X,
) -> Result<ExperimentResult, Error>
where
    P: Problem,
    F: Fn(usize, &mut GaRng) -> Result<P, Error>,
    X: Fn(&P, SelectionScheme, &GaParams, &StopRule) -> Result<RunOutput, EngineError> + Sync,
{
    spec.validate()?;
    let problems = (0..spec.replications)
        .map(|r| make_problem(r, &mut instance_rng(spec.base_seed, r)))
        .collect::<Result<Vec<P>, Error>>()?;
    let orientation = problems[0].orientation();

    let jobs: Vec<(SelectionScheme, usize)> = spec
        .schemes
        .iter()
        .flat_map(|&s| (0..spec.replications).map(move |r| (s, r)))
        .collect();
    // rayon's collect keeps job order, so results never depend on timing
    let outputs: Vec<_> = jobs
        .par_iter()
        .map(|&(scheme, r)| {
            let seed = spec.base_seed.wrapping_add(r as u64);
            let params = GaParams {
                rng_seed: seed,
                ..spec.params.clone()
            };
            let stop = spec.stop_for(&problems[r]);
            run_one(&problems[r], scheme, &params, &stop)
                .map(|(run, diversity)| ReplicationRecord {
                    scheme,
                    replication: r,
                    seed,
                    run,
                    diversity,
                })
                .map_err(|source| Error::Run {
                    scheme: scheme.to_string(),
                    replication: r,
                    source,
                })
        })
        .collect();
    let records = outputs.into_iter().collect::<Result<Vec<_>, Error>>()?;
    Ok(ExperimentResult {
        orientation,
        schemes: spec.schemes.clone(),
        records,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Per-run trace: `iteration, generation, best_ever_fitness` and, when
/// diversity was recorded, `whole_diversity, top_diversity`.
pub fn write_trace_csv<W: Write>(
    out: W,
    record: &ReplicationRecord,
    orientation: Orientation,
) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    let with_div = !record.diversity.is_empty();
    let mut header = vec!["iteration", "generation", "best_ever_fitness"];
    if with_div {
        header.extend(["whole_diversity", "top_diversity"]);
    }
    w.write_record(&header)?;
    for (i, p) in record.run.trace.iter().enumerate() {
        let mut row = vec![
            p.iteration.to_string(),
            p.generation.to_string(),
            orientation.to_display(p.best_ever).to_string(),
        ];
        if with_div {
            let snap = &record.diversity[i];
            debug_assert_eq!(snap.iteration, p.iteration);
            row.push(opt(snap.whole_population_diversity));
            row.push(opt(snap.top_fraction_diversity));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// `scheme, mean, stddev, stderr, ci_low, ci_high, n, failures`.
pub fn write_summary_csv<W: Write>(out: W, rows: &[SchemeSummary]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "scheme", "mean", "stddev", "stderr", "ci_low", "ci_high", "n", "failures",
    ])?;
    for row in rows {
        let s = row.stat.as_ref();
        w.write_record([
            row.scheme.to_string(),
            opt(s.map(|s| s.mean)),
            opt(s.and_then(|s| s.sample_stddev)),
            opt(s.and_then(|s| s.standard_error)),
            opt(s.and_then(|s| s.ci95_low)),
            opt(s.and_then(|s| s.ci95_high)),
            s.map(|s| s.n).unwrap_or(0).to_string(),
            row.failures.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Plot data: `scheme, iteration, generation, mean_best_ever, ci_low, ci_high, n`.
pub fn write_curve_csv<W: Write>(out: W, result: &ExperimentResult) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "scheme",
        "iteration",
        "generation",
        "mean_best_ever",
        "ci_low",
        "ci_high",
        "n",
    ])?;
    for &scheme in &result.schemes {
        for p in result.mean_curve(scheme) {
            w.write_record([
                scheme.to_string(),
                p.iteration.to_string(),
                p.generation.to_string(),
                p.stat.mean.to_string(),
                opt(p.stat.ci95_low),
                opt(p.stat.ci95_high),
                p.stat.n.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes `summary.csv`, `curve.csv` and `traces/<scheme>_rep<r>.csv` under `dir`.
pub fn write_outputs(result: &ExperimentResult, dir: &Path) -> Result<(), Error> {
    let traces = dir.join("traces");
    fs::create_dir_all(&traces)?;
    write_summary_csv(
        fs::File::create(dir.join("summary.csv"))?,
        &result.summaries(),
    )?;
    write_curve_csv(fs::File::create(dir.join("curve.csv"))?, result)?;
    for rec in &result.records {
        let name = format!("{}_rep{}.csv", rec.scheme, rec.replication);
        write_trace_csv(
            fs::File::create(traces.join(name))?,
            rec,
            result.orientation,
        )?;
    }
    Ok(())
}
