//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.
//!
//! ```text
//! cargo test -p fuss --test acceptance
//! ```

use std::collections::HashMap;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};

use fuss::cli::{execute_run, parse_args, CliConfig};
use fuss::engine::{run, GaParams, GaRng, StopRule};
use fuss::harness::{
    instance_rng, run_experiment, run_experiment_with_diversity, write_outputs, DiversityConfig,
    ExperimentResult, ExperimentSpec,
};
use fuss::problems::cuboid::{CuboidFunctionSpec, CuboidProblem};
use fuss::problems::deceptive::{Deceptive2d, Deceptive2dSpec};
use fuss::problems::sat::{CnfFormula, MaxSat};
use fuss::problems::scp::{ScpInstance, ScpProblem};
use fuss::problems::tsp::{TspInstance, TspProblem};
use fuss::selection::selection_probabilities;
use fuss::stats::{scaling_fit, summarize};
use fuss::{Individual, ParseError, Population, SelectionScheme};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

const ALL_SCHEMES: [SelectionScheme; 6] = [
    SelectionScheme::FussReal,
    SelectionScheme::FussInteger,
    SelectionScheme::Tournament(2),
    SelectionScheme::Tournament(5),
    SelectionScheme::Tournament(15),
    SelectionScheme::RandomSearch,
];

// ---------------------------------------------------------------------------
// 1. empirical selection frequencies against the exact probabilities

fn random_fitness_pattern(kind: usize, n: usize, rng: &mut GaRng) -> Vec<f64> {
    match kind % 5 {
        // many ties on few levels
        0 => (0..n).map(|_| rng.random_range(0..8) as f64).collect(),
        // sparse, wide spread
        1 => (0..n).map(|_| rng.random_range(0..1000) as f64).collect(),
        // crowded band plus a lone leader
        2 => {
            let mut v: Vec<f64> = (0..n - 1)
                .map(|_| rng.random_range(50..=70) as f64)
                .collect();
            v.push(73.0);
            v
        }
        // two clusters with a gap
        3 => (0..n)
            .map(|i| {
                if i % 3 == 0 {
                    rng.random_range(0..5) as f64
                } else {
                    rng.random_range(40..45) as f64
                }
            })
            .collect(),
        // skewed: geometric-like counts per level
        _ => (0..n)
            .map(|_| {
                let mut level = 0;
                while level < 30 && rng.random_bool(0.7) {
                    level += 1;
                }
                level as f64
            })
            .collect(),
    }
}

fn criterion_selection_oracle() -> Outcome {
    const POPULATIONS: usize = 50;
    const DRAWS: usize = 100_000;
    let mut rng = GaRng::seed_from_u64(11);
    let mut worst = (0.0, String::new());
    for p in 0..POPULATIONS {
        let n = rng.random_range(5..=200);
        let fitness = random_fitness_pattern(p, n, &mut rng);
        let pop: Population<()> = fitness.iter().map(|&f| Individual::new((), f)).collect();
        for scheme in ALL_SCHEMES {
            let exact = selection_probabilities(&pop, scheme).expect("integer fitness");
            let mut counts = vec![0usize; n];
            for _ in 0..DRAWS {
                counts[scheme.select(&pop, &mut rng)] += 1;
            }
            let tv: f64 = 0.5
                * counts
                    .iter()
                    .zip(&exact)
                    .map(|(&c, &q)| (c as f64 / DRAWS as f64 - q).abs())
                    .sum::<f64>();
            if tv > worst.0 {
                worst = (tv, format!("population {p} (n={n}) {scheme}"));
            }
        }
    }
    Outcome::new(
        worst.0 < 0.02,
        format!(
            "max total variation {:.4} at {} (limit 0.02)",
            worst.0, worst.1
        ),
    )
}

// ---------------------------------------------------------------------------
// 2. lone leader above a crowded band

fn criterion_selection_intensity() -> Outcome {
    let mut pop: Population<()> = (0..10_000)
        .map(|i| Individual::new((), (50 + i % 21) as f64))
        .collect();
    let leader = pop.insert(Individual::new((), 73.0));
    let n = pop.len() as f64;

    let fuss = selection_probabilities(&pop, SelectionScheme::FussInteger).unwrap()[leader];
    let tour = selection_probabilities(&pop, SelectionScheme::Tournament(15)).unwrap()[leader];
    // unique maximum wins any tournament it enters
    let tour_direct = 1.0 - ((n - 1.0) / n).powi(15);
    let ratio = fuss / tour;
    let passed = fuss >= 0.06
        && (tour - 0.0015).abs() < 1e-4
        && (tour - tour_direct).abs() < 1e-12
        && ratio > 50.0;
    Outcome::new(
        passed,
        format!("fussint {fuss:.5} (>= 0.06), tour15 {tour:.6} (~0.0015), ratio {ratio:.1} (> 50)"),
    )
}

// ---------------------------------------------------------------------------
// 3. deceptive 2D scaling exponents

fn criterion_deceptive_scaling() -> Outcome {
    let schemes = vec![
        SelectionScheme::FussInteger,
        SelectionScheme::RandomSearch,
        SelectionScheme::Tournament(2),
    ];
    let params = GaParams {
        max_population: 1000,
        initial_population: 10,
        crossover_probability: 0.25,
        mutate_probability: 0.5,
        iteration_budget: 20_000_000,
        ..GaParams::default()
    };
    let mut points = vec![Vec::new(); schemes.len()];
    let mut failures = 0;
    for delta in [0.2, 0.1, 0.05] {
        let mut spec = ExperimentSpec::new(schemes.clone(), params.clone(), 20);
        spec.stop_at_optimum = true;
        let result = run_experiment(&spec, |_, _| {
            Ok(Deceptive2d::new(Deceptive2dSpec::centered(delta)?))
        })
        .expect("experiment runs");
        for (i, &s) in schemes.iter().enumerate() {
            let summary = result.generations_summary(s);
            failures += summary.failures;
            if let Some(stat) = summary.stat {
                points[i].push((delta, stat.mean));
            }
        }
    }
    let slopes: Vec<f64> = points
        .iter()
        .map(|p| scaling_fit(p).unwrap_or(f64::NAN))
        .collect();
    let in_range = |s: f64, lo: f64, hi: f64| (lo..=hi).contains(&s);
    let checks = [
        in_range(slopes[0], -1.5, -0.5),
        in_range(slopes[1], -2.6, -1.4),
        in_range(slopes[2], -2.6, -1.4),
    ];
    Outcome::new(
        failures == 0 && checks.iter().all(|&c| c),
        format!(
            "slopes fussint {:.3} [-1.5,-0.5] {}, rand {:.3} [-2.6,-1.4] {}, tour2 {:.3} [-2.6,-1.4] {}; unsolved runs {failures}",
            slopes[0],
            mark(checks[0]),
            slopes[1],
            mark(checks[1]),
            slopes[2],
            mark(checks[2]),
        ),
    )
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "OUT"
    }
}

// ---------------------------------------------------------------------------
// 4. random cuboid functions

fn criterion_cuboids() -> Outcome {
    const FUNCTIONS: usize = 20;
    let schemes = vec![SelectionScheme::FussInteger, SelectionScheme::Tournament(2)];
    let params = GaParams {
        max_population: 1000,
        initial_population: 1000,
        iteration_budget: 2_000_000,
        ..GaParams::default()
    };
    let mut wins = 0;
    for f in 0..FUNCTIONS {
        let function = CuboidFunctionSpec::generate(&mut instance_rng(500, f));
        let mut spec = ExperimentSpec::new(schemes.clone(), params.clone(), 5);
        spec.stop_at_optimum = true;
        spec.base_seed = 100 * f as u64;
        let result = run_experiment(&spec, |_, _| Ok(CuboidProblem::new(function.clone())))
            .expect("experiment runs");
        // unsolved runs are charged the whole budget
        let mean = |s| {
            let g: Vec<f64> = result
                .records_for(s)
                .map(|r| {
                    r.run
                        .generations_to_target()
                        .unwrap_or_else(|| r.run.generations())
                })
                .collect();
            g.iter().sum::<f64>() / g.len() as f64
        };
        if mean(schemes[0]) < mean(schemes[1]) {
            wins += 1;
        }
    }
    let share = wins as f64 / FUNCTIONS as f64;
    Outcome::new(
        share >= 0.7,
        format!("fussint faster than tour2 on {wins}/{FUNCTIONS} functions (need >= 70%)"),
    )
}

// ---------------------------------------------------------------------------
// 5. max-SAT dynamics and diversity

fn criterion_sat_dynamics() -> Outcome {
    let (formula, _) = CnfFormula::random_planted(50, 215, &mut instance_rng(77, 0));
    let fuss = SelectionScheme::FussInteger;
    let tour5 = SelectionScheme::Tournament(5);
    let tour15 = SelectionScheme::Tournament(15);
    let params = GaParams {
        max_population: 2000,
        initial_population: 2000,
        iteration_budget: 20 * 2000,
        ..GaParams::default()
    };
    let spec = ExperimentSpec::new(vec![fuss, tour5, tour15], params, 10);
    let result = run_experiment_with_diversity(&spec, DiversityConfig::default(), |_, _| {
        Ok(MaxSat::new(formula.clone()))
    })
    .expect("experiment runs");

    let curve = |s| result.mean_curve(s);
    let (cf, c5, c15) = (curve(fuss), curve(tour5), curve(tour15));
    let early: Vec<(f64, f64, f64)> = cf
        .iter()
        .zip(&c15)
        .filter(|(p, _)| p.generation > 0.0 && p.generation <= 0.5)
        .map(|(a, b)| (a.generation, a.stat.mean, b.stat.mean))
        .collect();
    let part_a = !early.is_empty() && early.iter().all(|&(_, f, t)| f > t);

    let at_20 = |c: &[fuss::harness::CurvePoint]| {
        c.iter()
            .find(|p| (p.generation - 20.0).abs() < 1e-9)
            .map(|p| p.stat.mean)
            .expect("trace reaches generation 20")
    };
    let (f20, t20) = (at_20(&cf), at_20(&c5));
    let part_b = t20 >= f20;

    let df = result.mean_diversity(fuss);
    let d5 = result.mean_diversity(tour5);
    let late: Vec<_> = df
        .iter()
        .zip(&d5)
        .filter(|(p, _)| p.generation > 1.0)
        .collect();
    let whole_ok = late
        .iter()
        .all(|(a, b)| a.whole.unwrap_or(0.0) > b.whole.unwrap_or(f64::INFINITY));
    let (last_f, last_5) = (df.last().unwrap(), d5.last().unwrap());
    let top_ok = last_f.top.unwrap_or(f64::INFINITY) < last_5.top.unwrap_or(0.0);

    let early_lead = early.iter().filter(|&&(_, f, t)| f > t).count();
    Outcome::new(
        part_a && part_b && whole_ok && top_ok,
        format!(
            "(a) fussint > tour15 at {early_lead}/{} samples in (0,0.5] {}; \
             (b) gen 20 tour5 {t20:.2} vs fussint {f20:.2} {}; \
             (c) whole diversity fussint > tour5 after gen 1 {}, final top-10% fussint {:.3} vs tour5 {:.3} {}",
            early.len(),
            mark(part_a),
            mark(part_b),
            mark(whole_ok),
            last_f.top.unwrap_or(f64::NAN),
            last_5.top.unwrap_or(f64::NAN),
            mark(top_ok),
        ),
    )
}

// ---------------------------------------------------------------------------
// 6. engine reaches brute-force optima on small instances

fn tsp_oracle(inst: &TspInstance) -> f64 {
    fn extend(
        inst: &TspInstance,
        path: &mut Vec<usize>,
        used: &mut [bool],
        len: f64,
        best: &mut f64,
    ) {
        let n = used.len();
        if path.len() == n {
            let total = len + inst.distance(path[n - 1], path[0]);
            *best = best.min(total);
            return;
        }
        for c in 1..n {
            if !used[c] {
                used[c] = true;
                let step = inst.distance(*path.last().unwrap(), c);
                path.push(c);
                extend(inst, path, used, len + step, best);
                path.pop();
                used[c] = false;
            }
        }
    }
    let n = inst.len();
    let mut used = vec![false; n];
    used[0] = true;
    let mut best = f64::INFINITY;
    extend(inst, &mut vec![0], &mut used, 0.0, &mut best);
    best
}

fn scp_oracle(inst: &ScpInstance) -> f64 {
    let n = inst.columns();
    (0u32..1 << n)
        .filter(|mask| {
            (0..inst.rows()).all(|r| inst.covering(r).iter().any(|&c| (mask >> c) & 1 == 1))
        })
        .map(|mask| {
            (0..n)
                .filter(|&c| (mask >> c) & 1 == 1)
                .map(|c| inst.costs()[c])
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

fn sat_oracle(f: &CnfFormula) -> usize {
    (0u32..1 << f.num_vars())
        .map(|bits| {
            f.clauses()
                .iter()
                .filter(|clause| {
                    clause.iter().any(|&lit| {
                        let value = (bits >> (lit.unsigned_abs() - 1)) & 1 == 1;
                        value == (lit > 0)
                    })
                })
                .count()
        })
        .max()
        .unwrap()
}

fn criterion_brute_force() -> Outcome {
    let params = |seed| GaParams {
        max_population: 200,
        initial_population: 200,
        iteration_budget: 400 * 200,
        rng_seed: seed,
        ..GaParams::default()
    };
    let mut misses: Vec<String> = Vec::new();
    let mut runs = 0;
    let mut check = |label: &str, scheme: SelectionScheme, reached: bool, seed: u64| {
        runs += 1;
        if !reached {
            misses.push(format!("{label}/{scheme}/seed{seed}"));
        }
    };
    let mut rng = GaRng::seed_from_u64(6);

    let tsp_instances = [
        TspInstance::random(7, &mut rng).unwrap(),
        TspInstance::from_coordinates(
            (0..8)
                .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
                .collect(),
        )
        .unwrap(),
    ];
    for (i, inst) in tsp_instances.iter().enumerate() {
        let best = tsp_oracle(inst);
        let problem = TspProblem::new(inst.clone());
        for scheme in ALL_SCHEMES
            .into_iter()
            .filter(|s| *s != SelectionScheme::FussInteger)
        {
            for seed in 0..5 {
                let rec = run(&problem, scheme, &params(seed), &StopRule::target(-best)).unwrap();
                check(&format!("tsp{i}"), scheme, rec.target_reached(), seed);
            }
        }
    }

    for i in 0..2 {
        let costs: Vec<f64> = (0..10).map(|_| rng.random_range(1..=20) as f64).collect();
        let rows: Vec<Vec<usize>> = (0..10)
            .map(|_| {
                let k = rng.random_range(1..=4);
                rand::seq::index::sample(&mut rng, 10, k).into_vec()
            })
            .collect();
        let inst = ScpInstance::new(costs, rows).unwrap();
        let best = scp_oracle(&inst);
        let problem = ScpProblem::new(inst);
        for scheme in ALL_SCHEMES {
            for seed in 0..5 {
                let rec = run(&problem, scheme, &params(seed), &StopRule::target(-best)).unwrap();
                check(&format!("scp{i}"), scheme, rec.target_reached(), seed);
            }
        }
    }

    for i in 0..2 {
        // not planted: the optimum may leave clauses unsatisfied
        let clauses: Vec<Vec<i32>> = (0..80)
            .map(|_| {
                rand::seq::index::sample(&mut rng, 16, 3)
                    .into_iter()
                    .map(|v| {
                        if rng.random_bool(0.5) {
                            v as i32 + 1
                        } else {
                            -(v as i32 + 1)
                        }
                    })
                    .collect()
            })
            .collect();
        let formula = CnfFormula::new(16, clauses).unwrap();
        let best = sat_oracle(&formula) as f64;
        let problem = MaxSat::new(formula);
        for scheme in ALL_SCHEMES {
            for seed in 0..5 {
                let rec = run(&problem, scheme, &params(seed), &StopRule::target(best)).unwrap();
                check(&format!("sat{i}"), scheme, rec.target_reached(), seed);
            }
        }
    }

    Outcome::new(
        misses.is_empty(),
        format!(
            "{}/{runs} runs reached the enumerated optimum{}",
            runs - misses.len(),
            if misses.is_empty() {
                String::new()
            } else {
                format!("; missed: {}", misses.join(", "))
            }
        ),
    )
}

// ---------------------------------------------------------------------------
// 7. summary statistics and scaling fit

fn criterion_statistics() -> Outcome {
    let s = summarize(&[2.0, 4.0, 6.0]).unwrap();
    // independent arithmetic: sd = sqrt(((2-4)^2 + 0 + (6-4)^2) / 2) = 2
    let se = 2.0 / 3f64.sqrt();
    let stats_ok = (s.mean - 4.0).abs() < 1e-12
        && (s.sample_stddev.unwrap() - 2.0).abs() < 1e-12
        && (s.standard_error.unwrap() - 1.1547).abs() < 1e-4
        && (s.standard_error.unwrap() - se).abs() < 1e-12
        && (s.ci95_low.unwrap() - 1.737).abs() < 1e-3
        && (s.ci95_high.unwrap() - 6.263).abs() < 1e-3;
    let law = |k: f64| -> Vec<(f64, f64)> {
        [0.2, 0.1, 0.05, 0.025]
            .iter()
            .map(|&d: &f64| (d, 3.5 * d.powf(k)))
            .collect()
    };
    let s1 = scaling_fit(&law(-1.0)).unwrap();
    let s2 = scaling_fit(&law(-2.0)).unwrap();
    let fit_ok = (s1 + 1.0).abs() < 1e-9 && (s2 + 2.0).abs() < 1e-9;
    Outcome::new(
        stats_ok && fit_ok,
        format!(
            "mean {} sd {:.4} se {:.4} ci ({:.3}, {:.3}); slopes {s1:.12} {s2:.12}",
            s.mean,
            s.sample_stddev.unwrap(),
            s.standard_error.unwrap(),
            s.ci95_low.unwrap(),
            s.ci95_high.unwrap()
        ),
    )
}

// ---------------------------------------------------------------------------
// 8. byte-identical CSV output on rerun

fn read_tree(dir: &Path) -> HashMap<String, Vec<u8>> {
    let mut files = HashMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let key = path.strip_prefix(dir).unwrap().display().to_string();
                files.insert(key, fs::read(&path).unwrap());
            }
        }
    }
    files
}

fn sat_experiment() -> ExperimentResult {
    let (formula, _) = CnfFormula::random_planted(30, 120, &mut instance_rng(5, 0));
    let params = GaParams {
        max_population: 300,
        initial_population: 300,
        iteration_budget: 3000,
        ..GaParams::default()
    };
    let mut spec = ExperimentSpec::new(
        vec![SelectionScheme::FussInteger, SelectionScheme::Tournament(5)],
        params,
        4,
    );
    spec.base_seed = 9;
    run_experiment_with_diversity(&spec, DiversityConfig::default(), |_, _| {
        Ok(MaxSat::new(formula.clone()))
    })
    .unwrap()
}

fn criterion_determinism() -> Outcome {
    let root = tempfile::tempdir().unwrap();
    let mut compared = 0;
    let mut mismatched = Vec::new();

    let (a, b) = (root.path().join("sat_a"), root.path().join("sat_b"));
    write_outputs(&sat_experiment(), &a).unwrap();
    write_outputs(&sat_experiment(), &b).unwrap();
    let mut pairs = vec![(a, b)];

    for tag in ["cli_a", "cli_b"] {
        let out = root.path().join(tag);
        let argv = [
            "fuss",
            "run",
            "--problem",
            "tsp-random",
            "--cities",
            "12",
            "--pop",
            "200",
            "--budget",
            "4000",
            "--reps",
            "3",
            "--scheme",
            "fuss",
            "--scheme",
            "tour2",
            "--seed",
            "21",
            "--out",
        ];
        let mut argv: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
        argv.push(out.display().to_string());
        let CliConfig::Run(cfg) = parse_args(argv).unwrap() else {
            unreachable!()
        };
        execute_run(&cfg).unwrap();
    }
    pairs.push((root.path().join("cli_a"), root.path().join("cli_b")));

    for (a, b) in pairs {
        let (ta, tb) = (read_tree(&a), read_tree(&b));
        if ta.len() != tb.len() {
            mismatched.push(format!("{}: file sets differ", a.display()));
        }
        for (name, bytes) in &ta {
            compared += 1;
            if tb.get(name) != Some(bytes) {
                mismatched.push(name.clone());
            }
        }
    }
    Outcome::new(
        mismatched.is_empty() && compared > 10,
        format!("{compared} CSV files compared, {} differ", mismatched.len()),
    )
}

// ---------------------------------------------------------------------------
// 9. parser round trips and the malformed corpus

fn round_trips() -> Result<(), String> {
    let mut rng = GaRng::seed_from_u64(4);
    let (formula, _) = CnfFormula::random_planted(150, 645, &mut rng);
    if CnfFormula::parse_dimacs(&formula.to_dimacs()).map_err(|e| e.to_string())? != formula {
        return Err("DIMACS round trip changed the formula".into());
    }

    let costs: Vec<f64> = (0..40).map(|_| rng.random_range(1..=100) as f64).collect();
    let rows: Vec<Vec<usize>> = (0..25)
        .map(|_| {
            let k = rng.random_range(1..=15);
            rand::seq::index::sample(&mut rng, 40, k).into_vec()
        })
        .collect();
    let scp = ScpInstance::new(costs, rows).unwrap();
    if ScpInstance::parse_orlib(&scp.to_orlib()).map_err(|e| e.to_string())? != scp {
        return Err("OR-Library round trip changed the instance".into());
    }

    let points: Vec<(f64, f64)> = (0..30)
        .map(|_| (rng.random_range(-1e3..1e3), rng.random_range(-1e3..1e3)))
        .collect();
    let coords = TspInstance::from_coordinates(points).unwrap();
    if TspInstance::parse(&coords.to_text()).map_err(|e| e.to_string())? != coords {
        return Err("coordinate TSP round trip changed the instance".into());
    }
    let matrix = TspInstance::random(20, &mut rng).unwrap();
    if TspInstance::parse(&matrix.to_text()).map_err(|e| e.to_string())? != matrix {
        return Err("matrix TSP round trip changed the instance".into());
    }
    Ok(())
}

fn malformed_corpus() -> Result<usize, String> {
    type Parser = fn(&str) -> Result<(), ParseError>;
    let kinds: [(&str, Parser); 3] = [
        ("dimacs", |t| CnfFormula::parse_dimacs(t).map(drop)),
        ("orlib", |t| ScpInstance::parse_orlib(t).map(drop)),
        ("tsp", |t| TspInstance::parse(t).map(drop)),
    ];
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/malformed");
    let mut checked = 0;
    for (kind, parse) in kinds {
        let dir = base.join(kind);
        let manifest = fs::read_to_string(dir.join("expected_lines")).map_err(|e| e.to_string())?;
        let mut count = 0;
        for line in manifest
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        {
            let (file, expected) = line.split_once(' ').ok_or("bad manifest line")?;
            let expected: usize = expected.trim().parse().map_err(|_| "bad manifest line")?;
            let text = fs::read_to_string(dir.join(file)).map_err(|e| e.to_string())?;
            let result = panic::catch_unwind(|| parse(&text))
                .map_err(|_| format!("{kind}/{file}: panicked"))?;
            match result {
                Ok(()) => return Err(format!("{kind}/{file}: accepted")),
                Err(e) if e.line != expected => {
                    return Err(format!(
                        "{kind}/{file}: error at line {} ({e}), expected {expected}",
                        e.line
                    ))
                }
                Err(_) => count += 1,
            }
        }
        if count < 10 {
            return Err(format!("{kind}: only {count} malformed files"));
        }
        checked += count;
    }
    Ok(checked)
}

fn criterion_parsers() -> Outcome {
    match (round_trips(), malformed_corpus()) {
        (Ok(()), Ok(n)) => Outcome::new(
            true,
            format!("round trips ok; {n} malformed files rejected at the expected line"),
        ),
        (Err(e), _) | (_, Err(e)) => Outcome::new(false, e),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "selection frequencies match exact probabilities",
            criterion_selection_oracle,
        ),
        (
            "lone-leader selection intensity",
            criterion_selection_intensity,
        ),
        (
            "deceptive 2D scaling exponents",
            criterion_deceptive_scaling,
        ),
        ("random cuboid functions", criterion_cuboids),
        ("max-SAT dynamics and diversity", criterion_sat_dynamics),
        (
            "brute-force optima on small instances",
            criterion_brute_force,
        ),
        ("summary statistics", criterion_statistics),
        ("deterministic CSV output", criterion_determinism),
        ("parsers and malformed inputs", criterion_parsers),
    ];
    // silence the default hook while criteria run; panics are reported below
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        if !outcome.passed {
            failed += 1;
        }
        println!(
            "criterion {}: {} - {name} ({:.1}s): {}",
            i + 1,
            if outcome.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    panic::set_hook(hook);
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
