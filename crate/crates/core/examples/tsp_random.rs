//! Random-matrix TSP: mean final tour length per scheme, with optional CSV
//! output (summary, mean curve and per-run traces).
//!
//! ```text
//! cargo run --release --example tsp_random [cities] [replications] [out_dir]
//! ```

use std::path::PathBuf;

use fuss::harness::{run_experiment, write_outputs, ExperimentSpec};
use fuss::problems::tsp::{TspInstance, TspProblem};
use fuss::{GaParams, SelectionScheme};

fn main() -> Result<(), fuss::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cities: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(50);
    let replications: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let out = args.get(2).map(PathBuf::from);

    let params = GaParams {
        max_population: 1000,
        initial_population: 1000,
        iteration_budget: 100 * 1000,
        ..GaParams::default()
    };
    let schemes = vec![
        SelectionScheme::FussReal,
        SelectionScheme::Tournament(2),
        SelectionScheme::Tournament(5),
        SelectionScheme::Tournament(15),
    ];
    let spec = ExperimentSpec::new(schemes.clone(), params, replications);
    // a fresh random matrix per replication, shared by all schemes
    let result = run_experiment(&spec, |_, rng| {
        Ok(TspProblem::new(TspInstance::random(cities, rng)?))
    })?;

    for &scheme in &schemes {
        let s = result
            .final_best_summary(scheme)
            .stat
            .expect("replications ran");
        println!(
            "{scheme:>7}: mean tour length {:.3} (95% CI {:.3}..{:.3})",
            s.mean,
            s.ci95_low.unwrap_or(s.mean),
            s.ci95_high.unwrap_or(s.mean)
        );
    }
    if let Some(dir) = out {
        write_outputs(&result, &dir)?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}
