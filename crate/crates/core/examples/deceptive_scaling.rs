//! Generations needed to hit the optimum of the 2D deceptive strip problem
//! as the strip width shrinks, with the fitted log-log slope per scheme.
//!
//! ```text
//! cargo run --release --example deceptive_scaling [replications] [delta...]
//! ```

use fuss::engine::GaParams;
use fuss::harness::{run_experiment, ExperimentSpec};
use fuss::problems::deceptive::{Deceptive2d, Deceptive2dSpec};
use fuss::stats::scaling_fit;
use fuss::SelectionScheme;

fn main() -> Result<(), fuss::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let replications: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(20);
    let mut deltas: Vec<f64> = args.iter().skip(1).filter_map(|s| s.parse().ok()).collect();
    if deltas.is_empty() {
        deltas = vec![0.2, 0.1, 0.05, 0.025];
    }
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

    let mut points: Vec<Vec<(f64, f64)>> = vec![Vec::new(); schemes.len()];
    println!("delta,scheme,mean_generations,ci_low,ci_high,failures");
    for &delta in &deltas {
        let mut spec = ExperimentSpec::new(schemes.clone(), params.clone(), replications);
        spec.stop_at_optimum = true;
        spec.base_seed = 1;
        let result = run_experiment(&spec, |_, _| {
            Ok(Deceptive2d::new(Deceptive2dSpec::centered(delta)?))
        })?;
        for (i, &scheme) in schemes.iter().enumerate() {
            let summary = result.generations_summary(scheme);
            let Some(stat) = summary.stat else {
                println!("{delta},{scheme},,,,{}", summary.failures);
                continue;
            };
            points[i].push((delta, stat.mean));
            println!(
                "{delta},{scheme},{:.3},{:.3},{:.3},{}",
                stat.mean,
                stat.ci95_low.unwrap_or(f64::NAN),
                stat.ci95_high.unwrap_or(f64::NAN),
                summary.failures
            );
        }
    }
    println!();
    for (scheme, pts) in schemes.iter().zip(&points) {
        match scaling_fit(pts) {
            Ok(slope) => println!("{scheme}: slope {slope:.3}"),
            Err(e) => println!("{scheme}: no fit ({e})"),
        }
    }
    Ok(())
}
