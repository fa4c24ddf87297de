//! FUSS against tournament selection on random cuboid-sum functions over
//! the 4D unit cube. Each function's exact maximum is known, so every run
//! stops as soon as it is found.
//!
//! ```text
//! cargo run --release --example random_cuboids [functions] [replications]
//! ```

use fuss::engine::{GaParams, GaRng};
use fuss::harness::{instance_rng, run_experiment, ExperimentSpec};
use fuss::problems::cuboid::{CuboidFunctionSpec, CuboidProblem};
use fuss::SelectionScheme;

fn main() -> Result<(), fuss::Error> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let functions = args.next().flatten().unwrap_or(20);
    let replications = args.next().flatten().unwrap_or(5);
    let schemes = vec![
        SelectionScheme::FussInteger,
        SelectionScheme::Tournament(2),
        SelectionScheme::Tournament(5),
    ];
    let params = GaParams {
        max_population: 1000,
        initial_population: 1000,
        iteration_budget: 2_000_000,
        ..GaParams::default()
    };

    println!("function,true_maximum,scheme,mean_generations,failures");
    let mut wins = 0;
    for f in 0..functions {
        let mut rng: GaRng = instance_rng(1000, f);
        let spec = CuboidFunctionSpec::generate(&mut rng);
        let mut experiment = ExperimentSpec::new(schemes.clone(), params.clone(), replications);
        experiment.stop_at_optimum = true;
        experiment.base_seed = 10 * f as u64;
        let result = run_experiment(&experiment, |_, _| Ok(CuboidProblem::new(spec.clone())))?;

        let mut means = Vec::new();
        for &scheme in &schemes {
            // failed runs are charged the whole budget
            let gens: Vec<f64> = result
                .records_for(scheme)
                .map(|r| {
                    r.run
                        .generations_to_target()
                        .unwrap_or_else(|| r.run.generations())
                })
                .collect();
            let failures = result
                .records_for(scheme)
                .filter(|r| !r.run.target_reached())
                .count();
            let mean = gens.iter().sum::<f64>() / gens.len() as f64;
            println!("{f},{},{scheme},{mean:.3},{failures}", spec.true_maximum);
            means.push(mean);
        }
        if means[0] < means[1] {
            wins += 1;
        }
    }
    println!("\nfussint faster than tour2 on {wins}/{functions} functions");
    Ok(())
}
