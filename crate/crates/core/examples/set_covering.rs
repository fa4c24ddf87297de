//! Set covering with repaired bit-string covers. Builds a random instance,
//! prints it in OR-Library format when asked, and compares schemes on it.
//!
//! ```text
//! cargo run --release --example set_covering [rows] [columns] [--print]
//! ```

use rand::Rng;

use fuss::harness::{instance_rng, run_experiment, ExperimentSpec};
use fuss::problems::scp::{ScpInstance, ScpProblem};
use fuss::{GaParams, SelectionScheme};

fn random_instance(rows: usize, columns: usize, rng: &mut impl Rng) -> ScpInstance {
    let costs = (0..columns)
        .map(|_| rng.random_range(1..=100) as f64)
        .collect();
    let covering = (0..rows)
        .map(|_| {
            let k = rng.random_range(2..=6).min(columns);
            rand::seq::index::sample(rng, columns, k).into_vec()
        })
        .collect();
    ScpInstance::new(costs, covering).expect("every row has a column")
}

fn main() -> Result<(), fuss::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let rows: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(100);
    let columns: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(300);
    let instance = random_instance(rows, columns, &mut instance_rng(3, 0));
    if args.iter().any(|a| a == "--print") {
        print!("{}", instance.to_orlib());
        return Ok(());
    }

    let params = GaParams {
        max_population: 1000,
        initial_population: 1000,
        crossover_probability: 1.0,
        iteration_budget: 50 * 1000,
        ..GaParams::default()
    };
    let schemes = vec![
        SelectionScheme::FussInteger,
        SelectionScheme::Tournament(2),
        SelectionScheme::Tournament(5),
    ];
    let spec = ExperimentSpec::new(schemes.clone(), params, 5);
    let result = run_experiment(&spec, |_, _| Ok(ScpProblem::new(instance.clone())))?;
    println!("{rows} rows, {columns} columns");
    for &scheme in &schemes {
        let s = result
            .final_best_summary(scheme)
            .stat
            .expect("replications ran");
        println!("{scheme:>7}: mean best cover cost {:.1}", s.mean);
    }
    Ok(())
}
