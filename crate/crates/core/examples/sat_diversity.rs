//! Best-ever fitness and Hamming diversity on a planted random 3-CNF
//! max-SAT instance. Prints mean curves per scheme as CSV.
//!
//! ```text
//! cargo run --release --example sat_diversity [vars] [clauses] [replications]
//! ```

use fuss::harness::{instance_rng, run_experiment_with_diversity, DiversityConfig, ExperimentSpec};
use fuss::problems::sat::{CnfFormula, MaxSat};
use fuss::{GaParams, SelectionScheme};

fn main() -> Result<(), fuss::Error> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let vars = args.next().flatten().unwrap_or(50);
    let clauses = args.next().flatten().unwrap_or(215);
    let replications = args.next().flatten().unwrap_or(10);

    let (formula, _) = CnfFormula::random_planted(vars, clauses, &mut instance_rng(7, 0));
    let schemes = vec![
        SelectionScheme::FussInteger,
        SelectionScheme::Tournament(5),
        SelectionScheme::Tournament(15),
    ];
    let params = GaParams {
        max_population: 2000,
        initial_population: 2000,
        iteration_budget: 25 * 2000,
        ..GaParams::default()
    };
    let spec = ExperimentSpec::new(schemes.clone(), params, replications);
    let result = run_experiment_with_diversity(&spec, DiversityConfig::default(), |_, _| {
        Ok(MaxSat::new(formula.clone()))
    })?;

    println!("scheme,generation,mean_best_ever,whole_diversity,top_diversity");
    for &scheme in &schemes {
        let curve = result.mean_curve(scheme);
        let diversity = result.mean_diversity(scheme);
        for (c, d) in curve.iter().zip(&diversity) {
            println!(
                "{scheme},{:.2},{:.2},{:.4},{:.4}",
                c.generation,
                c.stat.mean,
                d.whole.unwrap_or(f64::NAN),
                d.top.unwrap_or(f64::NAN)
            );
        }
    }
    Ok(())
}
