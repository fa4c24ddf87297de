//! Exact selection probabilities for a crowded population with one lone
//! leader: 10,000 members spread over fitness 50..=70 plus one at 73.
//!
//! ```text
//! cargo run --example selection_intensity
//! ```

use fuss::selection::selection_probabilities;
use fuss::{Individual, Population, SelectionScheme};

fn main() -> Result<(), fuss::EngineError> {
    let mut pop: Population<()> = (0..10_000)
        .map(|i| Individual::new((), (50 + i % 21) as f64))
        .collect();
    let leader = pop.insert(Individual::new((), 73.0));

    println!("scheme,p_leader,p_level_50");
    for scheme in [
        SelectionScheme::FussInteger,
        SelectionScheme::FussReal,
        SelectionScheme::Tournament(2),
        SelectionScheme::Tournament(5),
        SelectionScheme::Tournament(15),
        SelectionScheme::RandomSearch,
    ] {
        let p = selection_probabilities(&pop, scheme)?;
        let bottom: f64 = pop.level(50.0).iter().map(|&i| p[i]).sum();
        println!("{scheme},{:.6},{:.6}", p[leader], bottom);
    }
    Ok(())
}
