//! A steady-state genetic algorithm with pluggable parent selection,
//! centred on the fitness uniform selection scheme (FUSS).
//!
//! FUSS draws a target fitness uniformly between the worst and best fitness
//! in the population and selects the member nearest to it. Sparsely
//! populated fitness levels are therefore selected as often as crowded
//! ones, which keeps low-fitness individuals around and preserves
//! diversity on deceptive problems.
//!
//! The crate provides:
//!
//! * [`engine`]: the select / cross / mutate / insert / delete-at-random loop
//! * [`selection`]: FUSS (real and integer levels), tournament and random
//!   selection, plus exact selection probabilities
//! * [`problems`]: the deceptive 2D strip problem, random cuboid functions,
//!   TSP, set covering and max-SAT, with their file formats
//! * [`diversity`]: Hamming diversity and fitness histograms
//! * [`harness`] and [`stats`]: replicated experiments, 95% confidence
//!   intervals, log-log scaling fits and CSV output
//! * [`cli`]: the `fuss` command line front end
//!
//! ```
//! use fuss::engine::{run, GaParams, StopRule};
//! use fuss::problems::deceptive::{Deceptive2d, Deceptive2dSpec};
//! use fuss::selection::SelectionScheme;
//!
//! let problem = Deceptive2d::new(Deceptive2dSpec::centered(0.2).unwrap());
//! let params = GaParams {
//!     max_population: 1000,
//!     initial_population: 10,
//!     crossover_probability: 0.25,
//!     iteration_budget: 200_000,
//!     rng_seed: 1,
//!     ..GaParams::default()
//! };
//! let record = run(&problem, SelectionScheme::FussInteger, &params, &StopRule::target(4.0)).unwrap();
//! assert!(record.target_reached());
//! ```

pub mod cli;
pub mod diversity;
pub mod engine;
pub mod error;
pub mod harness;
pub mod population;
pub mod problem;
pub mod problems;
pub mod selection;
pub mod stats;

pub use engine::{GaParams, RunRecord, StopRule};
pub use error::{EngineError, Error, ParseError};
pub use population::{Individual, Population};
pub use problem::{Orientation, Problem};
pub use selection::SelectionScheme;
