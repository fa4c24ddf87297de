//! The steady-state GA loop.
//!
//! One iteration draws from the run's generator in this fixed order:
//!
//! 1. parent A (scheme draws)
//! 2. crossover coin
//! 3. if crossing: parent B (scheme draws), then crossover operator draws
//! 4. mutation coin, only when crossed (an uncrossed child is always mutated)
//! 5. mutation operator draws, if mutating
//! 6. deletion index, once the population exceeds its cap
//!
//! Until the population reaches `max_population` children are inserted
//! without deletion; afterwards each insertion is followed by deleting a
//! uniformly random member (possibly the child itself).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::EngineError;
use crate::population::{Individual, Population};
use crate::problem::Problem;
use crate::selection::SelectionScheme;

/// Generator used for every run. ChaCha output is platform independent.
pub type GaRng = ChaCha8Rng;

/// Relative slack allowed when comparing best-ever fitness against a real target.
pub const TARGET_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    pub max_population: usize,
    pub initial_population: usize,
    pub crossover_probability: f64,
    pub mutate_probability: f64,
    pub iteration_budget: u64,
    pub rng_seed: u64,
    /// Iterations between trace samples; `None` means `max_population / 10`.
    pub trace_stride: Option<u64>,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            max_population: 1000,
            initial_population: 1000,
            crossover_probability: 0.5,
            mutate_probability: 0.5,
            iteration_budget: 100_000,
            rng_seed: 0,
            trace_stride: None,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |msg: String| Err(EngineError::InvalidParams(msg));
        if self.max_population == 0 {
            return bad("max_population must be positive".into());
        }
        if self.initial_population == 0 || self.initial_population > self.max_population {
            return bad(format!(
                "initial_population must be in 1..={}, got {}",
                self.max_population, self.initial_population
            ));
        }
        for (name, p) in [
            ("crossover_probability", self.crossover_probability),
            ("mutate_probability", self.mutate_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must be in [0, 1], got {p}"));
            }
        }
        if self.trace_stride == Some(0) {
            return bad("trace_stride must be positive".into());
        }
        Ok(())
    }

    pub fn stride(&self) -> u64 {
        self.trace_stride
            .unwrap_or((self.max_population as u64 / 10).max(1))
    }

    /// Steady-state generations elapsed after `iterations` steps.
    pub fn generations(&self, iterations: u64) -> f64 {
        iterations as f64 / self.max_population as f64
    }
}

/// What happened during one engine step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome<G> {
    pub child: Individual<G>,
    pub crossed: bool,
    pub mutated: bool,
    pub deleted_index: Option<usize>,
}

/// When a run stops, besides exhausting `GaParams::iteration_budget`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StopRule {
    /// Stop as soon as best-ever fitness (engine orientation) reaches this.
    pub target: Option<f64>,
}

impl StopRule {
    pub fn budget() -> Self {
        StopRule { target: None }
    }

    pub fn target(target: f64) -> Self {
        StopRule {
            target: Some(target),
        }
    }

    pub fn reached(&self, best: f64) -> bool {
        self.target
            .is_some_and(|t| best >= t - TARGET_TOLERANCE * t.abs().max(1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub iteration: u64,
    pub generation: f64,
    /// Best fitness currently in the population.
    pub current_best: f64,
    /// Best fitness ever inserted; nondecreasing.
    pub best_ever: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub scheme: SelectionScheme,
    pub max_population: usize,
    pub trace: Vec<TracePoint>,
    pub iterations: u64,
    pub best_ever: f64,
    pub target_reached_at: Option<u64>,
}

impl RunRecord {
    pub fn generations(&self) -> f64 {
        self.iterations as f64 / self.max_population as f64
    }

    pub fn target_reached(&self) -> bool {
        self.target_reached_at.is_some()
    }

    pub fn generations_to_target(&self) -> Option<f64> {
        self.target_reached_at
            .map(|it| it as f64 / self.max_population as f64)
    }

    /// Best-ever fitness at the last trace sample at or before `iteration`.
    pub fn best_ever_at(&self, iteration: u64) -> Option<f64> {
        self.trace
            .iter()
            .take_while(|p| p.iteration <= iteration)
            .last()
            .map(|p| p.best_ever)
    }
}

fn check_scheme<P: Problem>(problem: &P, scheme: SelectionScheme) -> Result<(), EngineError> {
    if scheme.requires_integer_fitness() && !problem.integer_fitness() {
        return Err(EngineError::SchemeNotApplicable {
            scheme: scheme.to_string(),
            problem: problem.name().to_string(),
        });
    }
    if let SelectionScheme::Tournament(0) = scheme {
        return Err(EngineError::InvalidParams(
            "tournament size must be at least 1".into(),
        ));
    }
    Ok(())
}

pub fn initialize_population<P: Problem, R: Rng + ?Sized>(
    problem: &P,
    params: &GaParams,
    rng: &mut R,
) -> Result<Population<P::Genome>, EngineError> {
    params.validate()?;
    let mut pop = Population::with_capacity(params.max_population + 1);
    for _ in 0..params.initial_population {
        let genome = problem.random_genome(rng);
        let fitness = problem.fitness(&genome);
        pop.insert(Individual::new(genome, fitness));
    }
    Ok(pop)
}

/// Performs one steady-state iteration on `pop`.
pub fn step<P: Problem, R: Rng + ?Sized>(
    pop: &mut Population<P::Genome>,
    problem: &P,
    scheme: SelectionScheme,
    params: &GaParams,
    rng: &mut R,
) -> StepOutcome<P::Genome> {
    let first = scheme.select(pop, rng);
    let crossed = rng.random_bool(params.crossover_probability);
    let mut genome = if crossed {
        let second = scheme.select(pop, rng);
        problem.crossover(&pop.get(first).genome, &pop.get(second).genome, rng)
    } else {
        pop.get(first).genome.clone()
    };
    let mutated = !crossed || rng.random_bool(params.mutate_probability);
    if mutated {
        genome = problem.mutate(&genome, rng);
    }
    let fitness = problem.fitness(&genome);
    let child = Individual::new(genome, fitness);
    pop.insert(child.clone());
    let deleted_index = if pop.len() > params.max_population {
        let victim = pop.random_index(rng);
        pop.remove(victim);
        Some(victim)
    } else {
        None
    };
    StepOutcome {
        child,
        crossed,
        mutated,
        deleted_index,
    }
}

/// Runs a seeded GA until the budget is spent or the target is reached.
pub fn run<P: Problem>(
    problem: &P,
    scheme: SelectionScheme,
    params: &GaParams,
    stop: &StopRule,
) -> Result<RunRecord, EngineError> {
    run_with_observer(problem, scheme, params, stop, |_, _| {})
}

/// Like [`run`], calling `observer(iteration, population)` at every trace sample.
pub fn run_with_observer<P, F>(
    problem: &P,
    scheme: SelectionScheme,
    params: &GaParams,
    stop: &StopRule,
    mut observer: F,
) -> Result<RunRecord, EngineError>
where
    P: Problem,
    F: FnMut(u64, &Population<P::Genome>),
{
    check_scheme(problem, scheme)?;
    params.validate()?;
    let mut rng = GaRng::seed_from_u64(params.rng_seed);
    let mut pop = initialize_population(problem, params, &mut rng)?;
    let stride = params.stride();

    let mut best_ever = pop.max_fitness().ok_or(EngineError::EmptyPopulation)?;
    let mut trace = Vec::new();
    let sample = |iteration: u64, pop: &Population<P::Genome>, best_ever: f64| TracePoint {
        iteration,
        generation: params.generations(iteration),
        current_best: pop.max_fitness().unwrap(),
        best_ever,
    };
    trace.push(sample(0, &pop, best_ever));
    observer(0, &pop);

    let mut target_reached_at = stop.reached(best_ever).then_some(0);
    let mut iteration = 0;
    while target_reached_at.is_none() && iteration < params.iteration_budget {
        let outcome = step(&mut pop, problem, scheme, params, &mut rng);
        iteration += 1;
        if outcome.child.fitness > best_ever {
            best_ever = outcome.child.fitness;
            if stop.reached(best_ever) {
                target_reached_at = Some(iteration);
            }
        }
        let last = target_reached_at.is_some() || iteration == params.iteration_budget;
        if iteration % stride == 0 || last {
            trace.push(sample(iteration, &pop, best_ever));
            observer(iteration, &pop);
        }
    }

    Ok(RunRecord {
        scheme,
        max_population: params.max_population,
        trace,
        iterations: iteration,
        best_ever,
        target_reached_at,
    })
}
