//! The deceptive XOR-structured problem on the unit square.
//!
//! Two narrow strips `[a, a+δ] × [0,1]` and `[0,1] × [b, b+δ]` split the
//! square into four fitness levels. The broad level 3 is a local optimum;
//! the optimum (level 4, area δ²) is only reachable through the lower
//! levels 1 and 2.

use rand::Rng;

use crate::error::EngineError;
use crate::problem::Problem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deceptive2dSpec {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
}

impl Deceptive2dSpec {
    pub fn new(a: f64, b: f64, delta: f64) -> Result<Self, EngineError> {
        let unit = 0.0..=1.0;
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(EngineError::InvalidParams(format!(
                "delta must be in (0, 1], got {delta}"
            )));
        }
        if !unit.contains(&a) || !unit.contains(&b) || a + delta > 1.0 || b + delta > 1.0 {
            return Err(EngineError::InvalidParams(format!(
                "strips must lie in the unit square (a={a}, b={b}, delta={delta})"
            )));
        }
        Ok(Deceptive2dSpec { a, b, delta })
    }

    /// Strips centred at 0.45 as used by the experiments.
    pub fn centered(delta: f64) -> Result<Self, EngineError> {
        Deceptive2dSpec::new(0.45, 0.45, delta)
    }

    pub fn in_first_strip(&self, x: f64) -> bool {
        self.a <= x && x <= self.a + self.delta
    }

    pub fn in_second_strip(&self, y: f64) -> bool {
        self.b <= y && y <= self.b + self.delta
    }

    pub fn fitness(&self, p: &Point2) -> u8 {
        match (self.in_first_strip(p.0[0]), self.in_second_strip(p.0[1])) {
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
            (true, true) => 4,
        }
    }
}

/// A point of the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2(pub [f64; 2]);

impl Point2 {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Point2([rng.random(), rng.random()])
    }

    /// Replaces x or y (fair coin) with a fresh uniform draw.
    pub fn mutate<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let mut out = *self;
        let axis = usize::from(rng.random_bool(0.5));
        out.0[axis] = rng.random();
        out
    }

    /// x from `self`, y from `other`.
    pub fn crossover(&self, other: &Point2) -> Self {
        Point2([self.0[0], other.0[1]])
    }
}

#[derive(Debug, Clone)]
pub struct Deceptive2d {
    pub spec: Deceptive2dSpec,
}

impl Deceptive2d {
    pub const OPTIMUM: f64 = 4.0;

    pub fn new(spec: Deceptive2dSpec) -> Self {
        Deceptive2d { spec }
    }
}

impl Problem for Deceptive2d {
    type Genome = Point2;

    fn name(&self) -> &str {
        "deceptive2d"
    }

    fn random_genome<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2 {
        Point2::random(rng)
    }

    fn fitness(&self, genome: &Point2) -> f64 {
        f64::from(self.spec.fitness(genome))
    }

    fn mutate<R: Rng + ?Sized>(&self, genome: &Point2, rng: &mut R) -> Point2 {
        genome.mutate(rng)
    }

    fn crossover<R: Rng + ?Sized>(&self, first: &Point2, second: &Point2, _rng: &mut R) -> Point2 {
        first.crossover(second)
    }

    fn integer_fitness(&self) -> bool {
        true
    }

    fn known_optimum(&self) -> Option<f64> {
        Some(Self::OPTIMUM)
    }
}
