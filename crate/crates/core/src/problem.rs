use rand::Rng;

/// Whether a problem's natural objective is maximized or minimized.
///
/// The engine always maximizes; minimization problems report `-cost` as
/// fitness and convert back with [`Orientation::to_display`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Maximize,
    Minimize,
}

impl Orientation {
    pub fn to_display(self, fitness: f64) -> f64 {
        match self {
            Orientation::Maximize => fitness,
            Orientation::Minimize => -fitness,
        }
    }

    pub fn from_display(self, value: f64) -> f64 {
        self.to_display(value)
    }
}

/// An optimization problem as seen by the steady-state engine.
pub trait Problem: Sync {
    type Genome: Clone + Send + Sync;

    fn name(&self) -> &str;

    fn random_genome<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Genome;

    /// Fitness in maximization orientation.
    fn fitness(&self, genome: &Self::Genome) -> f64;

    fn mutate<R: Rng + ?Sized>(&self, genome: &Self::Genome, rng: &mut R) -> Self::Genome;

    fn crossover<R: Rng + ?Sized>(
        &self,
        first: &Self::Genome,
        second: &Self::Genome,
        rng: &mut R,
    ) -> Self::Genome;

    /// True when every fitness value is an integer, so integer FUSS applies.
    fn integer_fitness(&self) -> bool;

    fn orientation(&self) -> Orientation {
        Orientation::Maximize
    }

    /// Optimal fitness (engine orientation) when known in advance.
    fn known_optimum(&self) -> Option<f64> {
        None
    }
}
