//! Parent selection: fitness uniform selection (real and integer variants),
//! tournament selection and uniform random selection.
//!
//! Every scheme returns a member *index* into the population; the engine
//! clones the genome it needs. [`selection_probabilities`] gives the exact
//! per-member distribution of each scheme and is what the property and
//! acceptance tests compare the samplers against.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::EngineError;
use crate::population::{Nearest, Population};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SelectionScheme {
    /// Uniform target in `[f_min, f_max]`, nearest member wins.
    FussReal,
    /// Uniform fitness level in `{f_min, ..., f_max}`, nearest occupied level wins.
    FussInteger,
    /// Best of `k` members drawn with replacement.
    Tournament(usize),
    /// Uniform over member slots.
    RandomSearch,
}

impl SelectionScheme {
    pub fn tournament(size: usize) -> Result<Self, EngineError> {
        if size == 0 {
            return Err(EngineError::InvalidParams(
                "tournament size must be at least 1".into(),
            ));
        }
        Ok(SelectionScheme::Tournament(size))
    }

    pub fn requires_integer_fitness(&self) -> bool {
        matches!(self, SelectionScheme::FussInteger)
    }

    /// Draws one member index.
    ///
    /// # Panics
    ///
    /// Panics if the population is empty.
    pub fn select<G, R: Rng + ?Sized>(&self, pop: &Population<G>, rng: &mut R) -> usize {
        match *self {
            SelectionScheme::FussReal => fuss_select_real(pop, rng),
            SelectionScheme::FussInteger => fuss_select_integer(pop, rng),
            SelectionScheme::Tournament(k) => tournament_select(pop, k, rng),
            SelectionScheme::RandomSearch => random_select(pop, rng),
        }
    }
}

impl fmt::Display for SelectionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionScheme::FussReal => f.pad("fuss"),
            SelectionScheme::FussInteger => f.pad("fussint"),
            SelectionScheme::Tournament(k) => f.pad(&format!("tour{k}")),
            SelectionScheme::RandomSearch => f.pad("rand"),
        }
    }
}

impl FromStr for SelectionScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fuss" => Ok(SelectionScheme::FussReal),
            "fussint" => Ok(SelectionScheme::FussInteger),
            "rand" => Ok(SelectionScheme::RandomSearch),
            _ => {
                let size = s
                    .strip_prefix("tour")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| {
                        format!("unknown scheme `{s}` (expected fuss, fussint, tourN or rand)")
                    })?;
                SelectionScheme::tournament(size).map_err(|e| e.to_string())
            }
        }
    }
}

fn assert_non_empty<G>(pop: &Population<G>) {
    assert!(!pop.is_empty(), "cannot select from an empty population");
}

fn uniform_in<R: Rng + ?Sized>(members: &[usize], rng: &mut R) -> usize {
    members[rng.random_range(0..members.len())]
}

/// Fitness uniform selection for real-valued fitness.
pub fn fuss_select_real<G, R: Rng + ?Sized>(pop: &Population<G>, rng: &mut R) -> usize {
    assert_non_empty(pop);
    let lo = pop.min_fitness().unwrap();
    let hi = pop.max_fitness().unwrap();
    let target = if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    };
    match pop.nearest(target).unwrap() {
        Nearest::One(f) => uniform_in(pop.level(f), rng),
        Nearest::Tie(a, b) => {
            let (la, lb) = (pop.level(a), pop.level(b));
            let pick = rng.random_range(0..la.len() + lb.len());
            if pick < la.len() {
                la[pick]
            } else {
                lb[pick - la.len()]
            }
        }
    }
}

/// Fitness uniform selection over integer fitness levels.
///
/// An empty level resolves to the strictly nearer occupied level; if the
/// occupied levels above and below are equally far, a fair coin decides.
pub fn fuss_select_integer<G, R: Rng + ?Sized>(pop: &Population<G>, rng: &mut R) -> usize {
    assert_non_empty(pop);
    let lo = pop.min_fitness().unwrap();
    let hi = pop.max_fitness().unwrap();
    debug_assert!(
        lo.fract() == 0.0 && hi.fract() == 0.0,
        "non-integer fitness"
    );
    let level = rng.random_range(lo as i64..=hi as i64) as f64;
    let members = pop.level(level);
    if !members.is_empty() {
        return uniform_in(members, rng);
    }
    let below = pop.level_at_or_below(level).unwrap();
    let above = pop.level_at_or_above(level).unwrap();
    let chosen = match (level - below).partial_cmp(&(above - level)).unwrap() {
        std::cmp::Ordering::Less => below,
        std::cmp::Ordering::Greater => above,
        std::cmp::Ordering::Equal => {
            if rng.random_bool(0.5) {
                below
            } else {
                above
            }
        }
    };
    uniform_in(pop.level(chosen), rng)
}

/// Samples `size` members with replacement and returns the fittest; ties
/// between sampled members are broken uniformly.
pub fn tournament_select<G, R: Rng + ?Sized>(
    pop: &Population<G>,
    size: usize,
    rng: &mut R,
) -> usize {
    assert_non_empty(pop);
    assert!(size >= 1, "tournament size must be at least 1");
    let mut best = pop.random_index(rng);
    let mut best_fitness = pop.fitness(best);
    let mut ties = 1u32;
    for _ in 1..size {
        let cand = pop.random_index(rng);
        let f = pop.fitness(cand);
        if f > best_fitness {
            best = cand;
            best_fitness = f;
            ties = 1;
        } else if f == best_fitness {
            ties += 1;
            if rng.random_range(0..ties) == 0 {
                best = cand;
            }
        }
    }
    best
}

pub fn random_select<G, R: Rng + ?Sized>(pop: &Population<G>, rng: &mut R) -> usize {
    assert_non_empty(pop);
    pop.random_index(rng)
}

/// Occupancy of integer fitness levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitnessLevelTable {
    levels: BTreeMap<i64, usize>,
    pub f_min: i64,
    pub f_max: i64,
}

impl FitnessLevelTable {
    pub fn from_population<G>(pop: &Population<G>) -> Result<Self, EngineError> {
        if pop.is_empty() {
            return Err(EngineError::EmptyPopulation);
        }
        let mut levels = BTreeMap::new();
        for (f, members) in pop.levels() {
            if f.fract() != 0.0 || !f.is_finite() {
                return Err(EngineError::SchemeNotApplicable {
                    scheme: SelectionScheme::FussInteger.to_string(),
                    problem: format!("population with fitness {f}"),
                });
            }
            levels.insert(f as i64, members.len());
        }
        let f_min = *levels.keys().next().unwrap();
        let f_max = *levels.keys().next_back().unwrap();
        Ok(FitnessLevelTable {
            levels,
            f_min,
            f_max,
        })
    }

    /// Number of members at `level` (0 if unoccupied).
    pub fn count(&self, level: i64) -> usize {
        self.levels.get(&level).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.levels.values().sum()
    }

    /// Occupied levels with their counts, in increasing order.
    pub fn occupied(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.levels.iter().map(|(&l, &c)| (l, c))
    }

    /// Exact probability that integer FUSS picks *some* member of each
    /// occupied level, by enumerating every level draw and tie coin.
    pub fn level_probabilities(&self) -> BTreeMap<i64, f64> {
        let span = (self.f_max - self.f_min + 1) as f64;
        let mut probs: BTreeMap<i64, f64> = self.levels.keys().map(|&l| (l, 0.0)).collect();
        for draw in self.f_min..=self.f_max {
            if self.levels.contains_key(&draw) {
                *probs.get_mut(&draw).unwrap() += 1.0 / span;
                continue;
            }
            let below = *self.levels.range(..draw).next_back().unwrap().0;
            let above = *self.levels.range(draw..).next().unwrap().0;
            match (draw - below).cmp(&(above - draw)) {
                std::cmp::Ordering::Less => *probs.get_mut(&below).unwrap() += 1.0 / span,
                std::cmp::Ordering::Greater => *probs.get_mut(&above).unwrap() += 1.0 / span,
                std::cmp::Ordering::Equal => {
                    *probs.get_mut(&below).unwrap() += 0.5 / span;
                    *probs.get_mut(&above).unwrap() += 0.5 / span;
                }
            }
        }
        probs
    }
}

/// Exact selection probability of every member (indexed like the population).
///
/// FUSS (real) integrates the uniform target over the midpoint partition of
/// `[f_min, f_max]`; FUSS (integer) enumerates level draws; tournament uses
/// the closed form over fitness ranks, `((c_le/n)^k - (c_lt/n)^k) / c_eq`.
pub fn selection_probabilities<G>(
    pop: &Population<G>,
    scheme: SelectionScheme,
) -> Result<Vec<f64>, EngineError> {
    if pop.is_empty() {
        return Err(EngineError::EmptyPopulation);
    }
    let n = pop.len();
    let mut probs = vec![0.0; n];
    let mut spread = |members: &[usize], level_prob: f64| {
        let each = level_prob / members.len() as f64;
        for &i in members {
            probs[i] = each;
        }
    };
    match scheme {
        SelectionScheme::RandomSearch => {
            return Ok(vec![1.0 / n as f64; n]);
        }
        SelectionScheme::Tournament(k) => {
            if k == 0 {
                return Err(EngineError::InvalidParams(
                    "tournament size must be at least 1".into(),
                ));
            }
            let k = k as i32;
            let mut below = 0usize;
            for (_, members) in pop.levels() {
                let upto = below + members.len();
                let p = (upto as f64 / n as f64).powi(k) - (below as f64 / n as f64).powi(k);
                spread(members, p);
                below = upto;
            }
        }
        SelectionScheme::FussReal => {
            let levels: Vec<(f64, &[usize])> = pop.levels().collect();
            let (lo, hi) = (levels[0].0, levels[levels.len() - 1].0);
            if levels.len() == 1 {
                spread(levels[0].1, 1.0);
            } else {
                for (j, &(f, members)) in levels.iter().enumerate() {
                    let left = if j == 0 {
                        lo
                    } else {
                        0.5 * (levels[j - 1].0 + f)
                    };
                    let right = if j + 1 == levels.len() {
                        hi
                    } else {
                        0.5 * (f + levels[j + 1].0)
                    };
                    spread(members, (right - left) / (hi - lo));
                }
            }
        }
        SelectionScheme::FussInteger => {
            let table = FitnessLevelTable::from_population(pop)?;
            for (level, p) in table.level_probabilities() {
                spread(pop.level(level as f64), p);
            }
        }
    }
    Ok(probs)
}
