//! A multiset of evaluated individuals indexed by fitness value.
//!
//! Every member is reachable both by its slot in the member vector (used for
//! uniform sampling and random deletion) and through an ordered index from
//! fitness value to the slots holding that value (used for nearest-fitness
//! lookups and level sampling). Both structures are kept in sync on every
//! insert and remove; removal is `O(log L)` where `L` is the number of
//! distinct fitness values.

use std::collections::BTreeMap;
use std::ops::Bound;

use ordered_float::OrderedFloat;
use rand::Rng;

type Key = OrderedFloat<f64>;

/// A genome together with its cached fitness (maximization orientation).
#[derive(Debug, Clone, PartialEq)]
pub struct Individual<G> {
    pub genome: G,
    pub fitness: f64,
}

impl<G> Individual<G> {
    pub fn new(genome: G, fitness: f64) -> Self {
        Individual { genome, fitness }
    }
}

#[derive(Debug, Clone)]
struct Member<G> {
    individual: Individual<G>,
    // position of this member's index inside its fitness level
    level_pos: usize,
}

/// The fitness levels nearest to a query value.
///
/// `Tie` is reported when the query sits exactly halfway between two
/// occupied levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nearest {
    One(f64),
    Tie(f64, f64),
}

#[derive(Debug, Clone)]
pub struct Population<G> {
    members: Vec<Member<G>>,
    levels: BTreeMap<Key, Vec<usize>>,
}

impl<G> Default for Population<G> {
    fn default() -> Self {
        Population::new()
    }
}

impl<G> Population<G> {
    pub fn new() -> Self {
        Population {
            members: Vec::new(),
            levels: BTreeMap::new(),
        }
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Population {
            members: Vec::with_capacity(capacity),
            levels: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, index: usize) -> &Individual<G> {
        &self.members[index].individual
    }

    pub fn fitness(&self, index: usize) -> f64 {
        self.members[index].individual.fitness
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Individual<G>> + '_ {
        self.members.iter().map(|m| &m.individual)
    }

    /// Inserts an individual and returns its member index.
    ///
    /// # Panics
    ///
    /// Panics if the fitness is NaN.
    pub fn insert(&mut self, individual: Individual<G>) -> usize {
        assert!(!individual.fitness.is_nan(), "fitness must not be NaN");
        let index = self.members.len();
        let level = self
            .levels
            .entry(OrderedFloat(individual.fitness))
            .or_default();
        level.push(index);
        self.members.push(Member {
            individual,
            level_pos: level.len() - 1,
        });
        index
    }

    /// Removes the member at `index`. The last member takes over `index`.
    pub fn remove(&mut self, index: usize) -> Individual<G> {
        let key = OrderedFloat(self.members[index].individual.fitness);
        let pos = self.members[index].level_pos;
        let level = self
            .levels
            .get_mut(&key)
            .expect("fitness index out of sync");
        level.swap_remove(pos);
        if pos < level.len() {
            let moved = level[pos];
            self.members[moved].level_pos = pos;
        }
        if level.is_empty() {
            self.levels.remove(&key);
        }

        let removed = self.members.swap_remove(index);
        if index < self.members.len() {
            let member = &self.members[index];
            let key = OrderedFloat(member.individual.fitness);
            self.levels
                .get_mut(&key)
                .expect("fitness index out of sync")[member.level_pos] = index;
        }
        removed.individual
    }

    pub fn min_fitness(&self) -> Option<f64> {
        self.levels.keys().next().map(|k| k.0)
    }

    pub fn max_fitness(&self) -> Option<f64> {
        self.levels.keys().next_back().map(|k| k.0)
    }

    /// Member indices holding exactly `fitness`; empty if the level is unoccupied.
    pub fn level(&self, fitness: f64) -> &[usize] {
        self.levels
            .get(&OrderedFloat(fitness))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Occupied fitness levels in increasing order with their member indices.
    pub fn levels(&self) -> impl DoubleEndedIterator<Item = (f64, &[usize])> + '_ {
        self.levels.iter().map(|(k, v)| (k.0, v.as_slice()))
    }

    pub fn distinct_fitness_count(&self) -> usize {
        self.levels.len()
    }

    /// Nearest occupied level at or above `value`.
    pub fn level_at_or_above(&self, value: f64) -> Option<f64> {
        self.levels
            .range((Bound::Included(OrderedFloat(value)), Bound::Unbounded))
            .next()
            .map(|(k, _)| k.0)
    }

    /// Nearest occupied level at or below `value`.
    pub fn level_at_or_below(&self, value: f64) -> Option<f64> {
        self.levels
            .range((Bound::Unbounded, Bound::Included(OrderedFloat(value))))
            .next_back()
            .map(|(k, _)| k.0)
    }

    /// The occupied fitness level(s) closest to `value`.
    pub fn nearest(&self, value: f64) -> Option<Nearest> {
        match (self.level_at_or_below(value), self.level_at_or_above(value)) {
            (None, None) => None,
            (Some(f), None) | (None, Some(f)) => Some(Nearest::One(f)),
            (Some(lo), Some(hi)) if lo == hi => Some(Nearest::One(lo)),
            (Some(lo), Some(hi)) => {
                let (dl, dh) = (value - lo, hi - value);
                if dl < dh {
                    Some(Nearest::One(lo))
                } else if dh < dl {
                    Some(Nearest::One(hi))
                } else {
                    Some(Nearest::Tie(lo, hi))
                }
            }
        }
    }

    /// All member indices tied for nearest fitness to `value`.
    pub fn nearest_members(&self, value: f64) -> Vec<usize> {
        match self.nearest(value) {
            None => Vec::new(),
            Some(Nearest::One(f)) => self.level(f).to_vec(),
            Some(Nearest::Tie(lo, hi)) => {
                let mut all = self.level(lo).to_vec();
                all.extend_from_slice(self.level(hi));
                all
            }
        }
    }

    /// A member index drawn uniformly at random.
    pub fn random_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.random_range(0..self.members.len())
    }

    /// The index of a fittest member (the first one in its level).
    pub fn best_index(&self) -> Option<usize> {
        self.levels.values().next_back().map(|v| v[0])
    }

    pub fn fitnesses(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.individual.fitness).collect()
    }
}

impl<G> FromIterator<Individual<G>> for Population<G> {
    fn from_iter<I: IntoIterator<Item = Individual<G>>>(iter: I) -> Self {
        let mut pop = Population::new();
        for ind in iter {
            pop.insert(ind);
        }
        pop
    }
}
