//! Genetic diversity of boolean-genome populations and fitness histograms.

use std::collections::BTreeMap;

use rand::seq::index;
use rand::Rng;

use crate::error::DiversityError;
use crate::population::Population;

/// Members used for pairwise diversity when no cap is given.
pub const DEFAULT_SAMPLE_CAP: usize = 200;

/// Fraction of the population treated as "top" by default.
pub const DEFAULT_TOP_FRACTION: f64 = 0.1;

/// Number of bins for histograms of real-valued fitness.
pub const REAL_HISTOGRAM_BINS: usize = 50;

pub fn hamming_distance(a: &[bool], b: &[bool]) -> Result<usize, DiversityError> {
    if a.len() != b.len() {
        return Err(DiversityError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Mean normalized Hamming distance over all unordered pairs, computed on
/// a uniform subsample of `sample_cap` genomes when there are more.
/// `None` when fewer than two genomes are given.
///
/// # Panics
///
/// Panics if the genomes differ in length.
pub fn mean_pairwise_diversity<R: Rng + ?Sized>(
    genomes: &[&[bool]],
    sample_cap: usize,
    rng: &mut R,
) -> Option<f64> {
    let sample: Vec<&[bool]> = if genomes.len() > sample_cap {
        index::sample(rng, genomes.len(), sample_cap)
            .into_iter()
            .map(|i| genomes[i])
            .collect()
    } else {
        genomes.to_vec()
    };
    if sample.len() < 2 {
        return None;
    }
    let len = sample[0].len();
    if len == 0 {
        return Some(0.0);
    }
    let mut total = 0usize;
    for (i, a) in sample.iter().enumerate() {
        for b in &sample[i + 1..] {
            total += hamming_distance(a, b).expect("genome lengths differ");
        }
    }
    let pairs = sample.len() * (sample.len() - 1) / 2;
    Some(total as f64 / (pairs * len) as f64)
}

/// Indices of the `ceil(fraction * n)` fittest members; ties at the cutoff
/// are filled in index-table order.
pub fn top_members<G>(pop: &Population<G>, fraction: f64) -> Vec<usize> {
    assert!(
        fraction > 0.0 && fraction <= 1.0,
        "fraction must be in (0, 1]"
    );
    // guard against 0.1 * 30 = 3.0000000000000004 rounding up to 4
    let want = ((fraction * pop.len() as f64) - 1e-9).ceil().max(0.0) as usize;
    let want = want.min(pop.len());
    let mut out = Vec::with_capacity(want);
    for (_, members) in pop.levels().rev() {
        let take = (want - out.len()).min(members.len());
        out.extend_from_slice(&members[..take]);
        if out.len() == want {
            break;
        }
    }
    out
}

pub fn top_fraction_diversity<G: AsRef<[bool]>, R: Rng + ?Sized>(
    pop: &Population<G>,
    fraction: f64,
    sample_cap: usize,
    rng: &mut R,
) -> Option<f64> {
    let genomes: Vec<&[bool]> = top_members(pop, fraction)
        .into_iter()
        .map(|i| pop.get(i).genome.as_ref())
        .collect();
    mean_pairwise_diversity(&genomes, sample_cap, rng)
}

pub fn population_diversity<G: AsRef<[bool]>, R: Rng + ?Sized>(
    pop: &Population<G>,
    sample_cap: usize,
    rng: &mut R,
) -> Option<f64> {
    let genomes: Vec<&[bool]> = pop.iter().map(|m| m.genome.as_ref()).collect();
    mean_pairwise_diversity(&genomes, sample_cap, rng)
}

#[derive(Debug, Clone, PartialEq)]
pub enum FitnessHistogram {
    /// Count per integer level from `f_min` to `f_max`, empty levels included.
    Levels(BTreeMap<i64, usize>),
    /// Equal-width bins over `[low, low + width * counts.len()]`.
    Binned {
        low: f64,
        width: f64,
        counts: Vec<usize>,
    },
}

impl FitnessHistogram {
    pub fn total(&self) -> usize {
        match self {
            FitnessHistogram::Levels(levels) => levels.values().sum(),
            FitnessHistogram::Binned { counts, .. } => counts.iter().sum(),
        }
    }
}

/// Occupancy per integer level when every fitness is integral, otherwise a
/// histogram with bin width `(f_max - f_min) / 50`. `None` for an empty population.
pub fn fitness_histogram<G>(pop: &Population<G>) -> Option<FitnessHistogram> {
    let lo = pop.min_fitness()?;
    let hi = pop.max_fitness()?;
    if pop.levels().all(|(f, _)| f.fract() == 0.0) {
        let mut levels: BTreeMap<i64, usize> = (lo as i64..=hi as i64).map(|l| (l, 0)).collect();
        for (f, members) in pop.levels() {
            levels.insert(f as i64, members.len());
        }
        return Some(FitnessHistogram::Levels(levels));
    }
    let width = (hi - lo) / REAL_HISTOGRAM_BINS as f64;
    let mut counts = vec![0; REAL_HISTOGRAM_BINS];
    for (f, members) in pop.levels() {
        let bin = (((f - lo) / width) as usize).min(REAL_HISTOGRAM_BINS - 1);
        counts[bin] += members.len();
    }
    Some(FitnessHistogram::Binned {
        low: lo,
        width,
        counts,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiversitySnapshot {
    pub iteration: u64,
    pub whole_population_diversity: Option<f64>,
    pub top_fraction_diversity: Option<f64>,
    pub fraction: f64,
    pub fitness_histogram: Option<FitnessHistogram>,
}

impl DiversitySnapshot {
    pub fn capture<G: AsRef<[bool]>, R: Rng + ?Sized>(
        iteration: u64,
        pop: &Population<G>,
        fraction: f64,
        sample_cap: usize,
        rng: &mut R,
    ) -> Self {
        DiversitySnapshot {
            iteration,
            whole_population_diversity: population_diversity(pop, sample_cap, rng),
            top_fraction_diversity: top_fraction_diversity(pop, fraction, sample_cap, rng),
            fraction,
            fitness_histogram: fitness_histogram(pop),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::Individual;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn hamming_basics() {
        let a = [true, false, true, true, false, false, true, false];
        let b: Vec<bool> = a.iter().map(|x| !x).collect();
        assert_eq!(hamming_distance(&a, &a), Ok(0));
        assert_eq!(hamming_distance(&a, &b), Ok(8));
        assert_eq!(
            hamming_distance(&a, &b[..3]),
            Err(DiversityError::LengthMismatch(8, 3))
        );
    }

    #[test]
    fn pairwise_extremes() {
        let a = vec![true, false, true];
        let b = vec![false, true, false];
        assert_eq!(
            mean_pairwise_diversity(&[&a, &a, &a], 200, &mut rng()),
            Some(0.0)
        );
        assert_eq!(
            mean_pairwise_diversity(&[&a, &b], 200, &mut rng()),
            Some(1.0)
        );
        assert_eq!(mean_pairwise_diversity(&[&a], 200, &mut rng()), None);
    }

    #[test]
    fn random_genomes_are_half_apart() {
        let mut r = ChaCha8Rng::seed_from_u64(9);
        let genomes: Vec<Vec<bool>> = (0..300)
            .map(|_| (0..100).map(|_| r.random_bool(0.5)).collect())
            .collect();
        let refs: Vec<&[bool]> = genomes.iter().map(Vec::as_slice).collect();
        let d = mean_pairwise_diversity(&refs, 200, &mut r).unwrap();
        assert!((d - 0.5).abs() < 0.02, "{d}");
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn top_fraction_hand_population() {
        let genomes = [
            ("0000", 1.0),
            ("1111", 2.0),
            ("0101", 3.0),
            ("1100", 4.0),
            ("0011", 5.0),
            ("1010", 6.0),
            ("0110", 7.0),
            ("1110", 8.0),
            ("1000", 9.0),
            ("0001", 10.0),
        ];
        let pop: Population<Vec<bool>> = genomes
            .iter()
            .map(|(g, f)| Individual::new(bits(g), *f))
            .collect();
        // top three: 0001, 1000, 1110 -> distances 2, 4, 2 over 4 bits
        let d = top_fraction_diversity(&pop, 0.3, 200, &mut rng()).unwrap();
        assert!((d - 8.0 / 12.0).abs() < 1e-12);
        assert_eq!(top_fraction_diversity(&pop, 0.1, 200, &mut rng()), None);
        assert_eq!(
            top_fraction_diversity(&pop, 1.0, 200, &mut rng()),
            population_diversity(&pop, 200, &mut rng())
        );
    }

    #[test]
    fn histogram_levels_include_empty() {
        let pop: Population<()> = [2.0, 2.0, 5.0]
            .iter()
            .map(|&f| Individual::new((), f))
            .collect();
        let Some(FitnessHistogram::Levels(h)) = fitness_histogram(&pop) else {
            panic!("expected integer levels");
        };
        assert_eq!(
            h.into_iter().collect::<Vec<_>>(),
            vec![(2, 2), (3, 0), (4, 0), (5, 1)]
        );
        let single: Population<()> = std::iter::once(Individual::new((), 7.0)).collect();
        assert_eq!(fitness_histogram(&single).unwrap().total(), 1);
    }

    #[test]
    fn histogram_real_bins() {
        let pop: Population<()> = (0..101)
            .map(|i| Individual::new((), i as f64 * 0.01 - 0.5))
            .collect();
        let h = fitness_histogram(&pop).unwrap();
        assert_eq!(h.total(), 101);
        let FitnessHistogram::Binned { counts, .. } = h else {
            panic!("expected bins");
        };
        assert_eq!(counts.len(), REAL_HISTOGRAM_BINS);
    }
}
