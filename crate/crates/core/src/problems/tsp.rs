//! Symmetric TSP over random distance matrices or planar coordinates.
//!
//! Two text forms are read and written:
//!
//! * matrix: the city count on the first line, then row `i` of the upper
//!   triangle (`d(i, i+1) .. d(i, n-1)`) on each following line;
//! * coordinates: one `id x y` line per city. Lines starting with a letter
//!   (headers, `EOF`) are skipped.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use super::text::parse_num;
use crate::error::{EngineError, ParseError};
use crate::problem::{Orientation, Problem};

#[derive(Debug, Clone, PartialEq)]
pub enum TspSource {
    RandomMatrix,
    Coordinates(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    n: usize,
    distances: Vec<f64>,
    pub source: TspSource,
}

impl TspInstance {
    /// Upper-triangle entries drawn uniformly from `[0, 1]`, mirrored below.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self, EngineError> {
        if n < 2 {
            return Err(EngineError::InvalidParams(format!(
                "need at least 2 cities, got {n}"
            )));
        }
        let mut distances = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = rng.random_range(0.0..=1.0);
                distances[i * n + j] = d;
                distances[j * n + i] = d;
            }
        }
        Ok(TspInstance {
            n,
            distances,
            source: TspSource::RandomMatrix,
        })
    }

    /// Euclidean distances between the given points.
    pub fn from_coordinates(points: Vec<(f64, f64)>) -> Result<Self, EngineError> {
        let n = points.len();
        if n < 2 {
            return Err(EngineError::InvalidParams(format!(
                "need at least 2 cities, got {n}"
            )));
        }
        let mut distances = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                distances[i * n + j] = dx.hypot(dy);
            }
        }
        Ok(TspInstance {
            n,
            distances,
            source: TspSource::Coordinates(points),
        })
    }

    /// Builds a matrix instance from its upper triangle, row by row.
    pub fn from_upper_triangle(n: usize, upper: &[f64]) -> Result<Self, EngineError> {
        if n < 2 {
            return Err(EngineError::InvalidParams(format!(
                "need at least 2 cities, got {n}"
            )));
        }
        if upper.len() != n * (n - 1) / 2 {
            return Err(EngineError::InvalidParams(format!(
                "expected {} triangle entries, got {}",
                n * (n - 1) / 2,
                upper.len()
            )));
        }
        let mut distances = vec![0.0; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                distances[i * n + j] = upper[k];
                distances[j * n + i] = upper[k];
                k += 1;
            }
        }
        Ok(TspInstance {
            n,
            distances,
            source: TspSource::RandomMatrix,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.distances[i * self.n + j]
    }

    /// Length of the closed tour, including the edge back to the start.
    pub fn tour_length(&self, tour: &Tour) -> f64 {
        let t = &tour.0;
        let closing = self.distance(t[t.len() - 1], t[0]);
        t.windows(2).map(|w| self.distance(w[0], w[1])).sum::<f64>() + closing
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.source {
            TspSource::RandomMatrix => {
                writeln!(out, "{}", self.n).unwrap();
                for i in 0..self.n - 1 {
                    let row: Vec<String> = (i + 1..self.n)
                        .map(|j| self.distance(i, j).to_string())
                        .collect();
                    writeln!(out, "{}", row.join(" ")).unwrap();
                }
            }
            TspSource::Coordinates(points) => {
                for (i, (x, y)) in points.iter().enumerate() {
                    writeln!(out, "{} {} {}", i + 1, x, y).unwrap();
                }
            }
        }
        out
    }

    /// Reads either text form, choosing by the first data line: a single
    /// token means a matrix file.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !starts_with_letter(l));
        match first {
            Some(line) if line.split_whitespace().count() == 1 => TspInstance::parse_matrix(text),
            _ => TspInstance::parse_coordinates(text),
        }
    }

    pub fn parse_coordinates(text: &str) -> Result<Self, ParseError> {
        let mut points = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || starts_with_letter(line) {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(ParseError::new(
                    line_no,
                    format!("expected `id x y`, found {} fields", fields.len()),
                ));
            }
            let _id: u64 = parse_num(line_no, fields[0], "city id")?;
            let x: f64 = parse_num(line_no, fields[1], "coordinate")?;
            let y: f64 = parse_num(line_no, fields[2], "coordinate")?;
            if !x.is_finite() || !y.is_finite() {
                return Err(ParseError::new(line_no, "coordinates must be finite"));
            }
            points.push((x, y));
        }
        TspInstance::from_coordinates(points)
            .map_err(|e| ParseError::new(super::text::last_line(text), e.to_string()))
    }

    pub fn parse_matrix(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(super::text::last_line(text), "empty matrix file"))?;
        let n: usize = parse_num(line_no, header, "city count")?;
        if n < 2 {
            return Err(ParseError::new(
                line_no,
                format!("need at least 2 cities, got {n}"),
            ));
        }
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for row in 0..n - 1 {
            let (line_no, line) = lines.next().ok_or_else(|| {
                ParseError::new(
                    super::text::last_line(text),
                    format!("missing triangle row {}", row + 1),
                )
            })?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != n - 1 - row {
                return Err(ParseError::new(
                    line_no,
                    format!(
                        "row {} needs {} entries, found {}",
                        row + 1,
                        n - 1 - row,
                        fields.len()
                    ),
                ));
            }
            for f in fields {
                let d: f64 = parse_num(line_no, f, "distance")?;
                if !d.is_finite() || d < 0.0 {
                    return Err(ParseError::new(
                        line_no,
                        format!("distance {d} must be nonnegative"),
                    ));
                }
                upper.push(d);
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(ParseError::new(line_no, "trailing data after the triangle"));
        }
        TspInstance::from_upper_triangle(n, &upper)
            .map_err(|e| ParseError::new(super::text::last_line(text), e.to_string()))
    }
}

fn starts_with_letter(line: &str) -> bool {
    line.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
}

/// A permutation of the cities `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour(pub Vec<usize>);

impl Tour {
    pub fn identity(n: usize) -> Self {
        Tour((0..n).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut t = Tour::identity(n);
        t.0.shuffle(rng);
        t
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .all(|&c| c < seen.len() && !std::mem::replace(&mut seen[c], true))
    }

    /// Exchanges the cities at two distinct uniformly chosen positions.
    pub fn swap_mutate<R: Rng + ?Sized>(&self, rng: &mut R) -> Tour {
        let n = self.0.len();
        assert!(n >= 2, "swap mutation needs at least 2 cities");
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut out = self.clone();
        out.0.swap(i, j);
        out
    }

    /// Partially mapped crossover with uniformly drawn cut points.
    pub fn pmx<R: Rng + ?Sized>(&self, other: &Tour, rng: &mut R) -> Tour {
        let n = self.0.len();
        let a = rng.random_range(0..=n);
        let b = rng.random_range(0..=n);
        self.pmx_with_cuts(other, a.min(b), a.max(b))
    }

    /// PMX keeping `self[lo..hi]` in place and filling the remaining
    /// positions from `other`; a city already in the segment is replaced by
    /// following the segment's position mapping until a free city appears.
    pub fn pmx_with_cuts(&self, other: &Tour, lo: usize, hi: usize) -> Tour {
        let n = self.0.len();
        assert_eq!(n, other.0.len(), "parents must have equal length");
        assert!(lo <= hi && hi <= n);
        // position of each segment city in the donor, usize::MAX when absent
        let mut seg_pos = vec![usize::MAX; n];
        for i in lo..hi {
            seg_pos[self.0[i]] = i;
        }
        let mut child = Vec::with_capacity(n);
        for i in 0..n {
            if (lo..hi).contains(&i) {
                child.push(self.0[i]);
                continue;
            }
            let mut city = other.0[i];
            while seg_pos[city] != usize::MAX {
                city = other.0[seg_pos[city]];
            }
            child.push(city);
        }
        Tour(child)
    }
}

#[derive(Debug, Clone)]
pub struct TspProblem {
    pub instance: TspInstance,
}

impl TspProblem {
    pub fn new(instance: TspInstance) -> Self {
        TspProblem { instance }
    }
}

impl Problem for TspProblem {
    type Genome = Tour;

    fn name(&self) -> &str {
        "tsp"
    }

    fn random_genome<R: Rng + ?Sized>(&self, rng: &mut R) -> Tour {
        Tour::random(self.instance.len(), rng)
    }

    fn fitness(&self, genome: &Tour) -> f64 {
        -self.instance.tour_length(genome)
    }

    fn mutate<R: Rng + ?Sized>(&self, genome: &Tour, rng: &mut R) -> Tour {
        genome.swap_mutate(rng)
    }

    fn crossover<R: Rng + ?Sized>(&self, first: &Tour, second: &Tour, rng: &mut R) -> Tour {
        first.pmx(second, rng)
    }

    fn integer_fitness(&self) -> bool {
        false
    }

    fn orientation(&self) -> Orientation {
        Orientation::Minimize
    }
}
