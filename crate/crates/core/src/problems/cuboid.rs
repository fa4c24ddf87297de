//! Random integer-valued functions on `[0,1]^4` built from axis-aligned
//! boxes: the value at a point is the number of boxes containing it.

use std::fmt::Write as _;

use rand::Rng;

use super::text::parse_num;
use crate::error::ParseError;
use crate::problem::Problem;

pub const DIM: usize = 4;
pub const CUBOID_COUNT: usize = 16;
pub const MIN_WIDTH: f64 = 0.2;

/// A point of the unit hypercube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point4(pub [f64; DIM]);

impl Point4 {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Point4(std::array::from_fn(|_| rng.random()))
    }

    /// Redraws one uniformly chosen coordinate.
    pub fn mutate<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let mut out = *self;
        out.0[rng.random_range(0..DIM)] = rng.random();
        out
    }

    /// Each coordinate from either parent with probability 1/2.
    pub fn crossover<R: Rng + ?Sized>(&self, other: &Point4, rng: &mut R) -> Self {
        Point4(std::array::from_fn(|d| {
            if rng.random_bool(0.5) {
                self.0[d]
            } else {
                other.0[d]
            }
        }))
    }
}

/// An axis-aligned box, closed on every side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cuboid {
    pub bounds: [(f64, f64); DIM],
}

impl Cuboid {
    pub const UNIT: Cuboid = Cuboid {
        bounds: [(0.0, 1.0); DIM],
    };

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Cuboid {
            bounds: std::array::from_fn(|_| {
                let width = rng.random_range(MIN_WIDTH..=1.0);
                let lo = rng.random_range(0.0..=1.0 - width);
                (lo, lo + width)
            }),
        }
    }

    pub fn contains(&self, p: &Point4) -> bool {
        self.bounds
            .iter()
            .zip(p.0)
            .all(|(&(lo, hi), x)| lo <= x && x <= hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CuboidFunctionSpec {
    pub cuboids: Vec<Cuboid>,
    pub true_maximum: u32,
    pub argmax_witness: Point4,
}

impl CuboidFunctionSpec {
    pub fn generate<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let cuboids = (0..CUBOID_COUNT).map(|_| Cuboid::random(rng)).collect();
        CuboidFunctionSpec::from_cuboids(cuboids)
    }

    /// Builds a spec from explicit boxes, computing the exact maximum.
    ///
    /// # Panics
    ///
    /// Panics on an empty box list or more than 128 boxes.
    pub fn from_cuboids(cuboids: Vec<Cuboid>) -> Self {
        let (true_maximum, argmax_witness) = sweep_maximum(&cuboids);
        CuboidFunctionSpec {
            cuboids,
            true_maximum,
            argmax_witness,
        }
    }

    pub fn value(&self, p: &Point4) -> u32 {
        self.cuboids.iter().filter(|c| c.contains(p)).count() as u32
    }

    /// Checks the invariants of a generated function.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.cuboids.len() != CUBOID_COUNT {
            return Err(format!(
                "expected {CUBOID_COUNT} cuboids, found {}",
                self.cuboids.len()
            ));
        }
        for (i, c) in self.cuboids.iter().enumerate() {
            for &(lo, hi) in &c.bounds {
                let width = hi - lo;
                if !(0.0..=1.0).contains(&lo) || hi > 1.0 || !(MIN_WIDTH..=1.0).contains(&width) {
                    return Err(format!("cuboid {i} has interval [{lo}, {hi}]"));
                }
            }
        }
        if self.value(&self.argmax_witness) != self.true_maximum {
            return Err("witness does not attain the maximum".into());
        }
        Ok(())
    }

    /// One line per cuboid: `lo hi` for each of the four dimensions.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cuboids {
            let fields: Vec<String> = c
                .bounds
                .iter()
                .flat_map(|&(lo, hi)| [lo.to_string(), hi.to_string()])
                .collect();
            writeln!(out, "{}", fields.join(" ")).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut cuboids = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() || fields[0].starts_with('#') {
                continue;
            }
            if fields.len() != 2 * DIM {
                return Err(ParseError::new(
                    line_no,
                    format!("expected {} numbers, found {}", 2 * DIM, fields.len()),
                ));
            }
            let mut bounds = [(0.0, 0.0); DIM];
            for d in 0..DIM {
                let lo: f64 = parse_num(line_no, fields[2 * d], "bound")?;
                let hi: f64 = parse_num(line_no, fields[2 * d + 1], "bound")?;
                if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
                    return Err(ParseError::new(
                        line_no,
                        format!("interval [{lo}, {hi}] is not inside [0, 1]"),
                    ));
                }
                bounds[d] = (lo, hi);
            }
            cuboids.push(Cuboid { bounds });
        }
        if cuboids.is_empty() {
            return Err(ParseError::new(super::text::last_line(text), "no cuboids"));
        }
        if cuboids.len() > 128 {
            return Err(ParseError::new(
                super::text::last_line(text),
                "at most 128 cuboids are supported",
            ));
        }
        Ok(CuboidFunctionSpec::from_cuboids(cuboids))
    }
}

/// Exact maximum over positive-measure cells of the endpoint grid.
///
/// The box-count is constant on every open cell cut out by the sorted
/// interval endpoints, so one midpoint per cell suffices. For each axis a
/// bitmask records which boxes cover each cell; a cell's value is the
/// popcount of the four masks ANDed together.
fn sweep_maximum(cuboids: &[Cuboid]) -> (u32, Point4) {
    assert!(!cuboids.is_empty() && cuboids.len() <= 128);
    let axes: [(Vec<f64>, Vec<u128>); DIM] = std::array::from_fn(|d| {
        let mut cuts: Vec<f64> = vec![0.0, 1.0];
        for c in cuboids {
            cuts.push(c.bounds[d].0);
            cuts.push(c.bounds[d].1);
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mids: Vec<f64> = cuts.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let masks = mids
            .iter()
            .map(|&m| {
                cuboids.iter().enumerate().fold(0u128, |acc, (i, c)| {
                    let (lo, hi) = c.bounds[d];
                    if lo <= m && m <= hi {
                        acc | (1 << i)
                    } else {
                        acc
                    }
                })
            })
            .collect();
        (mids, masks)
    });

    let mut best = 0u32;
    let mut arg = [0usize; DIM];
    for (i0, &m0) in axes[0].1.iter().enumerate() {
        if m0.count_ones() <= best {
            continue;
        }
        for (i1, &m1) in axes[1].1.iter().enumerate() {
            let m01 = m0 & m1;
            if m01.count_ones() <= best {
                continue;
            }
            for (i2, &m2) in axes[2].1.iter().enumerate() {
                let m012 = m01 & m2;
                if m012.count_ones() <= best {
                    continue;
                }
                for (i3, &m3) in axes[3].1.iter().enumerate() {
                    let v = (m012 & m3).count_ones();
                    if v > best {
                        best = v;
                        arg = [i0, i1, i2, i3];
                    }
                }
            }
        }
    }
    let witness = Point4(std::array::from_fn(|d| axes[d].0[arg[d]]));
    (best, witness)
}

#[derive(Debug, Clone)]
pub struct CuboidProblem {
    pub spec: CuboidFunctionSpec,
}

impl CuboidProblem {
    pub fn new(spec: CuboidFunctionSpec) -> Self {
        CuboidProblem { spec }
    }
}

impl Problem for CuboidProblem {
    type Genome = Point4;

    fn name(&self) -> &str {
        "cuboid"
    }

    fn random_genome<R: Rng + ?Sized>(&self, rng: &mut R) -> Point4 {
        Point4::random(rng)
    }

    fn fitness(&self, genome: &Point4) -> f64 {
        f64::from(self.spec.value(genome))
    }

    fn mutate<R: Rng + ?Sized>(&self, genome: &Point4, rng: &mut R) -> Point4 {
        genome.mutate(rng)
    }

    fn crossover<R: Rng + ?Sized>(&self, first: &Point4, second: &Point4, rng: &mut R) -> Point4 {
        first.crossover(second, rng)
    }

    fn integer_fitness(&self) -> bool {
        true
    }

    fn known_optimum(&self) -> Option<f64> {
        Some(f64::from(self.spec.true_maximum))
    }
}
