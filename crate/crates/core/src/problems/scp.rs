//! Unicost and weighted set covering.
//!
//! Instances use the OR-Library layout: `m n`, then `n` column costs, then
//! for every row a count `k` followed by `k` 1-based column indices. Tokens
//! may be spread over lines arbitrarily.
//!
//! Every genome is repaired before evaluation: uncovered rows (in row order)
//! receive the column with the lowest cost per newly covered row, then
//! redundant columns are dropped, most expensive first.

use std::fmt::Write as _;

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Geometric};

use super::text::{last_line, parse_num, tokens};
use crate::error::{EngineError, ParseError};
use crate::problem::{Orientation, Problem};

#[derive(Debug, Clone, PartialEq)]
pub struct ScpInstance {
    costs: Vec<f64>,
    /// columns covering each row
    rows: Vec<Vec<usize>>,
    /// rows covered by each column
    cols: Vec<Vec<usize>>,
}

impl ScpInstance {
    /// `rows[i]` lists the (0-based) columns covering row `i`.
    pub fn new(costs: Vec<f64>, rows: Vec<Vec<usize>>) -> Result<Self, EngineError> {
        let n = costs.len();
        if n == 0 || rows.is_empty() {
            return Err(EngineError::InvalidParams(
                "instance needs rows and columns".into(),
            ));
        }
        if let Some(c) = costs.iter().find(|c| !(**c > 0.0 && c.is_finite())) {
            return Err(EngineError::InvalidParams(format!(
                "column costs must be positive, got {c}"
            )));
        }
        let mut cols = vec![Vec::new(); n];
        let mut rows = rows;
        for (i, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            if row.is_empty() {
                return Err(EngineError::InvalidParams(format!(
                    "row {} cannot be covered",
                    i + 1
                )));
            }
            for &j in row.iter() {
                if j >= n {
                    return Err(EngineError::InvalidParams(format!(
                        "column {} out of range",
                        j + 1
                    )));
                }
                cols[j].push(i);
            }
        }
        Ok(ScpInstance { costs, rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.costs.len()
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn covering(&self, row: usize) -> &[usize] {
        &self.rows[row]
    }

    pub fn covered_by(&self, column: usize) -> &[usize] {
        &self.cols[column]
    }

    pub fn integer_costs(&self) -> bool {
        self.costs.iter().all(|c| c.fract() == 0.0)
    }

    pub fn is_feasible(&self, cover: &Cover) -> bool {
        self.rows.iter().all(|r| r.iter().any(|&j| cover.0[j]))
    }

    /// Total cost of the selected columns.
    ///
    /// # Panics
    ///
    /// Panics if `cover` leaves a row uncovered; repair first.
    pub fn cost(&self, cover: &Cover) -> f64 {
        assert!(self.is_feasible(cover), "cost of an infeasible cover");
        cover.selected().map(|j| self.costs[j]).sum()
    }

    pub fn repair(&self, cover: &Cover) -> Cover {
        let mut selected = cover.0.clone();
        let mut count = vec![0u32; self.rows()];
        for j in (0..self.columns()).filter(|&j| selected[j]) {
            for &i in &self.cols[j] {
                count[i] += 1;
            }
        }

        for i in 0..self.rows() {
            if count[i] > 0 {
                continue;
            }
            let uncovered =
                |j: usize| self.cols[j].iter().filter(|&&r| count[r] == 0).count() as f64;
            let mut best = self.rows[i][0];
            let mut best_unc = uncovered(best);
            for &j in &self.rows[i][1..] {
                let unc = uncovered(j);
                // cost_j / unc_j < cost_best / unc_best
                if self.costs[j] * best_unc < self.costs[best] * unc {
                    best = j;
                    best_unc = unc;
                }
            }
            selected[best] = true;
            for &r in &self.cols[best] {
                count[r] += 1;
            }
        }

        let mut order: Vec<usize> = (0..self.columns()).filter(|&j| selected[j]).collect();
        order.sort_by(|&a, &b| self.costs[b].total_cmp(&self.costs[a]).then(a.cmp(&b)));
        for j in order {
            if self.cols[j].iter().all(|&r| count[r] >= 2) {
                selected[j] = false;
                for &r in &self.cols[j] {
                    count[r] -= 1;
                }
            }
        }
        Cover(selected)
    }

    /// True if some selected column could be dropped without uncovering a row.
    pub fn has_redundant_column(&self, cover: &Cover) -> bool {
        let mut count = vec![0u32; self.rows()];
        for j in cover.selected() {
            for &i in &self.cols[j] {
                count[i] += 1;
            }
        }
        cover
            .selected()
            .any(|j| self.cols[j].iter().all(|&r| count[r] >= 2))
    }

    /// Flips `1 + g` distinct bits, `g` geometric with mean 2, without repair.
    pub fn flip_bits<R: Rng + ?Sized>(&self, cover: &Cover, rng: &mut R) -> Cover {
        let n = self.columns();
        let extra = Geometric::new(1.0 / 3.0).unwrap().sample(rng) as usize;
        let k = (1 + extra).min(n);
        let mut out = cover.clone();
        for j in index::sample(rng, n, k) {
            out.0[j] = !out.0[j];
        }
        out
    }

    pub fn mutate<R: Rng + ?Sized>(&self, cover: &Cover, rng: &mut R) -> Cover {
        self.repair(&self.flip_bits(cover, rng))
    }

    /// Each bit from a uniformly chosen parent, then repair.
    pub fn crossover<R: Rng + ?Sized>(&self, first: &Cover, second: &Cover, rng: &mut R) -> Cover {
        let mixed = first
            .0
            .iter()
            .zip(&second.0)
            .map(|(&a, &b)| if rng.random_bool(0.5) { a } else { b })
            .collect();
        self.repair(&Cover(mixed))
    }

    pub fn parse_orlib(text: &str) -> Result<Self, ParseError> {
        let mut toks = tokens(text);
        let end = last_line(text);
        let mut next = |what: &str| {
            toks.next().ok_or_else(|| {
                ParseError::new(end, format!("unexpected end of file, expected {what}"))
            })
        };
        let (line, t) = next("row count")?;
        let m: usize = parse_num(line, t, "row count")?;
        let (line, t) = next("column count")?;
        let n: usize = parse_num(line, t, "column count")?;
        if m == 0 || n == 0 {
            return Err(ParseError::new(
                line,
                "row and column counts must be positive",
            ));
        }
        let mut costs = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, t) = next("column cost")?;
            let c: f64 = parse_num(line, t, "column cost")?;
            if !(c > 0.0 && c.is_finite()) {
                return Err(ParseError::new(
                    line,
                    format!("column cost {t} must be positive"),
                ));
            }
            costs.push(c);
        }
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let (line, t) = next("row size")?;
            let k: usize = parse_num(line, t, "row size")?;
            if k == 0 {
                return Err(ParseError::new(
                    line,
                    format!("row {} has no covering columns", i + 1),
                ));
            }
            let mut row = Vec::with_capacity(k);
            for _ in 0..k {
                let (line, t) = next("column index")?;
                let j: usize = parse_num(line, t, "column index")?;
                if j == 0 || j > n {
                    return Err(ParseError::new(
                        line,
                        format!("column index {j} outside 1..={n}"),
                    ));
                }
                row.push(j - 1);
            }
            rows.push(row);
        }
        if let Some((line, t)) = toks.next() {
            return Err(ParseError::new(
                line,
                format!("unexpected trailing token `{t}`"),
            ));
        }
        ScpInstance::new(costs, rows)
            .map_err(|e| ParseError::new(super::text::last_line(text), e.to_string()))
    }

    pub fn to_orlib(&self) -> String {
        const PER_LINE: usize = 12;
        let mut out = format!("{} {}\n", self.rows(), self.columns());
        let write_list = |out: &mut String, items: Vec<String>| {
            for chunk in items.chunks(PER_LINE) {
                writeln!(out, " {}", chunk.join(" ")).unwrap();
            }
        };
        write_list(&mut out, self.costs.iter().map(f64::to_string).collect());
        for row in &self.rows {
            writeln!(out, " {}", row.len()).unwrap();
            write_list(&mut out, row.iter().map(|j| (j + 1).to_string()).collect());
        }
        out
    }
}

/// Selected columns as a bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover(pub Vec<bool>);

impl Cover {
    pub fn empty(n: usize) -> Self {
        Cover(vec![false; n])
    }

    pub fn full(n: usize) -> Self {
        Cover(vec![true; n])
    }

    pub fn from_columns(n: usize, columns: &[usize]) -> Self {
        let mut c = Cover::empty(n);
        for &j in columns {
            c.0[j] = true;
        }
        c
    }

    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| j)
    }
}

#[derive(Debug, Clone)]
pub struct ScpProblem {
    pub instance: ScpInstance,
}

impl ScpProblem {
    pub fn new(instance: ScpInstance) -> Self {
        ScpProblem { instance }
    }
}

impl Problem for ScpProblem {
    type Genome = Cover;

    fn name(&self) -> &str {
        "scp"
    }

    /// A random covering column for every row, then repair.
    fn random_genome<R: Rng + ?Sized>(&self, rng: &mut R) -> Cover {
        let inst = &self.instance;
        let mut cover = Cover::empty(inst.columns());
        for i in 0..inst.rows() {
            let row = inst.covering(i);
            cover.0[row[rng.random_range(0..row.len())]] = true;
        }
        inst.repair(&cover)
    }

    fn fitness(&self, genome: &Cover) -> f64 {
        -self.instance.cost(genome)
    }

    fn mutate<R: Rng + ?Sized>(&self, genome: &Cover, rng: &mut R) -> Cover {
        self.instance.mutate(genome, rng)
    }

    fn crossover<R: Rng + ?Sized>(&self, first: &Cover, second: &Cover, rng: &mut R) -> Cover {
        self.instance.crossover(first, second, rng)
    }

    fn integer_fitness(&self) -> bool {
        self.instance.integer_costs()
    }

    fn orientation(&self) -> Orientation {
        Orientation::Minimize
    }
}
