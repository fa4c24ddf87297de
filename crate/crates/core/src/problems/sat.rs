//! Maximum satisfiability over CNF formulas read from DIMACS files.

use std::fmt::Write as _;

use rand::seq::index;
use rand::Rng;

use crate::error::{EngineError, ParseError};
use crate::problem::Problem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, EngineError> {
        if num_vars == 0 {
            return Err(EngineError::InvalidParams(
                "formula needs at least one variable".into(),
            ));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(EngineError::InvalidParams(format!(
                    "clause {} is empty",
                    i + 1
                )));
            }
            if let Some(l) = clause
                .iter()
                .find(|l| **l == 0 || l.unsigned_abs() as usize > num_vars)
            {
                return Err(EngineError::InvalidParams(format!(
                    "literal {l} in clause {} out of range",
                    i + 1
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// A random 3-CNF satisfied by a hidden assignment, which is returned
    /// alongside. Each clause has three distinct variables and a sign pattern
    /// drawn uniformly from the seven patterns the hidden assignment satisfies.
    pub fn random_planted<R: Rng + ?Sized>(
        num_vars: usize,
        num_clauses: usize,
        rng: &mut R,
    ) -> (Self, Assignment) {
        assert!(num_vars >= 3, "3-CNF needs at least 3 variables");
        let planted = Assignment::random(num_vars, rng);
        let clauses = (0..num_clauses)
            .map(|_| {
                let vars = index::sample(rng, num_vars, 3).into_vec();
                loop {
                    let clause: Vec<i32> = vars
                        .iter()
                        .map(|&v| {
                            let lit = v as i32 + 1;
                            if rng.random_bool(0.5) {
                                lit
                            } else {
                                -lit
                            }
                        })
                        .collect();
                    if clause_satisfied(&clause, &planted.0) {
                        break clause;
                    }
                }
            })
            .collect();
        (CnfFormula { num_vars, clauses }, planted)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn count_satisfied(&self, assignment: &Assignment) -> usize {
        assert_eq!(
            assignment.0.len(),
            self.num_vars,
            "assignment length mismatch"
        );
        self.clauses
            .iter()
            .filter(|c| clause_satisfied(c, &assignment.0))
            .count()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF. Comment lines start with `c`; a line starting with
    /// `%` ends the clause section (as in the SATLIB uniform instances).
    pub fn parse_dimacs(text: &str) -> Result<Self, ParseError> {
        let mut header: Option<(usize, usize, usize)> = None; // (line, vars, clauses)
        let mut clauses = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        let mut current_start = 0;
        let mut last = 0;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            last = line_no;
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(ParseError::new(line_no, "duplicate problem line"));
                }
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                    return Err(ParseError::new(
                        line_no,
                        "expected `p cnf <vars> <clauses>`",
                    ));
                }
                let vars = fields[2].parse::<usize>().map_err(|_| {
                    ParseError::new(line_no, format!("invalid variable count `{}`", fields[2]))
                })?;
                let count = fields[3].parse::<usize>().map_err(|_| {
                    ParseError::new(line_no, format!("invalid clause count `{}`", fields[3]))
                })?;
                if vars == 0 {
                    return Err(ParseError::new(line_no, "variable count must be positive"));
                }
                header = Some((line_no, vars, count));
                continue;
            }
            let Some((_, vars, _)) = header else {
                return Err(ParseError::new(line_no, "clause before the problem line"));
            };
            for tok in line.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| ParseError::new(line_no, format!("invalid literal `{tok}`")))?;
                if lit == 0 {
                    if current.is_empty() {
                        return Err(ParseError::new(line_no, "empty clause"));
                    }
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                if lit.unsigned_abs() as usize > vars {
                    return Err(ParseError::new(
                        line_no,
                        format!("literal {lit} outside variables 1..={vars}"),
                    ));
                }
                if current.is_empty() {
                    current_start = line_no;
                }
                current.push(lit);
            }
        }

        let Some((p_line, vars, count)) = header else {
            return Err(ParseError::new(last, "missing `p cnf` problem line"));
        };
        if !current.is_empty() {
            return Err(ParseError::new(
                current_start,
                "clause is not terminated by 0",
            ));
        }
        if clauses.len() != count {
            return Err(ParseError::new(
                p_line,
                format!(
                    "problem line declares {count} clauses, found {}",
                    clauses.len()
                ),
            ));
        }
        Ok(CnfFormula {
            num_vars: vars,
            clauses,
        })
    }
}

fn clause_satisfied(clause: &[i32], bits: &[bool]) -> bool {
    clause.iter().any(|&lit| {
        let value = bits[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            value
        } else {
            !value
        }
    })
}

/// Truth values of variables `1..=n`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Assignment((0..n).map(|_| rng.random_bool(0.5)).collect())
    }

    /// Flips one uniformly chosen variable.
    pub fn flip_mutate<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let mut out = self.clone();
        let i = rng.random_range(0..out.0.len());
        out.0[i] = !out.0[i];
        out
    }

    /// Each variable from either parent with probability 1/2.
    pub fn uniform_crossover<R: Rng + ?Sized>(&self, other: &Assignment, rng: &mut R) -> Self {
        assert_eq!(
            self.0.len(),
            other.0.len(),
            "parents must have equal length"
        );
        Assignment(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| if rng.random_bool(0.5) { a } else { b })
                .collect(),
        )
    }
}

impl AsRef<[bool]> for Assignment {
    fn as_ref(&self) -> &[bool] {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct MaxSat {
    pub formula: CnfFormula,
}

impl MaxSat {
    pub fn new(formula: CnfFormula) -> Self {
        MaxSat { formula }
    }
}

impl Problem for MaxSat {
    type Genome = Assignment;

    fn name(&self) -> &str {
        "sat"
    }

    fn random_genome<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        Assignment::random(self.formula.num_vars(), rng)
    }

    fn fitness(&self, genome: &Assignment) -> f64 {
        self.formula.count_satisfied(genome) as f64
    }

    fn mutate<R: Rng + ?Sized>(&self, genome: &Assignment, rng: &mut R) -> Assignment {
        genome.flip_mutate(rng)
    }

    fn crossover<R: Rng + ?Sized>(
        &self,
        first: &Assignment,
        second: &Assignment,
        rng: &mut R,
    ) -> Assignment {
        first.uniform_crossover(second, rng)
    }

    fn integer_fitness(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn worked_example_scores_one() {
        // (a ∨ b ∨ ¬c) ∧ (a ∨ ¬e ∨ f) with a,b,c,e,f = vars 1..5
        let f = CnfFormula::new(5, vec![vec![1, 2, -3], vec![1, -4, 5]]).unwrap();
        let a = Assignment(vec![false, true, true, true, false]);
        assert_eq!(f.count_satisfied(&a), 1);
    }

    #[test]
    fn all_true_satisfies_positive_formula() {
        let f = CnfFormula::new(4, vec![vec![1, 2, 3], vec![2, 4], vec![1, 3, 4]]).unwrap();
        assert_eq!(f.count_satisfied(&Assignment(vec![true; 4])), 3);
    }

    #[test]
    fn count_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let clauses: Vec<Vec<i32>> = (0..20)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        let v = rng.random_range(1..=10);
                        if rng.random_bool(0.5) {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        let f = CnfFormula::new(10, clauses.clone()).unwrap();
        for _ in 0..100 {
            let a = Assignment::random(10, &mut rng);
            let mut expected = 0;
            for c in &clauses {
                let mut sat = false;
                for &l in c {
                    let v = a.0[(l.abs() - 1) as usize];
                    sat |= if l > 0 { v } else { !v };
                }
                expected += sat as usize;
            }
            assert_eq!(f.count_satisfied(&a), expected);
        }
    }

    #[test]
    fn planted_formula_is_satisfied() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (f, planted) = CnfFormula::random_planted(50, 215, &mut rng);
        assert_eq!(f.count_satisfied(&planted), 215);
        assert!(f.clauses().iter().all(|c| c.len() == 3));
    }

    #[test]
    fn flip_mutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Assignment::random(10, &mut rng);
        let mut counts = [0usize; 10];
        let trials = 100_000;
        for _ in 0..trials {
            let m = a.flip_mutate(&mut rng);
            let diff: Vec<usize> = (0..10).filter(|&i| m.0[i] != a.0[i]).collect();
            assert_eq!(diff.len(), 1);
            counts[diff[0]] += 1;
        }
        for c in counts {
            assert!((c as f64 / trials as f64 - 0.1).abs() < 0.01);
        }
        let back = (0..trials)
            .filter(|_| a.flip_mutate(&mut rng).flip_mutate(&mut rng) == a)
            .count();
        assert!((back as f64 / trials as f64 - 0.1).abs() < 0.01);
    }

    #[test]
    fn uniform_crossover_sources() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = Assignment(vec![true; 16]);
        let q = Assignment(vec![false; 16]);
        assert_eq!(p.uniform_crossover(&p, &mut rng), p);
        let trials = 100_000;
        let mut from_p = [0usize; 16];
        for _ in 0..trials {
            let c = p.uniform_crossover(&q, &mut rng);
            for i in 0..16 {
                from_p[i] += c.0[i] as usize;
            }
        }
        for c in from_p {
            assert!((c as f64 / trials as f64 - 0.5).abs() < 0.01);
        }
    }

    #[test]
    fn dimacs_basics() {
        let f = CnfFormula::parse_dimacs("c tiny\np cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.clauses(), &[vec![1, -2]]);
        let split = CnfFormula::parse_dimacs("p cnf 3 2\n1 -2\n 3 0 -1\n2 0\n").unwrap();
        let flat = CnfFormula::parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0\n").unwrap();
        assert_eq!(split, flat);
        let satlib = CnfFormula::parse_dimacs("p cnf 3 1\n1 2 3 0\n%\n0\n\n").unwrap();
        assert_eq!(satlib.num_clauses(), 1);
    }

    #[test]
    fn dimacs_round_trip_at_benchmark_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (f, _) = CnfFormula::random_planted(150, 645, &mut rng);
        let text = f.to_dimacs();
        let back = CnfFormula::parse_dimacs(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_dimacs(), text);
    }

    #[test]
    fn dimacs_errors_carry_lines() {
        let cases = [
            ("1 2 0\n", 1),
            ("p cnf 2 1\n1 3 0\n", 2),
            ("p cnf 2 2\n1 2 0\n", 1),
            ("p cnf 2 1\n1 2\n", 2),
            ("p cnf 2 1\n1 x 0\n", 2),
        ];
        for (text, line) in cases {
            assert_eq!(
                CnfFormula::parse_dimacs(text).unwrap_err().line,
                line,
                "{text:?}"
            );
        }
    }
}
