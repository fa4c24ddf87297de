//! Benchmark problems: the deceptive 2D strip problem, random cuboid
//! functions, TSP, set covering and maximum SAT.

pub mod cuboid;
pub mod deceptive;
pub mod sat;
pub mod scp;
pub mod tsp;

pub(crate) mod text {
    use crate::error::ParseError;

    /// Whitespace-separated tokens tagged with their 1-based line number.
    pub fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
        text.lines()
            .enumerate()
            .flat_map(|(i, line)| line.split_whitespace().map(move |t| (i + 1, t)))
    }

    /// Line number used for errors found at end of input (1 for an empty file).
    pub fn last_line(text: &str) -> usize {
        text.lines().count().max(1)
    }

    pub fn parse_num<T: std::str::FromStr>(
        line: usize,
        token: &str,
        what: &str,
    ) -> Result<T, ParseError> {
        token
            .parse()
            .map_err(|_| ParseError::new(line, format!("invalid {what} `{token}`")))
    }
}
