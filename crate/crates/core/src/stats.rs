//! Summary statistics with normal 95% confidence intervals, and the
//! log-log slope used to read off scaling exponents.

use crate::error::StatsError;

pub const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStat {
    pub n: usize,
    pub mean: f64,
    /// `n - 1` denominator; `None` when `n == 1`.
    pub sample_stddev: Option<f64>,
    pub standard_error: Option<f64>,
    pub ci95_low: Option<f64>,
    pub ci95_high: Option<f64>,
}

pub fn summarize(values: &[f64]) -> Result<SummaryStat, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return Ok(SummaryStat {
            n,
            mean,
            sample_stddev: None,
            standard_error: None,
            ci95_low: None,
            ci95_high: None,
        });
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let sd = (ss / (n - 1) as f64).sqrt();
    let se = sd / (n as f64).sqrt();
    Ok(SummaryStat {
        n,
        mean,
        sample_stddev: Some(sd),
        standard_error: Some(se),
        ci95_low: Some(mean - Z_95 * se),
        ci95_high: Some(mean + Z_95 * se),
    })
}

/// Least-squares slope of `ln(value)` against `ln(x)`.
pub fn scaling_fit(points: &[(f64, f64)]) -> Result<f64, StatsError> {
    if points.len() < 3 {
        return Err(StatsError::TooFewPoints(points.len()));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(StatsError::NonPositive(x, y));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}
