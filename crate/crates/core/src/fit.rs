//! Least-squares power-law fits on exact integer data.

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points_used: usize,
}

impl ExponentFit {
    pub fn matches(&self, target: f64, tolerance: f64) -> bool {
        (self.slope - target).abs() <= tolerance
    }
}

/// Natural log of a positive integer of any size.
pub fn ln_bigint(x: &BigInt) -> Result<f64> {
    if x.sign() != Sign::Plus {
        return Err(Error::Fit(format!("logarithm of nonpositive value {x}")));
    }
    let bits = x.bits();
    if bits <= 1000 {
        return Ok(x.to_f64().expect("fits in f64").ln());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    Ok(top.ln() + shift as f64 * std::f64::consts::LN_2)
}

/// Slope of `ln y` against `ln x`.
pub fn fit_exponent(pairs: &[(BigInt, BigInt)]) -> Result<ExponentFit> {
    if pairs.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 points, got {}",
            pairs.len()
        )));
    }
    let logs = pairs
        .iter()
        .map(|(x, y)| Ok((ln_bigint(x)?, ln_bigint(y)?)))
        .collect::<Result<Vec<_>>>()?;
    fit_logs(&logs)
}

pub fn fit_exponent_u64(pairs: &[(u64, u64)]) -> Result<ExponentFit> {
    let big: Vec<_> = pairs
        .iter()
        .map(|&(x, y)| (BigInt::from(x), BigInt::from(y)))
        .collect();
    fit_exponent(&big)
}

fn fit_logs(points: &[(f64, f64)]) -> Result<ExponentFit> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all x values are equal".into()));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(ExponentFit {
        slope,
        intercept,
        residual: (sse / n).sqrt(),
        points_used: points.len(),
    })
}
