use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Box-plot summary of a batch of episodic returns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpreadStats {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub iqr: f64,
    pub outlier_count: usize,
    /// Outlying samples in ascending order.
    pub outlier_values: Vec<f64>,
    /// Fraction of samples inside the Tukey fences.
    pub coverage: f64,
}

impl SpreadStats {
    pub fn outlier_fraction(&self) -> f64 {
        self.outlier_count as f64 / self.count as f64
    }

    /// `[q1 − 1.5·iqr, q3 + 1.5·iqr]`
    pub fn fences(&self) -> (f64, f64) {
        (self.q1 - 1.5 * self.iqr, self.q3 + 1.5 * self.iqr)
    }
}

/// Linear interpolation between order statistics ("type 7") on sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    match sorted.get(lo + 1) {
        Some(&next) if frac > 0.0 => sorted[lo] + frac * (next - sorted[lo]),
        _ => sorted[lo],
    }
}

pub fn spread_stats(samples: &[f64]) -> Result<SpreadStats> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    if let Some(bad) = samples.iter().find(|v| !v.is_finite()) {
        return Err(Error::Unsupported(format!("non-finite sample {bad}")));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    let var = sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let q1 = quantile_sorted(&sorted, 0.25);
    // Same value as the type-7 quantile at 0.5, without its rounding.
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    };
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let (lo, hi) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
    let outlier_values: Vec<f64> = sorted.iter().copied().filter(|&v| v < lo || v > hi).collect();
    let outlier_count = outlier_values.len();
    Ok(SpreadStats {
        count: sorted.len(),
        min: sorted[0],
        max: sorted[sorted.len() - 1],
        mean,
        std: var.sqrt(),
        q1,
        median,
        q3,
        iqr,
        outlier_count,
        outlier_values,
        coverage: (sorted.len() - outlier_count) as f64 / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_to_five() {
        let s = spread_stats(&[5.0, 3.0, 1.0, 4.0, 2.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3, s.iqr), (2.0, 3.0, 4.0, 2.0));
        assert_eq!(s.outlier_count, 0);
        assert_eq!(s.coverage, 1.0);
        assert_eq!((s.min, s.max, s.mean), (1.0, 5.0, 3.0));
        assert!((s.std - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn constant_sample() {
        let s = spread_stats(&[7.5; 40]).unwrap();
        assert_eq!((s.std, s.iqr, s.coverage), (0.0, 0.0, 1.0));
    }

    #[test]
    fn single_sample() {
        let s = spread_stats(&[-3.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3, s.iqr, s.coverage), (-3.0, -3.0, -3.0, 0.0, 1.0));
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(spread_stats(&[]), Err(Error::EmptySample)));
    }

    #[test]
    fn fence_values_are_not_outliers() {
        // q1 = 1, q3 = 2, fences [-0.5, 3.5]
        let s = spread_stats(&[1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.5, -0.5, 1.5]).unwrap();
        assert_eq!(s.fences(), (-0.5, 3.5));
        assert_eq!(s.outlier_count, 0);
        let s = spread_stats(&[1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.6, -0.5, 1.5]).unwrap();
        assert_eq!(s.outlier_values, vec![3.6]);
    }
}
