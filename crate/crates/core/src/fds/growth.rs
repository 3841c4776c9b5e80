use serde::{Deserialize, Serialize};

use super::FdsError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthMethod {
    /// Least-squares slope of `log d_n` over the upper half of the window.
    #[default]
    Slope,
    /// `log(d_{n_max} / d_{n_max−1})`.
    LastRatio,
}

impl std::fmt::Display for GrowthMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GrowthMethod::Slope => "slope",
            GrowthMethod::LastRatio => "last-ratio",
        })
    }
}

impl std::str::FromStr for GrowthMethod {
    type Err = FdsError;
    fn from_str(s: &str) -> Result<Self, FdsError> {
        match s {
            "slope" => Ok(GrowthMethod::Slope),
            "last-ratio" => Ok(GrowthMethod::LastRatio),
            other => Err(FdsError::Input(format!("unknown growth method '{other}'"))),
        }
    }
}

/// A finite-window estimate of an exponential growth rate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthEstimate {
    /// The estimate from `method`, clamped at 0.
    pub rate: f64,
    pub window: (usize, usize),
    pub method: GrowthMethod,
    pub slope: f64,
    pub last_ratio: f64,
    /// `min log(d_n)/n` over the window, reported for submultiplicative
    /// sequences where it bounds the limit from above.
    pub certified_upper: Option<f64>,
    /// `d_0, …, d_{n_max}`.
    pub d_sequence: Vec<u64>,
}

/// `log d` with the convention `log 0 = 0`.
pub fn ln_or_zero(d: u64) -> f64 {
    if d == 0 {
        0.0
    } else {
        (d as f64).ln()
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Estimates the growth rate of `d` (indexed from level 0) over the
/// window `[n_min, n_max]`.
pub fn growth_rate(
    d: &[u64],
    window: (usize, usize),
    method: GrowthMethod,
    submultiplicative: bool,
) -> Result<GrowthEstimate, FdsError> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(FdsError::Domain(format!("empty window [{lo}, {hi}]")));
    }
    if hi >= d.len() {
        return Err(FdsError::Domain(format!("window end {hi} is beyond the {} available levels", d.len())));
    }
    let win = &d[lo..=hi];
    let constant = win.iter().all(|&x| x == win[0]);

    let mid = lo + (hi - lo) / 2;
    let points: Vec<(f64, f64)> = (mid..=hi).map(|n| (n as f64, ln_or_zero(d[n]))).collect();
    let slope = if constant { 0.0 } else { least_squares_slope(&points) };
    let last_ratio = if hi == 0 || d[hi] == d[hi - 1] {
        0.0
    } else {
        ln_or_zero(d[hi]) - ln_or_zero(d[hi - 1])
    };
    let rate = match method {
        GrowthMethod::Slope => slope,
        GrowthMethod::LastRatio => last_ratio,
    }
    .max(0.0);
    let certified_upper = submultiplicative
        .then(|| (lo.max(1)..=hi).map(|n| ln_or_zero(d[n]) / n as f64).reduce(f64::min))
        .flatten();
    Ok(GrowthEstimate {
        rate,
        window,
        method,
        slope,
        last_ratio,
        certified_upper,
        d_sequence: d[..=hi].to_vec(),
    })
}
