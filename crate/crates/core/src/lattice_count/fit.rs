use crate::error::{Error, Result};

/// Outcome of fitting `|remainder| ~ C R^slope` along the running maxima.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum EnvelopeFit {
    /// Every remainder is zero; there is nothing to fit.
    Exact,
    Fitted {
        slope: f64,
        /// RMS residual of the log-log fit.
        residual: f64,
        /// Number of running-maximum points used.
        points: usize,
    },
}

impl EnvelopeFit {
    pub fn slope(&self) -> Option<f64> {
        match self {
            EnvelopeFit::Exact => None,
            EnvelopeFit::Fitted { slope, .. } => Some(*slope),
        }
    }
}

/// Points where `|y|` strictly exceeds every earlier `|y|`.
pub fn running_maxima(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut best = 0.0f64;
    let mut out = Vec::new();
    for &(x, y) in points {
        if y.abs() > best {
            best = y.abs();
            out.push((x, best));
        }
    }
    out
}

/// Least-squares slope of `log|remainder|` against `log R` over the running
/// maxima of `|remainder|`.
pub fn remainder_exponent_fit(points: &[(f64, f64)]) -> Result<EnvelopeFit> {
    if points.len() < 8 {
        return Err(Error::invalid("envelope fit needs at least 8 sample radii"));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0) || !x.is_finite() || !y.is_finite()) {
        return Err(Error::invalid("envelope fit needs positive radii and finite remainders"));
    }
    if points.windows(2).any(|w| !(w[0].0 < w[1].0)) {
        return Err(Error::invalid("envelope fit needs increasing radii"));
    }
    if points.iter().all(|&(_, y)| y == 0.0) {
        return Ok(EnvelopeFit::Exact);
    }
    let env = running_maxima(points);
    if env.len() < 2 {
        return Err(Error::Numerical("fewer than two running maxima to fit".into()));
    }
    let xs: Vec<f64> = env.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = env.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / n).sqrt();
    Ok(EnvelopeFit::Fitted { slope, residual, points: env.len() })
}

/// Largest value in the last dyadic window `x >= x_max / 2` divided by the
/// largest value over the first half of the grid.
pub fn envelope_ratio(xs: &[f64], values: &[f64]) -> Result<f64> {
    if xs.len() != values.len() || xs.len() < 4 {
        return Err(Error::invalid("envelope ratio needs at least 4 matching samples"));
    }
    let x_max = xs.iter().cloned().fold(f64::MIN, f64::max);
    let half = xs.len().div_ceil(2);
    let early = values[..half].iter().map(|v| v.abs()).fold(0.0, f64::max);
    let late = xs
        .iter()
        .zip(values)
        .filter(|(&x, _)| x >= x_max / 2.0)
        .map(|(_, v)| v.abs())
        .fold(0.0, f64::max);
    if early == 0.0 {
        return Ok(if late == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(late / early)
}
