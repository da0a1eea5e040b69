//! Closed geodesics on the maximal torus of SO(N) and U(N): classes are the
//! points `ξ` of the kernel lattice `Λ ≅ Z^n`, with length `2π|ξ|`.


use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arithmetic::{ball_count, RepNumberTable};
use crate::error::{Error, Result};
use crate::lattice_count::{remainder_exponent_fit, EnvelopeFit};
use crate::numeric::{rational_from_f64, rational_to_f64, two_pi_pow, unit_ball_volume};

const FOUR_PI_SQ: f64 = 4.0 * PI * PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicClass {
    pub xi: Vec<i64>,
    pub length: f64,
    /// `|ξ|²`; the squared length is `4π²` times this.
    pub length_sq_exact: u64,
}

impl GeodesicClass {
    pub fn new(xi: Vec<i64>) -> Result<Self> {
        let norm = xi
            .iter()
            .try_fold(0u64, |acc, &v| acc.checked_add(v.unsigned_abs().checked_mul(v.unsigned_abs())?))
            .ok_or(Error::Overflow("|ξ|²"))?;
        Ok(GeodesicClass { xi, length: 2.0 * PI * (norm as f64).sqrt(), length_sq_exact: norm })
    }
}

/// Largest integer `k` with `4π²k ≤ x`. Values within `1e-9` (relative) of an
/// integer multiple of `4π²` are snapped onto it so that `x = (2π)²k`
/// computed in floating point still reaches the shell `k`.
pub fn norm_cutoff(x: f64) -> Result<u64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!("x must be a finite nonnegative number, got {x}")));
    }
    let t = x / FOUR_PI_SQ;
    let near = t.round();
    let k = if (t - near).abs() <= 1e-9 * near.max(1.0) { near } else { t.floor() };
    if k >= u64::MAX as f64 {
        return Err(Error::Overflow("geodesic cutoff"));
    }
    Ok(k as u64)
}

/// `𝓛(x) = #{ξ ∈ Z^n : 2π|ξ| ≤ √x}`, the constant geodesic included.
pub fn geodesic_count(n: u32, x: f64) -> Result<BigUint> {
    let k = norm_cutoff(x)?;
    let table = RepNumberTable::build(n, k)?;
    ball_count(&table, k).map(BigUint::from).ok_or(Error::Overflow("geodesic count"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthLine {
    /// `|ξ|²`
    pub k: u64,
    /// `4π²k`
    pub length_sq: f64,
    pub count: u128,
}

/// Distinct squared lengths up to `length_max²` with their class counts,
/// ascending and starting at the trivial class.
pub fn length_spectrum(n: u32, length_max: f64) -> Result<Vec<LengthLine>> {
    if !(length_max >= 0.0) || !length_max.is_finite() {
        return Err(Error::invalid(format!("length bound must be finite and nonnegative, got {length_max}")));
    }
    let k_max = norm_cutoff(length_max * length_max)?;
    let table = RepNumberTable::build(n, k_max)?;
    Ok(table
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &count)| LengthLine { k: k as u64, length_sq: FOUR_PI_SQ * k as f64, count })
        .collect())
}

/// Best known `(δ, ζ)` with `𝓛(x) = ω_n x^{n/2}/(2π)^n + O(x^δ ln^ζ x)`.
pub fn circle_problem_exponents(n: u32) -> Result<(BigRational, BigRational)> {
    let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
    match n {
        0 | 1 => Err(Error::invalid("the lattice-point exponents are tabulated for n >= 2")),
        2 => Ok((r(131, 416), r(0, 1))),
        3 => Ok((r(21, 32), r(0, 1))),
        4 => Ok((r(1, 1), r(2, 3))),
        _ => Ok((r(n as i64 - 2, 2), r(0, 1))),
    }
}

/// `ω_n / (2π)^n`
pub fn geodesic_leading_coefficient(n: u32) -> f64 {
    unit_ball_volume(n) * two_pi_pow(-(n as i64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleRow {
    pub x: f64,
    pub count: BigUint,
    pub leading: f64,
    pub remainder: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleReport {
    pub n: u32,
    pub delta: BigRational,
    pub zeta: BigRational,
    pub leading_coefficient: f64,
    pub rows: Vec<CircleRow>,
    /// Envelope slope of `|remainder|` against `x`; needs eight grid points.
    pub fit: Option<EnvelopeFit>,
}

pub fn circle_problem_report(n: u32, x_grid: &[f64]) -> Result<CircleReport> {
    let (delta, zeta) = circle_problem_exponents(n)?;
    let cutoffs = x_grid.iter().map(|&x| norm_cutoff(x)).collect::<Result<Vec<_>>>()?;
    let k_max = cutoffs.iter().copied().max().unwrap_or(0);
    let table = RepNumberTable::build(n, k_max)?;
    let coefficient = geodesic_leading_coefficient(n);
    let rows = x_grid
        .iter()
        .zip(&cutoffs)
        .map(|(&x, &k)| {
            let count = ball_count(&table, k).ok_or(Error::Overflow("geodesic count"))?;
            let leading = coefficient * x.powf(n as f64 / 2.0);
            let rem = BigRational::from_integer(BigInt::from(count)) - rational_from_f64(leading)?;
            Ok(CircleRow { x, count: BigUint::from(count), leading, remainder: rational_to_f64(&rem) })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = rows.iter().filter(|r| r.x > 0.0).map(|r| (r.x, r.remainder.abs())).collect();
    let fit = if points.len() >= 8 { remainder_exponent_fit(&points).ok() } else { None };
    Ok(CircleReport { n, delta, zeta, leading_coefficient: coefficient, rows, fit })
}
