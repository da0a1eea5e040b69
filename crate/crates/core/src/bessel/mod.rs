//! Weighted integrals `∫_0^z t^{α+β} J_β(t) dt`: the reduction identity
//! that lowers the power of `t`, and the growth bound `O(z^{α+β-1/2})`.

mod eval;
mod quad;
#[cfg(test)]
mod tests;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_count::envelope_ratio;

pub use eval::{bessel_j, MAX_ARGUMENT, MAX_ORDER};

/// Relative quadrature tolerance against `∫|f|` on each panel.
const QUAD_REL: f64 = 1e-13;
const QUAD_ABS: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesselParams {
    pub alpha: f64,
    pub beta: f64,
    pub z: f64,
}

impl BesselParams {
    /// Requires `α ≥ 2`, `β > -1/2`, `z ≥ 0`.
    pub fn new(alpha: f64, beta: f64, z: f64) -> Result<Self> {
        if !(alpha >= 2.0) || !alpha.is_finite() {
            return Err(Error::invalid(format!("α must be at least 2, got {alpha}")));
        }
        if !(beta > -0.5) || beta + 1.0 > MAX_ORDER {
            return Err(Error::invalid(format!("β must lie in (-1/2, {}], got {beta}", MAX_ORDER - 1.0)));
        }
        if !(0.0..=MAX_ARGUMENT).contains(&z) {
            return Err(Error::invalid(format!("z must lie in [0, {MAX_ARGUMENT}], got {z}")));
        }
        Ok(BesselParams { alpha, beta, z })
    }
}

/// `∫_a^b t^power J_order(t) dt` on panels of width at most π.
fn power_bessel_integral(power: f64, order: f64, a: f64, b: f64) -> Result<f64> {
    let f = |t: f64| -> Result<f64> {
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(t.powf(power) * bessel_j(order, t)?)
    };
    quad::integrate_panels(&f, a, b, PI, QUAD_REL, QUAD_ABS)
}

/// `∫_0^z t^{α+β} J_β(t) dt`
pub fn weighted_integral(p: &BesselParams) -> Result<f64> {
    power_bessel_integral(p.alpha + p.beta, p.beta, 0.0, p.z)
}

/// `|LHS - RHS| / (1 + |LHS|)` for
/// `∫_0^z t^{α+β} J_β = z^{α+β} J_{β+1}(z) - (α-1) ∫_0^z t^{α+β-1} J_{β+1}`.
pub fn lemma_identity_residual(p: &BesselParams) -> Result<f64> {
    let lhs = weighted_integral(p)?;
    let lowered = power_bessel_integral(p.alpha + p.beta - 1.0, p.beta + 1.0, 0.0, p.z)?;
    let rhs = p.z.powf(p.alpha + p.beta) * bessel_j(p.beta + 1.0, p.z)? - (p.alpha - 1.0) * lowered;
    Ok((lhs - rhs).abs() / (1.0 + lhs.abs()))
}

/// `|∫_0^z J_{β-1}(t) t^β dt - z^β J_β(z)| / (1 + |z^β J_β(z)|)`, for `β > 0`.
pub fn base_identity_residual(beta: f64, z: f64) -> Result<f64> {
    if !(beta > 0.0) || beta > MAX_ORDER {
        return Err(Error::invalid(format!("β must lie in (0, {MAX_ORDER}], got {beta}")));
    }
    if !(0.0..=MAX_ARGUMENT).contains(&z) {
        return Err(Error::invalid(format!("z must lie in [0, {MAX_ARGUMENT}], got {z}")));
    }
    let lhs = power_bessel_integral(beta, beta - 1.0, 0.0, z)?;
    let rhs = z.powf(beta) * bessel_j(beta, z)?;
    Ok((lhs - rhs).abs() / (1.0 + rhs.abs()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeRow {
    pub z: f64,
    pub integral: f64,
    /// `integral / z^{α+β-1/2}`
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEnvelope {
    pub alpha: f64,
    pub beta: f64,
    pub rows: Vec<EnvelopeRow>,
}

impl BoundEnvelope {
    /// Max of `|ratio|` over the last dyadic window divided by the max over
    /// the first half of the grid.
    pub fn stabilization_ratio(&self) -> Result<f64> {
        let zs: Vec<f64> = self.rows.iter().map(|r| r.z).collect();
        let rs: Vec<f64> = self.rows.iter().map(|r| r.ratio.abs()).collect();
        envelope_ratio(&zs, &rs)
    }

    /// Whether the envelope has stopped growing, at a 10% margin.
    pub fn is_stable(&self) -> Result<bool> {
        Ok(self.stabilization_ratio()? <= 1.1)
    }
}

fn check_grid(z_grid: &[f64]) -> Result<()> {
    if z_grid.is_empty() {
        return Err(Error::invalid("empty z grid"));
    }
    if z_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("z grid must be strictly increasing"));
    }
    if z_grid[0] < 1.0 || *z_grid.last().unwrap() > MAX_ARGUMENT {
        return Err(Error::invalid(format!("z grid must lie in [1, {MAX_ARGUMENT}]")));
    }
    Ok(())
}

/// Cumulative `∫_0^{z_i} g` along an ascending grid, normalized by `z^exponent`.
fn envelope_rows<F: Fn(f64) -> Result<f64>>(g: &F, exponent: f64, z_grid: &[f64]) -> Result<Vec<EnvelopeRow>> {
    check_grid(z_grid)?;
    let mut rows = Vec::with_capacity(z_grid.len());
    let mut integral = 0.0;
    let mut last = 0.0;
    for &z in z_grid {
        integral += quad::integrate_panels(g, last, z, PI, QUAD_REL, QUAD_ABS)?;
        last = z;
        rows.push(EnvelopeRow { z, integral, ratio: integral / z.powf(exponent) });
    }
    Ok(rows)
}

pub fn bound_envelope(alpha: f64, beta: f64, z_grid: &[f64]) -> Result<BoundEnvelope> {
    BesselParams::new(alpha, beta, 0.0)?;
    let power = alpha + beta;
    let g = |t: f64| -> Result<f64> {
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(t.powf(power) * bessel_j(beta, t)?)
    };
    let rows = envelope_rows(&g, power - 0.5, z_grid)?;
    Ok(BoundEnvelope { alpha, beta, rows })
}
