//! Averages of homogeneous polynomials over normalized lattice shells
//! `H_k = {x/√k : x ∈ Z^n, |x|² = k}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_count::HomogeneousPolynomial;
use crate::numeric::rational_to_f64;

/// `Σ_{|x|² = k} x^α` for `0 ≤ k ≤ max_k`, by convolving the one-variable
/// tables `h_e(s) = Σ_{x² = s} x^e`. Zero whenever some exponent is odd.
fn monomial_shell_sums(alpha: &[u32], max_k: usize) -> Result<Vec<u128>> {
    let len = max_k + 1;
    if alpha.iter().any(|e| e % 2 == 1) {
        return Ok(vec![0; len]);
    }
    let mut table = vec![0u128; len];
    table[0] = 1;
    for &e in alpha {
        let mut next = vec![0u128; len];
        if e == 0 {
            next.copy_from_slice(&table);
        }
        let mut x = 1usize;
        while x * x <= max_k {
            let s = x * x;
            let w = (x as u128).checked_pow(e).and_then(|v| v.checked_mul(2)).ok_or(Error::Overflow("shell moments"))?;
            for k in s..len {
                let add = table[k - s].checked_mul(w).ok_or(Error::Overflow("shell moments"))?;
                next[k] = next[k].checked_add(add).ok_or(Error::Overflow("shell moments"))?;
            }
            x += 1;
        }
        table = next;
    }
    Ok(table)
}

/// Shell averages of `P` for every `0 ≤ k ≤ max_k`; `None` where the shell
/// is empty and at `k = 0`.
pub fn sphere_average_table(p: &HomogeneousPolynomial, max_k: u64) -> Result<Vec<Option<BigRational>>> {
    let max = usize::try_from(max_k).map_err(|_| Error::invalid("k too large"))?;
    let n = p.vars();
    let counts = monomial_shell_sums(&vec![0; n], max)?;
    let degree = p.degree();
    let mut sums = vec![BigRational::zero(); max + 1];
    // odd degree: x -> -x maps each shell to itself and flips the sign
    if degree % 2 == 0 {
        for (alpha, c) in p.terms() {
            for (acc, s) in sums.iter_mut().zip(monomial_shell_sums(alpha, max)?) {
                if s != 0 {
                    *acc += c * BigInt::from(s);
                }
            }
        }
    }
    let half = degree / 2;
    Ok(counts
        .iter()
        .zip(sums)
        .enumerate()
        .map(|(k, (&count, sum))| {
            if count == 0 || k == 0 {
                return None;
            }
            Some(sum / (BigInt::from(count) * BigInt::from(k).pow(half)))
        })
        .collect())
}

/// `(1/r_n(k)) Σ_{θ ∈ H_k} P(θ)`, exactly.
pub fn sphere_average(p: &HomogeneousPolynomial, k: u64) -> Result<BigRational> {
    sphere_average_table(p, k)?
        .pop()
        .flatten()
        .ok_or_else(|| Error::invalid(format!("no points of Z^{} on the shell |x|² = {k}", p.vars())))
}

/// `κ = |S^{n-1}|^{-1} ∫_{S^{n-1}} P dσ`, which is rational.
pub fn sphere_integral_average_exact(p: &HomogeneousPolynomial) -> BigRational {
    let total = p.sphere_integral_exact();
    let area = HomogeneousPolynomial::one(p.vars()).sphere_integral_exact();
    total.coefficient / area.coefficient
}

pub fn sphere_integral_average(p: &HomogeneousPolynomial) -> f64 {
    rational_to_f64(&sphere_integral_average_exact(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendPoint {
    pub k: u64,
    /// `|shell average - κ|`
    pub deviation: f64,
}

/// Deviation of shell averages from the sphere average along `k_grid`,
/// skipping empty shells.
pub fn equidistribution_trend(p: &HomogeneousPolynomial, k_grid: &[u64]) -> Result<Vec<TrendPoint>> {
    let Some(&max) = k_grid.iter().max() else {
        return Ok(Vec::new());
    };
    let table = sphere_average_table(p, max)?;
    let kappa = sphere_integral_average_exact(p);
    Ok(k_grid
        .iter()
        .filter_map(|&k| {
            let avg = table[k as usize].as_ref()?;
            Some(TrendPoint { k, deviation: rational_to_f64(&(avg - &kappa).abs()) })
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowMax {
    /// Window is `lo ≤ k < hi` with `hi = 2 lo`.
    pub lo: u64,
    pub hi: u64,
    pub max: f64,
}

/// Maxima over the dyadic windows `[2^j, 2^{j+1})` that contain points.
/// `k = 0` is ignored.
pub fn dyadic_window_maxima(points: &[TrendPoint]) -> Vec<WindowMax> {
    let mut out: Vec<WindowMax> = Vec::new();
    let mut sorted: Vec<&TrendPoint> = points.iter().filter(|p| p.k > 0).collect();
    sorted.sort_by_key(|p| p.k);
    for p in sorted {
        let lo = 1u64 << (63 - p.k.leading_zeros());
        match out.last_mut() {
            Some(w) if w.lo == lo => w.max = w.max.max(p.deviation),
            _ => out.push(WindowMax { lo, hi: lo * 2, max: p.deviation }),
        }
    }
    out
}
