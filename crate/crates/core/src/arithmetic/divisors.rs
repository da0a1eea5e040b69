use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::RepNumberTable;
use crate::error::{Error, Result};
use crate::numeric::BigSum;

/// Sum of the divisors of `k`.
pub fn sigma(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::invalid("σ(k) needs k >= 1"));
    }
    let mut total = 0u64;
    let mut d = 1u64;
    while d * d <= k {
        if k % d == 0 {
            total += d;
            let e = k / d;
            if e != d {
                total += e;
            }
        }
        d += 1;
    }
    Ok(total)
}

/// `σ(k)` for `0 ≤ k ≤ t` by sieving; entry 0 is 0.
pub fn divisor_sum_table(t: u64) -> Vec<u64> {
    let len = t as usize + 1;
    let mut out = vec![0u64; len];
    for d in 1..len {
        for k in (d..len).step_by(d) {
            out[k] += d as u64;
        }
    }
    out
}

/// `S_m(t) = Σ_{k ≤ t} k^m σ(k)`, summed over divisor pairs `d·j ≤ t`.
pub fn s_m(t: u64, m: u32) -> BigUint {
    let mut sum = BigSum::default();
    for d in 1..=t {
        for j in 1..=t / d {
            let k = (d * j) as u128;
            match k.checked_pow(m).and_then(|p| p.checked_mul(d as u128)) {
                Some(v) => sum.add_u128(v),
                None => sum.add_big(&(BigUint::from(k).pow(m) * d)),
            }
        }
    }
    sum.total()
}

/// `S_m(0), …, S_m(t)`.
pub fn s_m_prefix(t: u64, m: u32) -> Vec<BigUint> {
    let sig = divisor_sum_table(t);
    let mut out = Vec::with_capacity(sig.len());
    let mut sum = BigSum::default();
    out.push(BigUint::zero());
    for (k, &s) in sig.iter().enumerate().skip(1) {
        match (k as u128).checked_pow(m).and_then(|p| p.checked_mul(s as u128)) {
            Some(v) => sum.add_u128(v),
            None => sum.add_big(&(BigUint::from(k).pow(m) * s)),
        }
        out.push(sum.total());
    }
    out
}

/// Sawtooth `ψ(u) = u - ⌊u⌋ - 1/2`.
pub fn psi(u: &BigRational) -> BigRational {
    u - u.floor() - BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `D(t) = Σ_{k ≤ t} ψ(t/k) / k`.
pub fn sawtooth_sum(t: u64) -> Result<BigRational> {
    if t == 0 {
        return Err(Error::invalid("D(t) needs t >= 1"));
    }
    let mut total = BigRational::zero();
    for k in 1..=t {
        let u = BigRational::new(BigInt::from(t), BigInt::from(k));
        total += psi(&u) / BigInt::from(k);
    }
    Ok(total)
}

fn jacobi_rhs(m: u32, s_t: &BigUint, s_quarter: &BigUint) -> BigInt {
    let scale = BigUint::from(4u32).pow(m) * 32u32;
    BigInt::from(s_t * 8u32) - BigInt::from(scale * s_quarter)
}

/// Both sides of `ℰ_4(R) = 8 S_m(R²) - 4^m·32·S_m(⌊R²/4⌋)` at `t = R²`.
pub fn jacobi_identity_check(m: u32, t: u64) -> Result<(BigInt, BigInt)> {
    if t == 0 {
        return Err(Error::invalid("the four-square identity is checked for t >= 1"));
    }
    let lhs = super::weighted_ball_sum(4, m, t)?;
    let rhs = jacobi_rhs(m, &s_m(t, m), &s_m(t / 4, m));
    Ok((BigInt::from(lhs), rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub m: u32,
    pub t_max: u64,
    /// Values of `t` where the two sides differ.
    pub mismatches: Vec<u64>,
}

impl JacobiReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `(t, lhs, rhs)` of the four-square identity for every `1 ≤ t ≤ t_max`.
pub fn jacobi_identity_values(m: u32, t_max: u64) -> Result<Vec<(u64, BigInt, BigInt)>> {
    if t_max == 0 {
        return Err(Error::invalid("t_max must be at least 1"));
    }
    let table = RepNumberTable::build(4, t_max)?;
    let grid: Vec<u64> = (1..=t_max).collect();
    let lhs = table.weighted_sums_at(m, &grid)?;
    let s = s_m_prefix(t_max, m);
    Ok(grid
        .into_iter()
        .zip(lhs)
        .map(|(t, l)| (t, BigInt::from(l), jacobi_rhs(m, &s[t as usize], &s[(t / 4) as usize])))
        .collect())
}

/// The four-square identity at every `1 ≤ t ≤ t_max`.
pub fn jacobi_identity_sweep(m: u32, t_max: u64) -> Result<JacobiReport> {
    let mismatches = jacobi_identity_values(m, t_max)?.into_iter().filter(|(_, l, r)| l != r).map(|(t, _, _)| t).collect();
    Ok(JacobiReport { m, t_max, mismatches })
}
