//! Representation numbers, divisor sums and radially weighted lattice sums
//! over `Z^n`.

mod divisors;
mod shells;
#[cfg(test)]
mod tests;

use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binomial, rational_from_f64, rational_to_f64, unit_ball_volume, BigSum};

pub use divisors::{divisor_sum_table, jacobi_identity_check, jacobi_identity_sweep, jacobi_identity_values, psi, s_m, s_m_prefix, sawtooth_sum, sigma, JacobiReport};
pub use shells::{
    dyadic_window_maxima, equidistribution_trend, sphere_average, sphere_average_table, sphere_integral_average, sphere_integral_average_exact,
    TrendPoint, WindowMax,
};

/// Default cap on table length (entries up to and including `K`).
pub const DEFAULT_TABLE_LIMIT: usize = 1 << 25;

/// `r_n(k) = #{ω ∈ Z^n : |ω|² = k}` for `0 ≤ k ≤ K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepNumberTable {
    n: u32,
    #[serde(with = "decimal_u128")]
    values: Vec<u128>,
}

mod decimal_u128 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[u128], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u128>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

impl RepNumberTable {
    pub fn build(n: u32, max_k: u64) -> Result<Self> {
        Self::build_with_limit(n, max_k, DEFAULT_TABLE_LIMIT)
    }

    pub fn build_with_limit(n: u32, max_k: u64, limit: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        let len = max_k.checked_add(1).and_then(|l| usize::try_from(l).ok()).unwrap_or(usize::MAX);
        if len > limit {
            return Err(Error::Budget { what: "representation-number table", needed: len as f64, budget: limit as f64 });
        }
        // r_n(k) <= (2√k + 1)^n
        let width = 2.0 * (max_k as f64).sqrt() + 1.0;
        let bound = (n as f64) * width.log2();
        let values = if bound < 62.0 {
            convolve_powers::<u64>(n, len).into_iter().map(u128::from).collect()
        } else if bound < 126.0 {
            convolve_powers::<u128>(n, len)
        } else {
            return Err(Error::Overflow("representation numbers"));
        };
        Ok(RepNumberTable { n, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_k(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, k: u64) -> Option<u128> {
        self.values.get(usize::try_from(k).ok()?).copied()
    }

    pub fn values(&self) -> &[u128] {
        &self.values
    }

    /// `Σ_{k=lo}^{hi} k^m r_n(k)`.
    pub fn weighted_range_sum(&self, m: u32, lo: u64, hi: u64) -> Result<BigUint> {
        if hi > self.max_k() {
            return Err(Error::invalid(format!("R² = {hi} exceeds table size {}", self.max_k())));
        }
        let mut sum = BigSum::default();
        for k in lo..=hi {
            add_weighted(&mut sum, k, m, self.values[k as usize]);
        }
        Ok(sum.total())
    }

    /// `ℰ(R) = Σ_{k=1}^{R²} k^m r_n(k)` at each point of a nondecreasing grid
    /// of `R²` values, in one pass.
    pub fn weighted_sums_at(&self, m: u32, r2_grid: &[u64]) -> Result<Vec<BigUint>> {
        if r2_grid.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("R² grid must be nondecreasing"));
        }
        if let Some(&last) = r2_grid.last() {
            if last > self.max_k() {
                return Err(Error::invalid(format!("R² = {last} exceeds table size {}", self.max_k())));
            }
        }
        let mut out = Vec::with_capacity(r2_grid.len());
        let mut sum = BigSum::default();
        let mut next = 1u64;
        for &r2 in r2_grid {
            while next <= r2 {
                add_weighted(&mut sum, next, m, self.values[next as usize]);
                next += 1;
            }
            out.push(sum.total());
        }
        Ok(out)
    }
}

fn add_weighted(sum: &mut BigSum, k: u64, m: u32, r: u128) {
    if r == 0 {
        return;
    }
    match (k as u128).checked_pow(m).and_then(|p| p.checked_mul(r)) {
        Some(v) => sum.add_u128(v),
        None => sum.add_big(&(BigUint::from(k).pow(m) * r)),
    }
}

/// `r_1 ⋆ r_1 ⋆ … ⋆ r_1` (n factors) truncated to `len` entries.
fn convolve_powers<T>(n: u32, len: usize) -> Vec<T>
where
    T: Copy + Add<Output = T> + From<u8>,
{
    let zero = T::from(0);
    let mut table = vec![zero; len];
    table[0] = T::from(1);
    for _ in 0..n {
        let mut next = table.clone();
        let mut x = 1usize;
        while x * x < len {
            let s = x * x;
            for k in s..len {
                let v = table[k - s];
                next[k] = next[k] + v + v;
            }
            x += 1;
        }
        table = next;
    }
    table
}

pub fn rep_numbers(n: u32, max_k: u64) -> Result<RepNumberTable> {
    RepNumberTable::build(n, max_k)
}

/// `ℰ(R) = Σ_{k=1}^{R²} k^m r_n(k)`; the origin is not counted.
pub fn weighted_ball_sum(n: u32, m: u32, r2: u64) -> Result<BigUint> {
    let table = RepNumberTable::build(n, r2)?;
    table.weighted_range_sum(m, 1, r2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedBallRow {
    pub r2: u64,
    pub value: BigUint,
    pub leading: f64,
    pub remainder: f64,
    /// `|remainder| / R^{2m+n-2}`
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedBallSeries {
    pub n: u32,
    pub m: u32,
    /// The sharp remainder bound is only claimed for `n >= 5`.
    pub in_theorem_regime: bool,
    pub rows: Vec<WeightedBallRow>,
}

impl WeightedBallSeries {
    pub fn r2_values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.r2 as f64).collect()
    }

    pub fn normalized(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.normalized).collect()
    }
}

/// Leading term `|S^{n-1}| / (2m+n) · R^{2m+n}` at `R² = r2`.
pub fn sharp_leading_term(n: u32, m: u32, r2: u64) -> f64 {
    let sphere = n as f64 * unit_ball_volume(n);
    let e = 2 * m + n;
    sphere / e as f64 * (r2 as f64).powf(e as f64 / 2.0)
}

pub fn sharp_leading_check(n: u32, m: u32, r2_grid: &[u64]) -> Result<WeightedBallSeries> {
    let max = r2_grid.iter().copied().max().unwrap_or(0);
    let table = RepNumberTable::build(n, max)?;
    sharp_leading_check_with(&table, m, r2_grid)
}

/// Same as [`sharp_leading_check`] against a prebuilt table.
pub fn sharp_leading_check_with(table: &RepNumberTable, m: u32, r2_grid: &[u64]) -> Result<WeightedBallSeries> {
    let n = table.n();
    let values = table.weighted_sums_at(m, r2_grid)?;
    let rows = r2_grid
        .iter()
        .zip(values)
        .map(|(&r2, value)| {
            let leading = sharp_leading_term(n, m, r2);
            let exact = BigRational::from_integer(BigInt::from(value.clone())) - rational_from_f64(leading)?;
            let remainder = rational_to_f64(&exact);
            let scale = (r2 as f64).powf((2 * m + n) as f64 / 2.0 - 1.0);
            let normalized = if r2 == 0 { 0.0 } else { remainder.abs() / scale };
            Ok(WeightedBallRow { r2, value, leading, remainder, normalized })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedBallSeries { n, m, in_theorem_regime: n >= 5, rows })
}

/// Slices `Z^{n+1}` by its last coordinate `j` and compares
/// `ℰ_{n+1}(R)` with `Σ_j Σ_{|ω|² ≤ R²-j²} (|ω|² + j²)^m`, the inner sums
/// expanded binomially in powers of `|ω|²`.
pub fn dimension_recursion_check(n: u32, m: u32, radius: u64) -> Result<(BigUint, BigUint)> {
    let r2 = radius.checked_mul(radius).ok_or(Error::Overflow("R²"))?;
    let low = RepNumberTable::build(n, r2)?;
    let high = RepNumberTable::build(n + 1, r2)?;
    let lhs = high.weighted_range_sum(m, 1, r2)?;

    // prefix[k][t] = Σ_{s=0}^{t} s^k r_n(s), with 0^0 = 1
    let mut prefix: Vec<Vec<BigUint>> = Vec::with_capacity(m as usize + 1);
    for k in 0..=m {
        let mut row = Vec::with_capacity(r2 as usize + 1);
        let mut sum = BigSum::default();
        for s in 0..=r2 {
            add_weighted(&mut sum, s, k, low.values[s as usize]);
            row.push(sum.total());
        }
        prefix.push(row);
    }

    let mut rhs = BigUint::zero();
    for j in 0..=radius {
        let rest = (r2 - j * j) as usize;
        let mut slice = BigUint::zero();
        for k in 0..=m {
            let jpow = BigUint::from(j * j).pow(m - k);
            slice += binomial(m as u64, k as u64) * jpow * &prefix[k as usize][rest];
        }
        rhs += if j == 0 { slice } else { slice * 2u32 };
    }
    if m == 0 {
        rhs -= 1u32;
    }
    Ok((lhs, rhs))
}

/// `Σ_{k=0}^{R²} r_n(k)` as `u128`, the unweighted ball count including the origin.
pub fn ball_count(table: &RepNumberTable, r2: u64) -> Option<u128> {
    let end = usize::try_from(r2).ok()?;
    table.values.get(..=end)?.iter().try_fold(0u128, |a, &v| a.checked_add(v))
}
