//! Small exact-arithmetic helpers shared by the enumeration kernels and the
//! serializers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Floor of the square root of `n`, exact for the full `u128` range.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // the float estimate is within a couple of units; walk to the exact floor
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn isqrt_i128(n: i128) -> i128 {
    if n <= 0 {
        0
    } else {
        isqrt_u128(n as u128) as i128
    }
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `2.5` or
/// `-1e3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse '{s}' as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// 17 significant digits with trailing zeros trimmed; reparsing with
/// `str::parse::<f64>` returns the identical bit pattern.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let s = if (-5..17).contains(&mag) {
        let decimals = (16 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.16e}")
    };
    trim_zeros(&s)
}

fn trim_zeros(s: &str) -> String {
    let (body, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.')
    } else {
        body
    };
    format!("{body}{exp}")
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // to_f64 gives up on huge numerators; fall back to a scaled division
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn bigint_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(if n.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub fn biguint_to_f64(n: &BigUint) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

/// The exact dyadic rational carried by a finite `f64`.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::invalid(format!("{x} is not finite")))
}

pub fn lcm_i128(a: i128, b: i128) -> i128 {
    a.lcm(&b)
}

/// Integer square root of a perfect square, `None` otherwise.
pub fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, j| acc * j)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// `(2π)^e` as a float.
pub fn two_pi_pow(e: i64) -> f64 {
    (2.0 * std::f64::consts::PI).powi(e as i32)
}

/// Volume of the unit ball in `R^d`, `π^{d/2} / Γ(d/2 + 1)`.
pub fn unit_ball_volume(d: u32) -> f64 {
    let pi = std::f64::consts::PI;
    let half = (d / 2) as i32;
    if d % 2 == 0 {
        // Γ(k + 1) = k!
        pi.powi(half) / (1..=half).map(f64::from).product::<f64>()
    } else {
        // Γ(k + 3/2) = (2k + 1)!! √π / 2^{k+1}
        let dfact: f64 = (1..=d).step_by(2).map(f64::from).product();
        pi.powi(half) * 2f64.powi(half + 1) / dfact
    }
}

/// Running sum that stays in `u128` until it overflows.
#[derive(Clone, Debug, Default)]
pub(crate) struct BigSum {
    small: u128,
    big: BigUint,
}

impl BigSum {
    pub(crate) fn add_u128(&mut self, v: u128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    pub(crate) fn add_big(&mut self, v: &BigUint) {
        self.big += v;
    }

    pub(crate) fn merge(&mut self, other: BigSum) {
        self.big += other.big;
        self.add_u128(other.small);
    }

    pub(crate) fn total(&self) -> BigUint {
        &self.big + self.small
    }
}
