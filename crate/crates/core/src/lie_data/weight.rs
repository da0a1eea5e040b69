use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, parse_rational};

/// A weight stored as integer numerators over one shared positive
/// denominator, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct WeightVector {
    num: Vec<i64>,
    den: i64,
}

impl WeightVector {
    pub fn from_scaled(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = (num, den);
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|v| *v = -*v);
        }
        let g = num.iter().fold(den, |g, &v| g.gcd(&v));
        if g > 1 {
            num.iter_mut().for_each(|v| *v /= g);
            den /= g;
        }
        WeightVector { num, den }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        WeightVector { num: v.to_vec(), den: 1 }
    }

    pub fn zero(len: usize) -> Self {
        WeightVector { num: vec![0; len], den: 1 }
    }

    pub fn from_rationals(coords: &[BigRational]) -> Result<Self> {
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let den64 = den
            .to_i64()
            .ok_or_else(|| Error::invalid("weight denominator out of range"))?;
        let num = coords
            .iter()
            .map(|c| {
                (c.numer() * (&den / c.denom()))
                    .to_i64()
                    .ok_or_else(|| Error::invalid("weight coordinate out of range"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_scaled(num, den64))
    }

    /// Comma-separated coordinates, each `p/q`, an integer, or a decimal.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.trim().is_empty() {
            return Err(Error::invalid("empty weight"));
        }
        let coords = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Self::from_rationals(&coords)
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn coord(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].into(), self.den.into())
    }

    pub fn coords(&self) -> Vec<BigRational> {
        (0..self.len()).map(|i| self.coord(i)).collect()
    }

    /// Numerators over the denominator `d`, if `d` is a multiple of ours.
    pub fn scaled_to(&self, d: i64) -> Option<Vec<i64>> {
        (d % self.den == 0).then(|| {
            let f = d / self.den;
            self.num.iter().map(|&v| v * f).collect()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&v| v == 0)
    }

    pub fn dot(&self, other: &WeightVector) -> BigRational {
        let s: i128 = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        BigRational::new(s.into(), (self.den as i128 * other.den as i128).into())
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        let den = self.den.lcm(&other.den);
        let (fa, fb) = (den / self.den, den / other.den);
        let num = self.num.iter().zip(&other.num).map(|(&a, &b)| a * fa + b * fb).collect();
        Self::from_scaled(num, den)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords().iter().map(format_rational).collect()
    }
}

impl Ord for WeightVector {
    fn cmp(&self, other: &Self) -> Ordering {
        for (&a, &b) in self.num.iter().zip(&other.num) {
            let o = (a as i128 * other.den as i128).cmp(&(b as i128 * self.den as i128));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.num.len().cmp(&other.num.len())
    }
}

impl PartialOrd for WeightVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl TryFrom<Vec<String>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        let coords = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Self::from_rationals(&coords)
    }
}

impl From<WeightVector> for Vec<String> {
    fn from(w: WeightVector) -> Self {
        w.to_strings()
    }
}

pub(crate) fn is_integral(r: &BigRational) -> bool {
    r.is_integer()
}

pub(crate) fn is_half_odd(r: &BigRational) -> bool {
    let twice = r * BigRational::from_integer(2.into());
    twice.is_integer() && !r.is_integer() && twice.numer().abs().is_odd()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let w = WeightVector::from_scaled(vec![3, 1], 2);
        assert_eq!(w.denominator(), 2);
        let w = WeightVector::from_scaled(vec![2, 4], 2);
        assert_eq!(w, WeightVector::from_ints(&[1, 2]));
        assert_eq!(WeightVector::from_scaled(vec![1], -2).to_strings(), vec!["-1/2"]);
    }

    #[test]
    fn parse_and_display() {
        let w = WeightVector::parse("(3/2, 1/2)").unwrap();
        assert_eq!(w.to_string(), "(3/2, 1/2)");
        assert_eq!(w.scaled_to(4), Some(vec![6, 2]));
        assert_eq!(w.scaled_to(3), None);
        assert!(WeightVector::parse("").is_err());
    }

    #[test]
    fn ordering_is_lexicographic_on_values() {
        let a = WeightVector::parse("1/2,5").unwrap();
        let b = WeightVector::parse("1,0").unwrap();
        assert!(a < b);
        assert!(WeightVector::parse("1,0").unwrap() < WeightVector::parse("1,1/3").unwrap());
    }

    #[test]
    fn json_uses_rational_strings() {
        let w = WeightVector::parse("3/2,-1/2").unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"["3/2","-1/2"]"#);
        let back: WeightVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
