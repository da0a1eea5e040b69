use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{factorial, format_rational, parse_rational, rational_to_f64};

/// A homogeneous polynomial in `n` variables with exact rational
/// coefficients, keyed by exponent multi-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    vars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

/// `coefficient · π^pi_power`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMultiple {
    pub coefficient: BigRational,
    pub pi_power: u32,
}

impl PiMultiple {
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coefficient) * std::f64::consts::PI.powi(self.pi_power as i32)
    }
}

impl HomogeneousPolynomial {
    /// Builds from `(exponents, coefficient)` pairs; zero coefficients are
    /// dropped and repeated exponents are merged.
    pub fn new(vars: usize, degree: u32, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars {
                return Err(Error::invalid(format!("monomial {e:?} does not have {vars} variables")));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::invalid(format!("monomial {e:?} is not of degree {degree}")));
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomogeneousPolynomial { vars, degree, terms: map })
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vars, vec![0; vars], BigRational::one())
    }

    fn monomial(vars: usize, exps: Vec<u32>, c: BigRational) -> Self {
        let degree = exps.iter().sum();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        HomogeneousPolynomial { vars, degree, terms }
    }

    /// `x_i^e`, with `i` counted from zero.
    pub fn power_of(vars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; vars];
        exps[i] = e;
        Self::monomial(vars, exps, BigRational::one())
    }

    /// `|x|^{2m}` expanded by the multinomial theorem.
    pub fn norm_power(vars: usize, m: u32) -> Self {
        let mut out = Self::one(vars);
        let square = Self::sum_of_squares(vars);
        for _ in 0..m {
            out = out.mul(&square);
        }
        out
    }

    fn sum_of_squares(vars: usize) -> Self {
        let mut terms = BTreeMap::new();
        for i in 0..vars {
            let mut e = vec![0; vars];
            e[i] = 2;
            terms.insert(e, BigRational::one());
        }
        HomogeneousPolynomial { vars, degree: 2, terms }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomogeneousPolynomial { vars: self.vars, degree: self.degree + other.degree, terms }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        HomogeneousPolynomial { vars: self.vars, degree: self.degree, terms }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Integer coefficients `c_α · L` and the common denominator `L`.
    pub(crate) fn integer_form(&self) -> (Vec<(Vec<u32>, BigInt)>, BigInt) {
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.numer() * (&l / c.denom())))
            .collect();
        (ints, l)
    }

    /// `∫ x^α dσ` over the unit sphere `S^{n-1}`, exactly.
    pub fn sphere_integral_exact(&self) -> PiMultiple {
        let n = self.vars as u64;
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            if let Some(v) = sphere_monomial(e) {
                total += c * v;
            }
        }
        PiMultiple { coefficient: total, pi_power: (n / 2) as u32 }
    }

    /// `∫_{|x| <= 1} F(x) dx = (∫_S F dσ) / (p + n)` for homogeneous `F`.
    pub fn ball_integral_exact(&self) -> PiMultiple {
        let s = self.sphere_integral_exact();
        let denom = BigRational::from_integer(BigInt::from(self.degree as u64 + self.vars as u64));
        PiMultiple { coefficient: s.coefficient / denom, pi_power: s.pi_power }
    }

    /// Comma-free text form: `x1^2 - 3/2*x1*x2 + x2^2`, `|x|^4`, `1`.
    pub fn parse(s: &str, vars: usize) -> Result<Self> {
        if vars == 0 {
            return Err(Error::invalid("polynomial needs at least one variable"));
        }
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::invalid("empty polynomial"));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = cleaned.as_bytes();
        for (i, &ch) in bytes.iter().enumerate() {
            let split = (ch == b'+' || ch == b'-') && i > 0 && !matches!(bytes[i - 1], b'^' | b'e' | b'E' | b'*' | b'/');
            if split {
                terms.push((negative, &cleaned[start..i]));
                negative = ch == b'-';
                start = i + 1;
            } else if i == 0 && (ch == b'+' || ch == b'-') {
                negative = ch == b'-';
                start = 1;
            }
        }
        terms.push((negative, &cleaned[start..]));

        let mut acc: Option<HomogeneousPolynomial> = None;
        for (neg, t) in terms {
            let mut term = parse_term(t, vars)?;
            if neg {
                term = term.scale(&-BigRational::one());
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        acc.ok_or_else(|| Error::invalid("empty polynomial"))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::invalid("variable count mismatch"));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::invalid(format!(
                "polynomial is not homogeneous: degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Self::new(
            self.vars,
            self.degree,
            self.terms.iter().chain(other.terms.iter()).map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Odd in coordinate `i`: every monomial has an odd power of `x_i`.
    pub fn is_odd_in(&self, i: usize) -> bool {
        !self.terms.is_empty() && self.terms.keys().all(|e| e[i] % 2 == 1)
    }
}

fn parse_term(t: &str, vars: usize) -> Result<HomogeneousPolynomial> {
    if t.is_empty() {
        return Err(Error::invalid("empty term in polynomial"));
    }
    let mut out = HomogeneousPolynomial::one(vars);
    for factor in t.split('*') {
        let (base, exp) = match factor.rsplit_once('^') {
            Some((b, e)) => {
                let e: u32 = e.parse().map_err(|_| Error::invalid(format!("bad exponent in '{factor}'")))?;
                (b, e)
            }
            None => (factor, 1),
        };
        let f = if base == "|x|" {
            if exp % 2 != 0 {
                return Err(Error::invalid("|x| must be raised to an even power"));
            }
            HomogeneousPolynomial::norm_power(vars, exp / 2)
        } else if let Some(idx) = base.strip_prefix('x') {
            let i: usize = idx.parse().map_err(|_| Error::invalid(format!("bad variable '{base}'")))?;
            if i == 0 || i > vars {
                return Err(Error::invalid(format!("variable {base} out of range 1..={vars}")));
            }
            HomogeneousPolynomial::power_of(vars, i - 1, exp)
        } else {
            let c = parse_rational(base)?;
            HomogeneousPolynomial::one(vars).scale(&num_traits::pow(c, exp as usize))
        };
        out = out.mul(&f);
    }
    Ok(out)
}

/// `Γ(k + 1/2) / √π = (2k)! / (4^k k!)`
fn gamma_half(k: u64) -> BigRational {
    BigRational::new(
        BigInt::from(factorial(2 * k)),
        BigInt::from(4u32).pow(k as u32) * BigInt::from(factorial(k)),
    )
}

/// `∫_{S^{n-1}} x^α dσ = 2 Π Γ((α_i+1)/2) / Γ((|α|+n)/2)`, returned without
/// its factor `π^{⌊n/2⌋}`; `None` when some exponent is odd.
fn sphere_monomial(e: &[u32]) -> Option<BigRational> {
    if e.iter().any(|&k| k % 2 == 1) {
        return None;
    }
    let n = e.len() as u64;
    // numerator: Π Γ(k_i + 1/2) = √π^n Π gamma_half(k_i)
    let mut num = BigRational::from_integer(2.into());
    for &k in e {
        num *= gamma_half(k as u64 / 2);
    }
    // Γ(s) with 2s = |α| + n
    let twice_s: u64 = e.iter().map(|&k| k as u64).sum::<u64>() + n;
    let den = if twice_s % 2 == 0 {
        BigRational::from_integer(BigInt::from(factorial(twice_s / 2 - 1)))
    } else {
        // Γ(j + 1/2), contributes one √π
        gamma_half((twice_s - 1) / 2)
    };
    // √π^n / (√π)^{n mod 2} = π^{⌊n/2⌋}
    Some(num / den)
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("x{}", j + 1) } else { format!("x{}^{k}", j + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Evaluates integer coefficients at an integer point, exactly.
pub(crate) fn eval_integer(terms: &[(Vec<u32>, BigInt)], small: &[Option<i128>], y: &[i64]) -> BigInt {
    let mut fast: i128 = 0;
    let mut ok = true;
    'outer: for ((e, _), c) in terms.iter().zip(small) {
        let Some(c) = c else {
            ok = false;
            break;
        };
        let mut t = *c;
        for (&yi, &k) in y.iter().zip(e) {
            for _ in 0..k {
                match t.checked_mul(yi as i128) {
                    Some(v) => t = v,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        match fast.checked_add(t) {
            Some(v) => fast = v,
            None => {
                ok = false;
                break;
            }
        }
    }
    if ok {
        return BigInt::from(fast);
    }
    let mut total = BigInt::zero();
    for (e, c) in terms {
        let mut t = c.clone();
        for (&yi, &k) in y.iter().zip(e) {
            if k > 0 {
                t *= num_traits::pow(BigInt::from(yi), k as usize);
            }
        }
        total += t;
    }
    total
}

pub(crate) fn small_coefficients(terms: &[(Vec<u32>, BigInt)]) -> Vec<Option<i128>> {
    terms.iter().map(|(_, c)| c.to_i128()).collect()
}
