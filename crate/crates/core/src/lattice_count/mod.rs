//! Weighted lattice-point counts `M(R) = Σ_{|γ + h| <= R} F(γ + h)` over a
//! full-rank lattice, with their leading asymptotics and envelope fits.

mod fit;
mod poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

pub use fit::{envelope_ratio, remainder_exponent_fit, running_maxima, EnvelopeFit};
pub use poly::{HomogeneousPolynomial, PiMultiple};

use crate::error::{Error, Result};
use crate::numeric::{rational_from_f64, rational_to_f64, unit_ball_volume};
use poly::{eval_integer, small_coefficients};

/// Default cap on coefficient vectors visited by one count.
pub const DEFAULT_VISIT_BUDGET: f64 = 1e9;

/// `Γ = B Z^n + h` with a nonsingular rational basis (columns of `B`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    columns: Vec<Vec<BigRational>>,
    shift: Option<Vec<BigRational>>,
    det: BigRational,
    /// Rows of `B⁻¹`.
    inverse: Vec<Vec<BigRational>>,
}

impl Lattice {
    /// `columns[j]` is the basis vector `v_j`.
    pub fn new(columns: Vec<Vec<BigRational>>, shift: Option<Vec<BigRational>>) -> Result<Self> {
        let n = columns.len();
        if n == 0 {
            return Err(Error::invalid("lattice needs at least one basis vector"));
        }
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::invalid("basis must be square"));
        }
        if let Some(h) = &shift {
            if h.len() != n {
                return Err(Error::invalid("shift has the wrong length"));
            }
        }
        let rows: Vec<Vec<BigRational>> = (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let (det, inverse) = invert(rows)?;
        let shift = shift.filter(|h| h.iter().any(|v| !v.is_zero()));
        Ok(Lattice { columns, shift, det, inverse })
    }

    pub fn integer(n: usize) -> Self {
        let cols = (0..n)
            .map(|j| (0..n).map(|i| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        Self::new(cols, None).expect("identity is nonsingular")
    }

    pub fn with_shift(self, shift: Vec<BigRational>) -> Result<Self> {
        Self::new(self.columns, Some(shift))
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn shift(&self) -> Option<&[BigRational]> {
        self.shift.as_deref()
    }

    pub fn determinant(&self) -> &BigRational {
        &self.det
    }

    /// `Vol(Γ*) = 1 / |det B|`
    pub fn dual_volume_exact(&self) -> BigRational {
        BigRational::one() / self.det.abs()
    }

    pub fn dual_volume(&self) -> f64 {
        rational_to_f64(&self.dual_volume_exact())
    }

    /// The lattice with every basis vector and the shift multiplied by `s`.
    pub fn scaled(&self, s: &BigRational) -> Result<Self> {
        let cols = self.columns.iter().map(|c| c.iter().map(|v| v * s).collect()).collect();
        let shift = self.shift.as_ref().map(|h| h.iter().map(|v| v * s).collect());
        Self::new(cols, shift)
    }

    /// Integer data for the kernel: `Y = M ℓ + H = D (B ℓ + h)`.
    fn integer_data(&self) -> Result<(i64, Vec<Vec<i64>>, Vec<i64>)> {
        let mut d = BigInt::one();
        for c in &self.columns {
            for v in c {
                d = d.lcm(v.denom());
            }
        }
        if let Some(h) = &self.shift {
            for v in h {
                d = d.lcm(v.denom());
            }
        }
        let overflow = || Error::Overflow("lattice basis denominators");
        let to_int = |v: &BigRational| (v * BigRational::from_integer(d.clone())).to_integer().to_i64().ok_or_else(overflow);
        let cols = self
            .columns
            .iter()
            .map(|c| c.iter().map(to_int).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let h = match &self.shift {
            Some(h) => h.iter().map(to_int).collect::<Result<Vec<_>>>()?,
            None => vec![0; self.dim()],
        };
        Ok((d.to_i64().ok_or_else(overflow)?, cols, h))
    }
}

/// Determinant and inverse rows by exact Gauss-Jordan elimination.
fn invert(mut a: Vec<Vec<BigRational>>) -> Result<(BigRational, Vec<Vec<BigRational>>)> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::invalid("lattice basis is singular"))?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Ok((det, inv))
}

/// One radius of a weighted count.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialRow {
    pub radius: f64,
    pub value: BigRational,
    pub leading: f64,
    pub remainder: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialSeries {
    /// `p + n`
    pub leading_exponent: u32,
    pub rows: Vec<RadialRow>,
}

impl RadialSeries {
    /// `(R, remainder)` pairs for fitting.
    pub fn remainder_points(&self) -> Vec<(f64, f64)> {
        self.rows.iter().map(|r| (r.radius, r.remainder)).collect()
    }

    /// `|remainder| / R^exponent` per row.
    pub fn normalized(&self, exponent: f64) -> Vec<f64> {
        self.rows.iter().map(|r| r.remainder.abs() / r.radius.powf(exponent)).collect()
    }
}

/// A weighted count with its polynomial and lattice fixed.
#[derive(Clone, Debug)]
pub struct WeightedCounter {
    lattice: Lattice,
    weight: HomogeneousPolynomial,
    budget: f64,
}

impl WeightedCounter {
    pub fn new(lattice: Lattice, weight: HomogeneousPolynomial) -> Result<Self> {
        if weight.vars() != lattice.dim() {
            return Err(Error::invalid(format!(
                "polynomial has {} variables but the lattice has dimension {}",
                weight.vars(),
                lattice.dim()
            )));
        }
        Ok(WeightedCounter { lattice, weight, budget: DEFAULT_VISIT_BUDGET })
    }

    pub fn with_budget(mut self, budget: f64) -> Result<Self> {
        if !(budget > 0.0) {
            return Err(Error::invalid("budget must be positive"));
        }
        self.budget = budget;
        Ok(self)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn weight(&self) -> &HomogeneousPolynomial {
        &self.weight
    }

    /// Coefficient box `ℓ_i ∈ [lo_i, hi_i]` containing every point of the
    /// radius-`R` ball, from `ℓ = B⁻¹(x - h)`.
    fn coefficient_box(&self, radius: f64) -> Vec<(i64, i64)> {
        let n = self.lattice.dim();
        (0..n)
            .map(|i| {
                let row = &self.lattice.inverse[i];
                let norm = row.iter().map(|v| rational_to_f64(v).powi(2)).sum::<f64>().sqrt();
                let centre = match &self.lattice.shift {
                    Some(h) => -row.iter().zip(h).map(|(a, b)| rational_to_f64(a) * rational_to_f64(b)).sum::<f64>(),
                    None => 0.0,
                };
                let reach = radius * norm;
                ((centre - reach).floor() as i64 - 1, (centre + reach).ceil() as i64 + 1)
            })
            .collect()
    }

    fn predicted_visits(&self, radius: f64) -> f64 {
        let n = self.lattice.dim();
        let bx = self.coefficient_box(radius);
        let outer: f64 = bx[..n - 1].iter().map(|(lo, hi)| (hi - lo + 1) as f64).product();
        let ball = unit_ball_volume(n as u32) * radius.powi(n as i32) * self.lattice.dual_volume();
        outer + 2.0 * ball
    }

    /// `M(R)` with the closed ball `|x|² <= R²`.
    pub fn count(&self, radius_squared: &BigRational) -> Result<BigRational> {
        Ok(self.count_grid(std::slice::from_ref(radius_squared))?.remove(0))
    }

    /// `M(R_k)` for every `R_k²` in an ascending grid, from one enumeration.
    pub fn count_grid(&self, radii_squared: &[BigRational]) -> Result<Vec<BigRational>> {
        if radii_squared.iter().any(|r| r.is_negative()) {
            return Err(Error::invalid("radius must be non-negative"));
        }
        if radii_squared.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("radius grid must be ascending"));
        }
        let Some(top) = radii_squared.last() else {
            return Ok(Vec::new());
        };
        let radius = rational_to_f64(top).sqrt();
        let needed = self.predicted_visits(radius);
        if needed > self.budget {
            return Err(Error::Budget { what: "weighted lattice count", needed, budget: self.budget });
        }
        let (d, cols, h) = self.lattice.integer_data()?;
        let (terms, l) = self.weight.integer_form();
        let small = small_coefficients(&terms);
        let d2 = d as i128 * d as i128;
        let overflow = || Error::Overflow("radius");
        // q_k |Y|² <= p_k D²
        let grid: Vec<(i128, i128)> = radii_squared
            .iter()
            .map(|r| {
                let p = r.numer().to_i128().ok_or_else(overflow)?;
                let q = r.denom().to_i128().ok_or_else(overflow)?;
                Ok((q, p.checked_mul(d2).ok_or_else(overflow)?))
            })
            .collect::<Result<_>>()?;
        let bx = self.coefficient_box(radius);
        let n = self.lattice.dim();
        let kernel = Kernel { cols: &cols, h: &h, grid: &grid, terms: &terms, small: &small, bx: &bx };

        let buckets: Vec<Vec<BigInt>> = if n == 1 {
            vec![kernel.slice(None)]
        } else {
            (bx[0].0..=bx[0].1).into_par_iter().map(|l0| kernel.slice(Some(l0))).collect()
        };
        let mut totals = vec![BigInt::zero(); grid.len()];
        for b in buckets {
            for (t, v) in totals.iter_mut().zip(b) {
                *t += v;
            }
        }
        // cumulative over the grid, then undo the integer scaling F(Y) = D^p F(x)
        let denom = l * num_traits::pow(BigInt::from(d), self.weight.degree() as usize);
        let mut running = BigInt::zero();
        Ok(totals
            .into_iter()
            .map(|t| {
                running += t;
                BigRational::new(running.clone(), denom.clone())
            })
            .collect())
    }

    /// `Vol(Γ*) ∫_{B₁} F · R^{p+n}`
    pub fn predicted_asymptote(&self, radius: f64) -> f64 {
        let coeff = self.lattice.dual_volume() * self.weight.ball_integral_exact().to_f64();
        coeff * radius.powi((self.weight.degree() as usize + self.lattice.dim()) as i32)
    }

    pub fn remainder_exponent(&self) -> BigRational {
        remainder_exponent(self.lattice.dim(), self.weight.degree())
    }

    /// Counts, leading terms and remainders on an ascending radius grid.
    pub fn series(&self, radii: &[f64]) -> Result<RadialSeries> {
        if radii.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return Err(Error::invalid("radii must be finite and non-negative"));
        }
        if radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("radius grid must be strictly increasing"));
        }
        let r2: Vec<BigRational> = radii
            .iter()
            .map(|&r| rational_from_f64(r).map(|x| &x * &x))
            .collect::<Result<_>>()?;
        let values = self.count_grid(&r2)?;
        let rows = radii
            .iter()
            .zip(values)
            .map(|(&radius, value)| {
                let leading = self.predicted_asymptote(radius);
                let remainder = rational_to_f64(&(&value - rational_from_f64(leading).unwrap_or_else(|_| BigRational::zero())));
                RadialRow { radius, value, leading, remainder }
            })
            .collect();
        Ok(RadialSeries { leading_exponent: self.weight.degree() + self.lattice.dim() as u32, rows })
    }
}

struct Kernel<'a> {
    cols: &'a [Vec<i64>],
    h: &'a [i64],
    grid: &'a [(i128, i128)],
    terms: &'a [(Vec<u32>, BigInt)],
    small: &'a [Option<i128>],
    bx: &'a [(i64, i64)],
}

impl Kernel<'_> {
    /// Bucketed sums over all coefficient vectors with `ℓ_0 = first` (or the
    /// whole one-dimensional lattice).
    fn slice(&self, first: Option<i64>) -> Vec<BigInt> {
        let n = self.cols.len();
        let mut buckets = vec![BigInt::zero(); self.grid.len()];
        let mut y: Vec<i64> = self.h.to_vec();
        let start = match first {
            Some(l0) => {
                for (yi, c) in y.iter_mut().zip(&self.cols[0]) {
                    *yi += l0 * c;
                }
                1
            }
            None => 0,
        };
        self.rec(start, n, &mut y, &mut buckets);
        buckets
    }

    fn rec(&self, j: usize, n: usize, y: &mut Vec<i64>, buckets: &mut [BigInt]) {
        if j + 1 == n {
            self.last(y, buckets);
            return;
        }
        let (lo, hi) = self.bx[j];
        let col = &self.cols[j];
        for (yi, c) in y.iter_mut().zip(col) {
            *yi += lo * c;
        }
        for _ in lo..=hi {
            self.rec(j + 1, n, y, buckets);
            for (yi, c) in y.iter_mut().zip(col) {
                *yi += c;
            }
        }
        for (yi, c) in y.iter_mut().zip(col) {
            *yi -= (hi + 1) * c;
        }
    }

    /// Solves `|y + t v|² <= R²` for the last coefficient in floating point,
    /// widens by one, and tests each candidate exactly.
    fn last(&self, y0: &[i64], buckets: &mut [BigInt]) {
        let v = self.cols.last().expect("nonempty basis");
        let (q, pd2) = *self.grid.last().expect("nonempty grid");
        let bound = pd2 as f64 / q as f64;
        let a: f64 = v.iter().map(|&c| (c as f64).powi(2)).sum();
        let b: f64 = 2.0 * y0.iter().zip(v).map(|(&u, &c)| u as f64 * c as f64).sum::<f64>();
        let c: f64 = y0.iter().map(|&u| (u as f64).powi(2)).sum::<f64>() - bound;
        let disc = b * b - 4.0 * a * c;
        let centre = -b / (2.0 * a);
        let half = if disc > 0.0 { disc.sqrt() / (2.0 * a) } else { 0.0 };
        let (blo, bhi) = self.bx[self.cols.len() - 1];
        let lo = ((centre - half).floor() as i64 - 1).max(blo);
        let hi = ((centre + half).ceil() as i64 + 1).min(bhi);
        let mut y = vec![0i64; y0.len()];
        for t in lo..=hi {
            let mut norm: i128 = 0;
            for ((yi, &u), &c) in y.iter_mut().zip(y0).zip(v) {
                *yi = u + t * c;
                norm += *yi as i128 * *yi as i128;
            }
            // smallest grid radius containing the point
            let k = self.grid.partition_point(|&(q, pd2)| q * norm > pd2);
            if k < self.grid.len() {
                let f = eval_integer(self.terms, self.small, &y);
                if !f.is_zero() {
                    buckets[k] += f;
                }
            }
        }
    }
}

/// `p + n - 2/(n+1)`
pub fn remainder_exponent(n: usize, degree: u32) -> BigRational {
    let n = n as i64;
    BigRational::from_integer((degree as i64 + n).into()) - BigRational::new(2.into(), (n + 1).into())
}

pub fn weighted_count(lattice: &Lattice, weight: &HomogeneousPolynomial, radius: f64) -> Result<BigRational> {
    if !(radius.is_finite() && radius >= 0.0) {
        return Err(Error::invalid("radius must be finite and non-negative"));
    }
    let r = rational_from_f64(radius)?;
    WeightedCounter::new(lattice.clone(), weight.clone())?.count(&(&r * &r))
}

/// `∫_{|x| <= 1} F(x) dx`
pub fn ball_integral(weight: &HomogeneousPolynomial) -> f64 {
    weight.ball_integral_exact().to_f64()
}

pub fn dual_volume(lattice: &Lattice) -> f64 {
    lattice.dual_volume()
}

pub fn predicted_asymptote(lattice: &Lattice, weight: &HomogeneousPolynomial, radius: f64) -> Result<(f64, BigRational)> {
    let c = WeightedCounter::new(lattice.clone(), weight.clone())?;
    Ok((c.predicted_asymptote(radius), c.remainder_exponent()))
}

/// Parses `a,b;c,d` as basis columns `(a,b)` and `(c,d)`.
pub fn parse_basis(s: &str) -> Result<Vec<Vec<BigRational>>> {
    s.split(';')
        .map(|col| col.split(',').map(crate::numeric::parse_rational).collect::<Result<Vec<_>>>())
        .collect()
}
