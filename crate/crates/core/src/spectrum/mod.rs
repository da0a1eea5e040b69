//! Laplace spectra of the compact classical groups: enumeration of the
//! dominant analytic weights below a cutoff, the counting function with
//! multiplicities, its Weyl-law leading term and the remainder.

mod walk;

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie_data::{build_group_data, group_volume, GroupId, RootSystemData, WeightVector};
use crate::numeric::{biguint_to_f64, BigSum, rational_from_f64, rational_to_f64, two_pi_pow, unit_ball_volume};

pub(crate) use walk::{add_multiplicity, fold_slices, Ball, Layout, Region};

/// Default cap on lattice points visited by a single enumeration.
pub const DEFAULT_VISIT_BUDGET: f64 = 1e9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub weight: WeightVector,
    pub eigenvalue: BigRational,
    pub multiplicity: BigUint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountRow {
    pub lambda: f64,
    pub count: BigUint,
    pub leading: f64,
    pub remainder: f64,
}

#[derive(Clone, Debug)]
pub struct CountSeries {
    pub group: GroupId,
    pub rows: Vec<CountRow>,
}

/// Remainder exponents in λ for one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaPrediction {
    /// Rank-dependent improved exponent.
    pub improved: BigRational,
    /// `(d - 1)/2`
    pub classical: BigRational,
    /// `(d - 2)/2`
    pub sharp: BigRational,
    /// The sharp exponent is only claimed for rank at least 5.
    pub sharp_applies: bool,
}

/// A group's spectral data with a visit budget attached.
#[derive(Clone, Debug)]
pub struct Spectrum {
    data: Arc<RootSystemData>,
    budget: f64,
}

impl Spectrum {
    pub fn new(g: &GroupId) -> Result<Self> {
        Ok(Spectrum { data: Arc::new(build_group_data(g)?), budget: DEFAULT_VISIT_BUDGET })
    }

    pub fn with_budget(mut self, budget: f64) -> Result<Self> {
        if !(budget > 0.0) {
            return Err(Error::invalid("budget must be positive"));
        }
        self.budget = budget;
        Ok(self)
    }

    pub fn data(&self) -> &RootSystemData {
        &self.data
    }

    pub fn group(&self) -> &GroupId {
        &self.data.group
    }

    /// Twice the leading-term estimate of lattice points in the dominant
    /// part of the ball, times `|W|` for full-lattice walks.
    pub fn predicted_visits(&self, lambda: f64, region_full: bool) -> f64 {
        let d = &self.data;
        let rho2 = rational_to_f64(&d.rho.dot(&d.rho));
        let r = (lambda.max(0.0) + rho2).sqrt();
        let (c, rad) = d.group.family().lattice_covolume(d.group.n());
        let covol = rational_to_f64(&c) * (rad as f64).sqrt();
        let w = biguint_to_f64(&d.weyl_order);
        let full = 2.0 * unit_ball_volume(d.rank as u32) * r.powi(d.rank as i32) / covol;
        if region_full {
            full
        } else {
            full / w
        }
    }

    fn guard(&self, lambda: f64, full: bool) -> Result<()> {
        let needed = self.predicted_visits(lambda, full);
        if needed > self.budget {
            return Err(Error::Budget { what: "spectrum enumeration", needed, budget: self.budget });
        }
        Ok(())
    }

    fn ball(&self, lambda: &BigRational) -> Result<Ball> {
        Ball::for_eigenvalue(&self.data, lambda)
    }

    /// Dominant analytic weights with eigenvalue `<= lambda_max`, sorted
    /// lexicographically by weight.
    pub fn enumerate_dominant(&self, lambda_max: &BigRational) -> Result<Vec<SpectrumEntry>> {
        let ball = self.ball(lambda_max)?;
        self.guard(rational_to_f64(lambda_max), false)?;
        let d = &self.data;
        let layout = Layout::shifted(d, Region::Dominant);
        let scale = d.scale;
        let d2 = BigInt::from(scale * scale);
        let rho2: i128 = d.scaled_rho.iter().map(|&v| v as i128 * v as i128).sum();
        let slices = fold_slices(&layout, ball, Vec::new, |out: &mut Vec<SpectrumEntry>, x| {
            let b: Vec<i64> = x.iter().zip(&d.scaled_rho).map(|(a, r)| a - r).collect();
            let norm2: i128 = x.iter().map(|&v| v as i128 * v as i128).sum();
            let eigenvalue = BigRational::new(BigInt::from(norm2 - rho2), d2.clone());
            let mut m = BigSum::default();
            add_multiplicity(d, d.rho_product.to_i128(), x, &mut m);
            out.push(SpectrumEntry {
                weight: WeightVector::from_scaled(b, scale),
                eigenvalue,
                multiplicity: m.total(),
            });
        });
        let mut entries: Vec<SpectrumEntry> = slices.into_iter().flatten().collect();
        entries.sort_by(|a, b| a.weight.cmp(&b.weight));
        Ok(entries)
    }

    /// `#{eigenvalues <= lambda}` with multiplicity.
    pub fn counting_function(&self, lambda: &BigRational) -> Result<BigUint> {
        let ball = self.ball(lambda)?;
        self.guard(rational_to_f64(lambda), false)?;
        let layout = Layout::shifted(&self.data, Region::Dominant);
        Ok(self.sum_multiplicities(&layout, ball))
    }

    /// The same count as `|W|⁻¹ Σ m(x)` over the whole shifted lattice.
    pub fn counting_via_full_lattice(&self, lambda: &BigRational) -> Result<BigUint> {
        let ball = self.ball(lambda)?;
        self.guard(rational_to_f64(lambda), true)?;
        let layout = Layout::shifted(&self.data, Region::Full);
        let total = self.sum_multiplicities(&layout, ball);
        let w = &self.data.weyl_order;
        if !(&total % w).is_zero() {
            return Err(Error::Numerical(format!(
                "full-lattice sum {total} is not divisible by the Weyl group order {w}"
            )));
        }
        Ok(total / w)
    }

    fn sum_multiplicities(&self, layout: &Layout, ball: Ball) -> BigUint {
        let d = &self.data;
        let rho_small = d.rho_product.to_i128();
        let parts = fold_slices(layout, ball, BigSum::default, |acc, x| add_multiplicity(d, rho_small, x, acc));
        let mut total = BigSum::default();
        for p in parts {
            total.merge(p);
        }
        total.total()
    }

    /// `ω_d Vol / (2π)^d`
    pub fn leading_coefficient(&self) -> Result<f64> {
        let vol = group_volume(&self.data.group)?;
        let dim = self.data.dimension as u32;
        Ok(unit_ball_volume(dim) * vol.vol_float / two_pi_pow(dim as i64))
    }

    pub fn leading_term(&self, lambda: f64) -> Result<f64> {
        if lambda < 0.0 {
            return Err(Error::invalid("lambda must be non-negative"));
        }
        Ok(self.leading_coefficient()? * lambda.powf(self.data.dimension as f64 / 2.0))
    }

    /// Counts, leading terms and remainders on an ascending grid, from a
    /// single enumeration up to the largest grid value.
    pub fn remainder_series(&self, grid: &[f64]) -> Result<CountSeries> {
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("lambda grid must be strictly increasing"));
        }
        if grid.first().is_some_and(|&l| l < 0.0 || !l.is_finite()) || grid.last().is_some_and(|l| !l.is_finite()) {
            return Err(Error::invalid("lambda grid must be finite and non-negative"));
        }
        let Some(&top) = grid.last() else {
            return Ok(CountSeries { group: self.data.group.clone(), rows: Vec::new() });
        };
        let cutoffs: Vec<BigRational> = grid.iter().map(|&l| rational_from_f64(l)).collect::<Result<_>>()?;
        let mut spectrum = self.eigenvalue_multiplicities(&rational_from_f64(top)?)?;
        spectrum.sort_by(|a, b| a.0.cmp(&b.0));
        let coeff = self.leading_coefficient()?;
        let half_d = self.data.dimension as f64 / 2.0;
        let mut rows = Vec::with_capacity(grid.len());
        let mut idx = 0;
        let mut running = BigUint::zero();
        for (&lambda, cut) in grid.iter().zip(&cutoffs) {
            while idx < spectrum.len() && spectrum[idx].0 <= *cut {
                running += &spectrum[idx].1;
                idx += 1;
            }
            let leading = coeff * lambda.powf(half_d);
            rows.push(CountRow {
                lambda,
                count: running.clone(),
                leading,
                remainder: remainder(&running, leading),
            });
        }
        Ok(CountSeries { group: self.data.group.clone(), rows })
    }

    fn eigenvalue_multiplicities(&self, lambda_max: &BigRational) -> Result<Vec<(BigRational, BigUint)>> {
        let ball = self.ball(lambda_max)?;
        self.guard(rational_to_f64(lambda_max), false)?;
        let d = &self.data;
        let layout = Layout::shifted(d, Region::Dominant);
        let d2 = BigInt::from(d.scale * d.scale);
        let rho2: i128 = d.scaled_rho.iter().map(|&v| v as i128 * v as i128).sum();
        let rho_small = d.rho_product.to_i128();
        let slices = fold_slices(&layout, ball, Vec::new, |out: &mut Vec<(BigRational, BigUint)>, x| {
            let norm2: i128 = x.iter().map(|&v| v as i128 * v as i128).sum();
            let mut m = BigSum::default();
            add_multiplicity(d, rho_small, x, &mut m);
            out.push((BigRational::new(BigInt::from(norm2 - rho2), d2.clone()), m.total()));
        });
        Ok(slices.into_iter().flatten().collect())
    }

    pub fn predicted_alpha(&self) -> AlphaPrediction {
        predicted_alpha(&self.data.group)
    }
}

/// `count - leading`, keeping precision when `count` is beyond 2^53.
pub(crate) fn remainder(count: &BigUint, leading: f64) -> f64 {
    if let Some(c) = count.to_u64().filter(|&c| c < (1u64 << 53)) {
        return c as f64 - leading;
    }
    match BigRational::from_float(leading) {
        Some(l) => rational_to_f64(&(BigRational::from_integer(BigInt::from(count.clone())) - l)),
        None => f64::NAN,
    }
}

pub fn enumerate_dominant(g: &GroupId, lambda_max: &BigRational) -> Result<Vec<SpectrumEntry>> {
    Spectrum::new(g)?.enumerate_dominant(lambda_max)
}

pub fn counting_function(g: &GroupId, lambda: &BigRational) -> Result<BigUint> {
    Spectrum::new(g)?.counting_function(lambda)
}

pub fn counting_via_full_lattice(g: &GroupId, lambda: &BigRational) -> Result<BigUint> {
    Spectrum::new(g)?.counting_via_full_lattice(lambda)
}

pub fn leading_term(g: &GroupId, lambda: f64) -> Result<f64> {
    Spectrum::new(g)?.leading_term(lambda)
}

pub fn remainder_series(g: &GroupId, lambda_grid: &[f64]) -> Result<CountSeries> {
    Spectrum::new(g)?.remainder_series(lambda_grid)
}

pub fn predicted_alpha(g: &GroupId) -> AlphaPrediction {
    let d = g.dimension() as i64;
    AlphaPrediction {
        improved: g.family().remainder_exponent(g.n()),
        classical: BigRational::new((d - 1).into(), 2.into()),
        sharp: BigRational::new((d - 2).into(), 2.into()),
        sharp_applies: g.rank() >= 5,
    }
}

/// Both sides of the Spin/SO rescaling identity for the unshifted weighted
/// counts `M(R) = Σ_{|x| <= R} m(x)`: `M_SO(2R)` summed over `Z^n`, and
/// `2^{2l} M_Spin(R)` summed over `(1/2) Z^n`.
pub fn spin_rescaling_check(n: u32, radius: f64) -> Result<(BigRational, BigRational)> {
    spin_rescaling_check_with_budget(n, radius, DEFAULT_VISIT_BUDGET)
}

pub fn spin_rescaling_check_with_budget(n: u32, radius: f64, budget: f64) -> Result<(BigRational, BigRational)> {
    if !(radius >= 0.0) || !radius.is_finite() {
        return Err(Error::invalid("radius must be finite and non-negative"));
    }
    let so = build_group_data(&GroupId::new("SO", n)?)?;
    let spin = build_group_data(&GroupId::new("Spin", n)?)?;
    let k = so.rank;
    let needed = 2.0 * unit_ball_volume(k as u32) * (2.0 * radius).powi(k as i32);
    if needed > budget {
        return Err(Error::Budget { what: "spin rescaling check", needed, budget });
    }
    let r = rational_from_f64(radius)?;
    let r2 = &r * &r;
    let l = so.positive_root_count();
    // Q² with Q = Π(α, ρ)
    let q = BigRational::new(so.rho_product.clone(), num_traits::pow(BigInt::from(so.scale), l));
    let q2 = &q * &q;

    // SO(N) side: integer points y with |y| <= 2R
    let four_r2 = &r2 * BigRational::from_integer(4.into());
    let so_ball = Ball::radius_squared(&four_r2)?;
    let so_parts = fold_slices(&Layout::integer(k, 1), so_ball, BigInt::zero, |acc, y| {
        let p = crate::lie_data::root_product(&so.root_ints, y);
        *acc += &p * &p;
    });
    let so_side = BigRational::from_integer(so_parts.into_iter().sum()) / &q2;

    // Spin(N) side: half-integer points x with |x| <= R, weights in rationals
    let half = BigRational::new(1.into(), 2.into());
    let spin_ball = Ball::radius_squared(&four_r2)?;
    let roots: Vec<Vec<BigRational>> = spin
        .positive_roots
        .iter()
        .map(|w| w.coords())
        .collect();
    let spin_parts = fold_slices(&Layout::integer(k, 1), spin_ball, BigRational::zero, |acc, y| {
        let x: Vec<BigRational> = y.iter().map(|&v| BigRational::from_integer(v.into()) * &half).collect();
        let norm2 = x.iter().fold(BigRational::zero(), |s, v| s + v * v);
        if norm2 > r2 {
            return;
        }
        let mut prod = BigRational::one();
        for a in &roots {
            prod *= a.iter().zip(&x).fold(BigRational::zero(), |s, (u, v)| s + u * v);
        }
        *acc += &prod * &prod / &q2;
    });
    let spin_sum: BigRational = spin_parts.into_iter().fold(BigRational::zero(), |a, b| a + b);
    let factor = BigRational::from_integer(num_traits::pow(BigInt::from(2), 2 * l));
    Ok((so_side, spin_sum * factor))
}
