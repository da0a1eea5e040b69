//! Root data, analytic weights, eigenvalues, multiplicities and volumes for
//! SO(N), Spin(N), U(N) and SU(N) with their bi-invariant metrics.
//!
//! Coordinates are taken in the standard orthonormal basis of the maximal
//! torus, so every inner product below is the plain dot product. The
//! eigenvalue attached to a dominant analytic weight `b` is
//! `|b + ρ|² - |ρ|²` and its multiplicity is the square of the Weyl
//! dimension `Π(α, b + ρ) / Π(α, ρ)`.

mod family;
mod registry;
mod weight;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use family::{
    Chamber, GroupFamily, SignChanges, SpecialOrthogonal, SpecialUnitary, Spin, SymbolicVolume, Unitary,
    WeightLattice,
};
pub use registry::FamilyRegistry;
pub use weight::WeightVector;

use crate::error::{Error, Result};
use crate::numeric::{rational_to_f64, two_pi_pow};

/// A concrete group: a registered family together with `N`.
#[derive(Clone)]
pub struct GroupId {
    family: Arc<dyn GroupFamily>,
    n: u32,
}

impl GroupId {
    /// Looks `family` up in the global registry.
    pub fn new(family: &str, n: u32) -> Result<Self> {
        let fam = FamilyRegistry::global()
            .get(family)
            .ok_or_else(|| Error::invalid(format!("unknown group family '{family}'")))?;
        Self::with_family(fam, n)
    }

    pub fn with_family(family: Arc<dyn GroupFamily>, n: u32) -> Result<Self> {
        if n < family.min_n() {
            return Err(Error::invalid(format!(
                "{}(N) needs N >= {}, got {n}",
                family.name(),
                family.min_n()
            )));
        }
        Ok(GroupId { family, n })
    }

    /// Accepts `SO(5)`, `Spin(7)`, `su3` style names.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .find(|c: char| c.is_ascii_digit() || c == '(')
            .ok_or_else(|| Error::invalid(format!("cannot parse group '{s}'")))?;
        let (name, rest) = s.split_at(split);
        let digits = rest.trim_start_matches('(').trim_end_matches(')');
        let n = digits
            .parse()
            .map_err(|_| Error::invalid(format!("cannot parse group '{s}'")))?;
        Self::new(name, n)
    }

    pub fn family(&self) -> &dyn GroupFamily {
        self.family.as_ref()
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.family.rank(self.n)
    }

    pub fn dimension(&self) -> usize {
        self.family.dimension(self.n)
    }
}

impl PartialEq for GroupId {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name() && self.n == other.n
    }
}

impl Eq for GroupId {}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.n)
    }
}

impl fmt::Debug for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupIdRepr {
    family: String,
    #[serde(rename = "N")]
    n: u32,
}

impl Serialize for GroupId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupIdRepr { family: self.name().to_string(), n: self.n }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GroupIdRepr::deserialize(d)?;
        GroupId::new(&r.family, r.n).map_err(serde::de::Error::custom)
    }
}

/// Everything the enumeration kernels need about a group, computed once.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub group: GroupId,
    pub rank: usize,
    pub dimension: usize,
    /// Length of weight vectors.
    pub coords: usize,
    pub positive_roots: Vec<WeightVector>,
    /// Half the sum of the positive roots.
    pub rho: WeightVector,
    /// Shifts `a_j` with `x_j = b_j + a_j`.
    pub a_vector: Vec<BigRational>,
    pub weyl_order: BigUint,
    pub lattice: WeightLattice,
    /// Common denominator `D` of all shifted weights; kernels work with `D(b + ρ)`.
    pub scale: i64,
    pub(crate) root_ints: Vec<Vec<i64>>,
    pub(crate) simple_ints: Vec<Vec<i64>>,
    pub(crate) scaled_rho: Vec<i64>,
    /// `Π (α, Dρ)`
    pub(crate) rho_product: BigInt,
}

pub fn build_group_data(g: &GroupId) -> Result<RootSystemData> {
    let fam = g.family();
    let n = g.n();
    let coords = fam.coords(n);
    let scale = fam.scale(n);
    let root_ints = fam.positive_roots(n);
    let simple_ints = fam.simple_roots(n);
    let positive_roots: Vec<WeightVector> = root_ints.iter().map(|r| WeightVector::from_ints(r)).collect();

    let mut twice_rho = vec![0i64; coords];
    for r in &root_ints {
        for (acc, v) in twice_rho.iter_mut().zip(r) {
            *acc += v;
        }
    }
    let rho = WeightVector::from_scaled(twice_rho, 2);
    let scaled_rho = rho
        .scaled_to(scale)
        .ok_or_else(|| Error::invalid("family scale does not clear the denominator of rho"))?;
    let rho_product = root_product(&root_ints, &scaled_rho);
    let lattice = fam.weight_lattice(n);
    let a_vector = rho.coords();

    Ok(RootSystemData {
        group: g.clone(),
        rank: fam.rank(n),
        dimension: fam.dimension(n),
        coords,
        positive_roots,
        rho,
        a_vector,
        weyl_order: fam.weyl_order(n),
        lattice,
        scale,
        root_ints,
        simple_ints,
        scaled_rho,
        rho_product,
    })
}

/// `Π_α (α · x)` over integer root vectors, exact.
pub(crate) fn root_product(roots: &[Vec<i64>], x: &[i64]) -> BigInt {
    let mut acc: i128 = 1;
    for (i, r) in roots.iter().enumerate() {
        let dot: i128 = r.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
        match acc.checked_mul(dot) {
            Some(v) => acc = v,
            None => {
                let mut big = BigInt::from(acc) * BigInt::from(dot);
                for r in &roots[i + 1..] {
                    let dot: i128 = r.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                    big *= dot;
                }
                return big;
            }
        }
    }
    BigInt::from(acc)
}

impl RootSystemData {
    /// Number of positive roots `l`; `d = n + 2l`.
    pub fn positive_root_count(&self) -> usize {
        self.root_ints.len()
    }

    /// `D(b + ρ)` when `b` fits the family's denominator.
    pub fn scaled_shifted(&self, b: &WeightVector) -> Option<Vec<i64>> {
        if b.len() != self.coords {
            return None;
        }
        let sb = b.scaled_to(self.scale)?;
        Some(sb.iter().zip(&self.scaled_rho).map(|(a, r)| a + r).collect())
    }

    /// `(α, b) >= 0` for every simple root.
    pub fn is_dominant(&self, b: &WeightVector) -> bool {
        b.len() == self.coords
            && self.simple_ints.iter().all(|a| {
                let s: i128 = a.iter().zip(b.numerators()).map(|(&x, &y)| x as i128 * y as i128).sum();
                s >= 0
            })
    }

    pub fn validate_weight(&self, b: &WeightVector) -> Result<()> {
        let fam = self.group.family();
        if !fam.is_analytic(self.group.n(), b) {
            return Err(Error::invalid(format!("{b} is not an analytic weight of {}", self.group)));
        }
        if !self.is_dominant(b) {
            return Err(Error::invalid(format!("{b} is not dominant for {}", self.group)));
        }
        Ok(())
    }

    /// `(b+ρ, b+ρ) - (ρ, ρ)` from the root data alone.
    pub fn eigenvalue_inner_product(&self, b: &WeightVector) -> BigRational {
        let shifted = b.add(&self.rho);
        shifted.dot(&shifted) - self.rho.dot(&self.rho)
    }

    /// Weyl dimension via `Π(α, b+ρ) / Π(α, ρ)`.
    pub fn dimension_of(&self, b: &WeightVector) -> Result<BigUint> {
        let x = self
            .scaled_shifted(b)
            .ok_or_else(|| Error::invalid(format!("{b} does not fit the lattice of {}", self.group)))?;
        let top = root_product(&self.root_ints, &x);
        let (q, r) = num_integer::Integer::div_rem(&top, &self.rho_product);
        if !r.is_zero() || q.sign() == Sign::Minus {
            return Err(Error::invalid(format!("{b} gives a non-integral dimension")));
        }
        Ok(q.magnitude().clone())
    }

    pub fn lattice_description(&self) -> String {
        match &self.lattice {
            WeightLattice::Product { cosets, chamber } => {
                let shifts: Vec<String> = cosets
                    .iter()
                    .map(|c| WeightVector::from_scaled(c.clone(), self.scale).to_string())
                    .collect();
                format!("Z^{} + {{{}}}, chamber {:?}", self.coords, shifts.join(", "), chamber)
            }
            WeightLattice::TraceZero => format!(
                "trace-zero projection of Z^{}, b = (c, 0) - (|c|/{}) (1,…,1)",
                self.coords, self.coords
            ),
        }
    }
}

/// Eigenvalue of the Laplacian on the representation with highest weight `b`,
/// from the family's explicit formula.
pub fn casimir_eigenvalue(g: &GroupId, b: &WeightVector) -> Result<BigRational> {
    let data = build_group_data(g)?;
    data.validate_weight(b)?;
    Ok(g.family().casimir_closed_form(g.n(), b))
}

/// `dim(π_b)²` from the explicit product formula in `x = b + a`.
pub fn multiplicity(g: &GroupId, b: &WeightVector) -> Result<BigUint> {
    let data = build_group_data(g)?;
    data.validate_weight(b)?;
    let m = g.family().multiplicity_closed_form(g.n(), b);
    if !m.is_integer() || m.is_negative() {
        return Err(Error::invalid(format!("multiplicity of {b} came out as {m}")));
    }
    Ok(m.to_integer().magnitude().clone())
}

pub fn weyl_dimension(g: &GroupId, b: &WeightVector) -> Result<BigUint> {
    let data = build_group_data(g)?;
    data.validate_weight(b)?;
    data.dimension_of(b)
}

/// Volume of the group from its root data and weight lattice, with the
/// published closed forms alongside for comparison.
#[derive(Clone, Debug)]
pub struct VolumeData {
    /// `Π_{α>0} (α, ρ)` computed from the root list.
    pub q: BigRational,
    /// Volume of a fundamental domain of the analytic weight lattice.
    pub lattice_covolume: SymbolicVolume,
    pub volume: SymbolicVolume,
    pub vol_float: f64,
    pub tabulated_q: BigRational,
    pub tabulated_vol_times_q: SymbolicVolume,
}

impl VolumeData {
    pub fn vol_times_q(&self) -> f64 {
        self.vol_float * rational_to_f64(&self.q)
    }

    /// The volume implied by the tabulated `Vol × Q` and the directly computed `Q`.
    pub fn tabulated_volume(&self) -> f64 {
        self.tabulated_vol_times_q.to_f64() / rational_to_f64(&self.q)
    }

    pub fn comparison_report(&self) -> String {
        format!(
            "Q direct = {} | Q tabulated = {} | Vol = {:.15e} | Vol from tabulated Vol*Q = {:.15e}",
            crate::numeric::format_rational(&self.q),
            crate::numeric::format_rational(&self.tabulated_q),
            self.vol_float,
            self.tabulated_volume()
        )
    }
}

/// `Vol(G) = (2π)^{n+l} / (Vol(lattice) · Q)`
pub fn group_volume(g: &GroupId) -> Result<VolumeData> {
    let data = build_group_data(g)?;
    let fam = g.family();
    let l = data.positive_root_count() as i64;
    let scale_pow = num_traits::pow(BigInt::from(data.scale), l as usize);
    let q = BigRational::new(data.rho_product.clone(), scale_pow);
    let (cov_coeff, cov_rad) = fam.lattice_covolume(g.n());
    let exponent = data.rank as i64 + l;
    // 1/(c √s) = √s / (c s)
    let volume = SymbolicVolume {
        coefficient: BigRational::one() / (&cov_coeff * BigRational::from_integer(cov_rad.into()) * &q),
        radicand: cov_rad,
        two_pi_exponent: exponent,
    };
    let covol_f = rational_to_f64(&cov_coeff) * (cov_rad as f64).sqrt();
    let vol_float = two_pi_pow(exponent) / (covol_f * rational_to_f64(&q));
    Ok(VolumeData {
        q,
        lattice_covolume: SymbolicVolume { coefficient: cov_coeff, radicand: cov_rad, two_pi_exponent: 0 },
        volume,
        vol_float,
        tabulated_q: fam.tabulated_q(g.n()),
        tabulated_vol_times_q: fam.tabulated_vol_times_q(g.n()),
    })
}

#[cfg(test)]
mod tests;
