//! The group families as interchangeable strategies.
//!
//! Everything downstream (enumeration, volumes, exponents) is written against
//! [`GroupFamily`]; a family only has to describe its root data, its lattice
//! of analytic weights, and its closed-form eigenvalue and multiplicity
//! formulas.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::weight::{is_half_odd, is_integral, WeightVector};
use crate::numeric::factorial;

/// Ordering constraints of the closed positive Weyl chamber in the
/// coordinates the family enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chamber {
    /// No roots (torus): every lattice point is dominant.
    Free,
    /// `b_1 >= ... >= b_k`
    TypeA,
    /// `b_1 >= ... >= b_n >= 0`
    TypeB,
    /// `b_1 >= ... >= b_{n-1} >= |b_n|`
    TypeD,
}

/// How the analytic weights of a family are laid out for enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightLattice {
    /// `b = v + s` with `v` integral and `s` one of the coset shifts; shifts
    /// are given as numerators over the family scale.
    Product { cosets: Vec<Vec<i64>>, chamber: Chamber },
    /// `(c_1, ..., c_{N-1}, 0)` projected onto the trace-zero hyperplane.
    TraceZero,
}

/// Which sign changes of the shifted weight belong to the Weyl group, on top
/// of all coordinate permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignChanges {
    None,
    Even,
    All,
}

/// `coefficient * sqrt(radicand) * (2π)^two_pi_exponent`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicVolume {
    pub coefficient: BigRational,
    pub radicand: u64,
    pub two_pi_exponent: i64,
}

impl SymbolicVolume {
    pub fn to_f64(&self) -> f64 {
        crate::numeric::rational_to_f64(&self.coefficient)
            * (self.radicand as f64).sqrt()
            * crate::numeric::two_pi_pow(self.two_pi_exponent)
    }
}

/// A compact classical group family, parametrised by `N`.
pub trait GroupFamily: Debug + Send + Sync {
    fn name(&self) -> &'static str;
    fn min_n(&self) -> u32;
    fn rank(&self, n: u32) -> usize;
    fn dimension(&self, n: u32) -> usize;
    /// Length of weight vectors (rank, or `N` for the unitary families).
    fn coords(&self, n: u32) -> usize;
    /// Common denominator of every shifted weight `b + ρ`.
    fn scale(&self, n: u32) -> i64;
    fn positive_roots(&self, n: u32) -> Vec<Vec<i64>>;
    fn simple_roots(&self, n: u32) -> Vec<Vec<i64>>;
    /// ρ from the family's closed form.
    fn rho(&self, n: u32) -> WeightVector;
    fn weyl_order(&self, n: u32) -> BigUint;
    fn sign_changes(&self, n: u32) -> SignChanges;
    fn weight_lattice(&self, n: u32) -> WeightLattice;
    fn is_analytic(&self, n: u32, b: &WeightVector) -> bool;
    /// Eigenvalue from the family's explicit sum formula.
    fn casimir_closed_form(&self, n: u32, b: &WeightVector) -> BigRational;
    /// Multiplicity from the family's explicit product formula in `x = b + ρ`.
    fn multiplicity_closed_form(&self, n: u32, b: &WeightVector) -> BigRational;
    /// Fundamental-domain volume of the analytic weight lattice in the
    /// bi-invariant metric, as `(coefficient, radicand)`.
    fn lattice_covolume(&self, n: u32) -> (BigRational, u64);
    /// Published closed form for `Π(α,ρ)`, kept for comparison reports.
    fn tabulated_q(&self, n: u32) -> BigRational;
    /// Published closed form for `Vol × Q`.
    fn tabulated_vol_times_q(&self, n: u32) -> SymbolicVolume;
    /// Improved remainder exponent in λ from the rank-dependent bound.
    fn remainder_exponent(&self, n: u32) -> BigRational;
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn unit(len: usize, i: usize, v: i64) -> Vec<i64> {
    let mut e = vec![0; len];
    e[i] = v;
    e
}

fn double_factorial(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

fn superfactorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, j| acc * factorial(j))
}

// ---------------------------------------------------------------------------
// Orthogonal and spin groups share the B_n / D_n root systems.

fn orth_rank(n: u32) -> usize {
    (n / 2) as usize
}

fn orth_positive_roots(n: u32) -> Vec<Vec<i64>> {
    let r = orth_rank(n);
    let mut roots = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut minus = unit(r, i, 1);
            minus[j] = -1;
            let mut plus = unit(r, i, 1);
            plus[j] = 1;
            roots.push(minus);
            roots.push(plus);
        }
    }
    if n % 2 == 1 {
        roots.extend((0..r).map(|i| unit(r, i, 1)));
    }
    roots
}

fn orth_simple_roots(n: u32) -> Vec<Vec<i64>> {
    let r = orth_rank(n);
    let mut roots: Vec<Vec<i64>> = (0..r.saturating_sub(1))
        .map(|i| {
            let mut a = unit(r, i, 1);
            a[i + 1] = -1;
            a
        })
        .collect();
    if n % 2 == 1 {
        roots.push(unit(r, r - 1, 1));
    } else if r >= 2 {
        let mut a = unit(r, r - 2, 1);
        a[r - 1] = 1;
        roots.push(a);
    }
    roots
}

/// `ρ_j = n - j` for `N = 2n`, `n - j + 1/2` for `N = 2n + 1`.
fn orth_rho(n: u32) -> WeightVector {
    let r = orth_rank(n) as i64;
    let odd = (n % 2) as i64;
    WeightVector::from_scaled((1..=r).map(|j| 2 * (r - j) + odd).collect(), 2)
}

fn orth_weyl_order(n: u32) -> BigUint {
    let r = orth_rank(n) as u32;
    let signs = if n % 2 == 1 { r } else { r.saturating_sub(1) };
    BigUint::from(2u32).pow(signs) * factorial(r as u64)
}

fn orth_chamber(n: u32) -> Chamber {
    match (n % 2, orth_rank(n)) {
        (1, _) => Chamber::TypeB,
        (_, 1) => Chamber::Free,
        _ => Chamber::TypeD,
    }
}

fn orth_casimir(n: u32, b: &WeightVector) -> BigRational {
    // Σ b_j (b_j + 2n - 2j)  or  Σ b_j (b_j + 2n + 1 - 2j)
    let r = orth_rank(n) as i64;
    let odd = (n % 2) as i64;
    b.coords()
        .iter()
        .enumerate()
        .map(|(i, bj)| {
            let j = i as i64 + 1;
            bj * (bj + BigRational::from_integer((2 * r + odd - 2 * j).into()))
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

fn orth_multiplicity(n: u32, b: &WeightVector) -> BigRational {
    let r = orth_rank(n);
    let odd = n % 2 == 1;
    let a: Vec<BigRational> = (1..=r as i64)
        .map(|j| if odd { rat(2 * (r as i64 - j) + 1, 2) } else { rat(r as i64 - j, 1) })
        .collect();
    let x: Vec<BigRational> = b.coords().iter().zip(&a).map(|(bj, aj)| bj + aj).collect();
    let sq = |v: &BigRational| v * v;
    let mut top = BigRational::one();
    let mut bottom = BigRational::one();
    for i in 0..r {
        for l in i + 1..r {
            top *= sq(&(sq(&x[i]) - sq(&x[l])));
            bottom *= sq(&(sq(&a[i]) - sq(&a[l])));
        }
        if odd {
            top *= sq(&x[i]);
            bottom *= sq(&a[i]);
        }
    }
    top / bottom
}

fn orth_tabulated_q(n: u32) -> BigRational {
    let r = orth_rank(n) as u64;
    let nn = n as u64;
    let base = BigRational::new(BigInt::from(double_factorial(nn)), BigInt::from(2u32).pow(r as u32));
    let mut q = num_traits::pow(base, (nn - 2 * r) as usize);
    q *= BigRational::from_integer(BigInt::from(superfactorial(r.saturating_sub(1))));
    for j in 1..=r {
        for k in j + 1..=r {
            q *= BigRational::from_integer(BigInt::from(nn as i64 - j as i64 - k as i64));
        }
    }
    q
}

fn orth_remainder_exponent(n: u32) -> BigRational {
    let r = orth_rank(n) as i64;
    let top = if n % 2 == 0 {
        2 * r * r * r + r * r - 3 * r
    } else {
        2 * r * r * r + 3 * r * r - r
    };
    rat(top, 2 * (r + 1))
}

#[derive(Debug, Default)]
pub struct SpecialOrthogonal;

impl GroupFamily for SpecialOrthogonal {
    fn name(&self) -> &'static str {
        "SO"
    }
    fn min_n(&self) -> u32 {
        2
    }
    fn rank(&self, n: u32) -> usize {
        orth_rank(n)
    }
    fn dimension(&self, n: u32) -> usize {
        (n * (n - 1) / 2) as usize
    }
    fn coords(&self, n: u32) -> usize {
        orth_rank(n)
    }
    fn scale(&self, _n: u32) -> i64 {
        2
    }
    fn positive_roots(&self, n: u32) -> Vec<Vec<i64>> {
        orth_positive_roots(n)
    }
    fn simple_roots(&self, n: u32) -> Vec<Vec<i64>> {
        orth_simple_roots(n)
    }
    fn rho(&self, n: u32) -> WeightVector {
        orth_rho(n)
    }
    fn weyl_order(&self, n: u32) -> BigUint {
        orth_weyl_order(n)
    }
    fn sign_changes(&self, n: u32) -> SignChanges {
        if n % 2 == 1 {
            SignChanges::All
        } else {
            SignChanges::Even
        }
    }
    fn weight_lattice(&self, n: u32) -> WeightLattice {
        WeightLattice::Product {
            cosets: vec![vec![0; orth_rank(n)]],
            chamber: orth_chamber(n),
        }
    }
    fn is_analytic(&self, n: u32, b: &WeightVector) -> bool {
        b.len() == orth_rank(n) && b.denominator() == 1
    }
    fn casimir_closed_form(&self, n: u32, b: &WeightVector) -> BigRational {
        orth_casimir(n, b)
    }
    fn multiplicity_closed_form(&self, n: u32, b: &WeightVector) -> BigRational {
        orth_multiplicity(n, b)
    }
    fn lattice_covolume(&self, _n: u32) -> (BigRational, u64) {
        (BigRational::one(), 1)
    }
    fn tabulated_q(&self, n: u32) -> BigRational {
        orth_tabulated_q(n)
    }
    fn tabulated_vol_times_q(&self, n: u32) -> SymbolicVolume {
        let d = self.dimension(n) as i64;
        let r = orth_rank(n) as i64;
        SymbolicVolume {
            coefficient: BigRational::one(),
            radicand: 1,
            two_pi_exponent: (d + r) / 2,
        }
    }
    fn remainder_exponent(&self, n: u32) -> BigRational {
        orth_remainder_exponent(n)
    }
}

/// The universal cover of SO(N): same roots, weights in both the integral
/// and the all-half-integral coset.
#[derive(Debug, Default)]
pub struct Spin;

impl GroupFamily for Spin {
    fn name(&self) -> &'static str {
        "Spin"
    }
    fn min_n(&self) -> u32 {
        3
    }
    fn rank(&self, n: u32) -> usize {
        orth_rank(n)
    }
    fn dimension(&self, n: u32) -> usize {
        (n * (n - 1) / 2) as usize
    }
    fn coords(&self, n: u32) -> usize {
        orth_rank(n)
    }
    fn scale(&self, _n: u32) -> i64 {
        2
    }
    fn positive_roots(&self, n: u32) -> Vec<Vec<i64>> {
        orth_positive_roots(n)
    }
    fn simple_roots(&self, n: u32) -> Vec<Vec<i64>> {
        orth_simple_roots(n)
    }
    fn rho(&self, n: u32) -> WeightVector {
        orth_rho(n)
    }
    fn weyl_order(&self, n: u32) -> BigUint {
        orth_weyl_order(n)
    }
    fn sign_changes(&self, n: u32) -> SignChanges {
        if n % 2 == 1 {
            SignChanges::All
        } else {
            SignChanges::Even
        }
    }
    fn weight_lattice(&self, n: u32) -> WeightLattice {
        let r = orth_rank(n);
        WeightLattice::Product {
            cosets: vec![vec![0; r], vec![1; r]],
            chamber: orth_chamber(n),
        }
    }
    fn is_analytic(&self, n: u32, b: &WeightVector) -> bool {
        if b.len() != orth_rank(n) {
            return false;
        }
        let c = b.coords();
        c.iter().all(is_integral) || c.iter().all(is_half_odd)
    }
    fn casimir_closed_form(&self, n: u32, b: &WeightVector) -> BigRational {
        orth_casimir(n, b)
    }
    fn multiplicity_closed_form(&self, n: u32, b: &WeightVector) -> BigRational {
        orth_multiplicity(n, b)
    }
    fn lattice_covolume(&self, _n: u32) -> (BigRational, u64) {
        // Z^n ∪ (Z + 1/2)^n has index 2 over Z^n
        (rat(1, 2), 1)
    }
    fn tabulated_q(&self, n: u32) -> BigRational {
        orth_tabulated_q(n)
    }
    fn tabulated_vol_times_q(&self, n: u32) -> SymbolicVolume {
        let d = self.dimension(n) as i64;
        let r = orth_rank(n) as i64;
        SymbolicVolume {
            coefficient: BigRational::from_integer(BigInt::from(2u32).pow(r as u32)),
            radicand: 1,
            two_pi_exponent: (d + r) / 2,
        }
    }
    fn remainder_exponent(&self, n: u32) -> BigRational {
        orth_remainder_exponent(n)
    }
}

// ---------------------------------------------------------------------------
// Unitary groups: A_{N-1} roots e_j - e_k in R^N.

fn unitary_positive_roots(n: u32) -> Vec<Vec<i64>> {
    let k = n as usize;
    let mut roots = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut a = unit(k, i, 1);
            a[j] = -1;
            roots.push(a);
        }
    }
    roots
}

fn unitary_simple_roots(n: u32) -> Vec<Vec<i64>> {
    let k = n as usize;
    (0..k - 1)
        .map(|i| {
            let mut a = unit(k, i, 1);
            a[i + 1] = -1;
            a
        })
        .collect()
}

/// `ρ_j = (N + 1)/2 - j`
fn unitary_rho(n: u32) -> WeightVector {
    let nn = n as i64;
    WeightVector::from_scaled((1..=nn).map(|j| nn + 1 - 2 * j).collect(), 2)
}

fn unitary_casimir(n: u32, b: &WeightVector) -> BigRational {
    // Σ [(b_j - j + (N+1)/2)^2 - ((N+1)/2 - j)^2]
    let nn = n as i64;
    b.coords()
        .iter()
        .enumerate()
        .map(|(i, bj)| {
            let shift = rat(nn + 1 - 2 * (i as i64 + 1), 2);
            let x = bj + &shift;
            &x * &x - &shift * &shift
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

fn unitary_multiplicity(n: u32, b: &WeightVector) -> BigRational {
    // Π_{j<k} (x_j - x_k)^2 / (k - j)^2 with x_j = b_j - j + (N+1)/2
    let nn = n as i64;
    let x: Vec<BigRational> = b
        .coords()
        .iter()
        .enumerate()
        .map(|(i, bj)| bj + rat(nn + 1 - 2 * (i as i64 + 1), 2))
        .collect();
    let mut m = BigRational::one();
    for j in 0..x.len() {
        for k in j + 1..x.len() {
            let diff = &x[j] - &x[k];
            let gap = rat((k - j) as i64, 1);
            m *= (&diff * &diff) / (&gap * &gap);
        }
    }
    m
}

#[derive(Debug, Default)]
pub struct Unitary;

impl GroupFamily for Unitary {
    fn name(&self) -> &'static str {
        "U"
    }
    fn min_n(&self) -> u32 {
        2
    }
    fn rank(&self, n: u32) -> usize {
        n as usize
    }
    fn dimension(&self, n: u32) -> usize {
        (n * n) as usize
    }
    fn coords(&self, n: u32) -> usize {
        n as usize
    }
    fn scale(&self, _n: u32) -> i64 {
        2
    }
    fn positive_roots(&self, n: u32) -> Vec<Vec<i64>> {
        unitary_positive_roots(n)
    }
    fn simple_roots(&self, n: u32) -> Vec<Vec<i64>> {
        unitary_simple_roots(n)
    }
    fn rho(&self, n: u32) -> WeightVector {
        unitary_rho(n)
    }
    fn weyl_order(&self, n: u32) -> BigUint {
        factorial(n as u64)
    }
    fn sign_changes(&self, _n: u32) -> SignChanges {
        SignChanges::None
    }
    fn weight_lattice(&self, n: u32) -> WeightLattice {
        WeightLattice::Product {
            cosets: vec![vec![0; n as usize]],
            chamber: Chamber::TypeA,
        }
    }
    fn is_analytic(&self, n: u32, b: &WeightVector) -> bool {
        b.len() == n as usize && b.denominator() == 1
    }
    fn casimir_closed_form(&self, n: u32, b: &WeightVector) -> BigRational {
        unitary_casimir(n, b)
    }
    fn multiplicity_closed_form(&self, n: u32, b: &WeightVector) -> BigRational {
        unitary_multiplicity(n, b)
    }
    fn lattice_covolume(&self, _n: u32) -> (BigRational, u64) {
        (BigRational::one(), 1)
    }
    fn tabulated_q(&self, n: u32) -> BigRational {
        BigRational::from_integer(BigInt::from(superfactorial(n as u64 - 1)))
    }
    fn tabulated_vol_times_q(&self, n: u32) -> SymbolicVolume {
        let nn = n as i64;
        SymbolicVolume {
            coefficient: BigRational::one(),
            radicand: 1,
            two_pi_exponent: nn * (nn + 1) / 2,
        }
    }
    fn remainder_exponent(&self, n: u32) -> BigRational {
        let nn = n as i64;
        rat(nn * (nn + 2) * (nn - 1), 2 * (nn + 1))
    }
}

/// SU(N), with weights written as trace-zero vectors in R^N.
#[derive(Debug, Default)]
pub struct SpecialUnitary;

impl GroupFamily for SpecialUnitary {
    fn name(&self) -> &'static str {
        "SU"
    }
    fn min_n(&self) -> u32 {
        2
    }
    fn rank(&self, n: u32) -> usize {
        n as usize - 1
    }
    fn dimension(&self, n: u32) -> usize {
        (n * n - 1) as usize
    }
    fn coords(&self, n: u32) -> usize {
        n as usize
    }
    fn scale(&self, n: u32) -> i64 {
        2 * n as i64
    }
    fn positive_roots(&self, n: u32) -> Vec<Vec<i64>> {
        unitary_positive_roots(n)
    }
    fn simple_roots(&self, n: u32) -> Vec<Vec<i64>> {
        unitary_simple_roots(n)
    }
    fn rho(&self, n: u32) -> WeightVector {
        unitary_rho(n)
    }
    fn weyl_order(&self, n: u32) -> BigUint {
        factorial(n as u64)
    }
    fn sign_changes(&self, _n: u32) -> SignChanges {
        SignChanges::None
    }
    fn weight_lattice(&self, _n: u32) -> WeightLattice {
        WeightLattice::TraceZero
    }
    fn is_analytic(&self, n: u32, b: &WeightVector) -> bool {
        if b.len() != n as usize {
            return false;
        }
        let c = b.coords();
        let total = c.iter().fold(BigRational::zero(), |acc, v| acc + v);
        total.is_zero() && c.windows(2).all(|w| (&w[0] - &w[1]).is_integer())
    }
    fn casimir_closed_form(&self, n: u32, b: &WeightVector) -> BigRational {
        unitary_casimir(n, b)
    }
    fn multiplicity_closed_form(&self, n: u32, b: &WeightVector) -> BigRational {
        unitary_multiplicity(n, b)
    }
    fn lattice_covolume(&self, n: u32) -> (BigRational, u64) {
        // the projection of Z^N onto the hyperplane ⟂ (1,…,1) has covolume 1/√N
        (rat(1, n as i64), n as u64)
    }
    fn tabulated_q(&self, n: u32) -> BigRational {
        BigRational::from_integer(BigInt::from(superfactorial(n as u64 - 1)))
    }
    fn tabulated_vol_times_q(&self, n: u32) -> SymbolicVolume {
        let nn = n as i64;
        SymbolicVolume {
            coefficient: BigRational::from_integer(nn.into()),
            radicand: 1,
            two_pi_exponent: (nn + 2) * (nn - 1) / 2,
        }
    }
    fn remainder_exponent(&self, n: u32) -> BigRational {
        let nn = n as i64;
        rat(nn * nn * nn - 3 * nn + 2, 2 * nn)
    }
}
