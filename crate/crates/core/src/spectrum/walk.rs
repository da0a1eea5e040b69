//! Lattice walkers over the scaled shifted coordinates `X = D(b + ρ)`.
//!
//! Every walker tests the exact ball condition `q |X|² <= rhs` with
//! `rhs = D² p + q |Dρ|²` for `λ = p/q`, pruning one coordinate at a time.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::BigSum;
use crate::lie_data::{Chamber, RootSystemData, WeightLattice};
use crate::numeric::isqrt_i128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Region {
    /// Dominant analytic weights only.
    Dominant,
    /// The whole shifted lattice.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Ball {
    q: i128,
    rhs: i128,
}

impl Ball {
    /// The ball of eigenvalues `<= lambda` for `data`.
    pub(crate) fn for_eigenvalue(data: &RootSystemData, lambda: &BigRational) -> Result<Ball> {
        if lambda.is_negative() {
            return Err(Error::invalid("eigenvalue cutoff must be non-negative"));
        }
        let overflow = || Error::Overflow("eigenvalue cutoff");
        let p = lambda.numer().to_i128().ok_or_else(overflow)?;
        let q = lambda.denom().to_i128().ok_or_else(overflow)?;
        let d = data.scale as i128;
        let rho2: i128 = data.scaled_rho.iter().map(|&v| v as i128 * v as i128).sum();
        let rhs = d
            .checked_mul(d)
            .and_then(|d2| d2.checked_mul(p))
            .and_then(|a| q.checked_mul(rho2).and_then(|b| a.checked_add(b)))
            .ok_or_else(overflow)?;
        Ok(Ball { q, rhs })
    }

    /// `q |X|² <= rhs` with `|X|²` given directly in scaled units.
    pub(crate) fn radius_squared(r2: &BigRational) -> Result<Ball> {
        if r2.is_negative() {
            return Err(Error::invalid("radius must be non-negative"));
        }
        let overflow = || Error::Overflow("radius");
        Ok(Ball {
            q: r2.denom().to_i128().ok_or_else(overflow)?,
            rhs: r2.numer().to_i128().ok_or_else(overflow)?,
        })
    }

    fn max_abs(&self, remaining: i128) -> i64 {
        if remaining < 0 {
            return -1;
        }
        isqrt_i128(remaining / self.q) as i64
    }
}

/// Plain `Z^k` (or `Z^k + s` with scaled shift) walk, no shift by ρ.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    kind: LayoutKind,
    /// Per-coordinate offset added to the walked value to get `X`.
    offset: Vec<i64>,
    /// Step between consecutive walked values.
    step: i64,
    /// Residues of the walked value modulo `step`, one list entry per coset.
    cosets: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
enum LayoutKind {
    Product(Option<Chamber>),
    TraceZero { dominant: bool },
}

impl Layout {
    pub(crate) fn shifted(data: &RootSystemData, region: Region) -> Layout {
        match &data.lattice {
            WeightLattice::Product { cosets, chamber } => Layout {
                kind: LayoutKind::Product((region == Region::Dominant).then_some(*chamber)),
                offset: data.scaled_rho.clone(),
                step: data.scale,
                cosets: cosets.clone(),
            },
            WeightLattice::TraceZero => Layout {
                kind: LayoutKind::TraceZero { dominant: region == Region::Dominant },
                offset: vec![0; data.coords],
                step: 1,
                cosets: vec![vec![0; data.coords]],
            },
        }
    }

    /// `step · Z^k`, unshifted, all points.
    pub(crate) fn integer(k: usize, step: i64) -> Layout {
        Layout {
            kind: LayoutKind::Product(None),
            offset: vec![0; k],
            step,
            cosets: vec![vec![0; k]],
        }
    }

    fn k(&self) -> usize {
        self.offset.len()
    }
}

/// Visits every lattice point of `layout` inside `ball`, in parallel over
/// (coset, first coordinate), and returns one accumulator per slice in a
/// fixed order.
pub(crate) fn fold_slices<T, I, V>(layout: &Layout, ball: Ball, init: I, visit: V) -> Vec<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &[i64]) + Sync,
{
    let slices = first_slices(layout, ball);
    slices
        .par_iter()
        .map(|&(coset, first)| {
            let mut acc = init();
            let mut walker = Walker { layout, ball, coset, state: vec![0; layout.k()], x: vec![0; layout.k()] };
            walker.run(first, &mut |x: &[i64]| visit(&mut acc, x));
            acc
        })
        .collect()
}

fn first_slices(layout: &Layout, ball: Ball) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for coset in 0..layout.cosets.len() {
        let walker = Walker { layout, ball, coset, state: vec![0; layout.k()], x: vec![0; layout.k()] };
        for v in walker.candidates(0, ball.rhs, None).into_iter().rev() {
            out.push((coset, v));
        }
    }
    out
}

struct Walker<'a> {
    layout: &'a Layout,
    ball: Ball,
    coset: usize,
    /// Walked values; for products these are `D b_j`, for trace-zero the `c_j`.
    state: Vec<i64>,
    x: Vec<i64>,
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

impl Walker<'_> {
    /// Ascending candidate values at position `j` given the remaining budget
    /// (or, for trace-zero, the bound on `|Y_j|`).
    fn candidates(&self, j: usize, remaining: i128, prev: Option<i64>) -> Vec<i64> {
        match &self.layout.kind {
            LayoutKind::Product(chamber) => {
                let r = self.ball.max_abs(remaining);
                if r < 0 {
                    return Vec::new();
                }
                let off = self.layout.offset[j];
                let mut lo = -r - off;
                let mut hi = r - off;
                if let Some(ch) = chamber {
                    let k = self.layout.k();
                    match ch {
                        Chamber::Free => {}
                        Chamber::TypeA => {
                            if let Some(p) = prev {
                                hi = hi.min(p);
                            }
                        }
                        Chamber::TypeB => {
                            lo = lo.max(0);
                            if let Some(p) = prev {
                                hi = hi.min(p);
                            }
                        }
                        Chamber::TypeD => {
                            if let Some(p) = prev {
                                hi = hi.min(p);
                            }
                            if j + 1 < k {
                                lo = lo.max(0);
                            } else if let Some(p) = prev {
                                lo = lo.max(-p);
                            }
                        }
                    }
                }
                let step = self.layout.step;
                let res = self.layout.cosets[self.coset][j];
                let first = div_ceil(lo - res, step) * step + res;
                let last = div_floor(hi - res, step) * step + res;
                if first > last {
                    return Vec::new();
                }
                (0..=(last - first) / step).map(|i| first + i * step).collect()
            }
            LayoutKind::TraceZero { dominant } => {
                let n = self.layout.k() as i64;
                let two_n = 2 * n;
                let ymax = self.trace_zero_ymax();
                let jj = j as i64 + 1;
                // Y_j = 2N (c_j + N - j)
                let mut lo = div_ceil(-ymax, two_n) - (n - jj);
                let mut hi = div_floor(ymax, two_n) - (n - jj);
                if *dominant {
                    lo = lo.max(0);
                    if let Some(p) = prev {
                        hi = hi.min(p);
                    }
                }
                if lo > hi {
                    return Vec::new();
                }
                (lo..=hi).collect()
            }
        }
    }

    fn trace_zero_ymax(&self) -> i64 {
        let n = self.layout.k() as i128;
        match n.checked_mul(self.ball.rhs) {
            Some(v) if v >= 0 => isqrt_i128(v / self.ball.q) as i64,
            Some(_) => -1,
            None => i64::MAX / 4,
        }
    }

    fn run(&mut self, first: i64, visit: &mut dyn FnMut(&[i64])) {
        match self.layout.kind {
            LayoutKind::Product(_) => {
                let x0 = first + self.layout.offset[0];
                self.state[0] = first;
                self.x[0] = x0;
                let used = self.ball.q * (x0 as i128 * x0 as i128);
                self.product_rec(1, used, visit);
            }
            LayoutKind::TraceZero { .. } => {
                self.state[0] = first;
                let n = self.layout.k();
                if n == 1 {
                    return;
                }
                let y0 = self.y(0, first);
                let partial = y0 as i128 * y0 as i128;
                if self.trace_zero_fits(partial) {
                    self.trace_zero_rec(1, partial, visit);
                }
            }
        }
    }

    fn product_rec(&mut self, j: usize, used: i128, visit: &mut dyn FnMut(&[i64])) {
        let k = self.layout.k();
        if j == k {
            visit(&self.x);
            return;
        }
        let prev = Some(self.state[j - 1]);
        for v in self.candidates(j, self.ball.rhs - used, prev).into_iter().rev() {
            let x = v + self.layout.offset[j];
            self.state[j] = v;
            self.x[j] = x;
            self.product_rec(j + 1, used + self.ball.q * (x as i128 * x as i128), visit);
        }
    }

    fn y(&self, j: usize, c: i64) -> i64 {
        let n = self.layout.k() as i64;
        2 * n * (c + n - (j as i64 + 1))
    }

    /// `q · Σ_{a<b} (Y_a - Y_b)² <= N · rhs`
    fn trace_zero_fits(&self, pair_sum: i128) -> bool {
        let n = self.layout.k() as i128;
        match (self.ball.q.checked_mul(pair_sum), n.checked_mul(self.ball.rhs)) {
            (Some(l), Some(r)) => l <= r,
            _ => false,
        }
    }

    fn trace_zero_rec(&mut self, j: usize, pair_sum: i128, visit: &mut dyn FnMut(&[i64])) {
        let n = self.layout.k();
        if j == n - 1 {
            self.emit_trace_zero(visit);
            return;
        }
        let prev = Some(self.state[j - 1]);
        for c in self.candidates(j, 0, prev).into_iter().rev() {
            let yj = self.y(j, c) as i128;
            // pairs with every earlier coordinate and with Y_N = 0
            let mut add = yj * yj;
            for a in 0..j {
                let d = self.y(a, self.state[a]) as i128 - yj;
                add += d * d;
            }
            if self.trace_zero_fits(pair_sum + add) {
                self.state[j] = c;
                self.trace_zero_rec(j + 1, pair_sum + add, visit);
            }
        }
    }

    fn emit_trace_zero(&mut self, visit: &mut dyn FnMut(&[i64])) {
        let n = self.layout.k() as i64;
        let s: i64 = self.state[..n as usize - 1].iter().sum();
        for j in 0..n as usize {
            let c = if j + 1 < n as usize { self.state[j] } else { 0 };
            let jj = j as i64 + 1;
            self.x[j] = 2 * n * c - 2 * s + n * (n + 1 - 2 * jj);
        }
        visit(&self.x);
    }
}

/// `Π_α (α · x)` in `i128` when it fits.
pub(crate) fn root_product_i128(roots: &[Vec<i64>], x: &[i64]) -> Option<i128> {
    let mut acc: i128 = 1;
    for r in roots {
        let dot: i128 = r.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
        acc = acc.checked_mul(dot)?;
    }
    Some(acc)
}

/// Squared Weyl dimension `(Π(α,X)/Π(α,Dρ))²` at a shifted lattice point,
/// added to `sum`.
pub(crate) fn add_multiplicity(data: &RootSystemData, rho_small: Option<i128>, x: &[i64], sum: &mut BigSum) {
    if let Some(rp) = rho_small {
        if let Some(top) = root_product_i128(&data.root_ints, x) {
            let dim = (top / rp).unsigned_abs();
            if let Some(m) = dim.checked_mul(dim) {
                sum.add_u128(m);
                return;
            }
        }
    }
    let top = crate::lie_data::root_product(&data.root_ints, x);
    let dim: BigInt = top / &data.rho_product;
    let dim = dim.magnitude();
    if !dim.is_zero() {
        sum.add_big(&(dim * dim));
    }
}
