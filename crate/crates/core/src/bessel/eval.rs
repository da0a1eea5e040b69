//! `J_ν(x)` for real order `-1 < ν ≤ 62` and `0 ≤ x ≤ 10⁴`.
//!
//! Small arguments use the power series; otherwise `J` and `Y` of the
//! nonnegative order come from Steed's continued fractions or, when it
//! converges, Hankel's asymptotic expansion, and negative orders are
//! reflected through `J_{-μ} = cos(μπ) J_μ - sin(μπ) Y_μ`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_ORDER: f64 = 62.0;
pub const MAX_ARGUMENT: f64 = 1.0e4;

const SERIES_LIMIT: f64 = 2.0;
const HANKEL_MIN: f64 = 25.0;
const MAXIT: usize = 200_000;

pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu > -1.0 && nu <= MAX_ORDER) || !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::Numerical(format!(
            "J_ν(x) is only evaluated for -1 < ν ≤ {MAX_ORDER}, 0 ≤ x ≤ {MAX_ARGUMENT}; got ν = {nu}, x = {x}"
        )));
    }
    if x < SERIES_LIMIT {
        return Ok(series(nu, x));
    }
    if nu >= 0.0 {
        return Ok(bessel_jy(nu, x)?.0);
    }
    let mu = -nu;
    let (j, y) = bessel_jy(mu, x)?;
    Ok((mu * PI).cos() * j - (mu * PI).sin() * y)
}

fn series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let half = 0.5 * x;
    let direct = half.powf(nu) / libm::tgamma(nu + 1.0);
    let mut term = if direct.is_normal() { direct } else { (nu * half.ln() - libm::lgamma(nu + 1.0)).exp() };
    if term == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// `(J_ν(x), Y_ν(x))` for `ν ≥ 0`, `x ≥ 2`.
pub(crate) fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    if x >= HANKEL_MIN {
        if let Some(v) = hankel(nu, x) {
            return Ok(v);
        }
    }
    steed(nu, x)
}

/// Hankel's expansion, or `None` if its terms start growing before they
/// drop below rounding.
fn hankel(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    let mut k = 1usize;
    loop {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * eight_x);
        let mag = term.abs();
        if mag > prev {
            return None;
        }
        // a_k / x^k alternates between Q and P with the sign pattern + - - + ...
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if mag < 1e-17 {
            break;
        }
        prev = mag;
        k += 1;
        if k > 200 {
            return None;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    Some((amp * (p * c - q * s), amp * (p * s + q * c)))
}

/// Steed's method: `J'/J` by a continued fraction, downward recurrence to a
/// small order, then `p + iq` by the second continued fraction and the
/// Wronskian to normalize.
fn steed(nu: f64, x: f64) -> Result<(f64, f64)> {
    let eps = f64::EPSILON;
    let fpmin = f64::MIN_POSITIVE / eps;
    let nl = ((nu - x + 1.5).floor()).max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let mut isign = 1.0;
    let mut h = (nu * xi).max(fpmin);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = b - 1.0 / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!("J'/J continued fraction did not converge at ν = {nu}, x = {x}")));
    }

    let mut rjl = isign * fpmin;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
    }
    if rjl == 0.0 {
        rjl = eps;
    }
    let f = rjpl / rjl;

    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut t = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = t;
    converged = false;
    for i in 1..MAXIT {
        a += (2 * i) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < fpmin {
            dr = fpmin;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < fpmin {
            cr = fpmin;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        t = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = t;
        if (dlr - 1.0).abs() + dli.abs() <= eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!("p + iq continued fraction did not converge at ν = {nu}, x = {x}")));
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    let mut rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;

    let j = rjl1 * (rjmu / rjl);
    for i in 1..=nl {
        let next = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = next;
    }
    Ok((j, rymu))
}
