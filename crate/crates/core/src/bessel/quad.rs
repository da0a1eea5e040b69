//! Adaptive Gauss-Kronrod (7/15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_DEPTH: u32 = 48;

/// `(K15, |K15 - G7|, ∫|f| by K15)` on `[a, b]`.
fn kronrod<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = h * XGK[i];
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        k += WGK[i] * (f1 + f2);
        abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            g += WG[i / 2] * (f1 + f2);
        }
    }
    Ok((k * h, ((k - g) * h).abs(), abs * h.abs()))
}

/// `∫_a^b f` with bisection until the local error is below
/// `rel · ∫|f|` or `abs_tol`. Fails rather than returning a value that
/// missed the tolerance.
pub(crate) fn integrate<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64, rel: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (k, err, mag) = kronrod(f, a, b)?;
    let tol = (rel * mag).max(abs_tol);
    refine(f, a, b, k, err, tol, 0)
}

fn refine<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64, k: f64, err: f64, tol: f64, depth: u32) -> Result<f64> {
    if err <= tol {
        return Ok(k);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Numerical(format!("quadrature on [{a}, {b}] stalled at error {err:.3e} against tolerance {tol:.3e}")));
    }
    let m = 0.5 * (a + b);
    let (k1, e1, _) = kronrod(f, a, m)?;
    let (k2, e2, _) = kronrod(f, m, b)?;
    if e1 + e2 <= tol {
        return Ok(k1 + k2);
    }
    Ok(refine(f, a, m, k1, e1, 0.5 * tol, depth + 1)? + refine(f, m, b, k2, e2, 0.5 * tol, depth + 1)?)
}

/// Integral over `[a, b]` split into panels no wider than `width`.
pub(crate) fn integrate_panels<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64, width: f64, rel: f64, abs_tol: f64) -> Result<f64> {
    let panels = ((b - a) / width).ceil().max(1.0) as usize;
    let step = (b - a) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let lo = a + step * i as f64;
        let hi = if i + 1 == panels { b } else { a + step * (i + 1) as f64 };
        total += integrate(f, lo, hi, rel, abs_tol)?;
    }
    Ok(total)
}
