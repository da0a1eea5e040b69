use num_bigint::BigInt;
use serde::Serialize;

use weylspec::arithmetic::{
    dimension_recursion_check, equidistribution_trend, jacobi_identity_check, jacobi_identity_values, rep_numbers, sharp_leading_check,
};
use weylspec::bessel::{base_identity_residual, bound_envelope, lemma_identity_residual, weighted_integral, BesselParams};
use weylspec::geodesics::{circle_problem_report, length_spectrum};
use weylspec::io::{identity_table, length_table, trend_table, Cache, IdentityRow, SpectrumDump, Table, ToTable};
use weylspec::lattice_count::{parse_basis, HomogeneousPolynomial, Lattice, WeightedCounter};
use weylspec::lie_data::GroupId;
use weylspec::numeric::{format_f64, parse_rational, rational_from_f64};
use weylspec::spectrum::Spectrum;

use crate::config::{bad, budget, grid, required, ArithArgs, BesselArgs, CliError, GeodesicArgs, LatticeArgs, SpectrumArgs};

fn cached<A: Serialize>(cache: Option<&Cache>, module: &str, args: &A, compute: impl FnOnce() -> Result<Table, CliError>) -> Result<Table, CliError> {
    let Some(cache) = cache else {
        return compute();
    };
    if let Some(t) = cache.load(module, args)? {
        log::info!("{module}: cache hit in {}", cache.dir().display());
        return Ok(t);
    }
    let t = compute()?;
    cache.store(module, args, &t)?;
    Ok(t)
}

pub fn spectrum(a: SpectrumArgs, cache: Option<&Cache>) -> Result<Table, CliError> {
    let group = GroupId::new(&required(a.group.clone(), "group")?, required(a.n, "n")?)?;
    let lambdas = grid("lambda", a.lambda, a.lambda_start, a.lambda_stop, a.lambda_ratio)?;
    let mut spec = Spectrum::new(&group)?;
    if let Some(b) = budget(a.budget)? {
        spec = spec.with_budget(b)?;
    }
    if let Some(path) = &a.dump {
        let top = lambdas.iter().copied().fold(0.0, f64::max);
        let entries = spec.enumerate_dominant(&rational_from_f64(top)?)?;
        let json = SpectrumDump::new(&group, &entries).to_json()?;
        std::fs::write(path, json).map_err(|e| CliError::Core(e.into()))?;
    }
    let mut key = a.clone();
    key.dump = None;
    cached(cache, "spectrum", &key, || Ok(spec.remainder_series(&lambdas)?.to_table()))
}

pub fn lattice(a: LatticeArgs, cache: Option<&Cache>) -> Result<Table, CliError> {
    let radii = grid("r", a.r, a.r_start, a.r_stop, a.r_ratio)?;
    cached(cache, "lattice", &a, || {
        let cols = parse_basis(&required(a.basis.clone(), "basis")?)?;
        let shift = match &a.shift {
            Some(s) => Some(s.split(',').map(parse_rational).collect::<weylspec::Result<Vec<_>>>()?),
            None => None,
        };
        let lattice = Lattice::new(cols, shift)?;
        let weight = HomogeneousPolynomial::parse(a.weight.as_deref().unwrap_or("1"), lattice.dim())?;
        let mut counter = WeightedCounter::new(lattice, weight)?;
        if let Some(b) = budget(a.budget)? {
            counter = counter.with_budget(b)?;
        }
        Ok(counter.series(&radii)?.to_table())
    })
}

fn int_grid(a: &ArithArgs) -> Result<Vec<u64>, CliError> {
    let raw = grid("r2", a.r2.map(|v| v as f64), a.r2_start, a.r2_stop, a.r2_ratio)?;
    let mut out: Vec<u64> = raw.iter().map(|v| v.round() as u64).collect();
    out.dedup();
    Ok(out)
}

pub fn arith(a: ArithArgs, cache: Option<&Cache>) -> Result<Table, CliError> {
    let check = required(a.check.clone(), "check")?;
    let m = a.m.unwrap_or(0);
    cached(cache, "arith", &a, || match check.as_str() {
        "jacobi" => {
            let rows = match (a.t, a.t_max) {
                (Some(t), None) => {
                    let (lhs, rhs) = jacobi_identity_check(m, t)?;
                    vec![IdentityRow { t, lhs, rhs }]
                }
                (None, Some(t_max)) => jacobi_identity_values(m, t_max)?.into_iter().map(|(t, lhs, rhs)| IdentityRow { t, lhs, rhs }).collect(),
                _ => return Err(bad("jacobi needs exactly one of --t or --t-max")),
            };
            Ok(identity_table(&rows))
        }
        "recursion" => {
            let n = required(a.n, "n")?;
            let radii: Vec<u64> = match (a.r, a.r_max) {
                (Some(r), None) => vec![r],
                (None, Some(r)) => (0..=r).collect(),
                _ => return Err(bad("recursion needs exactly one of --r or --r-max")),
            };
            let rows = radii
                .into_iter()
                .map(|r| {
                    let (l, rr) = dimension_recursion_check(n, m, r)?;
                    Ok(IdentityRow { t: r, lhs: BigInt::from(l), rhs: BigInt::from(rr) })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(identity_table(&rows))
        }
        "sharp" => Ok(sharp_leading_check(required(a.n, "n")?, m, &int_grid(&a)?)?.to_table()),
        "rep" => {
            let table = rep_numbers(required(a.n, "n")?, required(a.k_max, "k-max")?)?;
            let mut t = Table::new(&["k", "count"]);
            for (k, v) in table.values().iter().enumerate() {
                t.rows.push(vec![k.to_string(), v.to_string()]);
            }
            Ok(t)
        }
        "trend" => {
            let n = required(a.n, "n")?;
            let p = HomogeneousPolynomial::parse(&required(a.poly.clone(), "poly")?, n as usize)?;
            let ks: Vec<u64> = (1..=required(a.k_max, "k-max")?).collect();
            Ok(trend_table(&equidistribution_trend(&p, &ks)?))
        }
        other => Err(bad(format!("unknown check {other:?}; expected jacobi, recursion, sharp, rep or trend"))),
    })
}

pub fn geodesics(a: GeodesicArgs, cache: Option<&Cache>) -> Result<Table, CliError> {
    let n = required(a.n, "n")?;
    if let Some(l) = a.lengths {
        return cached(cache, "geodesics", &a, || Ok(length_table(&length_spectrum(n, l)?)));
    }
    let xs = grid("x", a.x, a.x_start, a.x_stop, a.x_ratio)?;
    cached(cache, "geodesics", &a, || Ok(circle_problem_report(n, &xs)?.to_table()))
}

pub fn bessel(a: BesselArgs, cache: Option<&Cache>) -> Result<Table, CliError> {
    let alpha = required(a.alpha, "alpha")?;
    let beta = required(a.beta, "beta")?;
    let zs = grid("z", a.z, a.z_start, a.z_stop, a.z_ratio)?;
    cached(cache, "bessel", &a, || {
        if let Some(check) = &a.check {
            let mut t = Table::new(&["alpha", "beta", "z", "residual"]);
            for &z in &zs {
                let r = match check.as_str() {
                    "lemma" => lemma_identity_residual(&BesselParams::new(alpha, beta, z)?)?,
                    "base" => base_identity_residual(beta, z)?,
                    other => return Err(bad(format!("unknown check {other:?}; expected lemma or base"))),
                };
                t.rows.push(vec![format_f64(alpha), format_f64(beta), format_f64(z), format_f64(r)]);
            }
            return Ok(t);
        }
        if zs.len() == 1 && zs[0] < 1.0 {
            let p = BesselParams::new(alpha, beta, zs[0])?;
            let integral = weighted_integral(&p)?;
            let mut t = Table::new(&["z", "integral", "ratio"]);
            let ratio = integral / p.z.powf(alpha + beta - 0.5);
            t.rows.push(vec![format_f64(p.z), format_f64(integral), format_f64(ratio)]);
            return Ok(t);
        }
        Ok(bound_envelope(alpha, beta, &zs)?.to_table())
    })
}
