use super::*;

/// `(ν, t, J_ν(t))` at 40 digits.
const REFERENCE: [(f64, f64, f64); 26] = [
    (0.0, 0.5, 0.93846980724081290423),
    (0.0, 1.0, 0.76519768655796655145),
    (0.0, 2.5, -0.048383776468197996327),
    (0.0, 10.0, -0.2459357644513483352),
    (0.0, 100.0, 0.019985850304223122424),
    (1.0, 1.0, 0.44005058574493351596),
    (1.0, 10.0, 0.04347274616886143667),
    (0.5, 3.0, 0.065008182877375778114),
    (-0.3, 0.7, 0.87739961945947700627),
    (-0.3, 25.0, 0.14367460124115489408),
    (2.5, 0.1, 0.00016808871900334129365),
    (2.5, 7.3, -0.30084943158749980838),
    (3.0, 50.0, 0.092734804061634432021),
    (7.25, 3.0, 0.0017113678144951772071),
    (7.25, 40.0, -0.12447995065244198614),
    (20.0, 15.0, 0.0073602340792234852583),
    (20.0, 30.0, 0.0048310199934040645386),
    (60.0, 10.0, 6.9094332494399618981e-41),
    (60.0, 70.0, -0.12423013697308474059),
    (60.0, 500.0, 0.035332404831978474874),
    (1.5, 1000.0, -0.014168706104322200496),
    (4.0, 9999.0, -0.00077094192935071319816),
    (0.2, 1.9, 0.4187304368211842849),
    (0.2, 2.1, 0.3152973073566389991),
    (33.3, 33.3, 0.13901756001079171433),
    (12.0, 200.0, 0.0046786031208384521432),
];

/// Relative error, measured against `√(2/(πt))` past the turning point so
/// that values near a zero are judged on the local amplitude.
fn scaled_error(nu: f64, t: f64, got: f64, want: f64) -> f64 {
    let env = if t > nu.abs() + 1.0 { (2.0 / (PI * t)).sqrt() } else { 0.0 };
    (got - want).abs() / want.abs().max(env)
}

#[test]
fn matches_reference_values() {
    for (nu, t, want) in REFERENCE {
        let got = bessel_j(nu, t).unwrap();
        assert!(scaled_error(nu, t, got, want) < 1e-10, "J_{nu}({t}) = {got}, want {want}");
    }
}

#[test]
fn half_integer_closed_forms() {
    let j_half = |t: f64| (2.0 / (PI * t)).sqrt() * t.sin();
    let j_three_halves = |t: f64| (2.0 / (PI * t)).sqrt() * (t.sin() / t - t.cos());
    let j_minus_half = |t: f64| (2.0 / (PI * t)).sqrt() * t.cos();
    assert!((bessel_j(0.5, PI / 2.0).unwrap() - 2.0 / PI).abs() < 1e-15);
    assert!((bessel_j(1.5, PI).unwrap() - 2f64.sqrt() / PI).abs() < 1e-15);
    for i in 1..400 {
        let t = 0.05 * i as f64 * (1.0 + i as f64 / 8.0);
        let env = (2.0 / (PI * t)).sqrt();
        assert!((bessel_j(0.5, t).unwrap() - j_half(t)).abs() < 1e-11 * env, "t = {t}");
        assert!((bessel_j(1.5, t).unwrap() - j_three_halves(t)).abs() < 1e-11 * env, "t = {t}");
        assert!((bessel_j(-0.5, t).unwrap() - j_minus_half(t)).abs() < 1e-11 * env, "t = {t}");
    }
}

#[test]
fn origin_and_domain() {
    assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(2.5, 0.0).unwrap(), 0.0);
    assert_eq!(bessel_j(-0.4, 0.0).unwrap(), f64::INFINITY);
    for (nu, t) in [(-1.0, 1.0), (62.5, 1.0), (1.0, -0.1), (1.0, 1.0e4 + 1.0), (f64::NAN, 1.0)] {
        assert!(matches!(bessel_j(nu, t), Err(Error::Numerical(_))), "ν = {nu}, t = {t}");
    }
}

#[test]
fn three_term_recurrence() {
    let mut worst: f64 = 0.0;
    for &nu in &[0.5, 1.0, 1.3, 2.5, 7.0, 19.75, 40.0, 60.0] {
        for &t in &[0.3, 1.9, 2.1, 6.0, 24.9, 25.1, 44.0, 130.0, 999.0, 7777.0] {
            let lo = bessel_j(nu - 1.0, t).unwrap();
            let hi = bessel_j(nu + 1.0, t).unwrap();
            let mid = bessel_j(nu, t).unwrap();
            let lhs = lo + hi;
            let rhs = 2.0 * nu / t * mid;
            let scale = lo.abs().max(hi.abs()).max(rhs.abs());
            worst = worst.max((lhs - rhs).abs() / scale);
        }
    }
    assert!(worst < 1e-9, "{worst}");
}

#[test]
fn weighted_integral_closed_form() {
    let p = BesselParams::new(2.0, 0.5, PI).unwrap();
    let want = (2.0 / PI).sqrt() * (PI * PI - 4.0);
    assert!((weighted_integral(&p).unwrap() - want).abs() < 1e-12);
    assert_eq!(weighted_integral(&BesselParams::new(3.0, 1.0, 0.0).unwrap()).unwrap(), 0.0);
    // antiderivative of t² sin t
    let z: f64 = 40.0;
    let exact = (2.0 / PI).sqrt() * (-z * z * z.cos() + 2.0 * z * z.sin() + 2.0 * z.cos() - 2.0);
    let got = weighted_integral(&BesselParams::new(2.0, 0.5, z).unwrap()).unwrap();
    assert!((got - exact).abs() < 1e-10 * exact.abs().max(1.0), "{got} vs {exact}");
}

#[test]
fn parameter_validation() {
    assert!(BesselParams::new(1.9, 0.0, 1.0).is_err());
    assert!(BesselParams::new(2.0, -0.5, 1.0).is_err());
    assert!(BesselParams::new(2.0, 0.0, -1.0).is_err());
    assert!(BesselParams::new(2.0, 61.5, 1.0).is_err());
    assert!(base_identity_residual(0.0, 1.0).is_err());
    assert!(bound_envelope(2.0, 0.0, &[0.5, 2.0]).is_err());
    assert!(bound_envelope(2.0, 0.0, &[2.0, 2.0]).is_err());
}

#[test]
fn lemma_identity_on_grid() {
    assert_eq!(lemma_identity_residual(&BesselParams::new(2.0, 0.5, 0.0).unwrap()).unwrap(), 0.0);
    let special = [(2.0, 0.5, PI), (3.0, 2.0, 50.0)];
    for (a, b, z) in special {
        let r = lemma_identity_residual(&BesselParams::new(a, b, z).unwrap()).unwrap();
        assert!(r <= 1e-8, "α = {a}, β = {b}, z = {z}: {r:e}");
    }
    for a in [2.0, 3.0, 4.0] {
        for b in [0.5, 1.0, 2.5] {
            for z in [1.0, 5.0, 20.0, 100.0] {
                let r = lemma_identity_residual(&BesselParams::new(a, b, z).unwrap()).unwrap();
                assert!(r <= 1e-8, "α = {a}, β = {b}, z = {z}: {r:e}");
            }
        }
    }
}

#[test]
fn base_identity_on_grid() {
    for b in [0.5, 1.0, 1.5, 2.5, 7.0] {
        for z in [0.0, 1.0, 5.0, 20.0, 100.0] {
            let r = base_identity_residual(b, z).unwrap();
            assert!(r <= 1e-8, "β = {b}, z = {z}: {r:e}");
        }
    }
}

#[test]
fn synthetic_envelope_is_constant() {
    let grid: Vec<f64> = (0..=40).map(|k| 2f64.powf(k as f64 / 4.0)).collect();
    let (a, b) = (2.0, 0.5);
    let g = |t: f64| -> Result<f64> { Ok(t.powf(a + b - 1.5)) };
    let rows = envelope_rows(&g, a + b - 0.5, &grid).unwrap();
    for r in &rows {
        assert!((r.ratio - 1.0 / (a + b - 0.5)).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn envelope_stabilizes() {
    let grid: Vec<f64> = (0..=48).map(|k| 2f64.powf(k as f64 / 4.0)).collect();
    for b in [0.5, 0.0] {
        let env = bound_envelope(2.0, b, &grid).unwrap();
        assert_eq!(env.rows.len(), grid.len());
        assert!(env.is_stable().unwrap(), "β = {b}: {}", env.stabilization_ratio().unwrap());
        let direct = weighted_integral(&BesselParams::new(2.0, b, 64.0).unwrap()).unwrap();
        let row = env.rows.iter().find(|r| r.z == 64.0).unwrap();
        assert!((row.integral - direct).abs() < 1e-9 * direct.abs().max(1.0));
    }
}
