use super::*;
use crate::lattice_count::{weighted_count, HomogeneousPolynomial, Lattice};
use num_traits::{One, Signed};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn poly(s: &str, n: usize) -> HomogeneousPolynomial {
    HomogeneousPolynomial::parse(s, n).unwrap()
}

/// Every `x ∈ Z^n` with `|x|² ≤ max`.
fn ball_points(n: usize, max: i64, mut visit: impl FnMut(&[i64], i64)) {
    fn rec(x: &mut Vec<i64>, n: usize, left: i64, norm: i64, visit: &mut dyn FnMut(&[i64], i64)) {
        if x.len() == n {
            visit(x, norm);
            return;
        }
        let r = (left as f64).sqrt() as i64 + 1;
        for v in -r..=r {
            if v * v <= left {
                x.push(v);
                rec(x, n, left - v * v, norm + v * v, visit);
                x.pop();
            }
        }
    }
    rec(&mut Vec::new(), n, max, 0, &mut visit);
}

fn brute_rep(n: usize, max: i64) -> Vec<u128> {
    let mut out = vec![0u128; max as usize + 1];
    ball_points(n, max, |_, norm| out[norm as usize] += 1);
    out
}

#[test]
fn rep_number_examples() {
    let t = rep_numbers(4, 4).unwrap();
    assert_eq!(&t.values()[1..], &[8, 24, 32, 24]);
    assert_eq!(rep_numbers(2, 5).unwrap().get(5), Some(8));
    for n in 1..8 {
        assert_eq!(rep_numbers(n, 0).unwrap().get(0), Some(1));
    }
    assert!(rep_numbers(0, 3).is_err());
    assert!(matches!(RepNumberTable::build_with_limit(3, 1000, 100), Err(Error::Budget { .. })));
}

#[test]
fn rep_numbers_match_shell_enumeration() {
    for n in 1..=5u32 {
        let table = rep_numbers(n, 400).unwrap();
        assert_eq!(table.values(), brute_rep(n as usize, 400).as_slice(), "n = {n}");
    }
}

#[test]
fn ball_counts_agree_with_lattice_counter() {
    for n in 1..=4u32 {
        let table = rep_numbers(n, 60).unwrap();
        for r2 in [0u64, 1, 7, 25, 60] {
            let direct = weighted_count(&Lattice::integer(n as usize), &HomogeneousPolynomial::one(n as usize), (r2 as f64).sqrt()).unwrap();
            let ours = ball_count(&table, r2).unwrap();
            assert_eq!(direct, BigRational::from_integer(BigInt::from(ours)), "n = {n}, R² = {r2}");
        }
    }
}

#[test]
fn weighted_ball_sum_examples() {
    assert_eq!(weighted_ball_sum(4, 0, 4).unwrap(), BigUint::from(88u32));
    assert_eq!(weighted_ball_sum(4, 0, 0).unwrap(), BigUint::zero());
    assert_eq!(weighted_ball_sum(2, 1, 2).unwrap(), BigUint::from(12u32));

    let mut direct = 0u128;
    ball_points(5, 100, |_, norm| direct += norm as u128);
    assert_eq!(weighted_ball_sum(5, 1, 100).unwrap(), BigUint::from(direct));

    let table = rep_numbers(3, 50).unwrap();
    let grid = [0, 3, 3, 17, 50];
    let all = table.weighted_sums_at(2, &grid).unwrap();
    for (&r2, v) in grid.iter().zip(&all) {
        assert_eq!(v, &table.weighted_range_sum(2, 1, r2).unwrap());
    }
    assert!(table.weighted_sums_at(0, &[4, 3]).is_err());
    assert!(table.weighted_sums_at(0, &[51]).is_err());
}

#[test]
fn divisor_examples() {
    assert_eq!(sigma(1).unwrap(), 1);
    assert_eq!(sigma(6).unwrap(), 12);
    assert!(sigma(0).is_err());
    assert_eq!(s_m(4, 0), BigUint::from(15u32));
    assert_eq!(s_m(4, 1), BigUint::from(47u32));
    assert_eq!(s_m(0, 2), BigUint::zero());

    let table = divisor_sum_table(500);
    for k in 1..=500 {
        assert_eq!(table[k as usize], sigma(k).unwrap());
    }
    for m in 0..4 {
        let prefix = s_m_prefix(300, m);
        assert!(prefix.windows(2).all(|w| w[0] <= w[1]));
        for t in [0u64, 1, 2, 97, 300] {
            assert_eq!(prefix[t as usize], s_m(t, m));
        }
    }
}

#[test]
fn sawtooth_examples_and_bound() {
    assert!(psi(&q(3, 2)).is_zero());
    assert_eq!(psi(&q(-1, 3)), q(1, 6));
    assert_eq!(sawtooth_sum(1).unwrap(), q(-1, 2));
    assert_eq!(sawtooth_sum(2).unwrap(), q(-3, 4));
    assert!(sawtooth_sum(0).is_err());

    let mut harmonic = BigRational::zero();
    let half = q(1, 2);
    for t in 1..=200u64 {
        harmonic += BigRational::new(BigInt::one(), BigInt::from(t));
        let d = sawtooth_sum(t).unwrap();
        assert!(d.abs() <= &half * &harmonic, "t = {t}");
    }
}

#[test]
fn jacobi_identity_examples() {
    assert_eq!(jacobi_identity_check(0, 4).unwrap(), (BigInt::from(88), BigInt::from(88)));
    assert_eq!(jacobi_identity_check(0, 1).unwrap(), (BigInt::from(8), BigInt::from(8)));
    assert_eq!(jacobi_identity_check(1, 4).unwrap(), (BigInt::from(248), BigInt::from(248)));
    assert!(jacobi_identity_check(0, 0).is_err());
    for m in 0..4 {
        let report = jacobi_identity_sweep(m, 1500).unwrap();
        assert!(report.holds(), "{report:?}");
        let (l, r) = jacobi_identity_check(m, 1237).unwrap();
        assert_eq!(l, r);
    }
}

#[test]
fn dimension_recursion_examples() {
    let (l, r) = dimension_recursion_check(4, 0, 2).unwrap();
    let direct = brute_rep(5, 4)[1..].iter().sum::<u128>();
    assert_eq!(l, BigUint::from(direct));
    assert_eq!(l, r);
    assert_eq!(dimension_recursion_check(4, 0, 0).unwrap(), (BigUint::zero(), BigUint::zero()));
    let (l, r) = dimension_recursion_check(4, 1, 3).unwrap();
    let mut direct = 0u128;
    ball_points(5, 9, |_, norm| direct += norm as u128);
    assert_eq!(l, BigUint::from(direct));
    assert_eq!(l, r);
    for (n, m, radius) in [(2, 2, 7), (3, 1, 5), (5, 2, 6), (1, 3, 9)] {
        let (l, r) = dimension_recursion_check(n, m, radius).unwrap();
        assert_eq!(l, r, "n = {n}, m = {m}, R = {radius}");
    }
}

#[test]
fn sharp_leading_series() {
    let lead = sharp_leading_term(5, 0, 1);
    assert!((lead - 8.0 * std::f64::consts::PI.powi(2) / 15.0).abs() < 1e-14);
    let s = sharp_leading_check(5, 1, &[0, 1, 100]).unwrap();
    assert!(s.in_theorem_regime);
    assert!(s.rows[0].value.is_zero() && s.rows[0].normalized == 0.0);
    assert_eq!(s.rows[2].value, weighted_ball_sum(5, 1, 100).unwrap());
    let expected = 10.0 - sharp_leading_term(5, 1, 1);
    assert!((s.rows[1].remainder - expected).abs() < 1e-12);
    assert!(!sharp_leading_check(3, 0, &[4]).unwrap().in_theorem_regime);
}

#[test]
fn shell_average_examples() {
    assert_eq!(sphere_average(&HomogeneousPolynomial::one(3), 6).unwrap(), BigRational::one());
    assert_eq!(sphere_average(&poly("x1^2", 2), 1).unwrap(), q(1, 2));
    assert_eq!(sphere_average(&poly("x1^2*x2^2", 2), 2).unwrap(), q(1, 4));
    assert!(sphere_average(&poly("x1^2", 2), 3).is_err());
    assert!(sphere_average(&poly("x1^3 + x2^3", 2), 5).unwrap().is_zero());
}

#[test]
fn shell_averages_match_enumeration() {
    let cases = [("x1^4 - 2*x2^2*x3^2 + 1/3*x3^4", 3), ("x1^2*x2^2*x3^2", 3), ("x1^4 + x1*x2^3", 2), ("|x|^2", 4)];
    for (s, n) in cases {
        let p = poly(s, n);
        let table = sphere_average_table(&p, 40).unwrap();
        let mut sums = vec![BigRational::zero(); 41];
        let mut counts = vec![0i64; 41];
        ball_points(n, 40, |x, norm| {
            let xs: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
            sums[norm as usize] += p.eval(&xs);
            counts[norm as usize] += 1;
        });
        for k in 0..=40usize {
            if counts[k] == 0 || k == 0 {
                assert!(table[k].is_none());
                continue;
            }
            let half = p.degree() / 2;
            let expected = &sums[k] / (BigInt::from(counts[k]) * BigInt::from(k).pow(half));
            assert_eq!(table[k].as_ref(), Some(&expected), "{s} at k = {k}");
        }
    }
}

#[test]
fn sphere_integral_averages() {
    assert_eq!(sphere_integral_average(&HomogeneousPolynomial::one(4)), 1.0);
    for n in 1..9 {
        assert_eq!(sphere_integral_average_exact(&HomogeneousPolynomial::power_of(n, 0, 2)), q(1, n as i64));
    }
    assert_eq!(sphere_integral_average_exact(&poly("x1^4", 5)), q(3, 35));
    assert!((sphere_integral_average(&poly("x1^4", 5)) - 3.0 / 35.0).abs() < 1e-15);
}

#[test]
fn trend_examples() {
    let grid: Vec<u64> = (1..=64).collect();
    let flat = equidistribution_trend(&HomogeneousPolynomial::one(5), &grid).unwrap();
    assert_eq!(flat.len(), 64);
    assert!(flat.iter().all(|p| p.deviation == 0.0));

    let t = equidistribution_trend(&poly("x1^2*x2^2", 2), &[2, 3]).unwrap();
    assert_eq!(t, vec![TrendPoint { k: 2, deviation: 0.125 }]);

    let quartic = equidistribution_trend(&poly("x1^4", 5), &(1..=2048).collect::<Vec<_>>()).unwrap();
    let windows = dyadic_window_maxima(&quartic);
    assert_eq!(windows.len(), 12);
    assert_eq!((windows[3].lo, windows[3].hi), (8, 16));
    let last = windows.len() - 1;
    assert!(windows[last].max < windows[last - 4].max, "{windows:?}");
}

#[test]
fn table_round_trips_through_json() {
    let t = rep_numbers(6, 30).unwrap();
    let s = serde_json::to_string(&t).unwrap();
    let back: RepNumberTable = serde_json::from_str(&s).unwrap();
    assert_eq!(back, t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tables_convolve_additively(a in 1u32..5, b in 1u32..5, k in 0u64..120) {
        let ta = rep_numbers(a, k).unwrap();
        let tb = rep_numbers(b, k).unwrap();
        let tab = rep_numbers(a + b, k).unwrap();
        let conv: u128 = (0..=k).map(|i| ta.get(i).unwrap() * tb.get(k - i).unwrap()).sum();
        prop_assert_eq!(tab.get(k).unwrap(), conv);
    }

    #[test]
    fn s_m_is_monotone(t in 1u64..400, m in 0u32..4) {
        prop_assert!(s_m(t - 1, m) <= s_m(t, m));
    }
}
