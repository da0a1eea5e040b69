use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g(name: &str, n: u32) -> GroupId {
    GroupId::new(name, n).unwrap()
}

fn w(s: &str) -> WeightVector {
    WeightVector::parse(s).unwrap()
}

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn all_groups(max_n: u32) -> Vec<GroupId> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(g("SO", n));
        out.push(g("U", n));
        out.push(g("SU", n));
        if n >= 3 {
            out.push(g("Spin", n));
        }
    }
    out
}

pub(crate) fn random_dominant(data: &RootSystemData, rng: &mut impl Rng) -> WeightVector {
    let k = data.coords;
    match &data.lattice {
        WeightLattice::Product { cosets, chamber } => {
            let coset = &cosets[rng.gen_range(0..cosets.len())];
            let mut v: Vec<i64> = (0..k).map(|_| rng.gen_range(0..7)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            let mut num: Vec<i64> = v.iter().zip(coset).map(|(x, s)| data.scale * x + s).collect();
            match chamber {
                Chamber::TypeD if rng.gen_bool(0.5) => num[k - 1] = -num[k - 1],
                Chamber::TypeA => {
                    let off = data.scale * rng.gen_range(0..5);
                    num.iter_mut().for_each(|x| *x -= off);
                }
                Chamber::Free if rng.gen_bool(0.5) => num[0] = -num[0],
                _ => {}
            }
            WeightVector::from_scaled(num, data.scale)
        }
        WeightLattice::TraceZero => {
            let mut c: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(0..7)).collect();
            c.sort_unstable_by(|a, b| b.cmp(a));
            c.push(0);
            let s: i64 = c.iter().sum();
            let nn = k as i64;
            WeightVector::from_scaled(c.iter().map(|x| nn * x - s).collect(), nn)
        }
    }
}

#[test]
fn so5_root_data() {
    let d = build_group_data(&g("SO", 5)).unwrap();
    assert_eq!((d.rank, d.dimension, d.positive_root_count()), (2, 10, 4));
    assert_eq!(d.rho, w("3/2,1/2"));
    assert_eq!(d.weyl_order, BigUint::from(8u32));
}

#[test]
fn so2_is_abelian() {
    let d = build_group_data(&g("SO", 2)).unwrap();
    assert_eq!((d.rank, d.dimension, d.positive_root_count()), (1, 1, 0));
    assert_eq!(d.rho, w("0"));
    assert_eq!(d.weyl_order, BigUint::one());
    // every integer is dominant, eigenvalue b^2, multiplicity 1
    let b = w("-3");
    assert_eq!(casimir_eigenvalue(&g("SO", 2), &b).unwrap(), r(9, 1));
    assert_eq!(multiplicity(&g("SO", 2), &b).unwrap(), BigUint::one());
}

#[test]
fn u2_root_data() {
    let d = build_group_data(&g("U", 2)).unwrap();
    assert_eq!((d.rank, d.dimension, d.positive_root_count()), (2, 4, 1));
    assert_eq!(d.positive_roots, vec![w("1,-1")]);
    assert_eq!(d.rho, w("1/2,-1/2"));
    assert_eq!(d.weyl_order, BigUint::from(2u32));
}

#[test]
fn rejects_small_n() {
    assert!(GroupId::new("SO", 1).is_err());
    assert!(GroupId::new("Spin", 2).is_err());
    assert!(GroupId::new("SU", 1).is_err());
    assert!(GroupId::new("Sp", 4).is_err());
    assert_eq!(GroupId::parse("Spin(7)").unwrap(), g("Spin", 7));
    assert_eq!(GroupId::parse("su3").unwrap(), g("SU", 3));
}

#[test]
fn casimir_examples() {
    assert_eq!(casimir_eigenvalue(&g("SO", 3), &w("1")).unwrap(), r(2, 1));
    assert_eq!(casimir_eigenvalue(&g("SO", 3), &w("0")).unwrap(), r(0, 1));
    assert_eq!(casimir_eigenvalue(&g("SO", 4), &w("1,0")).unwrap(), r(3, 1));
    assert_eq!(casimir_eigenvalue(&g("SO", 4), &w("1,1")).unwrap(), r(4, 1));
    assert_eq!(casimir_eigenvalue(&g("SO", 4), &w("1,-1")).unwrap(), r(4, 1));
    assert_eq!(casimir_eigenvalue(&g("U", 2), &w("1,0")).unwrap(), r(2, 1));
}

#[test]
fn casimir_rejects_bad_weights() {
    // not dominant
    assert!(casimir_eigenvalue(&g("SO", 5), &w("0,1")).is_err());
    assert!(casimir_eigenvalue(&g("SO", 5), &w("1,-1")).is_err());
    // not analytic
    assert!(casimir_eigenvalue(&g("SO", 5), &w("1/2,1/2")).is_err());
    assert!(casimir_eigenvalue(&g("U", 2), &w("0,1")).is_err());
    // wrong length
    assert!(casimir_eigenvalue(&g("SO", 5), &w("1")).is_err());
}

#[test]
fn multiplicity_examples() {
    assert_eq!(multiplicity(&g("SO", 3), &w("1")).unwrap(), BigUint::from(9u32));
    assert_eq!(multiplicity(&g("SO", 5), &w("1,0")).unwrap(), BigUint::from(25u32));
    assert_eq!(multiplicity(&g("Spin", 5), &w("1/2,1/2")).unwrap(), BigUint::from(16u32));
    for grp in all_groups(6) {
        let zero = WeightVector::zero(grp.family().coords(grp.n()));
        assert_eq!(multiplicity(&grp, &zero).unwrap(), BigUint::one(), "{grp}");
        assert_eq!(weyl_dimension(&grp, &zero).unwrap(), BigUint::one(), "{grp}");
    }
}

#[test]
fn weyl_dimension_examples() {
    assert_eq!(weyl_dimension(&g("SU", 2), &w("1,-1")).unwrap(), BigUint::from(3u32));
    for n in 2..=8u32 {
        let mut b = vec![0i64; n as usize];
        b[0] = 1;
        let std = WeightVector::from_ints(&b);
        assert_eq!(weyl_dimension(&g("U", n), &std).unwrap(), BigUint::from(n), "U({n})");
    }
    // SU(3) fundamental: (2/3, -1/3, -1/3) has dimension 3; adjoint (1,0,-1) has 8
    assert_eq!(weyl_dimension(&g("SU", 3), &w("2/3,-1/3,-1/3")).unwrap(), BigUint::from(3u32));
    assert_eq!(weyl_dimension(&g("SU", 3), &w("1,0,-1")).unwrap(), BigUint::from(8u32));
    // SO(2n) half-spin representations of Spin(8) have dimension 8
    assert_eq!(weyl_dimension(&g("Spin", 8), &w("1/2,1/2,1/2,-1/2")).unwrap(), BigUint::from(8u32));
}

#[test]
fn rho_half_sum_matches_closed_form() {
    for grp in all_groups(12) {
        let d = build_group_data(&grp).unwrap();
        assert_eq!(d.rho, grp.family().rho(grp.n()), "{grp}");
        assert_eq!(2 * d.positive_root_count(), d.dimension - d.rank, "{grp}");
    }
}

#[test]
fn weyl_orders() {
    let fact = |k: u64| crate::numeric::factorial(k);
    for n in 1..=6u64 {
        let odd = build_group_data(&g("SO", (2 * n + 1) as u32)).unwrap();
        assert_eq!(odd.weyl_order, BigUint::from(2u32).pow(n as u32) * fact(n));
        let even = build_group_data(&g("SO", (2 * n) as u32)).unwrap();
        assert_eq!(even.weyl_order, BigUint::from(2u32).pow(n as u32 - 1) * fact(n));
    }
    for n in 2..=7u32 {
        assert_eq!(build_group_data(&g("SU", n)).unwrap().weyl_order, fact(n as u64));
    }
}

#[test]
fn closed_forms_agree_with_root_data_on_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for grp in all_groups(12) {
        let d = build_group_data(&grp).unwrap();
        for _ in 0..1000 {
            let b = random_dominant(&d, &mut rng);
            d.validate_weight(&b).unwrap_or_else(|e| panic!("{grp} {b}: {e}"));
            let closed = grp.family().casimir_closed_form(grp.n(), &b);
            assert_eq!(closed, d.eigenvalue_inner_product(&b), "{grp} {b}");
            assert!(!closed.is_negative());
        }
    }
}

#[test]
fn multiplicity_is_square_of_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for grp in all_groups(9) {
        let d = build_group_data(&grp).unwrap();
        for _ in 0..200 {
            let b = random_dominant(&d, &mut rng);
            let dim = d.dimension_of(&b).unwrap();
            let m = multiplicity(&grp, &b).unwrap();
            assert_eq!(m, &dim * &dim, "{grp} {b}");
            assert!(m >= BigUint::one());
        }
    }
}

/// `m(x) = (Π(α,x)/Π(α,ρ))²` evaluated on any scaled point.
fn m_of_scaled(d: &RootSystemData, x: &[i64]) -> BigRational {
    let top = root_product(&d.root_ints, x);
    let ratio = BigRational::new(top, d.rho_product.clone());
    &ratio * &ratio
}

#[test]
fn multiplicity_is_weyl_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for grp in all_groups(8) {
        let d = build_group_data(&grp).unwrap();
        let signs = grp.family().sign_changes(grp.n());
        for _ in 0..100 {
            let b = random_dominant(&d, &mut rng);
            let x = d.scaled_shifted(&b).unwrap();
            let base = m_of_scaled(&d, &x);
            let mut y = x.clone();
            // random permutation
            for i in (1..y.len()).rev() {
                let j = rng.gen_range(0..=i);
                y.swap(i, j);
            }
            let mut flips: Vec<bool> = (0..y.len()).map(|_| rng.gen_bool(0.5)).collect();
            match signs {
                SignChanges::None => flips.iter_mut().for_each(|f| *f = false),
                SignChanges::Even => {
                    if flips.iter().filter(|&&f| f).count() % 2 == 1 {
                        flips[0] = !flips[0];
                    }
                }
                SignChanges::All => {}
            }
            for (v, f) in y.iter_mut().zip(&flips) {
                if *f {
                    *v = -*v;
                }
            }
            assert_eq!(m_of_scaled(&d, &y), base, "{grp} {x:?} -> {y:?}");
        }
    }
}

#[test]
fn multiplicity_vanishes_on_walls() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for grp in all_groups(8) {
        let d = build_group_data(&grp).unwrap();
        if d.positive_root_count() == 0 {
            continue;
        }
        for _ in 0..50 {
            let mut x: Vec<i64> = (0..d.coords).map(|_| rng.gen_range(-20..20)).collect();
            let i = rng.gen_range(0..d.coords);
            if d.coords == 1 {
                x[0] = 0;
                assert!(m_of_scaled(&d, &x).is_zero(), "{grp} {x:?}");
                continue;
            }
            let mut j = rng.gen_range(0..d.coords);
            if j == i {
                j = (i + 1) % d.coords;
            }
            match rng.gen_range(0..3) {
                0 => x[j] = x[i],
                1 if grp.family().sign_changes(grp.n()) != SignChanges::None => x[j] = -x[i],
                2 if grp.family().sign_changes(grp.n()) == SignChanges::All => x[i] = 0,
                _ => x[j] = x[i],
            }
            assert!(m_of_scaled(&d, &x).is_zero(), "{grp} {x:?}");
        }
    }
}

#[test]
fn volume_examples() {
    let u2 = group_volume(&g("U", 2)).unwrap();
    assert_eq!(u2.q, r(1, 1));
    let expect = two_pi_pow(3);
    assert!((u2.vol_times_q() - expect).abs() / expect < 1e-14);
    assert!((u2.tabulated_volume() - expect).abs() / expect < 1e-14);

    let so3 = group_volume(&g("SO", 3)).unwrap();
    assert_eq!(so3.q, r(1, 2));
    let eight_pi_sq = 8.0 * std::f64::consts::PI.powi(2);
    assert!((so3.vol_float - eight_pi_sq).abs() / eight_pi_sq < 1e-14);
    // the tabulated Q disagrees with the root-list product here
    assert_eq!(so3.tabulated_q, r(3, 2));
}

#[test]
fn volume_symbolic_matches_float() {
    for grp in all_groups(12) {
        let v = group_volume(&grp).unwrap();
        let sym = v.volume.to_f64();
        assert!((sym - v.vol_float).abs() / v.vol_float < 1e-12, "{grp}");
    }
}

#[test]
fn volume_tables_agree_where_conventions_match() {
    // SO(N) and U(N): tabulated Vol·Q equals the direct route
    for n in 2..=12 {
        for name in ["SO", "U"] {
            let v = group_volume(&g(name, n)).unwrap();
            let t = v.tabulated_vol_times_q.to_f64();
            assert!((v.vol_times_q() - t).abs() / t < 1e-12, "{name}({n})");
        }
    }
    // SU(N): the table's factor N is the lattice index, the metric covolume gives √N
    for n in 2..=8 {
        let v = group_volume(&g("SU", n)).unwrap();
        let ratio = v.tabulated_vol_times_q.to_f64() / v.vol_times_q();
        assert!((ratio - (n as f64).sqrt()).abs() < 1e-12, "SU({n})");
    }
    // Spin(N) is a double cover of SO(N)
    for n in 3..=12 {
        let spin = group_volume(&g("Spin", n)).unwrap();
        let so = group_volume(&g("SO", n)).unwrap();
        assert!((spin.vol_float / so.vol_float - 2.0).abs() < 1e-12);
        assert_eq!(spin.q, so.q);
    }
}

#[test]
fn lattice_descriptions_mention_cosets() {
    let d = build_group_data(&g("Spin", 5)).unwrap();
    assert!(d.lattice_description().contains("1/2"));
    let d = build_group_data(&g("SU", 3)).unwrap();
    assert!(d.lattice_description().contains("trace-zero"));
}

#[test]
fn group_id_serde() {
    let s = serde_json::to_string(&g("Spin", 5)).unwrap();
    assert_eq!(s, r#"{"family":"Spin","N":5}"#);
    let back: GroupId = serde_json::from_str(&s).unwrap();
    assert_eq!(back, g("Spin", 5));
}
