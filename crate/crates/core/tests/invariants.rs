mod common;

use hecke_core::afe::{AfeConfig, AfeEngine};
use hecke_core::gauss::{factorize, gcd, inv_mod, GaussInt, ResidueSystem};
use hecke_core::hecke::{delta_coeff, CoeffMap};
use hecke_core::kloosterman::{kloosterman_direct, KloostermanQuery};
use num_complex::Complex64;
use proptest::prelude::*;

fn gi(bound: i64) -> impl Strategy<Value = GaussInt> {
    (-bound..=bound, -bound..=bound).prop_map(|(a, b)| GaussInt::new(a, b))
}

fn nonzero(bound: i64) -> impl Strategy<Value = GaussInt> {
    gi(bound).prop_filter("nonzero", |z| !z.is_zero())
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in gi(10_000), b in gi(10_000)) {
        prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn division_remainder_is_small(a in gi(1_000_000), b in nonzero(5_000)) {
        let (q, r) = a.div_rem(b);
        prop_assert_eq!(q * b + r, a);
        prop_assert!(2 * r.norm() <= b.norm());
    }

    #[test]
    fn gcd_divides_and_is_canonical(a in nonzero(3_000), b in nonzero(3_000)) {
        let g = gcd(a, b).unwrap();
        prop_assert!(a.divisible_by(g) && b.divisible_by(g));
        prop_assert_eq!(g, g.canonical());
        prop_assert_eq!(gcd(a.exact_div(g), b.exact_div(g)).unwrap(), GaussInt::new(1, 0));
    }

    #[test]
    fn inverse_is_an_inverse(a in gi(500), m in nonzero(60)) {
        match inv_mod(a, m) {
            Ok(inv) => prop_assert!((a * inv - GaussInt::new(1, 0)).divisible_by(m)),
            Err(_) => prop_assert!(!gcd(a, m).map(|g| g.is_unit()).unwrap_or(false)),
        }
    }

    #[test]
    fn factorization_reconstructs(a in nonzero(100_000)) {
        let f = factorize(a).unwrap();
        prop_assert_eq!(f.reconstruct(), a);
        prop_assert!(f.unit.is_unit());
    }

    #[test]
    fn residue_system_is_complete(m in nonzero(12)) {
        let rs = ResidueSystem::new(m).unwrap();
        let mut seen = std::collections::HashSet::new();
        for x in -20i64..20 {
            for y in -20i64..20 {
                let r = rs.reduce(GaussInt::new(x, y));
                prop_assert!((GaussInt::new(x, y) - r).divisible_by(m));
                seen.insert(r);
            }
        }
        prop_assert_eq!(seen.len() as u64, m.norm());
    }

    #[test]
    fn hecke_coefficients_are_multiplicative(d in -12i64..=12, m in 1u64..3_000, n in 1u64..3_000) {
        prop_assume!(num_gcd(m, n) == 1);
        let lhs = delta_coeff(d, m * n);
        prop_assert!((lhs - delta_coeff(d, m) * delta_coeff(d, n)).abs() < 1e-9 * (1.0 + lhs.abs()));
        prop_assert!((delta_coeff(d, n) - delta_coeff(-d, n)).abs() < 1e-12);
    }

    #[test]
    fn kloosterman_symmetries(a in gi(60), b in gi(60), g in nonzero(14)) {
        let s = |alpha, beta| kloosterman_direct(KloostermanQuery { alpha, beta, gamma: g }).unwrap().value;
        let v = s(a, b);
        prop_assert!((v - s(b, a)).abs() < 1e-9);
        prop_assert!((v - s(-a, -b)).abs() < 1e-9);
        // shifting by a multiple of the modulus changes nothing
        prop_assert!((v - s(a + g * GaussInt::new(3, -1), b)).abs() < 1e-9);
    }

    #[test]
    fn coeff_map_json_round_trip(vals in prop::collection::vec((gi(20), -5.0f64..5.0, -5.0f64..5.0), 0..12)) {
        let mut a = CoeffMap::new(800);
        for (k, re, im) in vals {
            if !k.is_zero() {
                a.insert(k, Complex64::new(re, im)).unwrap();
            }
        }
        let back = CoeffMap::from_json(&a.to_json(), Some(800)).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn brute_kloosterman_matches_on_small_moduli() {
    for g in [(1, 1), (2, 0), (2, 1), (3, 0), (1, 3), (2, 3), (4, 1)] {
        for (a, b) in [((1, 0), (1, 0)), ((2, 1), (0, 3)), ((0, 0), (5, -2))] {
            let q = KloostermanQuery {
                alpha: GaussInt::new(a.0, a.1),
                beta: GaussInt::new(b.0, b.1),
                gamma: GaussInt::new(g.0, g.1),
            };
            let lib = kloosterman_direct(q).unwrap().value;
            let want = common::kloosterman_brute(a, b, g);
            assert!((lib - want.re).abs() < 1e-9 && want.im.abs() < 1e-9, "{q:?}: {lib} vs {want}");
        }
    }
}

#[test]
fn afe_matches_euler_maclaurin_oracle_on_the_line() {
    let engine = AfeEngine::new(AfeConfig { k: 2, ..AfeConfig::default() }).unwrap();
    for t in [15.0, 25.0, 35.0] {
        let s = common::c(0.5, t);
        let want = common::zeta(s) * common::l_chi4(s);
        let got = engine.eval(0, s).unwrap().value;
        // the error is absolute; t = 25 sits next to a zero
        assert!((got - want).norm() < 1e-2, "t={t}: {got} vs {want}");
    }
}

#[test]
fn hurwitz_oracle_sanity() {
    // zeta(2) and Catalan's constant
    let z2 = common::zeta(common::c(2.0, 0.0));
    assert!((z2.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    let catalan = common::l_chi4(common::c(2.0, 0.0));
    assert!((catalan.re - 0.915_965_594_177_219).abs() < 1e-13);
}
