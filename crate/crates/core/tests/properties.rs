mod common;

use common::{frac, q};
use num_traits::Zero;
use proptest::prelude::*;
use tiltstab::rational::{format_rational, parse_rational};
use tiltstab::{
    central_charge, deg_st, destabilizer_shape_report, enumerate_destabilizers, rank_s, slope_cmp,
    standard_class, twist, wall, wall_polynomial, EnumerateOptions, Geometry, NumericalClass,
    Phase, SlopeOrdering, StandardClass, TiltPoint, Wall, WallSide, Q,
};

fn rational() -> impl Strategy<Value = Q> {
    (-400i64..=400, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn class() -> impl Strategy<Value = NumericalClass> {
    (-6i64..=6, rational(), rational()).prop_map(|(r, c, ch)| NumericalClass::new(r, c, ch))
}

fn geometry() -> impl Strategy<Value = Geometry> {
    (1i64..=120).prop_map(|hn| Geometry::surface(hn).unwrap())
}

fn tilt_point() -> impl Strategy<Value = TiltPoint> {
    (-24i64..=24, 1i64..=8, 1i64..=60, 1i64..=30)
        .prop_map(|(sn, sd, tn, td)| TiltPoint::new(frac(sn, sd), frac(tn, td)).unwrap())
}

proptest! {
    #[test]
    fn charge_is_additive(a in class(), b in class(), p in tilt_point(), g in geometry()) {
        let za = central_charge(&a, &p, &g);
        let zb = central_charge(&b, &p, &g);
        let zab = central_charge(&(&a + &b), &p, &g);
        prop_assert_eq!(zab.re, za.re + zb.re);
        prop_assert_eq!(zab.im_over_t, za.im_over_t + zb.im_over_t);
    }

    #[test]
    fn twist_is_a_homomorphism(a in class(), b in class(), m in -5i64..=5, n in -5i64..=5, g in geometry()) {
        prop_assert_eq!(
            twist(&(&a + &b), m, &g).unwrap(),
            twist(&a, m, &g).unwrap() + twist(&b, m, &g).unwrap()
        );
        prop_assert_eq!(twist(&twist(&a, m, &g).unwrap(), n, &g).unwrap(), twist(&a, m + n, &g).unwrap());
        // Twisting by mH shifts the tilt parameter by m.
        let p = TiltPoint::new(frac(1, 3), frac(1, 5)).unwrap();
        let shifted = TiltPoint::new(p.s() + q(m), p.tau().clone()).unwrap();
        let t = twist(&a, m, &g).unwrap();
        prop_assert_eq!(rank_s(&t, shifted.s(), &g), rank_s(&a, p.s(), &g));
        prop_assert_eq!(deg_st(&t, &shifted, &g), deg_st(&a, &p, &g));
    }

    #[test]
    fn slope_order_is_scale_invariant(a in class(), b in class(), n in 1i64..=7, p in tilt_point(), g in geometry()) {
        prop_assert_eq!(slope_cmp(&(n * &a), &b, &p, &g), slope_cmp(&a, &b, &p, &g));
    }

    #[test]
    fn seesaw(a in class(), b in class(), p in tilt_point(), g in geometry()) {
        // With both charges strictly in the upper half plane, a vs b decides
        // a vs a + b and a + b vs b the same way.
        let (za, zb) = (central_charge(&a, &p, &g), central_charge(&b, &p, &g));
        prop_assume!(za.im_over_t > Q::zero() && zb.im_over_t > Q::zero());
        let ab = &a + &b;
        let o = slope_cmp(&a, &b, &p, &g).as_ordering();
        prop_assert_eq!(slope_cmp(&a, &ab, &p, &g).as_ordering(), o);
        prop_assert_eq!(slope_cmp(&ab, &b, &p, &g).as_ordering(), o);
    }

    #[test]
    fn wall_coefficients(a in class(), b in class(), g in geometry()) {
        let poly = wall_polynomial(&a, &b, &g);
        prop_assert_eq!(&poly.s2, &poly.tau);
        prop_assert!(poly.s3.is_zero() && poly.s_tau.is_zero());
    }

    #[test]
    fn wall_pencil_invariance(a in class(), b in class(), m in -4i64..=4, g in geometry()) {
        prop_assert_eq!(wall(&a, &b, &g), wall(&(&a + &(m * &b)), &b, &g));
        prop_assert_eq!(wall(&a, &b, &g), wall(&b, &a, &g));
    }

    #[test]
    fn points_on_a_wall_have_equal_slopes(a in class(), b in class(), g in geometry(), u in 1i64..=9) {
        if let Wall::Circle { center, radius_sq } = wall(&a, &b, &g) {
            // (center + δ, radius² − δ²) with δ² < radius².
            let delta = frac(u, 10) * radius_sq.clone().min(q(1));
            let tau = &radius_sq - &delta * &delta;
            prop_assume!(tau > Q::zero());
            let p = TiltPoint::new(&center + &delta, tau).unwrap();
            let ord = slope_cmp(&a, &b, &p, &g);
            prop_assert!(
                matches!(ord, SlopeOrdering::Equal | SlopeOrdering::ZeroCharge(_) | SlopeOrdering::MaximalPhase(_)),
                "{:?}", ord
            );
            prop_assert_eq!(tiltstab::side(&a, &b, &p, &g), WallSide::On);
        }
    }

    #[test]
    fn rational_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn class_and_point_round_trip(c in class(), p in tilt_point()) {
        prop_assert_eq!(c.to_string().parse::<NumericalClass>().unwrap(), c);
        prop_assert_eq!(p.to_string().parse::<TiltPoint>().unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn thaddeus_candidates_shrink_as_tau_grows(hn in 1i64..=60, a in 1i64..=40, b in 1i64..=40) {
        let g = Geometry::surface(hn).unwrap();
        let th = standard_class(StandardClass::Thaddeus, &g);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let t_small = frac(lo, 160);
        let t_big = frac(hi, 160);
        let at = |tau: &Q| {
            let p = TiltPoint::new(frac(1, 2), tau.clone()).unwrap();
            enumerate_destabilizers(&th, &p, &g, &EnumerateOptions::default()).unwrap()
        };
        let small: Vec<_> = at(&t_small).candidates.into_iter().map(|c| c.class).collect();
        for c in at(&t_big).candidates {
            prop_assert!(small.contains(&c.class), "{} at τ = {} missing at τ = {}", c.class, t_big, t_small);
        }
    }

    #[test]
    fn shape_report_matches_enumeration(hn in 1i64..=60, n in 1i64..=120) {
        let g = Geometry::surface(hn).unwrap();
        let th = standard_class(StandardClass::Thaddeus, &g);
        let tau = frac(n, 480);
        let p = TiltPoint::new(frac(1, 2), tau.clone()).unwrap();
        let found = enumerate_destabilizers(&th, &p, &g, &EnumerateOptions::default()).unwrap();
        prop_assert!(found.candidates.iter().all(|c| c.phase == Phase::Finite));
        let mut engine: Vec<_> = found.candidates.into_iter().map(|c| c.class).collect();
        let rows = destabilizer_shape_report(&th, &g, 12).unwrap();
        let mut shaped: Vec<_> = rows.iter().flat_map(|r| r.classes_at(&tau, &g)).collect();
        let key = |c: &NumericalClass| (c.r, c.c1h.clone(), -c.ch2h.clone());
        engine.sort_by_key(key);
        shaped.sort_by_key(key);
        prop_assert_eq!(engine, shaped);
    }
}
