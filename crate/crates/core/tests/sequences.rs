use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;
use wavenum::rational::{combined_period, partial_fractions_mod1, prime_factorize};
use wavenum::{MultWave, PeriodicSeq, Rational, Tolerance};

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn seq(max_period: usize) -> impl Strategy<Value = PeriodicSeq> {
    prop::collection::vec(complex(), 1..=max_period).prop_map(|v| PeriodicSeq::new(v).unwrap())
}

fn wave() -> impl Strategy<Value = MultWave> {
    (-100i64..100, 1i64..=48, -100i64..100, 1i64..=48)
        .prop_map(|(a, b, c, d)| MultWave::from_ints(a, b, c, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn wave_norm_is_one(w in wave()) {
        prop_assert!((w.sample().unwrap().norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn constant_norm_is_modulus(z in complex()) {
        prop_assert_eq!(PeriodicSeq::constant(z).norm(), z.norm());
    }

    #[test]
    fn norm_multiplies_over_coprime_periods(a in seq(9), b in seq(9)) {
        prop_assume!(a.period().gcd(&b.period()) == 1);
        let lhs = a.ew_product(&b).norm();
        prop_assert!((lhs - a.norm() * b.norm()).abs() <= 1e-9 * (1.0 + lhs));
    }

    #[test]
    fn binary_ops_use_combined_period(a in seq(8), b in seq(8)) {
        let s = a.ew_sum(&b);
        prop_assert_eq!(s.period(), a.period().lcm(&b.period()));
        for xi in -20i64..20 {
            prop_assert_eq!(s.at(xi), a.at(xi) + b.at(xi));
        }
    }

    #[test]
    fn ring_laws_elementwise(a in seq(6), b in seq(6), c in seq(6)) {
        let tol = Tolerance::uniform(1e-12).unwrap();
        prop_assert!(a.ew_product(&b.ew_sum(&c)).approx_eq(&a.ew_product(&b).ew_sum(&a.ew_product(&c)), &tol));
        prop_assert!(a.ew_sum(&b).approx_eq(&b.ew_sum(&a), &tol));
        prop_assert!(a.ew_product(&b).ew_product(&c).approx_eq(&a.ew_product(&b.ew_product(&c)), &tol));
    }

    #[test]
    fn quotient_undoes_product(a in seq(6), b in seq(6)) {
        prop_assume!(b.values().iter().all(|v| v.norm() > 1e-3));
        let tol = Tolerance::uniform(1e-9).unwrap();
        prop_assert!(a.ew_product(&b).ew_quotient(&b).unwrap().approx_eq(&a, &tol));
    }

    #[test]
    fn principal_roots_power_back(a in seq(6), n in 1u32..7) {
        let r = a.root_n(n).unwrap();
        let back = r.map(|v| v.powu(n));
        prop_assert!(back.approx_eq(&a, &Tolerance::uniform(1e-9).unwrap()));
        for v in r.values() {
            if v.norm() > 0.0 {
                let arg = v.arg();
                prop_assert!(arg > -std::f64::consts::PI / n as f64 - 1e-12);
                prop_assert!(arg <= std::f64::consts::PI / n as f64 + 1e-12);
            }
        }
    }

    #[test]
    fn reduce_period_keeps_values(v in prop::collection::vec(complex(), 1..5), reps in 1usize..5) {
        let base = PeriodicSeq::new(v).unwrap();
        let long = base.extend_to(base.period() * reps);
        let short = long.reduce_period(&Tolerance::default());
        prop_assert!(short.period() <= base.period());
        for xi in 1..=long.period() as i64 {
            prop_assert_eq!(short.at(xi), long.at(xi));
        }
    }

    #[test]
    fn json_round_trip(a in seq(8)) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<PeriodicSeq>(&text).unwrap(), a);
    }

    #[test]
    fn partial_fractions_sum_back(n in -500i64..500, d in 1i64..2000) {
        let r = Rational::new(n, d).unwrap();
        let parts = partial_fractions_mod1(&r).unwrap();
        let total = parts.iter().fold(Rational::zero(), |acc, p| &acc + p);
        prop_assert!((&total - &r).is_integer());
        for p in &parts {
            let f = prime_factorize(&p.denom().magnitude().clone()).unwrap();
            prop_assert_eq!(f.factors.len(), 1);
        }
    }

    #[test]
    fn combined_period_is_lcm(a in 1u64..500, b in 1u64..500, c in 1u64..500) {
        let got = combined_period(&[a.into(), b.into(), c.into()]).unwrap();
        prop_assert_eq!(got, a.lcm(&b).lcm(&c).into());
    }
}
