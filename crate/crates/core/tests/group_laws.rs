use num_complex::Complex64;
use proptest::prelude::*;
use wavenum::{MultWave, PeriodicSeq, Rational, Tolerance};

fn rational(max_den: i64) -> impl Strategy<Value = Rational> {
    (-200i64..200, 1..=max_den).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn wave() -> impl Strategy<Value = MultWave> {
    (rational(64), rational(64)).prop_map(|(f, g)| MultWave::new(f, g))
}

fn tight() -> Tolerance {
    Tolerance::uniform(1e-12).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn product_associative(a in wave(), b in wave(), c in wave()) {
        prop_assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
    }

    #[test]
    fn product_commutative(a in wave(), b in wave()) {
        prop_assert_eq!(a.product(&b), b.product(&a));
    }

    #[test]
    fn identity_and_inverse(a in wave()) {
        prop_assert_eq!(a.product(&MultWave::identity()), a.clone());
        prop_assert_eq!(a.product(&a.inverse()), MultWave::identity());
        prop_assert_eq!(a.quotient(&a), MultWave::identity());
    }

    #[test]
    fn sampling_is_a_homomorphism(a in wave(), b in wave()) {
        let exact = a.product(&b).sample().unwrap();
        let sampled = a.sample().unwrap().ew_product(&b.sample().unwrap());
        prop_assert!(exact.approx_eq(&sampled, &tight()));
        let inv = a.inverse().sample().unwrap();
        prop_assert!(inv.approx_eq(&a.sample().unwrap().inverse().unwrap(), &tight()));
    }

    #[test]
    fn period_is_frequency_denominator(a in wave()) {
        let s = a.sample().unwrap();
        prop_assert_eq!(s.period(), a.period_usize().unwrap());
        prop_assert_eq!(s.reduce_period(&tight()).period(), s.period());
    }

    #[test]
    fn roots_power_back(a in wave(), n in 1u64..12) {
        let r = a.root(n).unwrap();
        let mut acc = MultWave::identity();
        for _ in 0..n {
            acc = acc.product(&r);
        }
        prop_assert!(acc.same_sequence(&a));
    }

    #[test]
    fn prime_factors_recombine(a in wave()) {
        let parts = a.factor_period_prime().unwrap();
        let back = parts.iter().fold(MultWave::identity(), |acc, p| acc.product(p));
        prop_assert!(back.same_sequence(&a));
    }

    #[test]
    fn text_round_trip(a in wave()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<MultWave>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultWave>(&json).unwrap(), a);
    }
}

#[test]
fn quarter_wave_samples() {
    let s = "w(1/4,0)".parse::<MultWave>().unwrap().sample().unwrap();
    let expected = PeriodicSeq::new(vec![
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(1.0, 0.0),
    ])
    .unwrap();
    assert!(s.max_abs_diff(&expected) < 1e-12);
}
