use std::time::Instant;

use num_complex::Complex64;
use proptest::prelude::*;
use wavenum::polar::{
    amplitude_recursive, diff2_polar, diff_via_products, direct_sum, polar_decompose_sum, sum2_polar,
    sum_via_products, LogPhase,
};
use wavenum::{MultWave, PeriodicSeq, Tolerance};

fn wave() -> impl Strategy<Value = MultWave> {
    (-60i64..60, 1i64..=24, -60i64..60, 1i64..=24).prop_map(|(a, b, c, d)| MultWave::from_ints(a, b, c, d).unwrap())
}

fn nonzero_seq() -> impl Strategy<Value = PeriodicSeq> {
    prop::collection::vec((0.05..4.0f64, -3.2..3.2f64), 1..=6)
        .prop_map(|v| PeriodicSeq::new(v.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect()).unwrap())
}

fn coeff() -> impl Strategy<Value = PeriodicSeq> {
    prop::collection::vec((0.2..2.0f64, -3.0..3.0f64), 1..=3)
        .prop_map(|v| PeriodicSeq::new(v.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect()).unwrap())
}

fn one() -> PeriodicSeq {
    PeriodicSeq::constant(Complex64::new(1.0, 0.0))
}

/// Periods dividing 12 keep combined periods small.
fn small_wave() -> impl Strategy<Value = MultWave> {
    (-30i64..30, prop::sample::select(vec![1i64, 2, 3, 4, 6, 12]), -30i64..30, 1i64..=16)
        .prop_map(|(a, b, c, d)| MultWave::from_ints(a, b, c, d).unwrap())
}

/// Element-wise gap between `|A|` from the recursion and `|direct ⊘ exp(iΣF/N)|`.
fn amplitude_gap(terms: &[(PeriodicSeq, MultWave)]) -> Option<f64> {
    let logs: Vec<LogPhase> = terms.iter().map(|(c, w)| LogPhase::from_term(c, w).unwrap()).collect();
    let rec = amplitude_recursive(&logs).ok()?;
    let direct = direct_sum(terms).unwrap();
    let n = logs.len() as f64;
    Some(
        (1..=rec.period() as i64)
            .map(|xi| {
                let sum_f: Complex64 = logs.iter().map(|l| l.value.at(xi)).sum();
                let carrier = (Complex64::i() * sum_f / n).exp();
                (rec.at(xi).norm() - (direct.at(xi) / carrier).norm()).abs()
            })
            .fold(0.0, f64::max),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_term_sum_reconstructs(a in wave(), b in wave()) {
        let direct = a.sample().unwrap().ew_sum(&b.sample().unwrap());
        prop_assert!(sum2_polar(&a, &b).unwrap().reconstruct().unwrap().max_abs_diff(&direct) < 1e-9);
        let diff = a.sample().unwrap().ew_difference(&b.sample().unwrap());
        prop_assert!(diff2_polar(&a, &b).unwrap().reconstruct().unwrap().max_abs_diff(&diff) < 1e-9);
    }

    #[test]
    fn product_form_matches_elementwise(a in nonzero_seq(), b in nonzero_seq()) {
        let sum = a.ew_sum(&b);
        let via = sum_via_products(&a, &b).unwrap();
        let diff = a.ew_difference(&b);
        let via_d = diff_via_products(&a, &b).unwrap();
        let n = sum.period() as i64;
        for xi in 1..=n {
            let scale = a.at(xi).norm() + b.at(xi).norm();
            prop_assert!((via.at(xi) - sum.at(xi)).norm() <= 1e-12 * scale);
            prop_assert!((via_d.at(xi) - diff.at(xi)).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn decomposition_reconstructs(ws in prop::collection::vec(small_wave(), 1..6)) {
        let terms: Vec<_> = ws.into_iter().map(|w| (one(), w)).collect();
        let p = polar_decompose_sum(&terms).unwrap();
        let direct = direct_sum(&terms).unwrap();
        prop_assert!(p.reconstruct().unwrap().max_abs_diff(&direct) < 1e-9);
    }

    #[test]
    fn recursion_matches_direct_amplitude(
        ws in prop::collection::vec(small_wave(), 2..=6),
        cs in prop::collection::vec(coeff(), 6),
    ) {
        let terms: Vec<_> = ws.into_iter().zip(cs).map(|(w, c)| (c, w)).collect();
        if let Some(gap) = amplitude_gap(&terms) {
            prop_assert!(gap < 1e-6, "gap {gap}");
        }
    }
}

#[test]
fn eight_term_recursion_is_fast() {
    let ws = ["w(1/3,0)", "w(1/4,1/5)", "w(2/5,0)", "w(1/6,1/7)", "w(0,1/3)", "w(3/4,1/9)", "w(1/2,1/11)", "w(5/6,1/13)"];
    let terms: Vec<_> = ws
        .iter()
        .enumerate()
        .map(|(j, s)| (PeriodicSeq::constant(Complex64::new(1.0 + 0.13 * j as f64, 0.0)), s.parse::<MultWave>().unwrap()))
        .collect();
    let start = Instant::now();
    let gap = amplitude_gap(&terms).expect("no vanishing subset");
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert!(gap < 1e-6);
}

#[test]
fn decomposed_amplitude_is_zero_where_sum_cancels() {
    let terms: Vec<_> = ["w(0,0)", "w(0,1/3)", "w(0,2/3)"].iter().map(|s| (one(), s.parse().unwrap())).collect();
    let p = polar_decompose_sum(&terms).unwrap();
    assert!(p.amplitude.approx_eq(&PeriodicSeq::zeros(1), &Tolerance::default()));
}
