use fibdir::golden::GoldenNum;
use fibdir::sequences::{
    d_stream, delta_exact, fib_word_stream, frac_beta, seq_range, seq_term, step_long, step_short, FibRoute, SeqId,
};
use fibdir::zeckendorf::{tau_shift, TauVariant};
use proptest::prelude::*;
use rug::Rational;

// First 30 terms, from an independent greedy expansion in Python.
const D: [i64; 30] = [
    0, 1, 2, 0, 1, 0, 1, 2, 0, 1, 2, 0, 1, 0, 1, 2, 0, 1, 0, 1, 2, 0, 1, 2, 0, 1, 0, 1, 2, 0,
];
const F: [i64; 30] = [
    0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0,
];
const S: [i64; 30] = [
    -1, 2, -1, -1, 1, -1, 2, -1, -1, 2, -1, -1, 1, -1, 2, -1, -1, 1, -1, 2, -1, -1, 2, -1, -1, 1, -1, 2, -1, -1,
];

fn q(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

#[test]
fn prefixes_match_frozen_values() {
    assert_eq!(seq_range(SeqId::D, 1, 30).unwrap(), D);
    assert_eq!(seq_range(SeqId::F, 1, 30).unwrap(), F);
    assert_eq!(seq_range(SeqId::S, 1, 30).unwrap(), S);
    let h: Vec<i64> = (0..29).map(|i| F[i] - F[i + 1]).collect();
    assert_eq!(seq_range(SeqId::H, 1, 29).unwrap(), h);
    let r: Vec<i64> = D.iter().map(|&d| [0, 1, -1][d as usize]).collect();
    assert_eq!(seq_range(SeqId::R, 1, 30).unwrap(), r);
    let t: Vec<i64> = r.iter().map(|x| 1 - x).collect();
    assert_eq!(seq_range(SeqId::T, 1, 30).unwrap(), t);
}

#[test]
fn exact_delta_values() {
    // Computed with Python fractions from δ(n) = (1/√5) Σ ε_j β^{j+2}.
    let cases = [
        (1, q(1, 5), q(3, 5)),
        (2, q(3, 5), q(4, 5)),
        (3, q(4, 5), q(7, 5)),
        (4, q(1, 1), q(2, 1)),
        (7, q(2, 1), q(3, 1)),
        (12, q(16, 5), q(28, 5)),
        (100, q(138, 5), q(224, 5)),
        (1000, q(1382, 5), q(2236, 5)),
    ];
    for (n, x, y) in cases {
        assert_eq!(delta_exact(n).unwrap().delta, GoldenNum::new(x, y), "n = {n}");
    }
    assert!(delta_exact(0).is_err());
}

#[test]
fn routes_agree_on_long_prefix() {
    let a = fib_word_stream(FibRoute::Automaton, 100_000);
    for route in [FibRoute::Coding, FibRoute::Morphism, FibRoute::Predecessor] {
        assert_eq!(fib_word_stream(route, 100_000), a, "{route:?}");
    }
}

#[test]
fn d_stream_matches_terms() {
    let ds = d_stream(5000);
    for (i, &d) in ds.iter().enumerate() {
        assert_eq!(d as i64, seq_term(SeqId::D, i as u64 + 1).unwrap());
    }
}

#[test]
fn densities_of_d_classes() {
    let ds = d_stream(1_000_000);
    let frac = |k: u8| ds.iter().filter(|&&d| d == k).count() as f64 / ds.len() as f64;
    let ib = 1.0 / fibdir::golden::BETA_F64;
    assert!((frac(0) - (1.0 - ib)).abs() < 1e-5);
    assert!((frac(1) - (1.0 - ib)).abs() < 1e-5);
    assert!((frac(2) - (ib - ib * ib)).abs() < 1e-5);
}

proptest! {
    #[test]
    fn delta_increments_and_conjugate(n in 1u64..10_000_000_000) {
        let a = delta_exact(n).unwrap();
        let b = delta_exact(n + 1).unwrap();
        let step = &b.delta - &a.delta;
        prop_assert!(step == step_long() || step == step_short());
        // n = δ(n) − δ′(n)
        prop_assert_eq!(&a.delta - &a.delta_prime, GoldenNum::from_rational(n));
        prop_assert_eq!(a.delta_prime.clone(), -a.delta.conj());
        let bound = (&GoldenNum::beta() * &GoldenNum::sqrt5()).inverse().unwrap();
        prop_assert!(a.delta_prime.abs() < bound);
    }

    #[test]
    fn shifts_scale_delta(n in 1u64..1_000_000_000) {
        let d = delta_exact(n).unwrap().delta;
        let t0 = delta_exact(tau_shift(n, TauVariant::Shift).unwrap()).unwrap().delta;
        let t1 = delta_exact(tau_shift(n, TauVariant::ShiftPlusOne).unwrap()).unwrap().delta;
        prop_assert_eq!(t0, &GoldenNum::beta() * &d);
        prop_assert_eq!(t1, &(&GoldenNum::beta() * &d) + &step_long());
    }

    #[test]
    fn fractional_part_in_unit_interval(n in 1u64..1_000_000_000) {
        let f = frac_beta(n).unwrap();
        prop_assert!(f.signum() > 0 && f < GoldenNum::one());
        let x = (n as f64 * fibdir::golden::BETA_F64).fract();
        prop_assume!(x > 1e-6 && x < 1.0 - 1e-6);
        prop_assert!((f.to_f64() - x).abs() < 1e-6);
    }

    #[test]
    fn range_matches_pointwise(from in 1u64..1_000_000_000_000, len in 1u64..40) {
        for id in SeqId::ALL {
            let v = seq_range(id, from, from + len - 1).unwrap();
            for (k, x) in v.iter().enumerate() {
                prop_assert_eq!(*x, seq_term(id, from + k as u64).unwrap());
            }
        }
    }
}
