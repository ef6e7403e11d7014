use fibdir::golden::{beta_pow, GoldenNum};
use fibdir::Error;
use proptest::prelude::*;
use rug::Rational;

fn golden() -> impl Strategy<Value = GoldenNum> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
        .prop_map(|(a, b, c, d)| GoldenNum::new(Rational::from((a, b)), Rational::from((c, d))))
}

#[test]
fn beta_satisfies_its_minimal_polynomial() {
    let b = GoldenNum::beta();
    assert_eq!(&(&b * &b) - &b, GoldenNum::one());
    assert_eq!(&GoldenNum::sqrt5() * &GoldenNum::sqrt5(), GoldenNum::from_rational(5));
    assert_eq!(&GoldenNum::sqrt5() * &GoldenNum::inv_sqrt5(), GoldenNum::one());
}

#[test]
fn powers_follow_fibonacci_coefficients() {
    // β^k = F_{k−1} + F_k β
    let fib = [0i64, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
    for k in 1..10 {
        assert_eq!(beta_pow(k as i64), GoldenNum::new(fib[k - 1], fib[k]));
    }
    assert_eq!(beta_pow(-1), GoldenNum::new(-1, 1));
    assert_eq!(&beta_pow(7) * &beta_pow(-7), GoldenNum::one());
}

#[test]
fn float_rendering_is_close() {
    let x = GoldenNum::new(2, 3);
    assert!((x.to_f64() - (2.0 + 3.0 * 1.618_033_988_749_895)).abs() < 1e-14);
    let f = beta_pow(-40).to_float(200);
    assert!((f.to_f64() - 1.618_033_988_749_895f64.powi(-40)).abs() < 1e-22);
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(
        GoldenNum::one().checked_div(&GoldenNum::zero()),
        Err(Error::DivisionByZero)
    );
    assert_eq!(GoldenNum::zero().inverse(), Err(Error::DivisionByZero));
}

#[test]
fn parses_and_prints() {
    let x: GoldenNum = "-2/5:1/5".parse().unwrap();
    assert_eq!(x, GoldenNum::new(Rational::from((-2, 5)), Rational::from((1, 5))));
    assert_eq!(x.to_string(), "-2/5 + 1/5β");
    assert!("a:b".parse::<GoldenNum>().is_err());
}

proptest! {
    #[test]
    fn field_axioms(a in golden(), b in golden(), c in golden()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn inverse_and_division(a in golden(), b in golden()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&b * &b.inverse().unwrap(), GoldenNum::one());
        prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a);
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in golden(), b in golden()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn sign_and_order_agree_with_floats(a in golden(), b in golden()) {
        let (fa, fb) = (a.to_f64(), b.to_f64());
        prop_assume!((fa - fb).abs() > 1e-9);
        prop_assert_eq!(a < b, fa < fb);
        prop_assert_eq!(a.signum(), if fa > 0.0 { 1 } else if fa < 0.0 { -1 } else { 0 });
        prop_assert!((a.abs().to_f64() - fa.abs()).abs() < 1e-9);
    }

    #[test]
    fn integer_powers(a in golden(), j in -6i64..6, k in -6i64..6) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a.pow(j).unwrap() * &a.pow(k).unwrap(), a.pow(j + k).unwrap());
    }
}
