use fibdir::dirichlet::{denominator, pole_zeros, zeta_ref, Evaluator, PoleLine, SeriesId};
use fibdir::golden::GoldenNum;
use fibdir::{BigFloatComplex, Error};

// Oracles from an independent float computation: greedy Zeckendorf in
// Python, δ(n) for n ≤ 2·10⁶, compensated sums with the leading tail term.
/// `(Re s, Im s, [F, G, H, I, J])`.
type Row = (f64, f64, [(f64, f64); 5]);

const DIRECT: [Row; 3] = [
    (
        3.0,
        0.0,
        [
            (0.842361942479035, 0.0),
            (0.643507262395215, 0.0),
            (0.058426139389790285, 0.0),
            (0.16087681559880376, 0.0),
            (0.0379778644850162, 0.0),
        ],
    ),
    (
        3.0,
        2.0,
        [
            (0.5869253893147351, -0.35397654370650744),
            (0.5763067276295455, -0.19252304864383518),
            (-0.03808326220581657, -0.02401925673645812),
            (0.03268549774486347, -0.13668084403400935),
            (-0.022066836059673838, -0.024772651028662922),
        ],
    ),
    (
        2.5,
        0.0,
        [
            (1.0335738904013048, 0.0),
            (0.7232091123102936, 0.0),
            (0.12070615660389943, 0.0),
            (0.2386901565195184, 0.0),
            (0.07167462157149272, 0.0),
        ],
    ),
];

// F(s) = ζ(s) − Σ_{m≥1} binom(−s,m) Σ_n (−δ′(n))^m δ(n)^{−s−m}, with ζ from
// mpmath and the inner sums in floats; good to about 5·10⁻⁸.
const STRIP: [(f64, f64, f64, f64); 3] = [
    (0.5, 3.0, 0.520454806525883, -0.5120713640659214),
    (0.25, -1.0, -0.012900306473935391, 0.651194235945288),
    (1.5, 0.5, 1.4147058374247783, -1.0209081920850747),
];

fn close(z: &BigFloatComplex, re: f64, im: f64) -> f64 {
    let (a, b) = z.to_f64();
    (a - re).hypot(b - im)
}

#[test]
fn direct_sums_match_float_oracle() {
    let ev = Evaluator::new(128).unwrap();
    for (re, im, vals) in DIRECT {
        let s = ev.point(re, im);
        let tol = if re >= 3.0 { 1e-11 } else { 1e-9 };
        for (id, (a, b)) in SeriesId::ALL.into_iter().zip(vals) {
            let r = ev.direct_to_tol(id, &s, 1e-12).unwrap();
            assert!(
                close(&r.value, a, b) < tol,
                "{id} at {re}+{im}i: {} vs {a}+{b}i",
                r.value
            );
            assert!(r.error_bound <= 1e-12);
        }
    }
}

#[test]
fn continuation_matches_zeta_route() {
    let ev = Evaluator::new(128).unwrap();
    for (re, im, a, b) in STRIP {
        let r = ev.continue_f(&ev.point(re, im), 1e-10).unwrap();
        assert!(close(&r.value, a, b) < 1e-7, "F({re}+{im}i) = {}", r.value);
    }
}

#[test]
fn relations_give_all_series_in_the_strip() {
    // Each of G, H, I, J continued through its relation with F agrees with a
    // direct sum where both apply.
    let ev = Evaluator::new(128).unwrap();
    let s = ev.point(2.2, 1.0);
    for id in SeriesId::ALL {
        let a = ev.relation_value(id, &s, 1e-10).unwrap();
        let b = ev.direct_to_tol(id, &s, 1e-10).unwrap();
        let d = a.value.sub(&b.value).abs_f64();
        assert!(d < 1e-9, "{id}: {d:e}");
    }
}

#[test]
fn conjugate_symmetry() {
    let ev = Evaluator::new(128).unwrap();
    let a = ev.continue_f(&ev.point(0.3, 4.0), 1e-10).unwrap();
    let b = ev.continue_f(&ev.point(0.3, -4.0), 1e-10).unwrap();
    assert!(a.value.sub(&b.value.conj()).abs_f64() < 1e-9);
}

#[test]
fn zeta_reference_matches_mpmath() {
    let z = zeta_ref(&BigFloatComplex::from_f64(128, 3.0, 0.0)).unwrap();
    assert!(close(&z, 1.202_056_903_159_594_3, 0.0) < 1e-15);
    let z = zeta_ref(&BigFloatComplex::from_f64(128, 2.5, -3.0)).unwrap();
    assert!(close(&z, 0.859_415_006_216_828_9, 0.099_134_926_365_933_89) < 1e-15);
}

#[test]
fn lattice_point_closed_form() {
    // 1 + 2πik/ln β, k = ±1, from mpmath.
    let pts = pole_zeros(-1, 1, 128);
    let p = pts.iter().find(|p| p.line == PoleLine::Inverse && p.k == 1).unwrap();
    assert!(close(&p.s, 1.0, 13.057_005_210_545_988) < 1e-12);
    assert!(denominator(&p.s).abs_f64() < 1e-30);
    assert_eq!(pts.len(), 9);
}

#[test]
fn p_at_one_has_the_corrected_closed_form() {
    // √5 β⁻⁴ ln β, from mpmath.
    let ev = Evaluator::new(128).unwrap();
    let p = ev.p_eval(&ev.point(1.0, 0.0), 1e-10).unwrap();
    assert!(close(&p.value, 0.156_989_545_488_009_48, 0.0) < 1e-9);
    let q = ev.q_eval(&ev.point(1.0, 0.0), 1e-10).unwrap();
    assert!(close(&q.value, -0.156_989_545_488_009_48, 0.0) < 1e-9);
}

#[test]
fn k_series_sum_of_classes() {
    let ev = Evaluator::new(128).unwrap();
    let (a, b) = (GoldenNum::one(), "2/5:1/5".parse::<GoldenNum>().unwrap());
    let s = ev.point(0.7, 2.0);
    let parts: Vec<_> = (0..3).map(|i| ev.k_eval(i, &a, &b, &s, 1e-10).unwrap()).collect();
    let total = ev.k_eval(3, &a, &b, &s, 1e-10).unwrap();
    let sum = parts[0].value.add(&parts[1].value).add(&parts[2].value);
    assert!(sum.sub(&total.value).abs_f64() < 1e-9);
}

#[test]
fn error_paths() {
    let ev = Evaluator::new(128).unwrap();
    assert!(matches!(
        ev.continue_f(&ev.point(1.0, 0.0), 1e-8),
        Err(Error::PoleProximity { .. })
    ));
    assert!(matches!(
        ev.continue_f(&ev.point(-7.0, 0.0), 1e-8),
        Err(Error::Domain(_))
    ));
    let one = GoldenNum::one();
    assert!(matches!(
        ev.k_eval(0, &one, &one, &ev.point(-1.0, 0.0), 1e-8),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        ev.direct_sum(SeriesId::F, &ev.point(0.5, 0.0), 1000),
        Err(Error::Domain(_))
    ));
    assert!(Evaluator::new(16).is_err());
}
