//! Checks that evaluate the Dirichlet series numerically.

use super::{fmt_bounded, fmt_c, fmt_f64, Entry, Report, Status, SuiteParams};
use crate::bigfloat::BigFloatComplex;
use crate::dirichlet::{f_upper_bound, pole_zeros, EvalResult, Evaluator, PoleLine, SeriesId};
use crate::error::{Error, Result};
use crate::golden::GoldenNum;
use crate::sequences::{step_long, step_short};

const BETA_OVER_SQRT5: f64 = 0.723_606_797_749_979;

/// Points where the identities between the series are compared.
pub const PROBE_POINTS: [(f64, f64); 5] = [(2.0, 0.0), (2.5, 0.0), (3.0, 0.0), (2.0, 1.0), (2.5, 2.0)];
/// Points for the recursion for `F`, inside the strip `1 < Re(s) < 2`.
pub const RECURSION_POINTS: [(f64, f64); 2] = [(1.5, 0.0), (1.2, 0.0)];

/// `Σ_{m ≥ m_from} (β/√5)^m binom(−s,m) F(s+m)` for `Re(s) > 1`, with its
/// error bound.
pub fn shifted_binomial_sum(
    ev: &Evaluator,
    s: &BigFloatComplex,
    m_from: usize,
    tol: f64,
) -> Result<(BigFloatComplex, f64)> {
    let sigma = s.re_f64();
    if sigma <= 1.0 {
        return Err(Error::Domain("the shifted sum is evaluated for Re(s) > 1".into()));
    }
    let prec = ev.precision();
    let q = GoldenNum::beta().checked_div(&GoldenNum::sqrt5())?.to_float(prec);
    let s_abs = s.abs_f64();
    let mut w = BigFloatComplex::one(prec);
    let mut sum = BigFloatComplex::zero(prec);
    let mut err = 0.0;
    for m in 0..=crate::dirichlet::MAX_M {
        if m > 0 {
            w = w
                .mul(&s.neg().add_f64(-(m as f64 - 1.0)).div_u64(m as u64))
                .mul_real(&q);
        }
        let w_abs = w.abs_f64();
        if m >= m_from && w_abs > 0.0 {
            let tol_m = (tol / (4.0 * w_abs * 2f64.powi(m as i32 + 1))).max(1e-30);
            let fm = ev.direct_to_tol(SeriesId::F, &s.add_f64(m as f64), tol_m.min(1e-3))?;
            sum.add_assign(&w.mul(&fm.value));
            err += w_abs * fm.error_bound;
        }
        let ratio = BETA_OVER_SQRT5 * (s_abs + m as f64 + 1.0) / (m as f64 + 2.0);
        if m >= m_from && ratio < 0.9 {
            let next = w_abs * BETA_OVER_SQRT5 * (s_abs + m as f64) / (m as f64 + 1.0);
            let tail = next * f_upper_bound(sigma + m as f64 + 1.0) / (1.0 - ratio);
            if tail < tol / 4.0 {
                return Ok((sum, err + tail));
            }
        }
    }
    Err(Error::NoConvergence {
        max_terms: crate::dirichlet::MAX_M,
    })
}

/// Largest residual over a set of points, with the point where it occurs.
struct Worst {
    residual: f64,
    bound: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            residual: -1.0,
            bound: 0.0,
            at: String::new(),
        }
    }

    fn update(&mut self, residual: f64, bound: f64, re: f64, im: f64) {
        if residual > self.residual {
            *self = Worst {
                residual,
                bound,
                at: format!("{re}{:+}i", im),
            };
        }
    }

    fn entry(&self, id: &str, claim: &str, tol: f64) -> Entry {
        Entry::within(
            id,
            claim,
            &format!(
                "max residual {:.3e} at s = {} (evaluation error ≤ {:.1e})",
                self.residual, self.at, self.bound
            ),
            "0",
            self.residual,
            tol,
        )
    }
}

pub(super) fn functional_equations(report: &mut Report, params: &SuiteParams, n: u64) -> Result<()> {
    let ev = Evaluator::new(params.precision_bits)?.with_max_terms(n.max(1 << 16));
    let prec = ev.precision();
    let tol = params.tol;
    let one = BigFloatComplex::one(prec);
    report.timed(|| {
        let mut worst: Vec<Worst> = (0..11).map(|_| Worst::new()).collect();
        for &(re, im) in &PROBE_POINTS {
            let s = ev.point(re, im);
            let [f, g, i, j] = ev.direct_sums_fgij(&s, n)?;
            let h = ev.direct_sum(SeriesId::H, &s, n)?;
            let e = |r: &EvalResult| r.error_bound;
            let z = ev.beta_pow_neg(&s);
            let z2 = z.mul(&z);
            let c1 = BigFloatComplex::one(prec).sub(&z2);
            let d1 = s.pow_neg(&crate::sequences::delta_exact(1)?.delta.to_float(prec + 16));
            let zf = z.mul(&f.value);
            let jz = z2.div(&c1).ok_or(Error::DivisionByZero)?;
            let iz = z.div(&c1).ok_or(Error::DivisionByZero)?;

            // F = zF + G (+ δ(1)^{−s} as stated)
            let split = f.value.sub(&zf).sub(&g.value);
            let b_split = 2.0 * e(&f) + e(&g);
            worst[0].update(split.sub(&d1).abs_f64(), b_split, re, im);
            worst[1].update(split.abs_f64(), b_split, re, im);

            // G = H − z²/(1−z²)·G (+ δ(1)^{−s} corrected)
            let gh = g.value.sub(&h.value).add(&jz.mul(&g.value));
            let b_gh = e(&g) * (1.0 + jz.abs_f64()) + e(&h);
            worst[2].update(gh.abs_f64(), b_gh, re, im);
            worst[3].update(gh.sub(&d1).abs_f64(), b_gh, re, im);

            // (1−z)F = (1−z²)H + δ(1)^{−s} as stated; (1−z²)(H + δ(1)^{−s}) corrected
            let lhs = one.sub(&z).mul(&f.value);
            let c1h = c1.mul(&h.value);
            let b_fh = 2.0 * e(&f) + c1.abs_f64() * e(&h);
            worst[4].update(lhs.sub(&c1h).sub(&d1).abs_f64(), b_fh, re, im);
            worst[5].update(lhs.sub(&c1h).sub(&c1.mul(&d1)).abs_f64(), b_fh, re, im);

            // H = z Σ_{m≥0} (β/√5)^m binom(−s,m) F(s+m)
            let (sum, b_sum) = shifted_binomial_sum(&ev, &s, 0, 1e-12)?;
            worst[6].update(h.value.sub(&z.mul(&sum)).abs_f64(), e(&h) + z.abs_f64() * b_sum, re, im);

            // I = z/(1−z²)·G, J = z²/(1−z²)·G
            worst[7].update(
                i.value.sub(&iz.mul(&g.value)).abs_f64(),
                e(&i) + iz.abs_f64() * e(&g),
                re,
                im,
            );
            worst[8].update(
                j.value.sub(&jz.mul(&g.value)).abs_f64(),
                e(&j) + jz.abs_f64() * e(&g),
                re,
                im,
            );

            // P and Q from their K forms against rational multiples of G.
            let one_plus_z = one.add(&z);
            let pg = one.sub(&z).sub(&z2).div(&one_plus_z).ok_or(Error::DivisionByZero)?;
            let qg = z.add(&z2).sub(&one).div(&one_plus_z).ok_or(Error::DivisionByZero)?;
            let p = ev.p_eval(&s, 1e-12)?;
            let q = ev.q_eval(&s, 1e-12)?;
            worst[9].update(
                p.value.sub(&pg.mul(&g.value)).abs_f64(),
                p.error_bound + pg.abs_f64() * e(&g),
                re,
                im,
            );
            worst[10].update(
                q.value.sub(&qg.mul(&g.value)).abs_f64(),
                q.error_bound + qg.abs_f64() * e(&g),
                re,
                im,
            );
        }
        let informational = |mut e: Entry| {
            e.status = Status::Informational;
            e
        };
        Ok(vec![
            worst[0].entry("f_split_as_stated", "F = β^{−s}F + G + δ(1)^{−s}", tol),
            worst[1].entry("f_split_corrected", "F = β^{−s}F + G", tol),
            worst[2].entry("g_from_h_as_stated", "G = H − β^{−2s}/(1−β^{−2s})·G", tol),
            worst[3].entry("g_from_h_corrected", "G = H − β^{−2s}/(1−β^{−2s})·G + δ(1)^{−s}", tol),
            worst[4].entry("f_h_combined_as_stated", "(1−β^{−s})F = (1−β^{−2s})H + δ(1)^{−s}", tol),
            worst[5].entry(
                "f_h_combined_corrected",
                "(1−β^{−s})F = (1−β^{−2s})(H + δ(1)^{−s})",
                tol,
            ),
            worst[6].entry(
                "h_binomial_expansion",
                "H = β^{−s} Σ_{m≥0} (β/√5)^m binom(−s,m) F(s+m)",
                tol,
            ),
            worst[7].entry("i_from_g", "I = β^{−s}/(1−β^{−2s})·G", tol),
            worst[8].entry("j_from_g", "J = β^{−2s}/(1−β^{−2s})·G", tol),
            informational(worst[9].entry("p_from_g", "P = (1−β^{−s}−β^{−2s})/(1+β^{−s})·G", tol)),
            informational(worst[10].entry("q_from_g", "Q = (β^{−s}+β^{−2s}−1)/(1+β^{−s})·G", tol)),
        ])
    })?;
    report.timed(|| {
        let mut stated = Worst::new();
        let mut corrected = Worst::new();
        for &(re, im) in &RECURSION_POINTS {
            let s = ev.point(re, im);
            let f = ev.direct_sum(SeriesId::F, &s, n)?;
            let z = ev.beta_pow_neg(&s);
            let z3 = z.powi(3);
            let den = one.sub(&z.mul_f64(2.0)).add(&z3);
            let pref = z.sub(&z3);
            let (sum, b_sum) = shifted_binomial_sum(&ev, &s, 1, 1e-12)?;
            let d1 = ev.delta1_pow_neg(&s);
            let base = den.mul(&f.value).sub(&pref.mul(&sum));
            let bound = den.abs_f64() * f.error_bound + pref.abs_f64() * b_sum;
            stated.update(base.sub(&d1).abs_f64(), bound, re, im);
            let c = one.sub(&z.mul(&z)).mul(&d1);
            corrected.update(base.sub(&c).abs_f64(), bound, re, im);
        }
        Ok(vec![
            stated.entry(
                "f_recursion_as_stated",
                "(1−2β^{−s}+β^{−3s})F = (β^{−s}−β^{−3s}) Σ_{m≥1} (β/√5)^m binom(−s,m) F(s+m) + δ(1)^{−s}",
                tol,
            ),
            corrected.entry(
                "f_recursion_corrected",
                "(1−2β^{−s}+β^{−3s})F = (β^{−s}−β^{−3s}) Σ_{m≥1} (β/√5)^m binom(−s,m) F(s+m) + (1−β^{−2s})δ(1)^{−s}",
                tol,
            ),
        ])
    })
}

pub(super) fn residues(report: &mut Report, params: &SuiteParams) -> Result<()> {
    let ev = Evaluator::new(params.precision_bits)?;
    let eps = 1e-3;
    let at_one = ev.point(1.0, 0.0);
    for id in SeriesId::ALL {
        report.timed(|| {
            let r = ev.residue_at(id, &at_one, eps)?;
            let expect = id.residue_at_one();
            let err = r
                .value
                .sub(&BigFloatComplex::from_f64(ev.precision(), expect, 0.0))
                .abs_f64();
            Ok(vec![Entry::within(
                &format!("residue_{}", id.to_string().to_lowercase()),
                &format!("{id} has a simple pole at 1 with residue {expect:.7}"),
                &format!("{} (h = {eps:e}, Richardson over h, h/2)", r.value.to_string_digits(12)),
                &format!("{expect:.7}"),
                err,
                1e-2,
            )])
        })?;
    }
    Ok(())
}

pub(super) fn poles(report: &mut Report, params: &SuiteParams) -> Result<()> {
    let prec = params.precision_bits;
    report.timed(|| {
        let pts = pole_zeros(-3, 3, prec);
        let wide = pole_zeros(-4, 4, prec);
        let mut es = Vec::new();
        for line in PoleLine::ALL {
            let worst = pts
                .iter()
                .filter(|p| p.line == line)
                .map(|p| p.residual)
                .fold(0.0f64, f64::max);
            es.push(Entry::within(
                &format!("zeros_{}_line", line.name()),
                "1 − 2β^{−s} + β^{−3s} vanishes on the lattice, k ∈ [−3, 3]",
                &format!("max |denominator| {worst:.3e}"),
                "0",
                worst,
                1e-20,
            ));
        }
        let get = |line, k| pts.iter().find(|p| p.line == line && p.k == k).unwrap();
        let one = get(PoleLine::Inverse, 0);
        let d_one = one.s.sub(&BigFloatComplex::one(prec)).abs_f64();
        es.push(Entry::within(
            "contains_one",
            "s = 1 is a lattice point",
            &fmt_c(&one.s),
            "1",
            d_one,
            1e-30,
        ));
        let two_pi_over_ln = 2.0 * std::f64::consts::PI / crate::golden::BETA_F64.ln();
        for k in [1i64, -1] {
            let p = get(PoleLine::Inverse, k);
            let (re, im) = p.s.to_f64();
            let err = (re - 1.0).abs() + (im - k as f64 * 13.0570).abs();
            es.push(Entry::within(
                &format!("contains_one_{}_13_057i", if k > 0 { "plus" } else { "minus" }),
                "1 ± 2πi/ln β ≈ 1 ± 13.0570i are lattice points",
                &fmt_c(&p.s),
                &fmt_f64(k as f64 * two_pi_over_ln),
                err,
                1e-4,
            ));
        }
        let missing = pts
            .iter()
            .filter(|p| !wide.iter().any(|q| q.s.sub(&p.s.conj()).abs_f64() < 1e-30))
            .count() as u64;
        es.push(Entry::counted(
            "conjugation_closure",
            "the conjugate of every lattice point is a lattice point",
            missing,
            pts.len() as u64,
        ));
        Ok(es)
    })
}

pub(super) fn zeta_relation(report: &mut Report, params: &SuiteParams, n: u64) -> Result<()> {
    let ev = Evaluator::new(params.precision_bits)?.with_max_terms(n.max(1 << 16));
    report.timed(|| {
        let s = ev.point(2.5, 0.0);
        let r = ev.zeta_relation_check(&s, 40, n)?;
        Ok(vec![Entry::within(
            "zeta_minus_f_expansion",
            "ζ(s) − F(s) = Σ_{m≥1} binom(−s,m) Σ_n (−δ′(n))^m δ(n)^{−s−m} at s = 2.5, M = 40",
            &format!("lhs {} ; rhs {}", fmt_c(&r.lhs), fmt_c(&r.rhs)),
            "difference 0",
            r.difference,
            params.tol,
        )])
    })
}

pub(super) fn k_limits(report: &mut Report, params: &SuiteParams) -> Result<()> {
    let ev = Evaluator::new(params.precision_bits)?;
    let s = ev.point(1e-3, 0.0);
    let pairs = [
        ("a1", GoldenNum::one(), step_short()),
        ("abeta", GoldenNum::beta(), step_long()),
    ];
    let inv = crate::golden::beta_pow(-1);
    let limits = [
        &GoldenNum::one() - &inv,
        &GoldenNum::one() - &inv,
        &inv - &crate::golden::beta_pow(-2),
        GoldenNum::one(),
    ];
    for (tag, a, b) in &pairs {
        let q = b.checked_div(a)?;
        let tol = 1e-3 * q.to_f64() * 5.0;
        for (i, lim) in limits.iter().enumerate() {
            report.timed(|| {
                let k = ev.k_eval(i as u8, a, b, &s, 1e-10)?;
                let expect = (&q * lim).to_f64();
                Ok(vec![Entry::within(
                    &format!("k{i}_{tag}_limit"),
                    "K⁽ⁱ⁾_{a,b}(s) tends to (b/a)·density of class i as s → 0",
                    &fmt_bounded(&k.value, k.error_bound),
                    &fmt_f64(expect),
                    (k.re() - expect).abs(),
                    tol,
                )])
            })?;
        }
    }
    report.timed(|| {
        let zero = ev.point(0.0, 0.0);
        let p = ev.p_eval(&zero, 1e-10)?;
        let q = ev.q_eval(&zero, 1e-10)?;
        Ok(vec![
            Entry::within(
                "p_vanishes_at_zero",
                "P(0) = 0",
                &fmt_c(&p.value),
                "0",
                p.value.abs_f64(),
                1e-12,
            ),
            Entry::within(
                "q_vanishes_at_zero",
                "Q(0) = 0",
                &fmt_c(&q.value),
                "0",
                q.value.abs_f64(),
                1e-12,
            ),
        ])
    })
}

/// Points in the critical strip used for the base-independence check.
pub const STRIP_POINTS: [(f64, f64); 10] = [
    (0.1, 0.5),
    (0.2, 3.0),
    (0.3, -2.0),
    (0.4, 7.0),
    (0.5, 0.0),
    (0.6, 1.0),
    (0.7, -5.0),
    (0.8, 10.0),
    (0.9, 2.5),
    (0.5, 20.0),
];

pub(super) fn continuation(report: &mut Report, params: &SuiteParams) -> Result<()> {
    let ev = Evaluator::new(params.precision_bits)?.with_max_terms(1 << 20);
    report.timed(|| {
        let mut worst = 0.0f64;
        let mut at = (0.0, 0.0);
        for &(re, im) in &STRIP_POINTS {
            let s = ev.point(re, im);
            let a = ev.continue_f_with_base(&s, 1e-10, 2.0)?;
            let b = ev.continue_f_with_base(&s, 1e-10, 3.0)?;
            let d = a.value.sub(&b.value).abs_f64();
            if d > worst {
                worst = d;
                at = (re, im);
            }
        }
        Ok(vec![Entry::within(
            "base_independence",
            "the continuation does not depend on where direct sums take over (Re ≥ 2 vs Re ≥ 3)",
            &format!("max difference {worst:.3e} at s = {}{:+}i", at.0, at.1),
            "0",
            worst,
            1e-8,
        )])
    })?;
    report.timed(|| {
        let refused =
            |re: f64, im: f64| matches!(ev.continue_f(&ev.point(re, im), 1e-8), Err(Error::PoleProximity { .. }));
        let ok = refused(1.0, 0.0);
        let two_pi_over_ln = 2.0 * std::f64::consts::PI / crate::golden::BETA_F64.ln();
        let ok_lattice = refused(1.0, two_pi_over_ln);
        Ok(vec![
            Entry::new(
                "pole_refusal_at_one",
                "evaluation at s = 1 is refused as a pole",
                Status::from_ok(ok),
            )
            .values(format!("refused: {ok}"), "refused: true", "exact"),
            Entry::new(
                "pole_refusal_on_lattice",
                "evaluation at 1 + 2πi/ln β is refused as a pole",
                Status::from_ok(ok_lattice),
            )
            .values(format!("refused: {ok_lattice}"), "refused: true", "exact"),
        ])
    })?;
    report.timed(|| {
        let s = ev.point(1.5, 1.0);
        let c = ev.continue_f(&s, 1e-10)?;
        let d = ev.direct_sum(SeriesId::F, &s, 1 << 20)?;
        let diff = c.value.sub(&d.value).abs_f64();
        Ok(vec![Entry::within(
            "continuation_meets_direct_sum",
            "continuation and tail-compensated direct sum agree at s = 1.5 + i",
            &fmt_bounded(&c.value, c.error_bound),
            &fmt_bounded(&d.value, d.error_bound),
            diff,
            1e-8_f64.max(c.error_bound + d.error_bound),
        )])
    })
}
