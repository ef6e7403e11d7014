//! Continuation of `F` below its abscissa and the relation chain for the
//! other series.
//!
//! With `z = β^{−s}`:
//!
//! `(1 − 2z + z³) F(s) = (z − z³) Σ_{m≥1} (β/√5)^m binom(−s,m) F(s+m) + (1 − z²) δ(1)^{−s}`,
//!
//! and `G = (1−z)F`, `H = F/(1+z) − δ(1)^{−s}`, `I = zF/(1+z)`, `J = z²F/(1+z)`.

use super::{f_upper_bound, memo_key, EvalResult, Evaluator, Method, SeriesId, POLE_THRESHOLD};
use crate::bigfloat::BigFloatComplex;
use crate::error::{Error, Result};

/// Hard cap on the length of the binomial series.
pub const MAX_M: usize = 200;

const BETA_OVER_SQRT5: f64 = 0.723_606_797_749_979;
const DELTA1: f64 = 1.170_820_393_249_937;

/// Continuations below this real part are refused.
pub const MIN_RE: f64 = -6.0;

/// Residue estimate `h·X(s0 + h)` at two step sizes and their Richardson
/// combination.
#[derive(Clone, Debug)]
pub struct Residue {
    pub value: BigFloatComplex,
    pub at_eps: BigFloatComplex,
    pub at_half_eps: BigFloatComplex,
    pub eps: f64,
}

/// Largest power of ten not above `x`, clamped to `[lo, 1]`.
pub(crate) fn snap_tol(x: f64, lo: f64) -> f64 {
    if !x.is_finite() || x >= 1.0 {
        return 1.0;
    }
    let k = x.log10().floor() as i32;
    format!("1e{k}").parse::<f64>().unwrap().max(lo)
}

impl Evaluator {
    /// `1 − 2β^{−s} + β^{−3s}`.
    pub fn denominator_at(&self, s: &BigFloatComplex) -> BigFloatComplex {
        let z = self.beta_pow_neg(s);
        BigFloatComplex::one(self.prec).sub(&z.mul_f64(2.0)).add(&z.powi(3))
    }

    pub(crate) fn delta1_pow_neg(&self, s: &BigFloatComplex) -> BigFloatComplex {
        s.with_prec(self.prec).pow_neg_from_ln(&self.consts.ln_delta1)
    }

    pub(crate) fn delta2_pow_neg(&self, s: &BigFloatComplex) -> BigFloatComplex {
        s.with_prec(self.prec).pow_neg_from_ln(&self.consts.ln_delta2)
    }

    /// `F(s)` from the recursion, with direct sums once `Re(s+m) ≥ 2`.
    pub fn continue_f(&self, s: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        self.continue_f_with_base(s, tol, 2.0)
    }

    /// As [`Evaluator::continue_f`], switching to direct sums at `Re ≥ base`.
    pub fn continue_f_with_base(&self, s: &BigFloatComplex, tol: f64, base: f64) -> Result<EvalResult> {
        if base <= 1.0 {
            return Err(Error::Config(format!("recursion base must exceed 1, got {base}")));
        }
        let s = s.with_prec(self.prec);
        if s.re_f64() < MIN_RE {
            return Err(Error::Domain(format!("continuation supported for Re(s) >= {MIN_RE}")));
        }
        let den = self.denominator_at(&s);
        let den_abs = den.abs_f64();
        if den_abs < POLE_THRESHOLD {
            return Err(Error::PoleProximity { distance: den_abs });
        }
        let key = memo_key("contF", &s, &format!("{tol:e}|{base}"));
        if let Some(r) = self.memo_get(&key) {
            return Ok(r);
        }

        let z = self.beta_pow_neg(&s);
        let pref = z.sub(&z.powi(3));
        let pref_abs = pref.abs_f64().max(f64::MIN_POSITIVE);
        let target = tol * den_abs / (4.0 * pref_abs);
        let floor_tol = 1e5 * self.unit_roundoff();
        let s_abs = s.abs_f64();
        let sigma = s.re_f64();

        let mut sum = BigFloatComplex::zero(self.prec);
        let mut value_err = 0.0;
        let mut trunc_err = f64::INFINITY;
        let mut terms = 0u64;
        let mut used_m = 0;
        let q = BigFloatComplex::from_real(self.consts.beta_over_sqrt5.clone());
        let mut w = BigFloatComplex::one(self.prec);
        for m in 1..=MAX_M {
            // w_m = (β/√5)^m binom(−s, m)
            w = w.mul(&s.neg().add_f64(-(m as f64 - 1.0)).div_u64(m as u64)).mul(&q);
            let w_abs = w.abs_f64();
            used_m = m;
            if w_abs > 0.0 {
                let tol_m = snap_tol(target / (w_abs * 2f64.powi(m as i32)), floor_tol);
                let arg = s.add_f64(m as f64);
                let fm = if arg.re_f64() >= base {
                    self.class_sum_to_tol(super::Class::All, &arg, tol_m)?
                } else {
                    self.continue_f_with_base(&arg, tol_m, base)?
                };
                sum.add_assign(&w.mul(&fm.value));
                value_err += w_abs * fm.error_bound;
                terms += fm.terms_used;
            }
            let next_sigma = sigma + m as f64 + 1.0;
            if next_sigma > 1.5 {
                let r = BETA_OVER_SQRT5 * ((s_abs + m as f64 + 1.0) / (m as f64 + 2.0)).max(1.0) / DELTA1;
                if r < 1.0 {
                    let next_w = w_abs * BETA_OVER_SQRT5 * s.add_f64(m as f64).abs_f64() / (m as f64 + 1.0);
                    let tail = next_w * f_upper_bound(next_sigma) / (1.0 - r);
                    if tail < target {
                        trunc_err = tail;
                        break;
                    }
                }
            }
        }
        if !trunc_err.is_finite() {
            return Err(Error::NoConvergence { max_terms: MAX_M });
        }

        let z2 = z.mul(&z);
        let constant = BigFloatComplex::one(self.prec).sub(&z2).mul(&self.delta1_pow_neg(&s));
        let num = pref.mul(&sum).add(&constant);
        let value = num.div(&den).ok_or(Error::DivisionByZero)?;
        let rounding = 64.0 * self.unit_roundoff() * (pref_abs * sum.abs_f64() + constant.abs_f64()) / den_abs;
        let r = EvalResult {
            value,
            error_bound: pref_abs * (value_err + trunc_err) / den_abs + rounding,
            terms_used: terms,
            method: Method::Continuation,
            truncation_m: used_m,
        };
        self.memo_put(key, &r);
        Ok(r)
    }

    /// Any of the five series through `F`'s continuation and the relations.
    pub fn relation_value(&self, id: SeriesId, s: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        let s = s.with_prec(self.prec);
        let z = self.beta_pow_neg(&s);
        let one = BigFloatComplex::one(self.prec);
        let one_plus_z = one.add(&z);
        if matches!(id, SeriesId::H | SeriesId::I | SeriesId::J) && one_plus_z.abs_f64() < POLE_THRESHOLD {
            return Err(Error::PoleProximity {
                distance: one_plus_z.abs_f64(),
            });
        }
        let factor = match id {
            SeriesId::F => one.clone(),
            SeriesId::G => one.sub(&z),
            SeriesId::H => one.div(&one_plus_z).unwrap(),
            SeriesId::I => z.div(&one_plus_z).unwrap(),
            SeriesId::J => z.mul(&z).div(&one_plus_z).unwrap(),
        };
        let fa = factor.abs_f64().max(f64::MIN_POSITIVE);
        let f = self.continue_f(&s, tol / fa)?;
        let mut value = factor.mul(&f.value);
        if id == SeriesId::H {
            value = value.sub(&self.delta1_pow_neg(&s));
        }
        Ok(EvalResult {
            value,
            error_bound: fa * f.error_bound + 16.0 * self.unit_roundoff() * fa * f.value.abs_f64(),
            ..f
        })
    }

    /// Direct summation where it converges quickly, the relation chain
    /// elsewhere.
    pub fn eval_series(&self, id: SeriesId, s: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        if s.re_f64() >= 2.0 {
            self.direct_to_tol(id, s, tol)
        } else {
            self.relation_value(id, s, tol)
        }
    }

    /// `(s − s0)·X(s)` at `s0 + eps` and `s0 + eps/2`, Richardson-combined.
    pub fn residue_at(&self, id: SeriesId, s0: &BigFloatComplex, eps: f64) -> Result<Residue> {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::Domain(format!("residue step must lie in (0, 0.5), got {eps}")));
        }
        let s0 = s0.with_prec(self.prec);
        if self.denominator_at(&s0).abs_f64() > 1e-10 {
            return Err(Error::Domain("residues are taken at zeros of 1 - 2β^-s + β^-3s".into()));
        }
        let tol = 1e-9;
        let at = |h: f64| -> Result<BigFloatComplex> {
            let v = self.relation_value(id, &s0.add_f64(h), tol / h)?;
            Ok(v.value.mul_f64(h))
        };
        let r1 = at(eps)?;
        let r2 = at(eps / 2.0)?;
        Ok(Residue {
            value: r2.mul_f64(2.0).sub(&r1),
            at_eps: r1,
            at_half_eps: r2,
            eps,
        })
    }
}
