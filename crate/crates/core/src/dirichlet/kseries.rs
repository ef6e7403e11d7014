//! Difference series `K⁽ⁱ⁾_{a,b}(s) = Σ (aδ(n))^{−s} − (aδ(n) + b)^{−s}` and
//! the two series `P`, `Q` built from them.
//!
//! Expanding `(1 + q/δ)^{−s}` with `q = b/a` gives
//!
//! `K = a^{−s} [ q·sX(s+1) − Σ_{m≥2} binom(−s,m) q^m X(s+m) ]`,
//!
//! whose first term is taken in the regular form of `sX(1+s)`, so the
//! expansion stays finite at and slightly left of `s = 0`.

use super::classes::Class;
use super::continuation::{snap_tol, MAX_M};
use super::{f_upper_bound, EvalResult, Evaluator, Method};
use crate::bigfloat::BigFloatComplex;
use crate::error::{Error, Result};
use crate::golden::GoldenNum;
use crate::sequences::{step_long, step_short};

const DELTA1: f64 = 1.170_820_393_249_937;

/// Smallest real part accepted by the expansion.
pub const K_MIN_RE: f64 = -0.5;

impl Evaluator {
    /// `K⁽ⁱ⁾_{a,b}(s)` for `i ∈ {0,1,2,3}`; `i = 3` sums all three classes.
    pub fn k_eval(&self, i: u8, a: &GoldenNum, b: &GoldenNum, s: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        if i > 3 {
            return Err(Error::Domain(format!("class index {i} not in 0..=3")));
        }
        if a.signum() <= 0 {
            return Err(Error::Domain("K needs a > 0".into()));
        }
        if (&a.abs() - &b.abs()).signum() < 0 {
            return Err(Error::Domain("K needs |b| <= |a|".into()));
        }
        let s = s.with_prec(self.prec);
        if s.re_f64() <= K_MIN_RE {
            return Err(Error::Domain(format!("K expansion needs Re(s) > {K_MIN_RE}")));
        }
        if b.is_zero() {
            return Ok(EvalResult {
                value: BigFloatComplex::zero(self.prec),
                error_bound: 0.0,
                terms_used: 0,
                method: Method::KSeries,
                truncation_m: 0,
            });
        }
        let class = Class::for_d(i);
        let q_exact = b.checked_div(a)?;
        let q = BigFloatComplex::from_real(q_exact.to_float(self.prec));
        let q_abs = q_exact.abs().to_f64();
        let a_s = s.pow_neg(&a.to_float(self.prec + 16));
        let a_s_abs = a_s.abs_f64().max(f64::MIN_POSITIVE);
        let target = tol / (2.0 * a_s_abs);
        let floor_tol = 1e5 * self.unit_roundoff();
        let s_abs = s.abs_f64();
        let sigma = s.re_f64();

        let first = self.class_sum_scaled_to_tol(class, &s, snap_tol(target / (2.0 * q_abs), floor_tol))?;
        let mut sum = q.mul(&first.value);
        let mut value_err = q_abs * first.error_bound;
        let mut terms = first.terms_used;

        // c = binom(−s, m) q^m, starting from m = 1.
        let mut c = s.neg().mul(&q);
        let mut trunc_err = f64::INFINITY;
        let mut used_m = 1;
        for m in 2..=MAX_M {
            c = c.mul(&s.neg().add_f64(-(m as f64 - 1.0)).div_u64(m as u64)).mul(&q);
            let c_abs = c.abs_f64();
            used_m = m;
            if c_abs > 0.0 {
                let tol_m = snap_tol(target / (c_abs * 2f64.powi(m as i32)), floor_tol);
                let x = self.class_sum_to_tol(class, &s.add_f64(m as f64), tol_m)?;
                sum = sum.sub(&c.mul(&x.value));
                value_err += c_abs * x.error_bound;
                terms += x.terms_used;
            }
            let r = q_abs * ((s_abs + m as f64 + 1.0) / (m as f64 + 2.0)).max(1.0) / DELTA1;
            if r < 1.0 {
                let next = c_abs * q_abs * s.add_f64(m as f64).abs_f64() / (m as f64 + 1.0);
                let tail = next * f_upper_bound(sigma + m as f64 + 1.0) / (1.0 - r);
                if tail < target {
                    trunc_err = tail;
                    break;
                }
            }
        }
        if !trunc_err.is_finite() {
            return Err(Error::NoConvergence { max_terms: MAX_M });
        }
        let value = a_s.mul(&sum);
        Ok(EvalResult {
            error_bound: a_s_abs * (value_err + trunc_err) + 16.0 * self.unit_roundoff() * value.abs_f64(),
            value,
            terms_used: terms,
            method: Method::KSeries,
            truncation_m: used_m,
        })
    }

    /// `P(s) = (1 − β^{−s}) K⁽⁰⁾_{1, β/√5}(s)`, with `P(0) = 0`.
    pub fn p_eval(&self, s: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        let s = s.with_prec(self.prec);
        let factor = BigFloatComplex::one(self.prec).sub(&self.beta_pow_neg(&s));
        let fa = factor.abs_f64();
        let k = self.k_eval(0, &GoldenNum::one(), &step_short(), &s, tol / fa.max(1e-3))?;
        Ok(EvalResult {
            value: factor.mul(&k.value),
            error_bound: fa * k.error_bound,
            method: Method::PSeries,
            ..k
        })
    }

    /// `Q(s) = (1 − β^{−s}) K⁽³⁾_{β, β²/√5}(s) − δ(1)^{−s} + δ(2)^{−s}`.
    pub fn q_eval(&self, s: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        let s = s.with_prec(self.prec);
        let factor = BigFloatComplex::one(self.prec).sub(&self.beta_pow_neg(&s));
        let fa = factor.abs_f64();
        let k = self.k_eval(3, &GoldenNum::beta(), &step_long(), &s, tol / fa.max(1e-3))?;
        let consts = self.delta2_pow_neg(&s).sub(&self.delta1_pow_neg(&s));
        Ok(EvalResult {
            value: factor.mul(&k.value).add(&consts),
            error_bound: fa * k.error_bound + 16.0 * self.unit_roundoff(),
            method: Method::QSeries,
            ..k
        })
    }
}
