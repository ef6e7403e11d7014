//! Partial sums with an analytic tail.
//!
//! For a class with counting function `A(x) = ρx + κ + D(x)`, cut at the
//! position `X` of its `K`-th member,
//!
//! `Σ_{x > X} x^{−u} = ρX^{1−u}/(u−1) + (ρX + κ − K)X^{−u} + E`,
//!
//! where `|E| ≤ |u||u+1| Ĵ X^{−σ−1}/(σ+1)` and `Ĵ` bounds the integrated
//! fluctuation `∫D`. The formula continues the sum to `Re(u) > −1`.

use rug::Float;

use super::classes::{chunks_upto, class_stats, Class};
use super::{memo_key, EvalResult, Evaluator, Method, SeriesId};
use crate::bigfloat::BigFloatComplex;
use crate::error::{Error, Result};
use crate::summation::{chunked_sum_vec, CHUNK};

/// Partial sum of a class up to index `n`.
pub(crate) struct Partial {
    pub sum: BigFloatComplex,
    pub count: u64,
    pub ln_last: Float,
}

const LADDER_START: u64 = 1000;

impl Evaluator {
    /// Partial sums of several classes of one position kind in a single pass.
    pub(crate) fn partials(&self, classes: &[Class], u: &BigFloatComplex, n: u64) -> Vec<Partial> {
        let kind = classes[0].kind();
        debug_assert!(classes.iter().all(|c| c.kind() == kind));
        let u = u.with_prec(self.prec);
        let chunks = chunks_upto(self.prec, kind, n);
        let sums = chunked_sum_vec(self.prec, classes.len(), 1, n + 1, |lo, hi| {
            let chunk = &chunks[((lo - 1) / CHUNK) as usize];
            let mut acc = vec![BigFloatComplex::zero(self.prec); classes.len()];
            for i in (lo - chunk.lo) as usize..(hi - chunk.lo) as usize {
                let d = chunk.d[i];
                if !classes.iter().any(|c| c.accepts(d)) {
                    continue;
                }
                let term = u.pow_neg_from_ln(&chunk.ln_pos[i]);
                for (a, c) in acc.iter_mut().zip(classes) {
                    if c.accepts(d) {
                        a.add_assign(&term);
                    }
                }
            }
            acc
        });
        classes
            .iter()
            .zip(sums)
            .map(|(&c, sum)| {
                let mut count = 0;
                let mut last = 0;
                for ch in &chunks {
                    for (i, &d) in ch.d.iter().enumerate() {
                        let idx = ch.lo + i as u64;
                        if idx > n {
                            break;
                        }
                        if c.accepts(d) {
                            count += 1;
                            last = idx;
                        }
                    }
                }
                let ch = &chunks[((last - 1) / CHUNK) as usize];
                let ln_last = ch.ln_pos[(last - ch.lo) as usize].clone();
                Partial { sum, count, ln_last }
            })
            .collect()
    }

    /// Tail beyond the partial sum and its error bound. Needs `Re(u) > −1`
    /// and `u ≠ 1`.
    fn tail(&self, class: Class, u: &BigFloatComplex, p: &Partial) -> Result<(BigFloatComplex, f64)> {
        let st = class_stats(class);
        let prec = self.prec;
        let x = Float::with_val(prec, p.ln_last.exp_ref());
        let xu = u.pow_neg_from_ln(&p.ln_last);
        let u_minus_1 = u.add_f64(-1.0);
        let rho = class.density_exact().to_float(prec);
        let main = xu
            .mul_real(&x)
            .mul_real(&rho)
            .div(&u_minus_1)
            .ok_or_else(|| Error::Domain("tail at u = 1".into()))?;
        let mut lin = Float::with_val(prec, &x * &rho);
        lin += st.offset;
        lin -= p.count;
        let corr = xu.mul_real(&lin);
        Ok((main.add(&corr), self.tail_bound(class, u, x.to_f64())))
    }

    fn tail_bound(&self, class: Class, u: &BigFloatComplex, x: f64) -> f64 {
        let st = class_stats(class);
        let sigma = u.re_f64();
        let ua = u.abs_f64();
        let u1 = u.add_f64(1.0).abs_f64();
        ua * u1 * st.fluctuation * x.powf(-sigma - 1.0) / (sigma + 1.0) + st.offset_error * x.powf(-sigma)
    }

    fn rounding_bound(&self, class: Class, sigma: f64, count: u64, x: f64) -> f64 {
        let x1 = class_stats(class).first_position;
        let biggest = x1.powf(-sigma).max(x.powf(-sigma));
        (count as f64 + 16.0) * biggest * self.unit_roundoff() * 16.0
    }

    fn check_class_domain(u: &BigFloatComplex) -> Result<()> {
        if u.re_f64() <= -0.999 {
            return Err(Error::Domain(format!("class sums need Re(u) > -1, got {}", u.re_f64())));
        }
        Ok(())
    }

    /// `Σ_{class} x^{−u}` with the first `n` indices summed and the rest
    /// replaced by the analytic tail.
    pub(crate) fn class_sum(&self, class: Class, u: &BigFloatComplex, n: u64) -> Result<EvalResult> {
        Self::check_class_domain(u)?;
        let u = u.with_prec(self.prec);
        let key = memo_key(&format!("class{class:?}"), &u, &n.to_string());
        if let Some(r) = self.memo_get(&key) {
            return Ok(r);
        }
        let p = self.partials(&[class], &u, n).pop().unwrap();
        let (tail, bound) = self.tail(class, &u, &p)?;
        let x = p.ln_last.to_f64().exp();
        let r = EvalResult {
            value: p.sum.add(&tail),
            error_bound: bound + self.rounding_bound(class, u.re_f64(), p.count, x),
            terms_used: p.count,
            method: Method::Direct,
            truncation_m: 0,
        };
        self.memo_put(key, &r);
        Ok(r)
    }

    /// `s·X(1+s)`, regular at `s = 0` where it equals the class density.
    pub(crate) fn class_sum_scaled(&self, class: Class, s: &BigFloatComplex, n: u64) -> Result<EvalResult> {
        let s = s.with_prec(self.prec);
        let u = s.add_f64(1.0);
        Self::check_class_domain(&u)?;
        let key = memo_key(&format!("scaled{class:?}"), &s, &n.to_string());
        if let Some(r) = self.memo_get(&key) {
            return Ok(r);
        }
        let st = class_stats(class);
        let p = self.partials(&[class], &u, n).pop().unwrap();
        let prec = self.prec;
        let x = Float::with_val(prec, p.ln_last.exp_ref());
        // s·partial + ρX^{−s} + s(ρX + κ − K)X^{−1−s}
        let mut value = s.mul(&p.sum);
        let rho = class.density_exact().to_float(prec);
        value.add_assign(&s.pow_neg_from_ln(&p.ln_last).mul_real(&rho));
        let mut lin = Float::with_val(prec, &x * &rho);
        lin += st.offset;
        lin -= p.count;
        value.add_assign(&u.pow_neg_from_ln(&p.ln_last).mul_real(&lin).mul(&s));
        let xf = x.to_f64();
        let r = EvalResult {
            value,
            error_bound: s.abs_f64()
                * (self.tail_bound(class, &u, xf) + self.rounding_bound(class, u.re_f64(), p.count, xf)),
            terms_used: p.count,
            method: Method::Direct,
            truncation_m: 0,
        };
        self.memo_put(key, &r);
        Ok(r)
    }

    /// Smallest ladder size whose predicted tail bound meets `tol`.
    fn terms_for(&self, class: Class, u: &BigFloatComplex, scale: f64, tol: f64) -> Result<u64> {
        if tol < 1e4 * self.unit_roundoff() {
            return Err(Error::Precision(format!(
                "tolerance {tol:e} is below what {} bits can deliver",
                self.prec
            )));
        }
        let position_scale = if class == Class::Shifted {
            crate::golden::BETA_F64
        } else {
            1.0
        };
        let mut n = LADDER_START;
        while n < self.max_terms {
            let x = n as f64 * position_scale * 0.9;
            if scale * self.tail_bound(class, u, x) < tol / 2.0 {
                return Ok(n);
            }
            n *= 2;
        }
        Ok(self.max_terms)
    }

    pub(crate) fn class_sum_to_tol(&self, class: Class, u: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        Self::check_class_domain(u)?;
        let n = self.terms_for(class, u, 1.0, tol)?;
        self.class_sum(class, u, n)
    }

    pub(crate) fn class_sum_scaled_to_tol(&self, class: Class, s: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        let u = s.add_f64(1.0);
        Self::check_class_domain(&u)?;
        let n = self.terms_for(class, &u, s.abs_f64(), tol)?;
        self.class_sum_scaled(class, s, n)
    }

    /// Sum over indices `n ≤ terms` plus the compensated tail. `Re(s) > 1`.
    pub fn direct_sum(&self, id: SeriesId, s: &BigFloatComplex, terms: u64) -> Result<EvalResult> {
        if s.re_f64() <= 1.0 {
            return Err(Error::Domain(format!(
                "direct summation needs Re(s) > 1, got {}",
                s.re_f64()
            )));
        }
        if terms < 10 {
            return Err(Error::Domain("direct summation needs at least 10 terms".into()));
        }
        self.class_sum(id.class(), s, terms)
    }

    /// F, G, I and J from one pass over `n ≤ terms`. `Re(s) > 1`.
    pub fn direct_sums_fgij(&self, s: &BigFloatComplex, terms: u64) -> Result<[EvalResult; 4]> {
        if s.re_f64() <= 1.0 {
            return Err(Error::Domain(format!(
                "direct summation needs Re(s) > 1, got {}",
                s.re_f64()
            )));
        }
        let s = s.with_prec(self.prec);
        let classes = [Class::All, Class::D0, Class::D1, Class::D2];
        let parts = self.partials(&classes, &s, terms);
        let mut out = Vec::with_capacity(4);
        for (class, p) in classes.into_iter().zip(parts) {
            let (tail, bound) = self.tail(class, &s, &p)?;
            let x = p.ln_last.to_f64().exp();
            let r = EvalResult {
                value: p.sum.add(&tail),
                error_bound: bound + self.rounding_bound(class, s.re_f64(), p.count, x),
                terms_used: p.count,
                method: Method::Direct,
                truncation_m: 0,
            };
            self.memo_put(memo_key(&format!("class{class:?}"), &s, &terms.to_string()), &r);
            out.push(r);
        }
        Ok(out.try_into().unwrap())
    }

    /// Direct summation with the number of terms chosen from `tol`.
    pub fn direct_to_tol(&self, id: SeriesId, s: &BigFloatComplex, tol: f64) -> Result<EvalResult> {
        if s.re_f64() <= 1.0 {
            return Err(Error::Domain(format!(
                "direct summation needs Re(s) > 1, got {}",
                s.re_f64()
            )));
        }
        self.class_sum_to_tol(id.class(), s, tol)
    }
}
