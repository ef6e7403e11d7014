//! Reference `ζ(s)` and the expansion of `ζ(s) − F(s)` in powers of `δ′/δ`.

use std::sync::{Mutex, OnceLock};

use rug::{Float, Integer, Rational};

use super::binom::binom_coeffs;
use super::classes::{chunks_upto, conj_floats, Kind};
use super::{EvalResult, Evaluator, SeriesId};
use crate::bigfloat::BigFloatComplex;
use crate::error::{Error, Result};
use crate::summation::{chunked_sum, CHUNK};
use crate::zeckendorf::ZeckStream;

/// `B_0, B_1, …, B_n`.
fn bernoulli(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut b = cache.lock().unwrap();
    while b.len() <= n {
        let m = b.len();
        // Σ_{j=0}^{m} binom(m+1, j) B_j = 0
        let mut acc = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            let c = Integer::from(Integer::binomial_u(m as u32 + 1, j as u32));
            acc += Rational::from(bj * &c);
        }
        let bm = -acc / (m as u32 + 1);
        b.push(bm);
    }
    b[..=n].to_vec()
}

/// `ζ(s)` by Euler–Maclaurin summation. `Re(s) > 1`.
pub fn zeta_ref(s: &BigFloatComplex) -> Result<BigFloatComplex> {
    if s.re_f64() <= 1.0 {
        return Err(Error::Domain(format!(
            "reference zeta needs Re(s) > 1, got {}",
            s.re_f64()
        )));
    }
    let out_prec = s.prec();
    let prec = out_prec + 32;
    let s = s.with_prec(prec);
    let n_cut = (30.0 + 2.0 * s.abs_f64() + prec as f64 / 2.0) as u64;
    let mut sum = BigFloatComplex::zero(prec);
    for n in 1..n_cut {
        sum.add_assign(&s.pow_neg(&Float::with_val(prec, n)));
    }
    let nf = Float::with_val(prec, n_cut);
    let ln_n = Float::with_val(prec, nf.ln_ref());
    let n_s = s.pow_neg_from_ln(&ln_n);
    // N^{1−s}/(s−1) + N^{−s}/2
    sum.add_assign(&n_s.mul_real(&nf).div(&s.add_f64(-1.0)).unwrap());
    sum.add_assign(&n_s.mul_f64(0.5));

    let max_k = 120;
    let bern = bernoulli(2 * max_k);
    let eps = 2f64.powi(-(prec as i32));
    let inv_n2 = Float::with_val(prec, nf.square_ref()).recip();
    // poch = s(s+1)…(s+2k−2), power = N^{−s−2k+1}
    let mut poch = s.clone();
    let mut power = n_s.div(&BigFloatComplex::from_real(nf.clone())).unwrap();
    let mut fact = Integer::from(2);
    for k in 1..=max_k {
        let coeff = Float::with_val(prec, &bern[2 * k]) / Float::with_val(prec, &fact);
        let term = poch.mul(&power).mul_real(&coeff);
        let small = term.abs_f64() < eps * sum.abs_f64();
        sum.add_assign(&term);
        if small {
            return Ok(sum.with_prec(out_prec));
        }
        poch = poch
            .mul(&s.add_f64(2.0 * k as f64 - 1.0))
            .mul(&s.add_f64(2.0 * k as f64));
        power = power.mul_real(&inv_n2);
        fact *= (2 * k + 1) as u32;
        fact *= (2 * k + 2) as u32;
    }
    Err(Error::NoConvergence { max_terms: max_k })
}

/// Both sides of `ζ(s) − F(s) = Σ_{m≥1} binom(−s,m) Σ_n (−δ′(n))^m δ(n)^{−s−m}`.
#[derive(Clone, Debug)]
pub struct ZetaRelation {
    pub zeta: BigFloatComplex,
    pub f: EvalResult,
    pub lhs: BigFloatComplex,
    pub rhs: BigFloatComplex,
    pub difference: f64,
    pub m: usize,
    pub n: u64,
}

impl Evaluator {
    /// Right-hand double sum truncated to `m` powers and `n` indices.
    pub fn zeta_expansion(&self, s: &BigFloatComplex, m: usize, n: u64) -> Result<BigFloatComplex> {
        if s.re_f64() <= 1.0 {
            return Err(Error::Domain(format!("expansion needs Re(s) > 1, got {}", s.re_f64())));
        }
        if m == 0 || n == 0 {
            return Err(Error::Domain("expansion needs m >= 1 and n >= 1".into()));
        }
        let prec = self.prec;
        let s = s.with_prec(prec);
        let coeffs = binom_coeffs(&s, m);
        let coeff_abs: Vec<f64> = coeffs.iter().map(|c| c.abs_f64()).collect();
        let table = conj_floats(prec);
        let chunks = chunks_upto(prec, Kind::Delta, n);
        let eps = 2f64.powi(-(prec as i32) - 8);
        Ok(chunked_sum(prec, 1, n + 1, |lo, hi| {
            let chunk = &chunks[((lo - 1) / CHUNK) as usize];
            let mut stream = ZeckStream::starting_at(lo);
            let mut acc = BigFloatComplex::zero(prec);
            for idx in lo..hi {
                let (k, w, _) = stream.advance();
                let mut dp = Float::new(prec + 16);
                for j in w.ones() {
                    dp += &table[j];
                }
                let delta = Float::with_val(prec, &dp + k);
                // r = −δ′/δ
                let r = Float::with_val(prec, -Float::with_val(prec, &dp / &delta));
                let r_abs = r.to_f64().abs();
                let mut rp = r.clone();
                let mut rp_abs = r_abs;
                let mut inner = BigFloatComplex::zero(prec);
                for mm in 1..=m {
                    inner.add_assign(&coeffs[mm].mul_real(&rp));
                    if coeff_abs[mm] * rp_abs < eps {
                        break;
                    }
                    rp *= &r;
                    rp_abs *= r_abs;
                }
                let ln_delta = &chunk.ln_pos[(idx - chunk.lo) as usize];
                acc.add_assign(&s.pow_neg_from_ln(ln_delta).mul(&inner));
            }
            acc
        }))
    }

    /// Compares `ζ(s) − F(s)` with its binomial expansion.
    pub fn zeta_relation_check(&self, s: &BigFloatComplex, m: usize, n: u64) -> Result<ZetaRelation> {
        let s = s.with_prec(self.prec);
        let zeta = zeta_ref(&s)?;
        let f = self.direct_sum(SeriesId::F, &s, n)?;
        let lhs = zeta.sub(&f.value);
        let rhs = self.zeta_expansion(&s, m, n)?;
        let difference = lhs.sub(&rhs).abs_f64();
        Ok(ZetaRelation {
            zeta,
            f,
            lhs,
            rhs,
            difference,
            m,
            n,
        })
    }
}
