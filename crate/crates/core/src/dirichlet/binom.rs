use crate::bigfloat::BigFloatComplex;

/// `binom(−s, m)` for `m = 0..=max_m`, by `c_{m+1} = c_m (−s − m)/(m + 1)`.
pub fn binom_coeffs(s: &BigFloatComplex, max_m: usize) -> Vec<BigFloatComplex> {
    let prec = s.prec();
    let mut out = Vec::with_capacity(max_m + 1);
    let mut c = BigFloatComplex::one(prec);
    out.push(c.clone());
    let neg_s = s.neg();
    for m in 0..max_m {
        let factor = neg_s.add_f64(-(m as f64)).div_u64(m as u64 + 1);
        c = c.mul(&factor);
        out.push(c.clone());
    }
    out
}
