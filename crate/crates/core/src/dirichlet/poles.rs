//! Zeros of `1 − 2β^{−s} + β^{−3s}`, the candidate poles of the continuation.
//!
//! With `z = β^{−s}` the denominator is `z³ − 2z + 1 = (z − 1)(z² + z − 1)`,
//! so the zeros lie on three vertical lines.

use rug::Float;

use crate::bigfloat::{pi, BigFloatComplex};
use crate::golden::GoldenNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PoleLine {
    /// `β^{−s} = 1`: `s = 2πik/ln β`.
    Unit,
    /// `β^{−s} = β⁻¹`: `s = 1 + 2πik/ln β`.
    Inverse,
    /// `β^{−s} = −β`: `s = −1 + (2k+1)πi/ln β`.
    Negative,
}

impl PoleLine {
    pub const ALL: [PoleLine; 3] = [PoleLine::Unit, PoleLine::Inverse, PoleLine::Negative];

    pub fn name(self) -> &'static str {
        match self {
            PoleLine::Unit => "unit",
            PoleLine::Inverse => "inverse",
            PoleLine::Negative => "negative",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatticePoint {
    pub line: PoleLine,
    pub k: i64,
    pub s: BigFloatComplex,
    /// `|1 − 2β^{−s} + β^{−3s}|` at the returned point.
    pub residual: f64,
}

fn ln_beta(prec: u32) -> Float {
    Float::with_val(prec, GoldenNum::beta().to_float(prec + 16).ln_ref())
}

fn denominator_with(s: &BigFloatComplex, ln_b: &Float) -> BigFloatComplex {
    let z = s.pow_neg_from_ln(ln_b);
    BigFloatComplex::one(s.prec()).sub(&z.mul_f64(2.0)).add(&z.powi(3))
}

/// `1 − 2β^{−s} + β^{−3s}` at the precision of `s`.
pub fn denominator(s: &BigFloatComplex) -> BigFloatComplex {
    denominator_with(s, &ln_beta(s.prec()))
}

/// Closed-form lattice points for `k_min ≤ k ≤ k_max` on each line, polished
/// by Newton steps.
pub fn pole_zeros(k_min: i64, k_max: i64, prec: u32) -> Vec<LatticePoint> {
    let work = prec + 32;
    let lb = ln_beta(work);
    let pi = pi(work);
    let mut out = Vec::new();
    for line in PoleLine::ALL {
        for k in k_min..=k_max {
            let (re, im_mult) = match line {
                PoleLine::Unit => (0.0, 2 * k),
                PoleLine::Inverse => (1.0, 2 * k),
                PoleLine::Negative => (-1.0, 2 * k + 1),
            };
            let im = Float::with_val(work, &pi * im_mult) / &lb;
            let mut s = BigFloatComplex::from_parts(work, &Float::with_val(work, re), &im);
            for _ in 0..2 {
                let z = s.pow_neg_from_ln(&lb);
                let z3 = z.powi(3);
                let g = BigFloatComplex::one(work).sub(&z.mul_f64(2.0)).add(&z3);
                let dg = z.mul_f64(2.0).sub(&z3.mul_f64(3.0)).mul_real(&lb);
                match g.div(&dg) {
                    Some(step) => s = s.sub(&step),
                    None => break,
                }
            }
            let s = s.with_prec(prec);
            let residual = denominator_with(&s, &ln_beta(prec)).abs_f64();
            out.push(LatticePoint { line, k, s, residual });
        }
    }
    out
}
