//! Arbitrary-precision complex numbers on top of MPFR reals.

use std::fmt;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// `re + i·im`, both parts at the same working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct BigFloatComplex {
    re: Float,
    im: Float,
}

impl BigFloatComplex {
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    /// Parses decimal strings exactly to the working precision.
    pub fn parse(prec: u32, re: &str, im: &str) -> Option<Self> {
        let re = Float::parse(re).ok()?;
        let im = Float::parse(im).ok()?;
        Some(Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        })
    }

    /// Rounds both parts to `prec`.
    pub fn from_parts(prec: u32, re: &Float, im: &Float) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Re-rounds to another precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(prec, &self.re, &self.im)
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, -&self.re),
            im: Float::with_val(p, -&self.im),
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.re += &o.re;
        self.im += &o.im;
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let mut re = Float::with_val(p, &self.re * &o.re);
        re -= Float::with_val(p, &self.im * &o.im);
        let mut im = Float::with_val(p, &self.re * &o.im);
        im += Float::with_val(p, &self.im * &o.re);
        Self { re, im }
    }

    pub fn mul_real(&self, r: &Float) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re * r),
            im: Float::with_val(p, &self.im * r),
        }
    }

    pub fn mul_f64(&self, r: f64) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re * r),
            im: Float::with_val(p, &self.im * r),
        }
    }

    /// `None` when `o` is zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let p = self.prec();
        let den = Float::with_val(p, o.re.square_ref()) + Float::with_val(p, o.im.square_ref());
        if den.is_zero() {
            return None;
        }
        let mut re = Float::with_val(p, &self.re * &o.re);
        re += Float::with_val(p, &self.im * &o.im);
        let mut im = Float::with_val(p, &self.im * &o.re);
        im -= Float::with_val(p, &self.re * &o.im);
        re /= &den;
        im /= &den;
        Some(Self { re, im })
    }

    pub fn recip(&self) -> Option<Self> {
        Self::one(self.prec()).div(self)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (sin, cos) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &m * &cos),
            im: m * sin,
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, self.abs().ln_ref()),
            im: Float::with_val(p, self.im.atan2_ref(&self.re)),
        }
    }

    /// `x^{−self}` for a positive real `x` given by `ln x`.
    pub fn pow_neg_from_ln(&self, ln_x: &Float) -> Self {
        let p = self.prec();
        let mag = Float::with_val(p, -Float::with_val(p, &self.re * ln_x)).exp();
        if self.im.is_zero() {
            return Self::from_real(mag);
        }
        let (sin, cos) = Float::with_val(p, &self.im * ln_x).sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &mag * &cos),
            im: Float::with_val(p, -(mag * sin)),
        }
    }

    /// `x^{−self}` for a positive real `x`.
    pub fn pow_neg(&self, x: &Float) -> Self {
        let ln_x = Float::with_val(self.prec(), x.ln_ref());
        self.pow_neg_from_ln(&ln_x)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one(self.prec());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn div_u64(&self, k: u64) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re / k),
            im: Float::with_val(p, &self.im / k),
        }
    }

    pub fn add_f64(&self, r: f64) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re + r),
            im: self.im.clone(),
        }
    }

    /// Decimal rendering with `digits` significant digits per part.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let fmt_part = |x: &Float| x.to_string_radix(10, Some(digits));
        if self.im.is_zero() {
            fmt_part(&self.re)
        } else {
            let sign = if self.im.is_sign_negative() { '-' } else { '+' };
            let im = Float::with_val(self.prec(), self.im.abs_ref());
            format!("{} {} {}i", fmt_part(&self.re), sign, fmt_part(&im))
        }
    }
}

impl fmt::Display for BigFloatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_string_digits(digits.max(3)))
    }
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `a^k` for a real `a` and small integer `k`.
pub fn real_powi(a: &Float, k: i32) -> Float {
    Float::with_val(a.prec(), a.pow(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn close(a: &BigFloatComplex, re: f64, im: f64, tol: f64) -> bool {
        let (x, y) = a.to_f64();
        (x - re).abs() < tol && (y - im).abs() < tol
    }

    #[test]
    fn field_ops() {
        let a = BigFloatComplex::from_f64(P, 1.0, 2.0);
        let b = BigFloatComplex::from_f64(P, 3.0, -1.0);
        assert!(close(&a.mul(&b), 5.0, 5.0, 1e-30));
        let q = a.div(&b).unwrap();
        assert!(close(&q.mul(&b), 1.0, 2.0, 1e-30));
        assert!(a.div(&BigFloatComplex::zero(P)).is_none());
        assert!(close(&a.powi(3), -11.0, -2.0, 1e-30));
    }

    #[test]
    fn exp_ln_roundtrip() {
        let a = BigFloatComplex::from_f64(P, 0.3, -2.5);
        assert!(close(&a.exp().ln(), 0.3, -2.5, 1e-30));
        let pi_i = BigFloatComplex::from_parts(P, &Float::new(P), &pi(P));
        assert!(close(&pi_i.exp(), -1.0, 0.0, 1e-35));
    }

    #[test]
    fn negative_power() {
        // 2^{-(1+i)} = (1/2)(cos ln2 − i sin ln2)
        let s = BigFloatComplex::from_f64(P, 1.0, 1.0);
        let v = s.pow_neg(&Float::with_val(P, 2));
        let l = std::f64::consts::LN_2;
        assert!(close(&v, 0.5 * l.cos(), -0.5 * l.sin(), 1e-15));
    }

    #[test]
    fn parse_and_render() {
        let a = BigFloatComplex::parse(P, "0.1", "-2").unwrap();
        assert_eq!(a.to_string_digits(5), "1.0000e-1 - 2.0000i");
        assert!(BigFloatComplex::parse(P, "x", "0").is_none());
    }
}
