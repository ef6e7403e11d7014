//! Exact arithmetic in the quadratic field ℚ(β), β = (1 + √5)/2.
//!
//! Elements are stored as `x + y·β` with arbitrary-precision rationals. The
//! relation β² = β + 1 keeps products in this basis, √5 is exactly `2β − 1`,
//! and the nontrivial Galois map sends β to `1 − β = −β⁻¹`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// β as an `f64`, for bounds and estimates only.
pub const BETA_F64: f64 = 1.618_033_988_749_895;

/// An exact element `x + y·β` of ℚ(β).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GoldenNum {
    x: Rational,
    y: Rational,
}

/// Binary field operation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl GoldenNum {
    pub fn new(x: impl Into<Rational>, y: impl Into<Rational>) -> Self {
        GoldenNum {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// β = (1 + √5)/2.
    pub fn beta() -> Self {
        Self::new(0, 1)
    }

    /// √5 = 2β − 1.
    pub fn sqrt5() -> Self {
        Self::new(-1, 2)
    }

    /// 1/√5 = (2β − 1)/5.
    pub fn inv_sqrt5() -> Self {
        Self::new(Rational::from((-1, 5)), Rational::from((2, 5)))
    }

    pub fn from_rational(q: impl Into<Rational>) -> Self {
        Self::new(q, 0)
    }

    /// Coefficient of 1.
    pub fn x(&self) -> &Rational {
        &self.x
    }

    /// Coefficient of β.
    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn into_parts(self) -> (Rational, Rational) {
        (self.x, self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn is_rational(&self) -> bool {
        self.y == 0
    }

    /// Galois conjugate: `x + yβ ↦ (x + y) − yβ`.
    pub fn conj(&self) -> Self {
        GoldenNum {
            x: Rational::from(&self.x + &self.y),
            y: Rational::from(-&self.y),
        }
    }

    /// `a + conj(a)`, always rational.
    pub fn trace(&self) -> Rational {
        Rational::from(&self.x * 2u32) + &self.y
    }

    /// `a · conj(a) = x² + xy − y²`.
    pub fn norm(&self) -> Rational {
        let xx = Rational::from(&self.x * &self.x);
        let xy = Rational::from(&self.x * &self.y);
        let yy = Rational::from(&self.y * &self.y);
        xx + xy - yy
    }

    /// Exact sign of the real number `x + yβ`, as −1, 0 or +1.
    ///
    /// With `u = 2x + y` the value is `(u + y√5)/2`. When `u` and `y` do not
    /// have strictly opposite signs the answer is immediate; otherwise it is
    /// decided by comparing `u²` with `5y²`.
    pub fn signum(&self) -> i32 {
        let u = Rational::from(&self.x * 2u32) + &self.y;
        let su = u.cmp0();
        let sy = self.y.cmp0();
        use Ordering::*;
        match (su, sy) {
            (Equal, Equal) => 0,
            (Greater, Greater) | (Greater, Equal) | (Equal, Greater) => 1,
            (Less, Less) | (Less, Equal) | (Equal, Less) => -1,
            (Greater, Less) => {
                let uu = Rational::from(&u * &u);
                let yy5 = Rational::from(&self.y * &self.y) * 5u32;
                ordering_to_i32(uu.cmp(&yy5))
            }
            (Less, Greater) => {
                let uu = Rational::from(&u * &u);
                let yy5 = Rational::from(&self.y * &self.y) * 5u32;
                ordering_to_i32(yy5.cmp(&uu))
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/a = conj(a) / N(a); the norm of a nonzero element never vanishes.
        let n = self.norm();
        let c = self.conj();
        Ok(GoldenNum {
            x: c.x / &n,
            y: c.y / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Dispatches one of the four field operations.
    pub fn arith(op: ArithOp, a: &Self, b: &Self) -> Result<Self> {
        match op {
            ArithOp::Add => Ok(a + b),
            ArithOp::Sub => Ok(a - b),
            ArithOp::Mul => Ok(a * b),
            ArithOp::Div => a.checked_div(b),
        }
    }

    /// Integer power; negative exponents go through exact inversion.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = GoldenNum::one();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        GoldenNum {
            x: Rational::from(&self.x * q),
            y: Rational::from(&self.y * q),
        }
    }

    /// Renders the value at `precision_bits` bits.
    ///
    /// √5 is bracketed by `isqrt(5·4^k)/2^k` and the bracket is tightened
    /// until both ends of the value's enclosing interval round to within the
    /// requested precision; the midpoint is then rounded once.
    pub fn to_float(&self, precision_bits: u32) -> Float {
        let prec = precision_bits.max(16);
        if self.is_zero() {
            return Float::with_val(prec, 0);
        }
        if self.is_rational() {
            return Float::with_val(prec, &self.x);
        }
        let u = Rational::from(&self.x * 2u32) + &self.y;
        let mut k: u32 = prec + 32;
        loop {
            let (lo, hi) = self.enclosure(&u, k);
            let width = Rational::from(&hi - &lo);
            let mag = if lo.cmp0() == hi.cmp0() {
                Some(if lo.cmp0() == Ordering::Less {
                    Rational::from(-&hi)
                } else {
                    lo.clone()
                })
            } else {
                None
            };
            if let Some(mag) = mag {
                // width <= mag · 2^-(prec + 4)
                let bound = mag >> (prec + 4);
                if width <= bound {
                    let mid = (lo + hi) / 2u32;
                    return Float::with_val(prec, &mid);
                }
            }
            k = k.saturating_mul(2);
        }
    }

    /// Interval `[lo, hi]` enclosing the value, from a `k`-bit √5 bracket.
    fn enclosure(&self, u: &Rational, k: u32) -> (Rational, Rational) {
        let scaled = Integer::from(5u32) << (2 * k);
        let q = scaled.sqrt();
        let denom = Integer::from(1u32) << k;
        let s_lo = Rational::from((q.clone(), denom.clone()));
        let s_hi = Rational::from((q + 1u32, denom));
        let a = (u + Rational::from(&self.y * &s_lo)) / 2u32;
        let b = (u + Rational::from(&self.y * &s_hi)) / 2u32;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Fast, non-certified `f64` rendering (for display and quick checks).
    pub fn to_f64(&self) -> f64 {
        self.to_float(64).to_f64()
    }
}

fn ordering_to_i32(o: Ordering) -> i32 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Exact `β^k`: `F_{k−1} + F_k·β` for `k ≥ 0`, inversion for `k < 0`.
pub fn beta_pow(k: i64) -> GoldenNum {
    if k >= 0 {
        let fk = Integer::from(Integer::fibonacci(k as u32));
        let fk1 = if k == 0 {
            Integer::from(1)
        } else {
            Integer::from(Integer::fibonacci((k - 1) as u32))
        };
        GoldenNum::new(fk1, fk)
    } else {
        beta_pow(-k).inverse().expect("powers of β are nonzero")
    }
}

impl PartialOrd for GoldenNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNum {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for GoldenNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x == 0, self.y == 0) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}β", self.y),
            (false, false) => {
                if self.y.cmp0() == Ordering::Less {
                    write!(f, "{} - {}β", self.x, Rational::from(-&self.y))
                } else {
                    write!(f, "{} + {}β", self.x, self.y)
                }
            }
        }
    }
}

/// Parses `"x"` or `"x:y"` (meaning `x + yβ`) with rational components such
/// as `-2/5:1/5`.
impl FromStr for GoldenNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| -> Result<Rational> {
            Rational::from_str(t.trim()).map_err(|e| Error::Parse {
                line: 1,
                message: format!("bad rational {t:?}: {e}"),
            })
        };
        match s.split_once(':') {
            Some((a, b)) => Ok(GoldenNum::new(parse(a)?, parse(b)?)),
            None => Ok(GoldenNum::new(parse(s)?, 0)),
        }
    }
}

impl Neg for GoldenNum {
    type Output = GoldenNum;
    fn neg(self) -> GoldenNum {
        GoldenNum { x: -self.x, y: -self.y }
    }
}

impl Neg for &GoldenNum {
    type Output = GoldenNum;
    fn neg(self) -> GoldenNum {
        -self.clone()
    }
}

impl Add<&GoldenNum> for &GoldenNum {
    type Output = GoldenNum;
    fn add(self, rhs: &GoldenNum) -> GoldenNum {
        GoldenNum {
            x: Rational::from(&self.x + &rhs.x),
            y: Rational::from(&self.y + &rhs.y),
        }
    }
}

impl Sub<&GoldenNum> for &GoldenNum {
    type Output = GoldenNum;
    fn sub(self, rhs: &GoldenNum) -> GoldenNum {
        GoldenNum {
            x: Rational::from(&self.x - &rhs.x),
            y: Rational::from(&self.y - &rhs.y),
        }
    }
}

impl Mul<&GoldenNum> for &GoldenNum {
    type Output = GoldenNum;
    fn mul(self, rhs: &GoldenNum) -> GoldenNum {
        // (x1 + y1β)(x2 + y2β) = (x1x2 + y1y2) + (x1y2 + x2y1 + y1y2)β
        let yy = Rational::from(&self.y * &rhs.y);
        let x = Rational::from(&self.x * &rhs.x) + &yy;
        let y = Rational::from(&self.x * &rhs.y) + Rational::from(&rhs.x * &self.y) + yy;
        GoldenNum { x, y }
    }
}

impl Div<&GoldenNum> for &GoldenNum {
    type Output = GoldenNum;
    /// Panics on division by zero, like `Rational`; see [`GoldenNum::checked_div`].
    fn div(self, rhs: &GoldenNum) -> GoldenNum {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GoldenNum> for GoldenNum {
            type Output = GoldenNum;
            fn $m(self, rhs: GoldenNum) -> GoldenNum { (&self).$m(&rhs) }
        }
        impl $tr<&GoldenNum> for GoldenNum {
            type Output = GoldenNum;
            fn $m(self, rhs: &GoldenNum) -> GoldenNum { (&self).$m(rhs) }
        }
        impl $tr<GoldenNum> for &GoldenNum {
            type Output = GoldenNum;
            fn $m(self, rhs: GoldenNum) -> GoldenNum { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: i64, y: i64) -> GoldenNum {
        GoldenNum::new(x, y)
    }

    #[test]
    fn mul_reduces_beta_squared() {
        assert_eq!(g(1, 1) * g(1, 1), g(2, 3));
        assert_eq!(GoldenNum::beta() * GoldenNum::beta(), g(1, 1));
    }

    #[test]
    fn inverse_of_beta() {
        let r = GoldenNum::arith(ArithOp::Div, &GoldenNum::one(), &GoldenNum::beta()).unwrap();
        assert_eq!(r, g(-1, 1));
    }

    #[test]
    fn sqrt5_cancels() {
        assert!((g(-1, 2) + g(1, -2)).is_zero());
        assert_eq!(GoldenNum::sqrt5() * GoldenNum::sqrt5(), g(5, 0));
        assert_eq!(GoldenNum::sqrt5() * GoldenNum::inv_sqrt5(), GoldenNum::one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            GoldenNum::one().checked_div(&GoldenNum::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(GoldenNum::beta().conj(), g(1, -1));
        assert_eq!(GoldenNum::sqrt5().conj(), g(1, -2));
        let (a, b) = (g(1, 1), g(2, 1));
        // (1+β)(2+β) = 3 + 4β; its conjugate is 7 − 4β.
        assert_eq!(&a * &b, g(3, 4));
        assert_eq!((&a * &b).conj(), a.conj() * b.conj());
        assert_eq!((&a * &b).conj(), g(7, -4));
    }

    #[test]
    fn signs() {
        assert_eq!(g(1, -1).signum(), -1);
        assert_eq!(GoldenNum::zero().signum(), 0);
        assert_eq!(g(-4, 3).signum(), 1);
        assert_eq!(g(4, -3).signum(), -1);
        assert_eq!(g(-5, 3).signum(), -1);
        // β² − β − 1 = 0 in every representation
        assert_eq!((beta_pow(2) - GoldenNum::beta() - GoldenNum::one()).signum(), 0);
    }

    #[test]
    fn beta_powers() {
        assert_eq!(beta_pow(5), g(3, 5));
        assert_eq!(beta_pow(0), GoldenNum::one());
        assert_eq!(beta_pow(-1), g(-1, 1));
        assert_eq!(beta_pow(1), GoldenNum::beta());
        assert!((beta_pow(5).to_f64() - 11.090169943749474).abs() < 1e-12);
        assert_eq!(beta_pow(-7), GoldenNum::beta().pow(-7).unwrap());
    }

    #[test]
    fn float_rendering() {
        let b = GoldenNum::beta().to_float(53).to_f64();
        assert!((b - 1.618_033_988_7).abs() < 1e-10);
        let s5 = GoldenNum::sqrt5().to_float(53).to_f64();
        assert!((s5 - 2.236_067_977_4).abs() < 1e-10);
        assert!(GoldenNum::zero().to_float(53).is_zero());
        // β^−40 has coefficients of size F_40 that nearly cancel.
        let tiny = beta_pow(-40);
        let r = tiny.to_float(128);
        let five = Float::with_val(256, 5);
        let beta = Float::with_val(256, (Float::with_val(256, five.sqrt_ref()) + 1u32) / 2u32);
        let expect = Float::with_val(256, rug::ops::Pow::pow(&beta, -40i32));
        let diff = Float::with_val(256, &r - &expect);
        let rel = Float::with_val(256, &diff / &expect).to_f64().abs();
        assert!(rel < 1e-37, "{rel}");
    }

    #[test]
    fn parse_and_display() {
        let a: GoldenNum = "-2/5:1/5".parse().unwrap();
        assert_eq!(a, GoldenNum::new(Rational::from((-2, 5)), Rational::from((1, 5))));
        assert_eq!(g(2, -3).to_string(), "2 - 3β");
        assert_eq!("7".parse::<GoldenNum>().unwrap(), g(7, 0));
        assert!("x:1".parse::<GoldenNum>().is_err());
    }
}
