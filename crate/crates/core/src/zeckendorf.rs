//! Zeckendorf numeration: `n = Σ ε_j F_{j+2}` with no two adjacent ones.
//!
//! Words are stored least-significant digit first, so `bits[j]` is the
//! coefficient of `F_{j+2}`. Textual forms are most-significant first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `FIB[j] = F_{j+2}`; the last entry is the largest that fits in a `u64`.
pub const FIB: [u64; 92] = fib_table();

const fn fib_table() -> [u64; 92] {
    let mut t = [0u64; 92];
    t[0] = 1;
    t[1] = 2;
    let mut i = 2;
    while i < 92 {
        t[i] = t[i - 1] + t[i - 2];
        i += 1;
    }
    t
}

/// A canonical Zeckendorf digit word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZeckWord {
    bits: Vec<bool>,
}

impl ZeckWord {
    /// The empty word, which encodes 0.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a word from least-significant-first digits, validating it.
    pub fn from_lsb_digits(bits: Vec<bool>) -> Result<Self> {
        if bits.last() == Some(&false) {
            return Err(Error::InvalidWord("leading zero".into()));
        }
        if bits.windows(2).any(|w| w[0] && w[1]) {
            return Err(Error::InvalidWord("adjacent ones".into()));
        }
        Ok(ZeckWord { bits })
    }

    pub fn digits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `ε_j`, zero beyond the stored length.
    pub fn digit(&self, j: usize) -> bool {
        self.bits.get(j).copied().unwrap_or(false)
    }

    /// Indices `j` with `ε_j = 1`, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j)
    }

    /// Greedy encoding.
    pub fn encode(mut n: u64) -> Self {
        if n == 0 {
            return Self::empty();
        }
        let top = FIB.iter().rposition(|&f| f <= n).unwrap();
        let mut bits = vec![false; top + 1];
        for j in (0..=top).rev() {
            if FIB[j] <= n {
                bits[j] = true;
                n -= FIB[j];
            }
        }
        ZeckWord { bits }
    }

    pub fn decode(&self) -> Result<u64> {
        if self.bits.len() > FIB.len() {
            return Err(Error::Overflow);
        }
        self.ones()
            .try_fold(0u64, |acc, j| acc.checked_add(FIB[j]))
            .ok_or(Error::Overflow)
    }

    /// `e(n)`: the last digit `ε_0` (0 for the empty word).
    pub fn last_bit(&self) -> u8 {
        self.digit(0) as u8
    }

    /// Number of zero digits below the lowest one.
    pub fn trailing_zeros(&self) -> Result<usize> {
        self.bits.iter().position(|&b| b).ok_or(Error::EmptyWord)
    }

    /// `d(n)`: 0 when the word ends in 1, 1 for an odd number of trailing
    /// zeros, 2 for an even, positive number.
    pub fn classify_d(&self) -> Result<u8> {
        Ok(d_from_trailing_zeros(self.trailing_zeros()?))
    }

    /// Replaces the word by the encoding of its successor and returns the new
    /// trailing-zero count.
    ///
    /// Three suffix rewrites cover every case:
    /// `0(01)^i → 010^{2i−1}`, `0(01)^i0 → 010^{2i}`, and `00 → 01`.
    pub fn increment(&mut self) -> usize {
        if self.bits.is_empty() {
            self.bits.push(true);
            return 0;
        }
        if self.bits[0] {
            // ...0 (0 1)^i: ones at 0, 2, ..., 2i-2
            let mut i = 0;
            while self.digit(2 * i) {
                i += 1;
            }
            for k in 0..i {
                self.bits[2 * k] = false;
            }
            self.set(2 * i - 1);
            2 * i - 1
        } else if self.digit(1) {
            // ...0 (0 1)^i 0: ones at 1, 3, ..., 2i-1
            let mut i = 0;
            while self.digit(2 * i + 1) {
                i += 1;
            }
            for k in 0..i {
                self.bits[2 * k + 1] = false;
            }
            self.set(2 * i);
            2 * i
        } else {
            self.bits[0] = true;
            0
        }
    }

    pub fn successor(&self) -> Self {
        let mut w = self.clone();
        w.increment();
        w
    }

    fn set(&mut self, j: usize) {
        if j >= self.bits.len() {
            self.bits.resize(j + 1, false);
        }
        self.bits[j] = true;
    }

    /// Shifts every digit one place up (`F_{j+2} → F_{j+3}`).
    pub fn shifted(&self) -> Self {
        if self.bits.is_empty() {
            return Self::empty();
        }
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.push(false);
        bits.extend_from_slice(&self.bits);
        ZeckWord { bits }
    }
}

pub(crate) fn d_from_trailing_zeros(tz: usize) -> u8 {
    match tz {
        0 => 0,
        t if t % 2 == 1 => 1,
        _ => 2,
    }
}

/// Which digit-shift map to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauVariant {
    /// `τ₀(n) = Σ ε_j F_{j+3}`.
    Shift,
    /// `τ₁(n) = τ₀(n) + F_2`.
    ShiftPlusOne,
}

/// `τ₀` or `τ₁` as an integer. `n ≥ 1`.
pub fn tau_shift(n: u64, variant: TauVariant) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("tau maps are defined for n >= 1".into()));
    }
    let t0 = ZeckWord::encode(n).shifted().decode()?;
    match variant {
        TauVariant::Shift => Ok(t0),
        TauVariant::ShiftPlusOne => t0.checked_add(1).ok_or(Error::Overflow),
    }
}

/// MSB-first binary string; the empty word renders as "".
impl fmt::Display for ZeckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter().rev() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ZeckWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars().rev() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(Error::InvalidWord(format!("unexpected character {other:?}"))),
            }
        }
        ZeckWord::from_lsb_digits(bits)
    }
}

/// Streams `(n, word, trailing_zeros)` for consecutive `n` using the suffix
/// rewrites only.
#[derive(Clone, Debug)]
pub struct ZeckStream {
    n: u64,
    word: ZeckWord,
    tz: usize,
    started: bool,
}

impl ZeckStream {
    /// Starts at `n = start` (which must be at least 1).
    pub fn starting_at(start: u64) -> Self {
        assert!(start >= 1, "streams start at n >= 1");
        let word = ZeckWord::encode(start);
        let tz = word.trailing_zeros().unwrap();
        ZeckStream {
            n: start,
            word,
            tz,
            started: false,
        }
    }

    /// Advances and returns the current state.
    pub fn advance(&mut self) -> (u64, &ZeckWord, usize) {
        if self.started {
            self.tz = self.word.increment();
            self.n += 1;
        }
        self.started = true;
        (self.n, &self.word, self.tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enc(n: u64) -> String {
        ZeckWord::encode(n).to_string()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(enc(0), "");
        assert_eq!(enc(1), "1");
        assert_eq!(enc(100), "1000010100");
    }

    #[test]
    fn decode_examples() {
        assert_eq!("1".parse::<ZeckWord>().unwrap().decode().unwrap(), 1);
        assert_eq!("1010".parse::<ZeckWord>().unwrap().decode().unwrap(), 7);
        assert_eq!(ZeckWord::encode(1_000_000).decode().unwrap(), 1_000_000);
        assert_eq!("".parse::<ZeckWord>().unwrap().decode().unwrap(), 0);
    }

    #[test]
    fn invalid_words() {
        assert!(matches!("0101".parse::<ZeckWord>(), Err(Error::InvalidWord(_))));
        assert!(matches!("110".parse::<ZeckWord>(), Err(Error::InvalidWord(_))));
        assert!(matches!("12".parse::<ZeckWord>(), Err(Error::InvalidWord(_))));
    }

    #[test]
    fn successor_examples() {
        assert_eq!(ZeckWord::encode(4).successor().to_string(), "1000");
        assert_eq!(ZeckWord::empty().successor().to_string(), "1");
        assert_eq!(ZeckWord::encode(2).successor().to_string(), "100");
    }

    #[test]
    fn classify_examples() {
        let d = |n| ZeckWord::encode(n).classify_d().unwrap();
        assert_eq!(d(1), 0);
        assert_eq!(d(2), 1);
        assert_eq!(d(3), 2);
        assert_eq!(d(8), 2);
        assert_eq!(ZeckWord::empty().classify_d(), Err(Error::EmptyWord));
    }

    #[test]
    fn last_bit_and_trailing_zeros() {
        assert_eq!(ZeckWord::encode(1).last_bit(), 1);
        assert_eq!(ZeckWord::encode(2).last_bit(), 0);
        assert_eq!(ZeckWord::encode(4).last_bit(), 1);
        assert_eq!(ZeckWord::empty().last_bit(), 0);
        assert_eq!(ZeckWord::encode(1).trailing_zeros().unwrap(), 0);
        assert_eq!(ZeckWord::encode(5).trailing_zeros().unwrap(), 3);
        assert_eq!(ZeckWord::encode(7).trailing_zeros().unwrap(), 1);
        assert_eq!(ZeckWord::empty().trailing_zeros(), Err(Error::EmptyWord));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_shift(4, TauVariant::Shift).unwrap(), 7);
        assert_eq!(tau_shift(1, TauVariant::ShiftPlusOne).unwrap(), 3);
        assert_eq!(tau_shift(4, TauVariant::ShiftPlusOne).unwrap(), 8);
        assert!(tau_shift(0, TauVariant::Shift).is_err());
    }

    #[test]
    fn stream_matches_greedy() {
        let mut s = ZeckStream::starting_at(1);
        for n in 1..5000u64 {
            let (m, w, tz) = s.advance();
            assert_eq!(m, n);
            assert_eq!(*w, ZeckWord::encode(n));
            assert_eq!(tz, w.trailing_zeros().unwrap());
        }
    }

    #[test]
    fn largest_representable() {
        let w = ZeckWord::encode(u64::MAX);
        assert_eq!(w.decode().unwrap(), u64::MAX);
    }
}
