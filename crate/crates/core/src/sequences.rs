//! Exact δ(n), δ′(n) and the morphic sequences derived from d(n).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::golden::{beta_pow, GoldenNum};
use crate::zeckendorf::{d_from_trailing_zeros, ZeckStream, ZeckWord};

/// The integer sequences built from Zeckendorf suffixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeqId {
    /// Infinite Fibonacci word.
    F,
    /// Trailing-zero class.
    D,
    /// First differences `f(n) − f(n+1)`.
    H,
    R,
    S,
    T,
}

impl SeqId {
    pub const ALL: [SeqId; 6] = [SeqId::F, SeqId::D, SeqId::H, SeqId::R, SeqId::S, SeqId::T];

    pub fn name(self) -> &'static str {
        match self {
            SeqId::F => "f",
            SeqId::D => "d",
            SeqId::H => "h",
            SeqId::R => "r",
            SeqId::S => "s",
            SeqId::T => "t",
        }
    }

    /// The coding applied to `(d(n), trailing_zeros(n))`.
    pub fn code(self, d: u8, trailing_zeros: usize) -> i64 {
        match self {
            SeqId::F => (d == 1) as i64,
            SeqId::D => d as i64,
            SeqId::H => [-1, 1, 0][d as usize],
            SeqId::R => [0, 1, -1][d as usize],
            SeqId::T => [1, 0, 2][d as usize],
            SeqId::S => {
                if d != 1 {
                    -1
                } else if trailing_zeros == 1 {
                    2
                } else {
                    1
                }
            }
        }
    }
}

impl fmt::Display for SeqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeqId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeqId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown sequence {s:?}")))
    }
}

/// Exact `δ(n)` and `δ′(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPair {
    pub delta: GoldenNum,
    pub delta_prime: GoldenNum,
}

fn beta_table() -> &'static [GoldenNum] {
    static TABLE: OnceLock<Vec<GoldenNum>> = OnceLock::new();
    TABLE.get_or_init(|| (0..100).map(beta_pow).collect())
}

/// `δ(n) = (1/√5) Σ ε_j β^{j+2}` and `δ′(n) = −conj(δ(n))`, exactly.
pub fn delta_exact(n: u64) -> Result<DeltaPair> {
    if n == 0 {
        return Err(Error::Domain("delta is evaluated for n >= 1".into()));
    }
    Ok(delta_of_word(&ZeckWord::encode(n)))
}

pub fn delta_of_word(w: &ZeckWord) -> DeltaPair {
    let table = beta_table();
    let mut sum = GoldenNum::zero();
    for j in w.ones() {
        sum = &sum + &table[j + 2];
    }
    let delta = &sum * &GoldenNum::inv_sqrt5();
    let delta_prime = -delta.conj();
    DeltaPair { delta, delta_prime }
}

/// `β²/√5`, the increment of δ after a word ending in 0.
pub fn step_long() -> GoldenNum {
    &beta_pow(2) * &GoldenNum::inv_sqrt5()
}

/// `β/√5`, the increment of δ after a word ending in 1.
pub fn step_short() -> GoldenNum {
    &GoldenNum::beta() * &GoldenNum::inv_sqrt5()
}

/// One term of a coded sequence. `n ≥ 1`.
pub fn seq_term(id: SeqId, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("sequences are 1-indexed".into()));
    }
    let tz = ZeckWord::encode(n).trailing_zeros()?;
    Ok(id.code(d_from_trailing_zeros(tz), tz))
}

/// First `count` terms of a coded sequence, streamed.
pub fn seq_range(id: SeqId, from: u64, to: u64) -> Result<Vec<i64>> {
    if from == 0 || to < from {
        return Err(Error::Domain(format!("invalid range {from}..={to}")));
    }
    let mut s = ZeckStream::starting_at(from);
    Ok((from..=to)
        .map(|_| {
            let (_, _, tz) = s.advance();
            id.code(d_from_trailing_zeros(tz), tz)
        })
        .collect())
}

/// How to generate the Fibonacci word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibRoute {
    /// Two-state automaton reading Zeckendorf(n) most-significant first.
    Automaton,
    /// The `f` coding applied to the `d` stream.
    Coding,
    /// Fixed point of `0 → 01, 1 → 0`.
    Morphism,
    /// Dual automaton reading Zeckendorf(n − 1): outputs the last digit.
    Predecessor,
}

/// Runs the two-state automaton on a word (MSB first). State 1 means an odd
/// number of zeros has been read since the last one; a one resets to 0.
pub fn fib_automaton(w: &ZeckWord) -> u8 {
    let mut state = 0u8;
    for &b in w.digits().iter().rev() {
        state = if b { 0 } else { 1 - state };
    }
    state
}

pub fn fib_word_stream(route: FibRoute, count: usize) -> Vec<u8> {
    match route {
        FibRoute::Automaton => (1..=count as u64)
            .map(|n| fib_automaton(&ZeckWord::encode(n)))
            .collect(),
        FibRoute::Coding => DStream::new().take(count).map(|d| (d == 1) as u8).collect(),
        FibRoute::Morphism => {
            let mut word = vec![0u8];
            while word.len() < count {
                let mut next = Vec::with_capacity(word.len() * 2);
                for &c in &word {
                    if c == 0 {
                        next.extend_from_slice(&[0, 1]);
                    } else {
                        next.push(0);
                    }
                }
                word = next;
            }
            word.truncate(count);
            word
        }
        FibRoute::Predecessor => {
            let mut w = ZeckWord::empty();
            (0..count)
                .map(|_| {
                    let bit = w.last_bit();
                    w.increment();
                    bit
                })
                .collect()
        }
    }
}

/// Streams `d(1), d(2), …` with successor rewrites only.
#[derive(Clone, Debug)]
pub struct DStream {
    inner: ZeckStream,
}

impl DStream {
    pub fn new() -> Self {
        Self::starting_at(1)
    }

    pub fn starting_at(n: u64) -> Self {
        DStream {
            inner: ZeckStream::starting_at(n),
        }
    }
}

impl Default for DStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for DStream {
    type Item = u8;
    fn next(&mut self) -> Option<u8> {
        let (_, _, tz) = self.inner.advance();
        Some(d_from_trailing_zeros(tz))
    }
}

pub fn d_stream(count: usize) -> Vec<u8> {
    DStream::new().take(count).collect()
}

/// Exact fractional part `{βn}` in ℚ(β).
pub fn frac_beta(n: u64) -> Result<GoldenNum> {
    let dp = delta_exact(n)?.delta_prime;
    let scaled = &GoldenNum::sqrt5() * &dp;
    let frac = if dp.signum() > 0 {
        &GoldenNum::one() - &scaled
    } else {
        -scaled
    };
    debug_assert!(frac.signum() > 0 && (&frac - &GoldenNum::one()).signum() < 0);
    Ok(frac)
}
