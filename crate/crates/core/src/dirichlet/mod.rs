//! Evaluation of the Dirichlet series over `δ(n)` and their continuations.
//!
//! `F(s) = Σ δ(n)^{−s}`; `G`, `I`, `J` restrict `n` to `d(n) = 0, 1, 2`;
//! `H` sums over the shifted positions `βδ(n) + β²/√5`.

mod binom;
pub(crate) mod classes;
mod continuation;
mod direct;
mod kseries;
mod poles;
mod zeta;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use rug::Float;

use crate::bigfloat::BigFloatComplex;
use crate::error::{Error, Result};
use crate::golden::GoldenNum;
use crate::sequences::delta_exact;

pub use binom::binom_coeffs;
pub use classes::{class_stats, Class, ClassStats, STATS_WINDOW};
pub use continuation::{Residue, MAX_M, MIN_RE};
pub use poles::{denominator, pole_zeros, LatticePoint, PoleLine};
pub use zeta::{zeta_ref, ZetaRelation};

/// Distance below which the continuation denominator counts as zero.
pub const POLE_THRESHOLD: f64 = 1e-6;

pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_TERMS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesId {
    F,
    G,
    H,
    I,
    J,
}

impl SeriesId {
    pub const ALL: [SeriesId; 5] = [SeriesId::F, SeriesId::G, SeriesId::H, SeriesId::I, SeriesId::J];

    pub fn class(self) -> Class {
        match self {
            SeriesId::F => Class::All,
            SeriesId::G => Class::D0,
            SeriesId::H => Class::Shifted,
            SeriesId::I => Class::D1,
            SeriesId::J => Class::D2,
        }
    }

    /// Residue at `s = 1`.
    pub fn residue_at_one(self) -> f64 {
        let ib = 1.0 / crate::golden::BETA_F64;
        match self {
            SeriesId::F => 1.0,
            SeriesId::G | SeriesId::I => 1.0 - ib,
            SeriesId::H => ib,
            SeriesId::J => ib - ib * ib,
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for SeriesId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(SeriesId::F),
            "G" => Ok(SeriesId::G),
            "H" => Ok(SeriesId::H),
            "I" => Ok(SeriesId::I),
            "J" => Ok(SeriesId::J),
            _ => Err(Error::Config(format!("unknown series {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Continuation,
    KSeries,
    PSeries,
    QSeries,
    ZetaRelation,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Continuation => "continuation",
            Method::KSeries => "k_series",
            Method::PSeries => "p_series",
            Method::QSeries => "q_series",
            Method::ZetaRelation => "zeta_relation",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    pub value: BigFloatComplex,
    pub error_bound: f64,
    pub terms_used: u64,
    pub method: Method,
    /// Length of the binomial series, 0 when none was used.
    pub truncation_m: usize,
}

impl EvalResult {
    pub fn re(&self) -> f64 {
        self.value.re_f64()
    }
}

/// Frequently used constants at the working precision.
#[derive(Clone, Debug)]
pub(crate) struct Consts {
    pub ln_beta: Float,
    /// `β/√5`.
    pub beta_over_sqrt5: Float,
    pub ln_delta1: Float,
    pub ln_delta2: Float,
}

/// Series evaluator at a fixed working precision.
#[derive(Debug)]
pub struct Evaluator {
    prec: u32,
    max_terms: u64,
    consts: Consts,
    memo: RwLock<HashMap<String, EvalResult>>,
}

impl Evaluator {
    pub fn new(prec: u32) -> Result<Self> {
        if !(53..=4096).contains(&prec) {
            return Err(Error::Config(format!("precision {prec} outside 53..=4096 bits")));
        }
        let ln = |g: &GoldenNum| Float::with_val(prec, g.to_float(prec + 16).ln_ref());
        let consts = Consts {
            ln_beta: ln(&GoldenNum::beta()),
            beta_over_sqrt5: crate::sequences::step_short().to_float(prec),
            ln_delta1: ln(&delta_exact(1)?.delta),
            ln_delta2: ln(&delta_exact(2)?.delta),
        };
        Ok(Evaluator {
            prec,
            max_terms: DEFAULT_TERMS,
            consts,
            memo: RwLock::new(HashMap::new()),
        })
    }

    /// Caps the number of terms used by tolerance-driven direct sums.
    pub fn with_max_terms(mut self, n: u64) -> Self {
        self.max_terms = n.max(1000);
        self
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    /// Rounds `s` to the working precision.
    pub fn point(&self, re: f64, im: f64) -> BigFloatComplex {
        BigFloatComplex::from_f64(self.prec, re, im)
    }

    /// `β^{−s}`.
    pub fn beta_pow_neg(&self, s: &BigFloatComplex) -> BigFloatComplex {
        s.with_prec(self.prec).pow_neg_from_ln(&self.consts.ln_beta)
    }

    pub(crate) fn memo_get(&self, key: &str) -> Option<EvalResult> {
        self.memo.read().unwrap().get(key).cloned()
    }

    pub(crate) fn memo_put(&self, key: String, r: &EvalResult) {
        self.memo.write().unwrap().insert(key, r.clone());
    }

    /// Relative rounding error per arithmetic operation.
    pub(crate) fn unit_roundoff(&self) -> f64 {
        2f64.powi(-(self.prec as i32) + 1)
    }
}

pub(crate) fn memo_key(tag: &str, s: &BigFloatComplex, extra: &str) -> String {
    format!(
        "{tag}|{}|{}|{extra}",
        s.re().to_string_radix(16, None),
        s.im().to_string_radix(16, None)
    )
}

/// Upper bound on `F(σ)` for real `σ > 1`, from `δ(n) ≥ n − 1/(β√5)`.
pub(crate) fn f_upper_bound(sigma: f64) -> f64 {
    let d1: f64 = 1.170_820_393_249_937;
    let d2: f64 = 1.894_427_190_999_916;
    let shift: f64 = 1.0 - 0.276_393_202_250_021;
    d1.powf(-sigma) + d2.powf(-sigma) + (1.0 + shift).powf(1.0 - sigma) / (sigma - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_parse() {
        assert_eq!("H".parse::<SeriesId>().unwrap(), SeriesId::H);
        assert!("K".parse::<SeriesId>().is_err());
        assert_eq!(Method::KSeries.name(), "k_series");
    }

    #[test]
    fn bound_dominates_value() {
        let ev = Evaluator::new(64).unwrap().with_max_terms(20_000);
        for sigma in [1.5, 2.0, 3.0, 6.0] {
            let v = ev.direct_sum(SeriesId::F, &ev.point(sigma, 0.0), 20_000).unwrap();
            assert!(v.re() < f_upper_bound(sigma), "{sigma}");
        }
    }

    #[test]
    fn precision_range() {
        assert!(matches!(Evaluator::new(16), Err(Error::Config(_))));
    }
}
