//! Batch checks of the identities implemented by the library, with
//! structured reports.

mod analytic;
mod crosscheck;
mod exact;
mod telescoping;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bigfloat::BigFloatComplex;
use crate::error::{Error, Result};

pub use crosscheck::{bfile_crosscheck, bfile_crosscheck_parsed, Coding};
pub use telescoping::{telescoping_sums, SumKind, TelescopingSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Informational,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Informational => "informational",
        }
    }
}

/// One check. Numbers are kept as decimal strings so no precision is lost on
/// the way to JSON.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub check_id: String,
    /// Plain statement of what is checked, or "invented" for plumbing checks.
    pub claim: String,
    pub status: Status,
    pub measured: String,
    pub expected: String,
    pub tolerance: String,
    pub runtime_ms: f64,
}

impl Entry {
    pub fn new(check_id: &str, claim: &str, status: Status) -> Self {
        Entry {
            check_id: check_id.to_string(),
            claim: claim.to_string(),
            status,
            measured: String::new(),
            expected: String::new(),
            tolerance: String::new(),
            runtime_ms: 0.0,
        }
    }

    pub fn values(
        mut self,
        measured: impl Into<String>,
        expected: impl Into<String>,
        tolerance: impl Into<String>,
    ) -> Self {
        self.measured = measured.into();
        self.expected = expected.into();
        self.tolerance = tolerance.into();
        self
    }

    /// Counts of failures out of a total for exhaustive checks.
    pub fn counted(check_id: &str, claim: &str, failures: u64, total: u64) -> Self {
        Entry::new(check_id, claim, Status::from_ok(failures == 0)).values(
            format!("{failures} failures / {total}"),
            "0 failures",
            "exact",
        )
    }

    pub fn within(check_id: &str, claim: &str, measured: &str, expected: &str, err: f64, tol: f64) -> Self {
        Entry::new(check_id, claim, Status::from_ok(err < tol)).values(measured, expected, fmt_f64(tol))
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub params: SuiteParams,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(suite: &str, params: SuiteParams) -> Self {
        Report {
            suite: suite.to_string(),
            params,
            entries: Vec::new(),
        }
    }

    /// Runs `f` and records its wall time on the produced entries.
    pub fn timed<F>(&mut self, f: F) -> Result<()>
    where
        F: FnOnce() -> Result<Vec<Entry>>,
    {
        let t = Instant::now();
        let mut es = f()?;
        let ms = t.elapsed().as_secs_f64() * 1e3 / es.len().max(1) as f64;
        for e in &mut es {
            e.runtime_ms = ms;
        }
        self.entries.extend(es);
        Ok(())
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// True when no entry failed; informational entries do not count.
    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn entry(&self, check_id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    pub fn total_runtime_ms(&self) -> f64 {
        self.entries.iter().map(|e| e.runtime_ms).sum()
    }

    /// JSON payload; with `include_runtime == false` it is byte-identical
    /// across runs with the same parameters.
    pub fn to_json(&self, include_runtime: bool) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = serde_json::to_value(e).expect("entries serialize");
                if !include_runtime {
                    v.as_object_mut().unwrap().remove("runtime_ms");
                }
                v
            })
            .collect();
        json!({
            "schema_version": 1,
            "suite": self.suite,
            "params": self.params.to_json(),
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "informational": self.count(Status::Informational),
            },
            "entries": entries,
        })
    }

    pub fn to_text(&self) -> String {
        let clip = |s: &str, w: usize| {
            if s.chars().count() > w {
                let mut t: String = s.chars().take(w - 1).collect();
                t.push('…');
                t
            } else {
                s.to_string()
            }
        };
        let mut out = format!("suite {}\n", self.suite);
        out += &format!(
            "{:<28} {:<13} {:<34} {:<34} {:<10}\n",
            "check", "status", "measured", "expected", "tolerance"
        );
        for e in &self.entries {
            out += &format!(
                "{:<28} {:<13} {:<34} {:<34} {:<10}\n",
                clip(&e.check_id, 28),
                e.status.name(),
                clip(&e.measured, 34),
                clip(&e.expected, 34),
                clip(&e.tolerance, 10)
            );
        }
        out += &format!(
            "{} pass, {} fail, {} informational\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Informational)
        );
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Arithmetic,
    Sequences,
    Sets,
    FunctionalEquations,
    Residues,
    Telescoping,
    Poles,
    ZetaRelation,
    KLimits,
    Continuation,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Arithmetic,
        Suite::Sequences,
        Suite::Sets,
        Suite::FunctionalEquations,
        Suite::Residues,
        Suite::Telescoping,
        Suite::Poles,
        Suite::ZetaRelation,
        Suite::KLimits,
        Suite::Continuation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Arithmetic => "arithmetic",
            Suite::Sequences => "sequences",
            Suite::Sets => "sets",
            Suite::FunctionalEquations => "functional_equations",
            Suite::Residues => "residues",
            Suite::Telescoping => "telescoping",
            Suite::Poles => "poles",
            Suite::ZetaRelation => "zeta_relation",
            Suite::KLimits => "k_limits",
            Suite::Continuation => "continuation",
        }
    }

    /// What `n_max` means for the suite when not given: an index bound for
    /// the exact suites, a term count for the analytic ones.
    pub fn default_n_max(self) -> u64 {
        match self {
            Suite::Arithmetic | Suite::Sets => 100_000,
            Suite::Sequences | Suite::FunctionalEquations | Suite::Telescoping | Suite::ZetaRelation => 1_000_000,
            Suite::Residues | Suite::Poles | Suite::KLimits | Suite::Continuation => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteParams {
    /// Index bound or term count; `None` picks the suite default.
    pub n_max: Option<u64>,
    pub precision_bits: u32,
    pub tol: f64,
    /// Richardson levels for the telescoping sums.
    pub levels: u8,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            n_max: None,
            precision_bits: crate::dirichlet::DEFAULT_PRECISION,
            tol: 1e-6,
            levels: 2,
        }
    }
}

pub const MAX_N: u64 = 100_000_000;

impl SuiteParams {
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.n_max {
            if n == 0 || n > MAX_N {
                return Err(Error::Config(format!("n_max must lie in 1..={MAX_N}, got {n}")));
            }
        }
        if !(64..=4096).contains(&self.precision_bits) {
            return Err(Error::Config(format!(
                "precision must lie in 64..=4096 bits, got {}",
                self.precision_bits
            )));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Config(format!("tol must lie in (0, 1), got {}", self.tol)));
        }
        if !(1..=3).contains(&self.levels) {
            return Err(Error::Config(format!("levels must be 1, 2 or 3, got {}", self.levels)));
        }
        Ok(())
    }

    pub fn n_for(&self, suite: Suite) -> u64 {
        self.n_max.unwrap_or_else(|| suite.default_n_max())
    }

    fn to_json(self) -> Value {
        json!({
            "n_max": self.n_max.map(|n| n.to_string()),
            "precision_bits": self.precision_bits.to_string(),
            "tol": fmt_f64(self.tol),
            "levels": self.levels.to_string(),
        })
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<Report> {
    params.validate()?;
    let n = params.n_for(suite);
    let mut report = Report::new(suite.name(), *params);
    match suite {
        Suite::Arithmetic => exact::arithmetic(&mut report, n)?,
        Suite::Sequences => exact::sequences(&mut report, n)?,
        Suite::Sets => exact::sets(&mut report, n)?,
        Suite::FunctionalEquations => analytic::functional_equations(&mut report, params, n)?,
        Suite::Residues => analytic::residues(&mut report, params)?,
        Suite::Telescoping => telescoping::suite(&mut report, params, n)?,
        Suite::Poles => analytic::poles(&mut report, params)?,
        Suite::ZetaRelation => analytic::zeta_relation(&mut report, params, n)?,
        Suite::KLimits => analytic::k_limits(&mut report, params)?,
        Suite::Continuation => analytic::continuation(&mut report, params)?,
    }
    Ok(report)
}

/// Shortest round-trip rendering of an `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

/// Full-precision rendering of a complex value.
pub fn fmt_c(z: &BigFloatComplex) -> String {
    z.to_string()
}

/// `value ± bound`, used wherever a computed value is printed.
pub fn fmt_bounded(z: &BigFloatComplex, bound: f64) -> String {
    format!("{} ± {:.3e}", fmt_c(z), bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn params_are_validated() {
        let mut p = SuiteParams::default();
        assert!(p.validate().is_ok());
        p.n_max = Some(MAX_N + 1);
        assert!(matches!(run_suite(Suite::Arithmetic, &p), Err(Error::Config(_))));
        p = SuiteParams {
            precision_bits: 32,
            ..SuiteParams::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn informational_entries_do_not_fail() {
        let mut r = Report::new("x", SuiteParams::default());
        r.entries.push(Entry::new("a", "invented", Status::Informational));
        r.entries.push(Entry::counted("b", "invented", 0, 10));
        assert!(r.passed());
        r.entries.push(Entry::counted("c", "invented", 1, 10));
        assert!(!r.passed());
        let j = r.to_json(false);
        assert_eq!(j["schema_version"], 1);
        assert_eq!(j["summary"]["fail"], 1);
        assert!(j["entries"][0].get("runtime_ms").is_none());
    }
}
