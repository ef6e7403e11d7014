//! Comparison of generated sequences against published b-files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::{Entry, Report, Status, SuiteParams};
use crate::bfile::{read_bfile, BFile};
use crate::error::{Error, Result};
use crate::sequences::{seq_range, SeqId};

/// Offsets tried when none is given.
pub const OFFSET_SEARCH: std::ops::RangeInclusive<i64> = -3..=3;
const MISMATCH_LIST: usize = 10;

/// Relabelling applied to b-file values before comparison. Values without a
/// rule pass through unchanged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coding {
    map: BTreeMap<i64, i64>,
}

impl Coding {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        Coding {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn apply(&self, v: i64) -> i64 {
        self.map.get(&v).copied().unwrap_or(v)
    }
}

/// Parses `"1:0,2:1,3:2"`; `->` and `→` also separate the two sides.
impl FromStr for Coding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for rule in s.split(',').map(str::trim).filter(|r| !r.is_empty()) {
            let norm = rule.replace("->", ":").replace('→', ":");
            let (a, b) = norm
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("coding rule {rule:?} is not of the form a:b")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Config(format!("coding rule {rule:?} has a non-integer side")))
            };
            if map.insert(parse(a)?, parse(b)?).is_some() {
                return Err(Error::Config(format!("coding maps {a} twice")));
            }
        }
        Ok(Coding { map })
    }
}

impl fmt::Display for Coding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return f.write_str("identity");
        }
        let rules: Vec<String> = self.map.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        f.write_str(&rules.join(","))
    }
}

struct Comparison {
    offset: i64,
    agree: usize,
    mismatches: Vec<(i64, i64, i64)>,
}

/// Compares the first `limit` file entries with the generated sequence, where
/// file index `i` is matched with term `i + offset`.
fn compare(file: &BFile, id: SeqId, coding: &Coding, limit: usize, offset: i64) -> Result<Option<Comparison>> {
    let rows = &file.entries[..limit];
    let lo = rows[0].0 + offset;
    let hi = rows[limit - 1].0 + offset;
    if lo < 1 {
        return Ok(None);
    }
    let terms = seq_range(id, lo as u64, hi as u64)?;
    let mut agree = 0;
    let mut mismatches = Vec::new();
    for &(i, v) in rows {
        let ours = terms[(i + offset - lo) as usize];
        let theirs = coding.apply(v);
        if ours == theirs {
            agree += 1;
        } else if mismatches.len() < MISMATCH_LIST {
            mismatches.push((i, theirs, ours));
        }
    }
    Ok(Some(Comparison {
        offset,
        agree,
        mismatches,
    }))
}

fn describe(c: &Comparison, limit: usize) -> String {
    let mut out = format!("{} of {limit} agree at offset {}", c.agree, c.offset);
    if !c.mismatches.is_empty() {
        let list: Vec<String> = c
            .mismatches
            .iter()
            .map(|(i, theirs, ours)| format!("{i} (file {theirs}, generated {ours})"))
            .collect();
        out.push_str(&format!("; first mismatches at file index {}", list.join(", ")));
    }
    out
}

/// Cross-checks a b-file against a generated sequence. With `offset` given
/// the agreement entry is pass/fail; otherwise the offset is inferred and
/// the result is informational.
pub fn bfile_crosscheck(
    path: impl AsRef<Path>,
    id: SeqId,
    coding: &Coding,
    limit: usize,
    offset: Option<i64>,
) -> Result<Report> {
    let file = read_bfile(path)?;
    bfile_crosscheck_parsed(&file, id, coding, limit, offset)
}

/// [`bfile_crosscheck`] on an already parsed file.
pub fn bfile_crosscheck_parsed(
    file: &BFile,
    id: SeqId,
    coding: &Coding,
    limit: usize,
    offset: Option<i64>,
) -> Result<Report> {
    if limit == 0 {
        return Err(Error::Domain("limit must be positive".into()));
    }
    if limit > file.len() {
        return Err(Error::Domain(format!(
            "limit {limit} exceeds the {} entries in the file",
            file.len()
        )));
    }
    let mut report = Report::new("crosscheck", SuiteParams::default());
    let claim = format!("b-file values under coding {coding} equal the {} sequence", id.name());
    report.timed(|| {
        let mut es = vec![
            Entry::new("entries_read", "the b-file parses", Status::Informational).values(
                format!(
                    "{} entries, first index {}",
                    file.len(),
                    file.first_index().unwrap_or(0)
                ),
                format!("at least {limit}"),
                "exact",
            ),
        ];
        match offset {
            Some(o) => {
                let c = compare(file, id, coding, limit, o)?
                    .ok_or_else(|| Error::Domain(format!("offset {o} maps file indices below 1")))?;
                es.push(
                    Entry::new("agreement", &claim, Status::from_ok(c.agree == limit)).values(
                        describe(&c, limit),
                        format!("{limit} of {limit}"),
                        "exact",
                    ),
                );
            }
            None => {
                let mut all = Vec::new();
                for o in OFFSET_SEARCH {
                    if let Some(c) = compare(file, id, coding, limit, o)? {
                        all.push(c);
                    }
                }
                let best_agree = all.iter().map(|c| c.agree).max().unwrap_or(0);
                let best: Vec<&Comparison> = all.iter().filter(|c| c.agree == best_agree).collect();
                let scores: Vec<String> = all.iter().map(|c| format!("{}:{}", c.offset, c.agree)).collect();
                let verdict = match best.as_slice() {
                    [c] if c.agree == limit => format!("offset {} (unique full agreement)", c.offset),
                    [c] => format!("offset {} (best partial agreement)", c.offset),
                    _ => "ambiguous".to_string(),
                };
                es.push(
                    Entry::new(
                        "inferred_offset",
                        "generated index = file index + offset",
                        Status::Informational,
                    )
                    .values(verdict, format!("agreement by offset {}", scores.join(" ")), "exact"),
                );
                if let Some(c) = best.first() {
                    es.push(Entry::new("agreement", &claim, Status::Informational).values(
                        describe(c, limit),
                        format!("{limit} of {limit}"),
                        "exact",
                    ));
                }
            }
        }
        Ok(es)
    })?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfile::parse_bfile;

    fn fib_word_file(count: i64) -> BFile {
        // Beatty form of the Fibonacci word, indexed from 0.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let text: String = (0..count)
            .map(|i| {
                let v = 1 + ((i + 1) as f64 / phi).floor() as i64 - ((i + 2) as f64 / phi).floor() as i64;
                format!("{i} {v}\n")
            })
            .collect();
        parse_bfile(&text).unwrap()
    }

    #[test]
    fn coding_parses() {
        let c: Coding = "1:0, 2->1, 3→2".parse().unwrap();
        assert_eq!((c.apply(1), c.apply(2), c.apply(3), c.apply(7)), (0, 1, 2, 7));
        assert_eq!(c.to_string(), "1:0,2:1,3:2");
        assert!("1:0,1:2".parse::<Coding>().is_err());
        assert!("1=0".parse::<Coding>().is_err());
    }

    #[test]
    fn fibonacci_word_agrees_at_offset_one() {
        let file = fib_word_file(2000);
        let r = bfile_crosscheck_parsed(&file, SeqId::F, &Coding::identity(), 2000, Some(1)).unwrap();
        assert!(r.passed(), "{r}");
        let r = bfile_crosscheck_parsed(&file, SeqId::F, &Coding::identity(), 2000, None).unwrap();
        assert!(r
            .entry("inferred_offset")
            .unwrap()
            .measured
            .starts_with("offset 1 (unique"));
        let r = bfile_crosscheck_parsed(&file, SeqId::F, &Coding::identity(), 2000, Some(2)).unwrap();
        assert!(!r.passed());
        assert!(r.entry("agreement").unwrap().measured.contains("first mismatches"));
    }

    #[test]
    fn limit_is_checked() {
        let file = fib_word_file(10);
        assert!(bfile_crosscheck_parsed(&file, SeqId::F, &Coding::identity(), 11, None).is_err());
        assert!(bfile_crosscheck_parsed(&file, SeqId::F, &Coding::identity(), 0, None).is_err());
    }
}
