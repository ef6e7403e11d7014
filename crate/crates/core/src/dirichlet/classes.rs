//! Index classes of the series, cached log-positions and the statistics used
//! for tail compensation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rug::Float;

use crate::golden::{beta_pow, GoldenNum};
use crate::summation::CHUNK;
use crate::zeckendorf::{d_from_trailing_zeros, ZeckStream, FIB};

/// Index set and position map of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    /// All `n`, positions `δ(n)`.
    All,
    /// `d(n) = 0`, positions `δ(n)`.
    D0,
    /// `d(n) = 1`, positions `δ(n)`.
    D1,
    /// `d(n) = 2`, positions `δ(n)`.
    D2,
    /// All `n`, positions `βδ(n) + β²/√5`.
    Shifted,
}

impl Class {
    pub fn for_d(i: u8) -> Class {
        match i {
            0 => Class::D0,
            1 => Class::D1,
            2 => Class::D2,
            _ => Class::All,
        }
    }

    /// Exact density of the positions on the real line.
    pub fn density(self) -> f64 {
        let inv_beta = 1.0 / crate::golden::BETA_F64;
        match self {
            Class::All => 1.0,
            Class::D0 | Class::D1 => 1.0 - inv_beta,
            Class::D2 => inv_beta - inv_beta * inv_beta,
            Class::Shifted => inv_beta,
        }
    }

    /// The density as an exact element of ℚ(β).
    pub fn density_exact(self) -> GoldenNum {
        match self {
            Class::All => GoldenNum::one(),
            Class::D0 | Class::D1 => GoldenNum::new(2, -1),
            Class::D2 => GoldenNum::new(-3, 2),
            Class::Shifted => GoldenNum::new(-1, 1),
        }
    }

    pub(crate) fn kind(self) -> Kind {
        match self {
            Class::Shifted => Kind::Shifted,
            _ => Kind::Delta,
        }
    }

    pub(crate) fn accepts(self, d: u8) -> bool {
        match self {
            Class::All | Class::Shifted => true,
            Class::D0 => d == 0,
            Class::D1 => d == 1,
            Class::D2 => d == 2,
        }
    }

    /// Smallest index in the class.
    pub fn first_index(self) -> u64 {
        match self {
            Class::D1 => 2,
            Class::D2 => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Kind {
    Delta,
    Shifted,
}

/// `(−β)^{−j−2}/√5` for every digit position, at `prec` bits.
fn conj_table(prec: u32) -> Vec<Float> {
    let inv_sqrt5 = GoldenNum::inv_sqrt5();
    (0..FIB.len() + 2)
        .map(|j| {
            let j = j as i64;
            let sign = if j % 2 == 0 {
                GoldenNum::one()
            } else {
                -GoldenNum::one()
            };
            let v = &(&sign * &beta_pow(-j - 2)) * &inv_sqrt5;
            v.to_float(prec)
        })
        .collect()
}

/// One block of `CHUNK` consecutive indices starting at `lo`.
pub(crate) struct Chunk {
    pub lo: u64,
    pub ln_pos: Vec<Float>,
    pub d: Vec<u8>,
}

fn build_chunk(prec: u32, kind: Kind, table: &[Float], lo: u64) -> Chunk {
    let mut stream = ZeckStream::starting_at(lo);
    let mut ln_pos = Vec::with_capacity(CHUNK as usize);
    let mut d = Vec::with_capacity(CHUNK as usize);
    for _ in 0..CHUNK {
        let (n, w, tz) = stream.advance();
        d.push(d_from_trailing_zeros(tz));
        let mut pos = Float::new(prec + 16);
        let int_part = match kind {
            Kind::Delta => {
                for j in w.ones() {
                    pos += &table[j];
                }
                n
            }
            Kind::Shifted => {
                // βδ(n) + β²/√5 = δ(τ₁(n)), whose word is the shift of n's
                // word with the lowest digit set.
                pos += &table[0];
                let mut m = 1u64;
                for j in w.ones() {
                    pos += &table[j + 1];
                    m += FIB[j + 1];
                }
                m
            }
        };
        pos += int_part;
        ln_pos.push(Float::with_val(prec, pos.ln_ref()));
    }
    Chunk { lo, ln_pos, d }
}

type TableKey = (u32, Kind);

struct Store {
    conj: HashMap<u32, Arc<Vec<Float>>>,
    chunks: HashMap<TableKey, Vec<Arc<Chunk>>>,
}

fn store() -> &'static Mutex<Store> {
    static STORE: OnceLock<Mutex<Store>> = OnceLock::new();
    STORE.get_or_init(|| {
        Mutex::new(Store {
            conj: HashMap::new(),
            chunks: HashMap::new(),
        })
    })
}

pub(crate) fn conj_floats(prec: u32) -> Arc<Vec<Float>> {
    let mut st = store().lock().unwrap();
    st.conj
        .entry(prec)
        .or_insert_with(|| Arc::new(conj_table(prec + 16)))
        .clone()
}

/// Chunks covering indices `1..=n`, built on first use and cached.
pub(crate) fn chunks_upto(prec: u32, kind: Kind, n: u64) -> Vec<Arc<Chunk>> {
    let needed = n.div_ceil(CHUNK) as usize;
    let table = conj_floats(prec);
    let have = {
        let st = store().lock().unwrap();
        st.chunks.get(&(prec, kind)).map_or(0, |v| v.len())
    };
    if have < needed {
        let fresh: Vec<Arc<Chunk>> = (have..needed)
            .into_par_iter()
            .map(|k| Arc::new(build_chunk(prec, kind, &table, 1 + k as u64 * CHUNK)))
            .collect();
        let mut st = store().lock().unwrap();
        let v = st.chunks.entry((prec, kind)).or_default();
        // Another thread may have extended the table meanwhile.
        if v.len() == have {
            v.extend(fresh);
        }
    }
    let st = store().lock().unwrap();
    st.chunks[&(prec, kind)][..needed].to_vec()
}

/// Offset and fluctuation constants of a class, measured once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassStats {
    pub density: f64,
    /// Mean of `A(x) − ρx` over the window, where `A` counts positions ≤ x.
    pub offset: f64,
    /// Bound on `|∫_X^Y (A(x) − ρx − offset) dx|` for all `Y > X`.
    pub fluctuation: f64,
    /// Bound on the error of `offset`.
    pub offset_error: f64,
    pub first_position: f64,
}

/// Number of indices used to measure the class statistics.
pub const STATS_WINDOW: u64 = 100_000;

fn measure(class: Class) -> ClassStats {
    let s5 = 5f64.sqrt();
    let beta = crate::golden::BETA_F64;
    let table: Vec<f64> = (0..FIB.len() + 2).map(|j| (-beta).powi(-(j as i32) - 2) / s5).collect();
    let mut xs = Vec::new();
    let mut stream = ZeckStream::starting_at(1);
    for _ in 0..STATS_WINDOW {
        let (n, w, tz) = stream.advance();
        if !class.accepts(d_from_trailing_zeros(tz)) {
            continue;
        }
        let dp: f64 = w.ones().map(|j| table[j]).sum();
        let delta = n as f64 + dp;
        xs.push(match class {
            Class::Shifted => beta * delta + beta * beta / s5,
            _ => delta,
        });
    }
    let rho = class.density();
    // A(x) = k + 1 on [x_k, x_{k+1}).
    let piece = |k: usize, a: f64, b: f64, c: f64| (k as f64 + 1.0 - c) * (b - a) - rho * (b - a) * (b + a) / 2.0;
    let span = xs[xs.len() - 1] - xs[0];
    let offset = (0..xs.len() - 1).map(|k| piece(k, xs[k], xs[k + 1], 0.0)).sum::<f64>() / span;
    let mut acc = 0.0f64;
    let mut sup = 0.0f64;
    for k in 0..xs.len() - 1 {
        let (a, b) = (xs[k], xs[k + 1]);
        // The integrand is linear on the piece; its integral peaks at the root.
        let root = (k as f64 + 1.0 - offset) / rho;
        if root > a && root < b {
            sup = sup.max((acc + piece(k, a, root, offset)).abs());
        }
        acc += piece(k, a, b, offset);
        sup = sup.max(acc.abs());
    }
    // Twice the sup bounds differences of the running integral; doubled
    // again as a safety margin for its slow growth beyond the window.
    let fluctuation = 4.0 * sup;
    ClassStats {
        density: rho,
        offset,
        fluctuation,
        offset_error: 2.0 * fluctuation / span,
        first_position: xs[0],
    }
}

pub fn class_stats(class: Class) -> ClassStats {
    static STATS: OnceLock<Mutex<HashMap<Class, ClassStats>>> = OnceLock::new();
    let m = STATS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = m.lock().unwrap().get(&class) {
        return *s;
    }
    let s = measure(class);
    m.lock().unwrap().insert(class, s);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::delta_exact;

    #[test]
    fn densities_match_cached_counts() {
        let chunks = chunks_upto(64, Kind::Delta, 3 * CHUNK);
        let total = chunks.iter().map(|c| c.d.len()).sum::<usize>() as f64;
        for (i, class) in [Class::D0, Class::D1, Class::D2].into_iter().enumerate() {
            let count = chunks
                .iter()
                .flat_map(|c| c.d.iter())
                .filter(|&&d| d as usize == i)
                .count();
            assert!((count as f64 / total - class.density()).abs() < 1e-3);
        }
    }

    #[test]
    fn cached_positions_are_exact() {
        let chunks = chunks_upto(128, Kind::Delta, 100);
        for n in [1u64, 2, 7, 100] {
            let exact = delta_exact(n).unwrap().delta.to_float(160);
            let ln = Float::with_val(160, exact.ln_ref());
            let cached = &chunks[0].ln_pos[(n - 1) as usize];
            let diff = Float::with_val(160, &ln - cached).to_f64().abs();
            assert!(diff < 1e-36, "n = {n}: {diff}");
        }
        let shifted = chunks_upto(128, Kind::Shifted, 100);
        for n in [1u64, 4, 50] {
            let p = delta_exact(n).unwrap().delta;
            let pos = &(&GoldenNum::beta() * &p) + &crate::sequences::step_long();
            let ln = Float::with_val(160, pos.to_float(160).ln_ref());
            let diff = Float::with_val(160, &ln - &shifted[0].ln_pos[(n - 1) as usize])
                .to_f64()
                .abs();
            assert!(diff < 1e-36, "n = {n}: {diff}");
        }
    }

    #[test]
    fn exact_densities() {
        for c in [Class::All, Class::D0, Class::D1, Class::D2, Class::Shifted] {
            assert!((c.density_exact().to_f64() - c.density()).abs() < 1e-15);
        }
    }

    #[test]
    fn stats_are_sane() {
        let all = class_stats(Class::All);
        assert!((all.offset + 0.5528).abs() < 1e-3);
        assert!(all.fluctuation > 0.0 && all.fluctuation < 10.0);
        let d0 = class_stats(Class::D0);
        assert!((d0.first_position - 1.1708).abs() < 1e-4);
        assert!(class_stats(Class::D2).offset_error < 1e-3);
    }
}
