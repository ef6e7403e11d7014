//! Reproducible summation over index ranges.
//!
//! A range is cut into fixed-size chunks. Chunks may run on any thread, but
//! their partial sums are always combined by the same pairwise tree, so the
//! result does not depend on the thread count.

use rayon::prelude::*;

use crate::bigfloat::BigFloatComplex;

pub const CHUNK: u64 = 1 << 13;

/// Chunk boundaries `[lo, hi)` covering `[start, end)`.
pub fn chunks(start: u64, end: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = start;
    while lo < end {
        let hi = (lo + CHUNK).min(end);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// Pairwise reduction in index order.
pub fn tree_reduce<T, F>(mut parts: Vec<T>, combine: F) -> Option<T>
where
    F: Fn(&T, &T) -> T,
{
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(combine(&a, &b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop()
}

/// Sums `chunk_sum(lo, hi)` over the chunks of `[start, end)`.
pub fn chunked_sum<F>(prec: u32, start: u64, end: u64, chunk_sum: F) -> BigFloatComplex
where
    F: Fn(u64, u64) -> BigFloatComplex + Sync,
{
    let parts: Vec<BigFloatComplex> = chunks(start, end)
        .into_par_iter()
        .map(|(lo, hi)| chunk_sum(lo, hi))
        .collect();
    tree_reduce(parts, |a, b| a.add(b)).unwrap_or_else(|| BigFloatComplex::zero(prec))
}

/// Same as [`chunked_sum`] for several sums sharing one pass.
pub fn chunked_sum_vec<F>(prec: u32, width: usize, start: u64, end: u64, chunk_sum: F) -> Vec<BigFloatComplex>
where
    F: Fn(u64, u64) -> Vec<BigFloatComplex> + Sync,
{
    let parts: Vec<Vec<BigFloatComplex>> = chunks(start, end)
        .into_par_iter()
        .map(|(lo, hi)| chunk_sum(lo, hi))
        .collect();
    tree_reduce(parts, |a, b| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
        .unwrap_or_else(|| vec![BigFloatComplex::zero(prec); width])
}
