//! Exhaustive exact checks over index windows.

use rayon::prelude::*;
use rug::Integer;

use super::{Entry, Report};
use crate::error::{Error, Result};
use crate::golden::{beta_pow, GoldenNum};
use crate::sequences::{
    d_stream, delta_exact, delta_of_word, fib_automaton, fib_word_stream, seq_range, step_long, step_short, FibRoute,
    SeqId,
};
use crate::zeckendorf::{tau_shift, TauVariant, ZeckStream, ZeckWord};

const BLOCK: u64 = 4096;

fn blocks(n: u64) -> Vec<(u64, u64)> {
    (0..n.div_ceil(BLOCK))
        .map(|k| (1 + k * BLOCK, (1 + (k + 1) * BLOCK).min(n + 1)))
        .collect()
}

/// `{βn}` from `⌊βn⌋ = ⌊(n + ⌊√(5n²)⌋)/2⌋`, independent of Zeckendorf digits.
fn frac_beta_by_floor(n: u64) -> GoldenNum {
    let n_int = Integer::from(n);
    let root = (Integer::from(&n_int * &n_int) * 5u32).sqrt();
    let floor = Integer::from(&n_int + &root) >> 1u32;
    &(&GoldenNum::beta() * &GoldenNum::from_rational(n)) - &GoldenNum::from_rational(floor)
}

#[derive(Default, Clone, Copy)]
struct ArithCounts {
    increment: u64,
    bound: u64,
    sign: u64,
    identity: u64,
    tau0: u64,
    tau1: u64,
    frac_form: u64,
}

impl ArithCounts {
    fn add(self, o: Self) -> Self {
        ArithCounts {
            increment: self.increment + o.increment,
            bound: self.bound + o.bound,
            sign: self.sign + o.sign,
            identity: self.identity + o.identity,
            tau0: self.tau0 + o.tau0,
            tau1: self.tau1 + o.tau1,
            frac_form: self.frac_form + o.frac_form,
        }
    }
}

fn arith_block(lo: u64, hi: u64) -> Result<ArithCounts> {
    let bound = &GoldenNum::inv_sqrt5() * &beta_pow(-1);
    let (short, long) = (step_short(), step_long());
    let beta = GoldenNum::beta();
    let mut c = ArithCounts::default();
    let mut stream = ZeckStream::starting_at(lo);
    let (_, w, tz) = stream.advance();
    let mut cur = (w.last_bit(), tz, delta_of_word(w), fib_automaton(w));
    for n in lo..hi {
        let (_, w_next, tz_next) = stream.advance();
        let next = (w_next.last_bit(), tz_next, delta_of_word(w_next), fib_automaton(w_next));
        let (e, tz, ref dp, f) = cur;

        let step = &next.2.delta - &dp.delta;
        if step != if e == 1 { short.clone() } else { long.clone() } {
            c.increment += 1;
        }
        if (&bound - &dp.delta_prime.abs()).signum() <= 0 {
            c.bound += 1;
        }
        let want_sign = if tz % 2 == 1 { -1 } else { 1 };
        if dp.delta_prime.signum() != want_sign {
            c.sign += 1;
        }
        if &dp.delta - &dp.delta_prime != GoldenNum::from_rational(n) {
            c.identity += 1;
        }
        let scaled = &beta * &dp.delta;
        if delta_exact(tau_shift(n, TauVariant::Shift)?)?.delta != scaled {
            c.tau0 += 1;
        }
        if delta_exact(tau_shift(n, TauVariant::ShiftPlusOne)?)?.delta != &scaled + &long {
            c.tau1 += 1;
        }
        // δ(n) = n − ({βn} − 1 + f(n))/√5
        let inner = &(&frac_beta_by_floor(n) - &GoldenNum::one()) + &GoldenNum::from_rational(f);
        let form = &GoldenNum::from_rational(n) - &(&inner * &GoldenNum::inv_sqrt5());
        if form != dp.delta {
            c.frac_form += 1;
        }
        cur = next;
    }
    Ok(c)
}

pub(super) fn arithmetic(report: &mut Report, n: u64) -> Result<()> {
    report.timed(|| {
        let counts = blocks(n)
            .into_par_iter()
            .map(|(lo, hi)| arith_block(lo, hi))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(ArithCounts::default(), ArithCounts::add);
        Ok(vec![
            Entry::counted(
                "delta_increment",
                "δ(n+1) − δ(n) is β/√5 after a word ending in 1 and β²/√5 otherwise",
                counts.increment,
                n,
            ),
            Entry::counted("conjugate_bound", "|δ′(n)| < 1/(β√5)", counts.bound, n),
            Entry::counted("conjugate_sign", "δ′(n) < 0 exactly when d(n) = 1", counts.sign, n),
            Entry::counted("integer_identity", "n = δ(n) − δ′(n)", counts.identity, n),
            Entry::counted("shift_scales", "δ(τ₀(n)) = βδ(n)", counts.tau0, n),
            Entry::counted("shift_plus_one", "δ(τ₁(n)) = βδ(n) + β²/√5", counts.tau1, n),
            Entry::counted(
                "fractional_part_form",
                "δ(n) = n − ({βn} − 1 + f(n))/√5",
                counts.frac_form,
                n,
            ),
        ])
    })
}

/// Fixed point of `0 → 0,1; 1 → −1; −1 → 0,1`, computed from the letter
/// rules alone.
pub(crate) fn signed_morphism_word(count: usize) -> Vec<i64> {
    let mut word = vec![0i64];
    while word.len() < count {
        let mut next = Vec::with_capacity(word.len() * 2);
        for &c in &word {
            match c {
                1 => next.push(-1),
                _ => next.extend_from_slice(&[0, 1]),
            }
        }
        word = next;
    }
    word.truncate(count);
    word
}

pub(super) fn sequences(report: &mut Report, n: u64) -> Result<()> {
    let count = usize::try_from(n).map_err(|_| Error::Overflow)?;
    report.timed(|| {
        let bad: u64 = blocks(n)
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut stream = ZeckStream::starting_at(lo);
                let mut bad = 0;
                for k in lo..hi {
                    let (_, w, _) = stream.advance();
                    let greedy = ZeckWord::encode(k);
                    let valid = !w.digits().windows(2).any(|p| p[0] && p[1]);
                    if *w != greedy || greedy.decode() != Ok(k) || !valid {
                        bad += 1;
                    }
                }
                bad
            })
            .sum();
        Ok(vec![Entry::counted(
            "zeckendorf_roundtrip",
            "successor rewrites, greedy encoding and decoding agree",
            bad,
            n,
        )])
    })?;
    report.timed(|| {
        let d = d_stream(count + 1);
        let bad = d
            .windows(2)
            .filter(|p| match p[0] {
                0 => p[1] != 1,
                1 => p[1] != 0 && p[1] != 2,
                _ => p[1] != 0,
            })
            .count() as u64;
        Ok(vec![Entry::counted(
            "d_transitions",
            "d = 0 is followed by 1, d = 1 by 0 or 2, d = 2 by 0",
            bad,
            n,
        )])
    })?;
    report.timed(|| {
        let routes = [
            FibRoute::Automaton,
            FibRoute::Coding,
            FibRoute::Morphism,
            FibRoute::Predecessor,
        ];
        let words: Vec<Vec<u8>> = routes.par_iter().map(|&r| fib_word_stream(r, count)).collect();
        let bad = (0..count)
            .filter(|&i| words.iter().any(|w| w[i] != words[0][i]))
            .count() as u64;
        Ok(vec![Entry::counted(
            "fibonacci_word_routes",
            "automaton, coding of d, morphism fixed point and predecessor automaton give the same word",
            bad,
            n,
        )])
    })?;
    report.timed(|| {
        let f = fib_word_stream(FibRoute::Morphism, count + 1);
        let h = seq_range(SeqId::H, 1, n)?;
        let bad_h = (0..count).filter(|&i| h[i] != f[i] as i64 - f[i + 1] as i64).count() as u64;
        let r = seq_range(SeqId::R, 1, n)?;
        let t = seq_range(SeqId::T, 1, n)?;
        let bad_t = (0..count).filter(|&i| t[i] != 1 - r[i]).count() as u64;
        let fixed = signed_morphism_word(count);
        let bad_r = (0..count).filter(|&i| r[i] != fixed[i]).count() as u64;
        Ok(vec![
            Entry::counted("h_is_difference", "h(n) = f(n) − f(n+1)", bad_h, n),
            Entry::counted("t_is_one_minus_r", "t(n) = 1 − r(n)", bad_t, n),
            Entry::counted(
                "r_morphism_fixed_point",
                "r is the fixed point of 0 → 0,1; 1 → −1; −1 → 0,1",
                bad_r,
                n,
            ),
        ])
    })
}

fn membership(len: usize, items: impl Iterator<Item = u64>) -> Vec<bool> {
    let mut v = vec![false; len];
    for m in items {
        if (m as usize) < len {
            v[m as usize] = true;
        }
    }
    v
}

pub(super) fn sets(report: &mut Report, n: u64) -> Result<()> {
    report.timed(|| {
        let tau0_n = tau_shift(n, TauVariant::Shift)?;
        let tau1_n = tau_shift(n, TauVariant::ShiftPlusOne)?;
        let len = tau1_n as usize + 1;
        // d(m) for m in 0..len; index 0 is a placeholder.
        let mut d = vec![u8::MAX];
        d.extend(d_stream(len - 1));
        let dn = &d[1..=n as usize];
        let tau: Vec<(u64, u64)> = (1..=n)
            .map(|k| {
                Ok((
                    tau_shift(k, TauVariant::Shift)?,
                    tau_shift(k, TauVariant::ShiftPlusOne)?,
                ))
            })
            .collect::<Result<_>>()?;

        let img0 = membership(len, tau.iter().map(|t| t.0));
        let img1_12 = membership(len, tau.iter().zip(dn).filter(|(_, &dd)| dd != 0).map(|(t, _)| t.1));
        let img1_0 = membership(len, tau.iter().zip(dn).filter(|(_, &dd)| dd == 0).map(|(t, _)| t.1));
        let img1: Vec<bool> = (0..len).map(|m| img1_12[m] || img1_0[m]).collect();

        let mismatches = |bound: u64, lo: u64, lhs: &[bool], rhs: &dyn Fn(usize) -> bool| {
            (lo as usize..=bound as usize).filter(|&m| lhs[m] != rhs(m)).count() as u64
        };
        let e1 = mismatches(tau0_n, 1, &img0, &|m| d[m] == 1 || d[m] == 2);
        let e2 = mismatches(tau1_n, 2, &img1_12, &|m| d[m] == 0);
        let e3 = mismatches(tau1_n, 1, &img1_0, &|m| d[m] == 2);
        let union: Vec<bool> = (0..len).map(|m| img0[m] || img1[m]).collect();
        let inter: Vec<bool> = (0..len).map(|m| img0[m] && img1[m]).collect();
        let e4 = mismatches(tau0_n, 2, &union, &|_| true);
        let e5 = mismatches(tau0_n, 1, &inter, &|m| d[m] == 2);
        let one_outside = !img0[1] && !img1[1];

        let s = seq_range(SeqId::S, 1, tau0_n)?;
        let img0_from_0 = membership(len, tau.iter().zip(dn).filter(|(_, &dd)| dd == 0).map(|(t, _)| t.0));
        let e6 = (1..=tau0_n as usize)
            .filter(|&m| (s[m - 1] == 2) != img0_from_0[m])
            .count() as u64;

        Ok(vec![
            Entry::counted("shift_image", "{τ₀(n)} = {m : d(m) ∈ {1, 2}}", e1, tau0_n),
            Entry::counted(
                "shift_plus_one_image_d12",
                "{τ₁(n) : d(n) ∈ {1, 2}} = {m ≥ 2 : d(m) = 0}",
                e2,
                tau1_n - 1,
            ),
            Entry::counted(
                "shift_plus_one_image_d0",
                "{τ₁(n) : d(n) = 0} = {m : d(m) = 2}",
                e3,
                tau1_n,
            ),
            Entry::counted("image_union", "{τ₀(n)} ∪ {τ₁(n)} = {m ≥ 2}", e4, tau0_n - 1),
            Entry::counted("image_intersection", "{τ₀(n)} ∩ {τ₁(n)} = {m : d(m) = 2}", e5, tau0_n),
            Entry::counted(
                "one_outside_images",
                "1 lies in neither image",
                u64::from(!one_outside),
                1,
            ),
            Entry::counted(
                "s_two_is_shift_of_d0",
                "s(m) = 2 exactly when m = τ₀(n) with d(n) = 0",
                e6,
                tau0_n,
            ),
        ])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::frac_beta;

    #[test]
    fn floor_route_matches_conjugate_route() {
        for n in 1..500 {
            assert_eq!(frac_beta_by_floor(n), frac_beta(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn signed_morphism_prefix() {
        assert_eq!(signed_morphism_word(8), vec![0, 1, -1, 0, 1, 0, 1, -1]);
    }

    #[test]
    fn small_windows_pass() {
        let p = super::super::SuiteParams::default();
        for f in [arithmetic, sequences, sets] {
            let mut r = Report::new("t", p);
            f(&mut r, 3000).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
