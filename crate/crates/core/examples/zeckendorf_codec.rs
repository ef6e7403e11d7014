//! Greedy Zeckendorf encoding, decoding, successor and the shift maps.

use fibdir::zeckendorf::{tau_shift, TauVariant, ZeckStream, ZeckWord};

fn main() -> fibdir::Result<()> {
    for n in [1u64, 4, 12, 100, 1_000_000] {
        let w = ZeckWord::encode(n);
        println!("{n:>8} -> {w:<30} trailing zeros {}", w.trailing_zeros()?);
    }
    let w: ZeckWord = "1000010100".parse()?;
    println!("1000010100 decodes to {}", w.decode()?);
    println!("successor of 100 is {}", ZeckWord::encode(100).successor());

    for n in 1..=6 {
        println!(
            "τ₀({n}) = {:>2}   τ₁({n}) = {:>2}",
            tau_shift(n, TauVariant::Shift)?,
            tau_shift(n, TauVariant::ShiftPlusOne)?
        );
    }

    // Streaming avoids re-encoding each integer.
    let mut s = ZeckStream::starting_at(1);
    let tz: Vec<usize> = (0..15).map(|_| s.advance().2).collect();
    println!("trailing zeros of 1..15: {tz:?}");

    if "0110".parse::<ZeckWord>().is_err() {
        println!("0110 is rejected: adjacent ones");
    }
    Ok(())
}
