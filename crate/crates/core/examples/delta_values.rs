//! Exact δ(n) and δ′(n), their increments, and the fractional part {βn}.

use fibdir::golden::GoldenNum;
use fibdir::sequences::{delta_exact, frac_beta, step_long, step_short};

fn main() -> fibdir::Result<()> {
    println!(
        "{:>4}  {:<16} {:<16} {:>10} {:>10}",
        "n", "δ(n)", "δ′(n)", "δ(n)", "δ′(n)"
    );
    for n in 1..=12 {
        let d = delta_exact(n)?;
        println!(
            "{n:>4}  {:<16} {:<16} {:>10.6} {:>10.6}",
            d.delta.to_string(),
            d.delta_prime.to_string(),
            d.delta.to_f64(),
            d.delta_prime.to_f64()
        );
    }

    println!("increments take two values: {} and {}", step_short(), step_long());
    let n = 1_000_000u64;
    let d = delta_exact(n)?;
    println!(
        "n = δ(n) − δ′(n) at 10⁶: {}",
        &d.delta - &d.delta_prime == GoldenNum::from_rational(n)
    );
    println!("{{β·10⁶}} = {} ≈ {:.12}", frac_beta(n)?, frac_beta(n)?.to_f64());
    Ok(())
}
