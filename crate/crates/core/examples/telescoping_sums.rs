//! Telescoping sums over the Fibonacci word with Richardson extrapolation,
//! next to the closed forms they converge to.

use fibdir::verification::telescoping_sums;

fn main() -> fibdir::Result<()> {
    let n = 1_000_000;
    for s in telescoping_sums(n, 2, 128)? {
        let partial = s.partials[0].1.to_f64();
        println!(
            "{:<15} S(N) = {partial:>+.12}   extrapolated {:>+.15} ± {:.1e}",
            s.kind.name(),
            s.extrapolated.to_f64(),
            s.error_estimate
        );
    }
    let beta: f64 = (1.0 + 5f64.sqrt()) / 2.0;
    let c = 5f64.sqrt() * beta.ln();
    println!("√5·ln β·β⁻⁴ = {:.15}", c * beta.powi(-4));
    println!("√5·ln β·β⁻² = {:.15}", c * beta.powi(-2));
    println!("√5·ln β·β⁻³ = {:.15}", c * beta.powi(-3));
    Ok(())
}
