//! Zeros of 1 − 2β^{−s} + β^{−3s}: the candidate poles of the continuation.

use fibdir::dirichlet::{denominator, pole_zeros};

fn main() {
    for p in pole_zeros(-2, 2, 128) {
        let (re, im) = p.s.to_f64();
        println!(
            "{:<9} k = {:>2}   s = {re:>+.12} {im:>+.12}i   |D(s)| = {:.1e}",
            p.line.name(),
            p.k,
            p.residual
        );
    }
    let pts = pole_zeros(0, 0, 256);
    let one = pts.iter().find(|p| p.line.name() == "inverse").unwrap();
    println!("at 256 bits, |D(1)| = {:.1e}", denominator(&one.s).abs_f64());
}
