//! Exact arithmetic in ℚ(β): powers, conjugation, norms and comparisons.

use fibdir::golden::{beta_pow, GoldenNum};

fn main() -> fibdir::Result<()> {
    let b = GoldenNum::beta();
    println!("β² − β = {}", &(&b * &b) - &b);
    for k in [-3, 5, 12] {
        println!("β^{k} = {}  (≈ {:.12})", beta_pow(k), beta_pow(k).to_f64());
    }

    let x: GoldenNum = "3/2:-1".parse()?;
    println!(
        "x = {x}, conj = {}, norm = {}, sign = {}",
        x.conj(),
        x.norm(),
        x.signum()
    );
    println!("1/x = {}", x.inverse()?);
    println!("x < β⁻¹: {}", x < beta_pow(-1));

    // √5 and 1/√5 live in the field too.
    println!("√5 = {}, 1/√5 = {}", GoldenNum::sqrt5(), GoldenNum::inv_sqrt5());
    println!(
        "β/√5 to 40 digits: {}",
        b.checked_div(&GoldenNum::sqrt5())?.to_float(140)
    );
    Ok(())
}
