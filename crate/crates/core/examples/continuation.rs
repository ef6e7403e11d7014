//! F, the class series and the K series inside and left of the critical
//! strip, with residues at s = 1.

use fibdir::dirichlet::{Evaluator, SeriesId};
use fibdir::golden::GoldenNum;
use fibdir::Error;

fn main() -> fibdir::Result<()> {
    let ev = Evaluator::new(128)?;
    for (re, im) in [(0.5, 0.0), (0.5, 14.0), (-0.5, 3.0), (-2.5, 1.0)] {
        let r = ev.continue_f(&ev.point(re, im), 1e-10)?;
        println!(
            "F({re}{im:+}i) = {} ± {:.1e}  (M = {})",
            r.value.to_string_digits(15),
            r.error_bound,
            r.truncation_m
        );
    }
    let s = ev.point(0.5, 2.0);
    for id in SeriesId::ALL {
        let r = ev.eval_series(id, &s, 1e-10)?;
        println!("{id}(0.5+2i) = {}", r.value.to_string_digits(15));
    }

    for id in SeriesId::ALL {
        let r = ev.residue_at(id, &ev.point(1.0, 0.0), 1e-3)?;
        println!(
            "residue of {id} at 1: {} (expected {:.7})",
            r.value.to_string_digits(8),
            id.residue_at_one()
        );
    }

    let b: GoldenNum = "2/5:1/5".parse()?;
    let k = ev.k_eval(3, &GoldenNum::one(), &b, &ev.point(1e-3, 0.0), 1e-10)?;
    println!(
        "K3 near 0 with a = 1, b = β/√5: {} (limit {:.10})",
        k.value.to_string_digits(10),
        b.to_f64()
    );
    println!(
        "P(1) = {}",
        ev.p_eval(&ev.point(1.0, 0.0), 1e-12)?.value.to_string_digits(15)
    );

    match ev.continue_f(&ev.point(1.0, 0.0), 1e-10) {
        Err(Error::PoleProximity { distance }) => println!("s = 1 refused, |denominator| = {distance:.1e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
