//! Direct evaluation of F, G, H, I, J for Re(s) > 1, and the ζ expansion.

use fibdir::dirichlet::{Evaluator, SeriesId};

fn main() -> fibdir::Result<()> {
    let ev = Evaluator::new(128)?;
    let s = ev.point(2.0, 1.0);
    for id in SeriesId::ALL {
        let r = ev.direct_to_tol(id, &s, 1e-15)?;
        println!(
            "{id}(2+i) = {}  ± {:.1e}  ({} terms)",
            r.value.to_string_digits(20),
            r.error_bound,
            r.terms_used
        );
    }

    // Tail compensation makes s close to 1 usable with a modest N.
    let r = ev.direct_sum(SeriesId::F, &ev.point(1.1, 0.0), 200_000)?;
    println!("F(1.1) ≈ {} ± {:.1e}", r.value.to_string_digits(12), r.error_bound);

    let z = ev.zeta_relation_check(&ev.point(2.5, 0.0), 40, 200_000)?;
    println!(
        "ζ(2.5) − F(2.5) = {} ; expansion gives {} ; difference {:.1e}",
        z.lhs.to_string_digits(15),
        z.rhs.to_string_digits(15),
        z.difference
    );
    Ok(())
}
