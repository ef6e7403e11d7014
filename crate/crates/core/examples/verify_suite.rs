//! Run a verification suite and print its report. Usage:
//! `cargo run --release --example verify_suite -- [suite] [n_max]`.

use fibdir::verification::{run_suite, Suite, SuiteParams};

fn main() -> fibdir::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args.next().as_deref().unwrap_or("arithmetic").parse()?;
    let n_max = args
        .next()
        .map(|s| s.parse::<u64>())
        .transpose()
        .map_err(|e| fibdir::Error::Config(e.to_string()))?;
    let report = run_suite(
        suite,
        &SuiteParams {
            n_max,
            ..SuiteParams::default()
        },
    )?;
    print!("{report}");
    println!("summary: {}", report.to_json(false)["summary"]);
    Ok(())
}
