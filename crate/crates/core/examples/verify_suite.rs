// A quick subset of the self-checks; `stroke-engine verify` runs all of them.

use stroke_engine::verify::{run as verify, VerifyOptions};

pub fn run() -> stroke_engine::Result<()> {
    let opts = VerifyOptions {
        only: Some(vec!["eta-d".into(), "reductions".into(), "carnot".into(), "d1".into()]),
        ..VerifyOptions::default()
    };
    let report = verify(&opts)?;
    print!("{report}");
    println!("all passed: {}", report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
