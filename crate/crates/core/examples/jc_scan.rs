// Jaynes-Cummings mixing weight: the closed form against a coupling-time scan.

use stroke_engine::oracle::jc_time_scan;
use stroke_engine::restrictions::lambda_max_jc;
use stroke_engine::sweep::linspace;

pub fn run() -> stroke_engine::Result<()> {
    let grid = linspace(0.0, 60.0, 20_000);
    for beta_omega in [0.2, 0.4, 1.0, 2.0] {
        let closed = lambda_max_jc(beta_omega)?;
        let scan = jc_time_scan(beta_omega, &grid, 200)?;
        println!(
            "beta*omega = {beta_omega}: closed {:.5}{}  scan {:.5} at gt = {:.3}",
            closed.value,
            if closed.clamped {
                format!(" (clamped from {:.5})", closed.raw)
            } else {
                String::new()
            },
            scan.lambda,
            scan.gt
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
