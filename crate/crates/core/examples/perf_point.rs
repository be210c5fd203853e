// Optimal work and efficiency at one pair of bath temperatures.
//
// Run with `cargo run --example perf_point`.

use stroke_engine::restrictions::{engine_params_from, RestrictionModel};
use stroke_engine::{optimal_performance, EngineParams};

pub fn run() -> stroke_engine::Result<()> {
    let (bh, bc) = (0.2, 0.6);
    let free = optimal_performance(&EngineParams::unrestricted(bh, bc)?);
    println!(
        "unrestricted: p = {:.6}  W/omega = {:.6}  eta = {:.6}",
        free.p_opt,
        free.w_max,
        free.eta_max.unwrap()
    );
    println!("carnot bound: {:.6}", free.eta_carnot.unwrap());

    for model in ["fb:15", "fb:5", "fb:2", "jc"] {
        let m: RestrictionModel = model.parse()?;
        let point = optimal_performance(&engine_params_from(m, m, bh, bc)?);
        match point.eta_max.filter(|_| point.operational) {
            Some(eta) => println!("{model:>6}: W/omega = {:.6}  eta = {eta:.6}", point.w_max),
            None => println!("{model:>6}: no work (W/omega = {:.6})", point.w_max),
        }
    }

    // Restrictions need not be symmetric.
    let hot_only = EngineParams::new(bh, bc, 0.9, 1.0)?;
    println!(
        "lambda_H^max = 0.9 only: W/omega = {:.6}",
        optimal_performance(&hot_only).w_max
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
