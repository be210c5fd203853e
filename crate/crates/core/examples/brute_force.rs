// Grid search over every stroke setting against the closed-form optimum.

use stroke_engine::oracle::brute_force_performance;
use stroke_engine::{optimal_performance, EngineParams};

pub fn run() -> stroke_engine::Result<()> {
    let params = EngineParams::new(0.3, 1.5, 0.8, 0.9)?;
    let closed = optimal_performance(&params);
    let search = brute_force_performance(&params, 80)?;
    println!(
        "closed form: W = {:.9}  eta = {:.9}",
        closed.w_max,
        closed.eta_max.unwrap()
    );
    println!(
        "grid search: W = {:.9}  eta = {:.9}",
        search.point.w_max,
        search.point.eta_max.unwrap()
    );
    let best = &search.best_work;
    println!(
        "best work at lambda_h = {:.3}, lambda_c = {:.3}, swap = {} ({} cycles evaluated)",
        best.lambda_h, best.lambda_c, best.swap, search.evaluated
    );
    println!("argmax at the corner: {}", search.work_argmax_at_corner(&params));
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
