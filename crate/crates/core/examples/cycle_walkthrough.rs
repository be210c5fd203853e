// One engine cycle stroke by stroke, from its own cyclic state.

use stroke_engine::engine::{
    check_laws, cold_stroke, cyclic_state, heat_stroke, virtual_temperature, work_stroke, EngineParams,
};
use stroke_engine::ergotropy::WorkPermutation;
use stroke_engine::PopulationVector;

pub fn run() -> stroke_engine::Result<()> {
    let params = EngineParams::unrestricted(0.2, 0.6)?;
    let (lh, lc) = (1.0, 1.0);
    let p = cyclic_state(lh, lc, &params)?;
    let p0 = PopulationVector::qubit(p)?;
    println!(
        "cyclic state p = {p:.6}, virtual beta_C*omega = {:.6}",
        virtual_temperature(p, &params)?
    );

    let (hot, q_hot) = heat_stroke(&p0, lh, &params)?;
    println!("heat: {:?} -> {:?}, Q_H = {q_hot:.6}", p0.entries(), hot.entries());
    let (worked, w) = work_stroke(&hot, &WorkPermutation::swap())?;
    println!("work: {:?}, W = {w:.6}", worked.entries());
    let (back, q_cold) = cold_stroke(&worked, lc, &params)?;
    println!("cold: {:?}, Q_C = {q_cold:.6}", back.entries());
    println!("closes to {:.1e}", back.max_abs_diff(&p0));

    let report = stroke_engine::engine::run_closed_cycle(lh, lc, true, &params)?;
    let diag = check_laws(&report, &params);
    println!(
        "first-law residual {:.1e}, laws hold: {}",
        diag.first_law_residual,
        diag.passed()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
