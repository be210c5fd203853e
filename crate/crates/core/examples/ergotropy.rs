// Work extractable by reordering populations.

use stroke_engine::ergotropy::{ergotropy, passive_rearrangement};
use stroke_engine::{EnergySpectrum, PopulationVector};

pub fn run() -> stroke_engine::Result<()> {
    let qubit = EnergySpectrum::qubit(1.0)?;
    for p in [0.9, 0.5, 0.3, 0.0] {
        let v = PopulationVector::qubit(p)?;
        println!("qubit p = {p}: ergotropy {:.3}", ergotropy(&v, &qubit)?);
    }

    let ladder = EnergySpectrum::harmonic(1.0, 3)?;
    let v = PopulationVector::new(vec![0.1, 0.4, 0.2, 0.3])?;
    let (passive, perm) = passive_rearrangement(&v, &ladder)?;
    println!(
        "passive {:?} via {:?}, ergotropy {:.3}",
        passive.entries(),
        perm.mapping(),
        ergotropy(&v, &ladder)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
