// Which population vectors a thermal operation can reach.

use stroke_engine::majorization::{beta_order, thermomajorization_curve, thermomajorizes};
use stroke_engine::populations::{gibbs_vector, EnergySpectrum};
use stroke_engine::PopulationVector;

pub fn run() -> stroke_engine::Result<()> {
    let spectrum = EnergySpectrum::new(vec![0.0, 1.0, 2.5])?;
    let gamma = gibbs_vector(0.8, &spectrum)?;
    let p = PopulationVector::new(vec![0.2, 0.7, 0.1])?;
    let q = PopulationVector::new(vec![0.5, 0.3, 0.2])?;

    println!("gibbs: {:?}", gamma.entries());
    println!("beta-order of p: {:?}", beta_order(&p, &gamma)?.permutation());
    let curve = thermomajorization_curve(&p, &gamma, gamma.partition())?;
    println!("curve vertices of p: {:?}", curve.vertices());

    println!("p -> q reachable: {}", thermomajorizes(&p, &q, &gamma)?);
    println!("q -> p reachable: {}", thermomajorizes(&q, &p, &gamma)?);
    println!(
        "p -> gibbs reachable: {}",
        thermomajorizes(&p, &gamma.to_population(), &gamma)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
