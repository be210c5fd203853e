// A qubit coupled to a truncated oscillator bath through block rotations.
//
// The reduced map on the qubit is always a partial thermalization, and the
// best rotation angles reach the finite-bath `lambda_max`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stroke_engine::oracle::{achieved_lambda, scan_lambda_max, simulate_finite_bath_map, BlockUnitarySpec};
use stroke_engine::restrictions::lambda_max_finite_bath;
use stroke_engine::thermal::{apply_mixture, MixingWeight};
use stroke_engine::PopulationVector;

pub fn run() -> stroke_engine::Result<()> {
    let (beta_omega, d) = (0.5, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spec = BlockUnitarySpec::random(d, &mut rng);
    let p = PopulationVector::qubit(0.3)?;

    let simulated = simulate_finite_bath_map(&p, beta_omega, d, &spec)?;
    let lam = achieved_lambda(&spec, beta_omega, d)?;
    let mixed = apply_mixture(MixingWeight::unrestricted(lam)?, beta_omega, &p)?;
    println!(
        "random rotations: lambda = {lam:.6}, simulation vs mixture {:.1e}",
        simulated.max_abs_diff(&mixed)
    );

    for d in [1, 2, 3, 8] {
        let scan = scan_lambda_max(beta_omega, d, 21)?;
        println!(
            "d = {d}: scanned {scan:.9}, closed form {:.9}",
            lambda_max_finite_bath(beta_omega, d)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
