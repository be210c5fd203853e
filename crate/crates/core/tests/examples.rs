macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(perf_point, "perf_point.rs");
example!(cycle_walkthrough, "cycle_walkthrough.rs");
example!(finite_bath_simulation, "finite_bath_simulation.rs");
example!(thermomajorization, "thermomajorization.rs");
example!(ergotropy, "ergotropy.rs");
example!(figure_sweeps, "figure_sweeps.rs");
example!(jc_scan, "jc_scan.rs");
example!(brute_force, "brute_force.rs");
example!(verify_suite, "verify_suite.rs");

#[test]
fn examples_run() {
    perf_point::run().unwrap();
    cycle_walkthrough::run().unwrap();
    finite_bath_simulation::run().unwrap();
    thermomajorization::run().unwrap();
    ergotropy::run().unwrap();
    figure_sweeps::run().unwrap();
    jc_scan::run().unwrap();
    brute_force::run().unwrap();
    verify_suite::run().unwrap();
}
