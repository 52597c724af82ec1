//! Barrier, subsolution and boundary ratio on the unit disc.

use fracplap::experiments::{default_hopf_setup, hopf_experiment, HopfOptions};
use fracplap::{QuadratureConfig, Result};

fn main() -> Result<()> {
    let (geometry, field, spec, params) = default_hopf_setup();
    let cfg = QuadratureConfig::default().with_tolerances(1e-5, 1e-12);
    let options = HopfOptions {
        samples: 8,
        ..HopfOptions::default()
    };
    let report = hopf_experiment(&geometry, &field, &spec, &params, &cfg, &options)?;
    for s in &report.samples {
        println!(
            "x = ({:>8.5}, {:>8.5})  barrier {:>12.5e}  subsolution {:>12.5e}",
            s.x[0], s.x[1], s.barrier_operator, s.subsolution_operator
        );
    }
    println!("C1 = {:.5}", report.barrier_bound_c1);
    println!(
        "beta = {:.5e} (admissible {:.5e})",
        report.beta, report.beta_admissible
    );
    println!("min u(t e_n) / d(t e_n)^s = {:.5}", report.ratio_min);
    println!("passed: {}", report.passed());
    Ok(())
}
