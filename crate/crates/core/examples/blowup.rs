//! Power-law fit of the derivative below the regularity threshold.

use fracplap::experiments::blowup_experiment;
use fracplap::{OperatorParams, QuadratureConfig, Result};

fn main() -> Result<()> {
    let params = OperatorParams::new(1, 0.8, 2.2)?;
    let report = blowup_experiment(&params, None, &QuadratureConfig::default())?;
    for s in &report.samples {
        println!("{:>12.4e} {:>16.8e}", s.x, s.deriv_value);
    }
    println!(
        "fitted {:.4}, predicted {:.4}, r2 {:.5}, {}",
        report.fitted_exponent,
        report.predicted_exponent,
        report.fit_r2,
        report.classification.as_str()
    );
    Ok(())
}
