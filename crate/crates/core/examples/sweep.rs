//! Classification across the threshold p = 3/(2-s).

use fracplap::experiments::threshold_sweep;
use fracplap::{QuadratureConfig, Result};

fn main() -> Result<()> {
    let rows = threshold_sweep(&[0.5, 0.8], &[2.2, 2.5, 2.8], &QuadratureConfig::default())?;
    println!(
        "{:>5} {:>5} {:>9} {:>14} {:>10}",
        "s", "p", "3/(2-s)", "class", "exponent"
    );
    for r in rows {
        println!(
            "{:>5} {:>5} {:>9.4} {:>14} {:>10.4}",
            r.s,
            r.p,
            r.threshold,
            r.classification.as_str(),
            r.fitted_exponent
        );
    }
    Ok(())
}
