//! At p = 3/(2-s) the derivative is 0 at the origin but tends to a negative
//! limit from the right.

use fracplap::experiments::critical_scan;
use fracplap::{OperatorParams, QuadratureConfig, Result};

fn main() -> Result<()> {
    let params = OperatorParams::new(1, 0.8, 2.5)?;
    let ks: Vec<u32> = (4..=12).collect();
    println!(
        "{:>3} {:>12} {:>14} {:>14} {:>14}",
        "k", "h", "symmetric", "one-sided", "derivative"
    );
    for r in critical_scan(&params, &ks, &QuadratureConfig::default())? {
        println!(
            "{:>3} {:>12.4e} {:>14.6e} {:>14.6} {:>14.6}",
            r.k, r.h, r.symmetric_quotient, r.one_sided_quotient, r.derivative
        );
    }
    Ok(())
}
