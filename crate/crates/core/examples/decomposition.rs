//! Near, middle and far contributions to the derivative at small x, and the
//! closed form of the far part.

use fracplap::operator::decompose_i123;
use fracplap::{OperatorParams, QuadratureConfig, Result};

fn main() -> Result<()> {
    let cfg = QuadratureConfig::default().with_tolerances(1e-12, 1e-15);
    for (s, p) in [(0.5, 2.5), (0.8, 2.2)] {
        let params = OperatorParams::new(1, s, p)?;
        println!("s = {s}, p = {p}");
        for x in [0.1, 0.01, 0.001] {
            let d = decompose_i123(x, &params, &cfg)?;
            println!(
                "  x = {x:<6} I1 {:>13.6e}  I2 {:>13.6e}  I3 {:>13.6e}  closed {:>13.6e}  derivative {:>13.6e}",
                d.i1.value, d.i2.value, d.i3.value, d.i3_closed_form, d.derivative.value
            );
        }
    }
    Ok(())
}
