//! Operator values of the bump field along the line, in one and two
//! dimensions.

use fracplap::operator::evaluate_operator;
use fracplap::{OperatorParams, QuadratureConfig, Result, ScalarField};

fn main() -> Result<()> {
    let field = ScalarField::BumpSquare;
    let cfg = QuadratureConfig::default();
    let one = OperatorParams::new(1, 0.5, 2.5)?;
    let two = OperatorParams::new(2, 0.5, 2.5)?;
    println!(
        "{:>6} {:>22} {:>10} {:>22} {:>10}",
        "x", "n=1", "err", "n=2", "err"
    );
    for x in [0.0, 0.05, 0.2, 0.5, 0.9, 1.5] {
        let a = evaluate_operator(&field, &[x], &one, &cfg)?;
        let b = evaluate_operator(&field, &[x, 0.0], &two, &cfg)?;
        println!(
            "{x:>6.2} {:>22.15e} {:>10.1e} {:>22.15e} {:>10.1e}",
            a.value, a.error_estimate, b.value, b.error_estimate
        );
    }
    Ok(())
}
