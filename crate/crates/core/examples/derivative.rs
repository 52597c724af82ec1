//! The differentiated integral against a central difference of operator
//! values, above the regularity threshold.

use fracplap::operator::{evaluate_operator_derivative, finite_difference_derivative};
use fracplap::{regularity_threshold, OperatorParams, QuadratureConfig, Result, ScalarField};

fn main() -> Result<()> {
    let params = OperatorParams::new(1, 0.5, 2.5)?;
    let cfg = QuadratureConfig::default().with_tolerances(1e-12, 1e-15);
    let field = ScalarField::BumpSquare;
    println!("threshold 3/(2-s) = {}", regularity_threshold(params.s)?);
    for x in [0.1, 0.03, 0.01, 0.003, 0.001] {
        let d = evaluate_operator_derivative(&field, &[x], 0, &params, &cfg)?;
        let fd = finite_difference_derivative(&field, &[x], 0, &params, &cfg, 1e-3 * x)?;
        let v = d.value().expect("finite above the threshold");
        println!(
            "x = {x:<6} integral {v:>20.12e}  difference {fd:>20.12e}  rel gap {:.1e}",
            ((v - fd) / v).abs()
        );
    }
    Ok(())
}
