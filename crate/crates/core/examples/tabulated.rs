//! A field given by samples on a grid, compared with the closed form it was
//! sampled from.

use fracplap::fields::tabulated::{Extension, TableMeta, TabulatedField};
use fracplap::operator::evaluate_operator;
use fracplap::{OperatorParams, QuadratureConfig, Result, ScalarField};

fn main() -> Result<()> {
    let exact = ScalarField::BumpSquare;
    let coords: Vec<f64> = (0..=800).map(|i| -2.0 + 0.005 * i as f64).collect();
    let values: Vec<f64> = coords.iter().map(|x| exact.value(&[*x])).collect();
    let meta = TableMeta {
        support_radius: 2.0,
        smoothness_order: 3,
        extension: Extension::Zero,
    };
    let table = ScalarField::tabulated(TabulatedField::new(&coords, &values, meta)?);
    let params = OperatorParams::new(1, 0.5, 2.5)?;
    let cfg = QuadratureConfig::default().with_tolerances(1e-6, 1e-12);
    for x in [0.1, 0.4, 0.8] {
        let a = evaluate_operator(&table, &[x], &params, &cfg)?;
        let b = evaluate_operator(&exact, &[x], &params, &cfg)?;
        println!(
            "x = {x}: table {:>14.8e}  exact {:>14.8e}",
            a.value, b.value
        );
    }
    Ok(())
}
