//! Pointwise sub/supersolution checks and the comparison principle on a
//! ball.

use fracplap::experiments::{comparison_check, pointwise_classify};
use fracplap::fields::Shape;
use fracplap::{OperatorParams, QuadratureConfig, Result, ScalarField};

fn main() -> Result<()> {
    let params = OperatorParams::new(1, 0.5, 2.5)?;
    let cfg = QuadratureConfig::default();
    let bump = ScalarField::BumpSquare;
    for x in [0.0, 0.5, 1.5] {
        let r = pointwise_classify(&bump, |_| 0.0, &[x], &params, &cfg)?;
        println!(
            "bump at {x}: op {:>12.5e} -> {:?}",
            r.operator_value, r.class
        );
    }

    let v = ScalarField::getoor_ball(vec![0.0], 1.0, 0.5);
    let u = v.clone().scaled(2.0);
    let domain = Shape::Ball {
        center: vec![0.0],
        radius: 1.0,
    };
    let points: Vec<Vec<f64>> = (0..=12).map(|k| vec![-1.5 + 0.25 * k as f64]).collect();
    let report = comparison_check(&u, &v, &domain, &points, &params, &cfg, 1e-9)?;
    println!(
        "2 v >= v: {:?}, min gap {:.4}",
        report.status, report.min_gap
    );
    Ok(())
}
