//! Pointwise ordering checks: comparison of two fields on a domain and
//! classification of a field against a right-hand side.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::fields::{ScalarField, Shape};
use crate::kernel::OperatorParams;
use crate::operator::evaluate_operator;
use crate::quadrature::QuadratureConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ComparisonStatus {
    /// `u >= v - tol` at every interior sample.
    Holds,
    /// The ordering failed at some interior samples although the hypotheses held.
    Violated { points: Vec<Vec<f64>> },
    /// Exterior data or operator values are not ordered at these samples.
    HypothesisNotMet { points: Vec<Vec<f64>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub status: ComparisonStatus,
    pub interior_samples: usize,
    pub exterior_samples: usize,
    /// Smallest `u - v` over the interior samples.
    pub min_gap: f64,
}

/// Checks `u >= v` on `domain` at the interior samples, after confirming
/// `u >= v` at the exterior samples and `op(u) >= op(v)` at the interior
/// ones, up to three times the combined error estimates.
pub fn comparison_check(
    u: &ScalarField,
    v: &ScalarField,
    domain: &Shape,
    sample_points: &[Vec<f64>],
    params: &OperatorParams,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<ComparisonReport> {
    if !(tol >= 0.0) {
        return invalid(format!("tolerance must be non-negative, got {tol}"));
    }
    let (interior, exterior): (Vec<&Vec<f64>>, Vec<&Vec<f64>>) =
        sample_points.iter().partition(|x| domain.contains(x));
    let mut unmet: Vec<Vec<f64>> = exterior
        .iter()
        .filter(|x| u.value(x) < v.value(x) - tol)
        .map(|x| x.to_vec())
        .collect();
    let ordered: Vec<bool> = interior
        .par_iter()
        .map(|x| {
            let a = evaluate_operator(u, x, params, cfg)?;
            let b = evaluate_operator(v, x, params, cfg)?;
            Ok(a.value >= b.value - 3.0 * (a.error_estimate + b.error_estimate) - tol)
        })
        .collect::<Result<_>>()?;
    unmet.extend(
        interior
            .iter()
            .zip(&ordered)
            .filter(|(_, ok)| !**ok)
            .map(|(x, _)| x.to_vec()),
    );
    let min_gap = interior
        .iter()
        .map(|x| u.value(x) - v.value(x))
        .fold(f64::INFINITY, f64::min);
    let status = if !unmet.is_empty() {
        ComparisonStatus::HypothesisNotMet { points: unmet }
    } else {
        let bad: Vec<Vec<f64>> = interior
            .iter()
            .filter(|x| u.value(x) < v.value(x) - tol)
            .map(|x| x.to_vec())
            .collect();
        if bad.is_empty() {
            ComparisonStatus::Holds
        } else {
            ComparisonStatus::Violated { points: bad }
        }
    };
    Ok(ComparisonReport {
        status,
        interior_samples: interior.len(),
        exterior_samples: exterior.len(),
        min_gap,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointwiseClass {
    Supersolution,
    Subsolution,
    Solution,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointwiseReport {
    pub class: PointwiseClass,
    pub operator_value: f64,
    pub rhs: f64,
    pub tolerance: f64,
}

/// Compares `op(field)(x)` with `rhs(x)` at tolerance three times the error
/// estimate. An unconverged evaluation is classified as neither.
pub fn pointwise_classify(
    field: &ScalarField,
    rhs: impl Fn(&[f64]) -> f64,
    x: &[f64],
    params: &OperatorParams,
    cfg: &QuadratureConfig,
) -> Result<PointwiseReport> {
    let r = evaluate_operator(field, x, params, cfg)?;
    let f = rhs(x);
    let tolerance = 3.0 * r.error_estimate;
    let class = if !r.converged || !f.is_finite() {
        PointwiseClass::Neither
    } else if (r.value - f).abs() <= tolerance {
        PointwiseClass::Solution
    } else if r.value > f {
        PointwiseClass::Supersolution
    } else {
        PointwiseClass::Subsolution
    };
    Ok(PointwiseReport {
        class,
        operator_value: r.value,
        rhs: f,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn classify_examples() {
        let params = OperatorParams::new(1, 0.5, 2.5).unwrap();
        let c = pointwise_classify(
            &ScalarField::constant(2.0),
            |_| 0.0,
            &[0.3],
            &params,
            &cfg(),
        )
        .unwrap();
        assert_eq!(c.class, PointwiseClass::Solution);
        let c =
            pointwise_classify(&ScalarField::BumpSquare, |_| 0.0, &[0.0], &params, &cfg()).unwrap();
        assert_eq!(c.class, PointwiseClass::Subsolution);
        let value = c.operator_value;
        let c = pointwise_classify(&ScalarField::BumpSquare, |_| value, &[0.0], &params, &cfg())
            .unwrap();
        assert_eq!(c.class, PointwiseClass::Solution);
    }

    #[test]
    fn comparison_trivial_pairs() {
        let params = OperatorParams::new(1, 0.5, 2.5).unwrap();
        let domain = Shape::Ball {
            center: vec![0.0],
            radius: 0.5,
        };
        let pts: Vec<Vec<f64>> = (0..9).map(|k| vec![-0.8 + 0.2 * k as f64]).collect();
        let u = ScalarField::BumpSquare;
        let r = comparison_check(&u, &u, &domain, &pts, &params, &cfg(), 1e-12).unwrap();
        assert_eq!(r.status, ComparisonStatus::Holds);
        let v = ScalarField::Sum {
            terms: vec![u.clone(), ScalarField::constant(-0.5)],
        };
        let r = comparison_check(&u, &v, &domain, &pts, &params, &cfg(), 1e-12).unwrap();
        assert_eq!(r.status, ComparisonStatus::Holds);
        let w = ScalarField::Sum {
            terms: vec![u.clone(), ScalarField::constant(0.5)],
        };
        let r = comparison_check(&u, &w, &domain, &pts, &params, &cfg(), 1e-12).unwrap();
        assert!(matches!(
            r.status,
            ComparisonStatus::HypothesisNotMet { .. }
        ));
    }
}
