//! Barrier subsolutions `beta * rho^s + chi_D u` for the Hopf construction.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::geometry::BallGeometry;
use super::shapes::InnerSet;
use super::ScalarField;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsolutionSpec {
    /// `None` lets the Hopf experiment choose the largest admissible value.
    #[serde(default)]
    pub beta: Option<f64>,
    pub inner_set: InnerSet,
    pub reference: ScalarField,
}

/// An assembled subsolution together with the data recorded about `D`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subsolution {
    pub field: ScalarField,
    pub beta: f64,
    /// `min_D u`, estimated on a deterministic sample of the closure of `D`.
    pub m0: f64,
    /// Distance from `D` to the ball.
    pub gap: f64,
    pub measure: f64,
}

/// Constants entering the bound `(-Delta)_p^s u_sub <= M1 beta^(p-1) - M2`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HopfConstants {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl HopfConstants {
    /// `0.5 * min(M0, M3, (M2 / M1)^(1/(p-1)))`; the last term drops out when
    /// `M1 <= 0`.
    pub fn beta_bound(&self, p: f64) -> f64 {
        let mut b = self.m0.min(self.m3);
        if self.m1 > 0.0 {
            b = b.min((self.m2 / self.m1).powf(1.0 / (p - 1.0)));
        }
        0.5 * b
    }
}

/// Builds `beta * rho^s + chi_D u` for the ball of `geometry`.
pub fn subsolution_field(
    spec: &SubsolutionSpec,
    geometry: &BallGeometry,
    s: f64,
) -> Result<Subsolution> {
    geometry.validate()?;
    spec.inner_set.validate()?;
    let n = geometry.dim();
    if spec.inner_set.dim() != n {
        return Err(Error::Geometry(format!(
            "inner set is {}-dimensional but the ball is {n}-dimensional",
            spec.inner_set.dim()
        )));
    }
    spec.reference.check_dim(n)?;
    let beta = spec
        .beta
        .ok_or_else(|| Error::InvalidParameter("subsolution needs a value of beta".into()))?;
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    let gap = spec
        .inner_set
        .gap_to_ball(&geometry.center, geometry.radius);
    if !(gap > 0.0) {
        return Err(Error::Geometry(format!(
            "inner set must stay at positive distance from the ball, gap = {gap}"
        )));
    }
    let m0 = sample_closure(&spec.inner_set, 12)
        .iter()
        .map(|x| spec.reference.value(x))
        .fold(f64::INFINITY, f64::min);
    let field = ScalarField::Subsolution {
        beta,
        center: geometry.center.clone(),
        radius: geometry.radius,
        exponent: s,
        inner_set: spec.inner_set.clone(),
        reference: Box::new(spec.reference.clone()),
    };
    Ok(Subsolution {
        field,
        beta,
        m0,
        gap,
        measure: spec.inner_set.measure(),
    })
}

/// Deterministic points covering the closed set, boundary included.
pub(crate) fn sample_closure(set: &InnerSet, k: usize) -> Vec<Vec<f64>> {
    let k = k.max(2);
    match set {
        InnerSet::Box { lo, hi } => {
            let n = lo.len();
            let total = k.pow(n as u32);
            (0..total)
                .map(|mut idx| {
                    (0..n)
                        .map(|d| {
                            let j = idx % k;
                            idx /= k;
                            lo[d] + (hi[d] - lo[d]) * j as f64 / (k - 1) as f64
                        })
                        .collect()
                })
                .collect()
        }
        InnerSet::Ball { center, radius } => {
            let n = center.len();
            let mut pts = vec![center.clone()];
            for i in 1..k {
                let r = radius * i as f64 / (k - 1) as f64;
                match n {
                    1 => {
                        pts.push(vec![center[0] - r]);
                        pts.push(vec![center[0] + r]);
                    }
                    2 => {
                        let m = 4 * k;
                        for j in 0..m {
                            let th = 2.0 * PI * j as f64 / m as f64;
                            pts.push(vec![center[0] + r * th.cos(), center[1] + r * th.sin()]);
                        }
                    }
                    _ => {
                        // coordinate axes and diagonals through the centre
                        for d in 0..n {
                            for sgn in [-1.0, 1.0] {
                                let mut p = center.clone();
                                p[d] += sgn * r;
                                pts.push(p);
                            }
                        }
                        let scale = r / (n as f64).sqrt();
                        for mask in 0..(1usize << n) {
                            let p = (0..n)
                                .map(|d| {
                                    center[d] + if mask >> d & 1 == 1 { scale } else { -scale }
                                })
                                .collect();
                            pts.push(p);
                        }
                    }
                }
            }
            pts
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::shapes::norm;

    fn setup() -> (BallGeometry, SubsolutionSpec) {
        let g = BallGeometry::standard(2);
        let spec = SubsolutionSpec {
            beta: Some(0.1),
            inner_set: InnerSet::Ball {
                center: vec![0.0, 2.6],
                radius: 0.4,
            },
            reference: ScalarField::getoor_ball(vec![0.0, 2.0], 2.0, 0.5),
        };
        (g, spec)
    }

    #[test]
    fn values_inside_and_on_d() {
        let (g, spec) = setup();
        let sub = subsolution_field(&spec, &g, 0.5).unwrap();
        let x = [0.1, 0.8];
        let rho = 1.0 - norm(&[0.1, -0.2]);
        assert!((sub.field.value(&x) - 0.1 * rho.sqrt()).abs() < 1e-15);
        let y = [0.05, 2.7];
        assert_eq!(sub.field.value(&y), spec.reference.value(&y));
        assert!(sub.m0 > 0.0);
        let expected_min = spec.reference.value(&[0.0, 3.0]);
        assert!((sub.m0 - expected_min).abs() < 1e-12);
        assert!((sub.gap - 0.2).abs() < 1e-12);
    }

    #[test]
    fn below_reference_outside_ball() {
        let (g, mut spec) = setup();
        let sub = subsolution_field(&spec, &g, 0.5).unwrap();
        spec.beta = Some(0.5 * sub.m0);
        let sub = subsolution_field(&spec, &g, 0.5).unwrap();
        for i in 0..40 {
            for j in 0..40 {
                let x = [-2.0 + 0.1 * i as f64, -0.5 + 0.11 * j as f64];
                if norm(&[x[0], x[1] - 1.0]) >= 1.0 {
                    assert!(sub.field.value(&x) <= spec.reference.value(&x) + 1e-15);
                }
            }
        }
    }

    #[test]
    fn rejects_overlap() {
        let (g, mut spec) = setup();
        spec.inner_set = InnerSet::Ball {
            center: vec![0.0, 1.8],
            radius: 0.4,
        };
        assert!(matches!(
            subsolution_field(&spec, &g, 0.5),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn beta_rule() {
        let c = HopfConstants {
            m0: 1.0,
            m1: 4.0,
            m2: 1.0,
            m3: 0.8,
        };
        assert!((c.beta_bound(3.0) - 0.25).abs() < 1e-15);
        let c = HopfConstants {
            m0: 1.0,
            m1: -1.0,
            m2: 1.0,
            m3: 0.8,
        };
        assert!((c.beta_bound(3.0) - 0.4).abs() < 1e-15);
    }
}
