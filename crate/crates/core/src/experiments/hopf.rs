//! Barrier, subsolution and boundary-ratio checks on a ball.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::halton_in_ball;
use crate::error::{invalid, Error, Result};
use crate::fields::shapes::{dist, InnerSet};
use crate::fields::subsolution::sample_closure;
use crate::fields::{subsolution_field, BallGeometry, HopfConstants, ScalarField, SubsolutionSpec};
use crate::kernel::{g, OperatorParams};
use crate::operator::evaluate_operator;
use crate::quadrature::QuadratureConfig;

/// Safety factor applied to the largest admissible `beta`.
pub const BETA_SAFETY: f64 = 0.9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HopfOptions {
    /// Points sampled in the ball near the touching point.
    pub samples: usize,
    /// Points of the ratio scan along the inward normal.
    pub ratio_points: usize,
    pub t_min: f64,
    pub t_max: f64,
    /// Gauss order per coordinate for integrals over `D`.
    pub inner_order: usize,
}

impl Default for HopfOptions {
    fn default() -> Self {
        Self {
            samples: 25,
            ratio_points: 99,
            t_min: 0.01,
            t_max: 0.99,
            inner_order: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub t: f64,
    pub u: f64,
    pub d: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfSample {
    pub x: Vec<f64>,
    /// Operator of `rho^s`.
    pub barrier_operator: f64,
    /// Operator of the subsolution.
    pub subsolution_operator: f64,
    pub error_estimate: f64,
    pub converged: bool,
    /// `beta^(p-1) op(rho^s)(x)` plus the exact contribution of `D`.
    pub identity_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfReport {
    pub geometry: BallGeometry,
    pub params: OperatorParams,
    pub constants: HopfConstants,
    /// Largest operator value of `rho^s` over the samples.
    pub barrier_bound_c1: f64,
    /// `0.5 * min(M0, M3, (M2/M1)^(1/(p-1)))`.
    pub beta_admissible: f64,
    /// Value of `beta` used for the subsolution.
    pub beta: f64,
    pub subsolution_max_operator: f64,
    /// `M1 beta^(p-1) - M2`.
    pub subsolution_bound: f64,
    /// Largest relative gap between the subsolution operator and its
    /// splitting into the barrier part and the `D` part.
    pub identity_mismatch: f64,
    pub samples: Vec<HopfSample>,
    /// Samples at which the subsolution operator is not negative.
    pub violations: Vec<Vec<f64>>,
    pub ratio_scan: Vec<RatioRow>,
    pub ratio_min: f64,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self.subsolution_max_operator < 0.0
            && self.ratio_min >= self.beta
    }
}

/// Geometry, field, subsolution data and parameters of the reference setup:
/// the unit ball at `e_n` with flattening radius 0.1, the field
/// `(4 - |x - 2 e_n|^2)_+^s`, and `D` the ball of radius 0.4 at `2.6 e_n`.
pub fn default_hopf_setup() -> (BallGeometry, ScalarField, SubsolutionSpec, OperatorParams) {
    let geometry = BallGeometry::standard(2);
    let s = 0.5;
    let field = ScalarField::getoor_ball(vec![0.0, 2.0], 2.0, s);
    let spec = SubsolutionSpec {
        beta: None,
        inner_set: InnerSet::Ball {
            center: vec![0.0, 2.6],
            radius: 0.4,
        },
        reference: field.clone(),
    };
    let params = OperatorParams::new(2, s, 2.5).expect("valid parameters");
    (geometry, field, spec, params)
}

/// Points of the ball within `r * radius` of the touching point.
pub fn cap_samples(geometry: &BallGeometry, count: usize) -> Vec<Vec<f64>> {
    let r = geometry.flattening_radius * geometry.radius;
    halton_in_ball(&geometry.touching_point, r, count, |x| {
        dist(x, &geometry.center) < geometry.radius
    })
}

/// Points of the closed ball outside the open cap around the touching point.
fn outer_samples(geometry: &BallGeometry) -> Vec<Vec<f64>> {
    let r = geometry.flattening_radius * geometry.radius;
    let o = &geometry.touching_point;
    let ball = InnerSet::Ball {
        center: geometry.center.clone(),
        radius: geometry.radius,
    };
    let cap = InnerSet::Ball {
        center: o.clone(),
        radius: r,
    };
    let tol = 1e-12 * geometry.radius;
    let mut pts: Vec<Vec<f64>> = sample_closure(&ball, 16)
        .into_iter()
        .filter(|x| dist(x, o) >= r)
        .collect();
    pts.extend(
        sample_closure(&cap, 16).into_iter().filter(|x| {
            (dist(x, o) - r).abs() < tol && dist(x, &geometry.center) <= geometry.radius
        }),
    );
    pts.extend(halton_in_ball(
        &geometry.center,
        geometry.radius,
        400,
        |x| dist(x, o) >= r,
    ));
    pts
}

/// `u(o + t R nu) / d^s` along the inward normal `nu`, where `d = t R` is the
/// distance to the complement of the ball.
pub fn hopf_ratio_scan(
    field: &ScalarField,
    geometry: &BallGeometry,
    s: f64,
    ts: &[f64],
) -> Result<Vec<RatioRow>> {
    geometry.validate()?;
    field.check_dim(geometry.dim())?;
    let nu = geometry.normal();
    ts.iter()
        .map(|&t| {
            if !(t > 0.0 && t <= 1.0) {
                return invalid(format!("ratio scan needs t in (0, 1], got {t}"));
            }
            let d = t * geometry.radius;
            let x: Vec<f64> = geometry
                .touching_point
                .iter()
                .zip(&nu)
                .map(|(o, v)| o + d * v)
                .collect();
            let u = field.value(&x);
            Ok(RatioRow {
                t,
                u,
                d,
                ratio: u / d.powf(s),
            })
        })
        .collect()
}

fn linspace(a: f64, b: f64, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![a];
    }
    (0..m)
        .map(|k| a + (b - a) * k as f64 / (m - 1) as f64)
        .collect()
}

/// Runs the barrier construction for `field` on the ball of `geometry`.
///
/// `C1` is the largest operator value of `rho^s` over the cap samples, and
/// the constants are `M0 = min_D u`, `M1 = max(C1, 0)`,
/// `M2 = C (1/2)^(p-1) M0^(p-1) |D| / (r + max_D |y - o|)^(n+sp)` and
/// `M3 = min u` over the ball outside the cap. Unless `spec.beta` is given,
/// `beta` is 0.9 times the admissible bound.
pub fn hopf_experiment(
    geometry: &BallGeometry,
    field: &ScalarField,
    spec: &SubsolutionSpec,
    params: &OperatorParams,
    cfg: &QuadratureConfig,
    options: &HopfOptions,
) -> Result<HopfReport> {
    geometry.validate()?;
    params.validate()?;
    cfg.validate()?;
    if params.p < 2.0 {
        return Err(Error::UnsupportedExponent {
            p: params.p,
            reason: "the barrier construction needs p >= 2".into(),
        });
    }
    if geometry.dim() != params.n {
        return invalid(format!(
            "geometry is {}-dimensional but n = {}",
            geometry.dim(),
            params.n
        ));
    }
    if options.samples == 0 || options.ratio_points == 0 {
        return invalid("sample counts must be positive");
    }
    field.check_dim(params.n)?;
    let s = params.s;

    let cap = cap_samples(geometry, options.samples);
    if cap.len() < options.samples {
        return Err(Error::Geometry(
            "could not place the requested number of cap samples".into(),
        ));
    }
    let interior = halton_in_ball(&geometry.center, geometry.radius, 64, |_| true);
    if let Some(x) = cap
        .iter()
        .chain(&interior)
        .find(|x| !(field.value(x) > 0.0))
    {
        return invalid(format!(
            "field must be positive inside the ball; u({x:?}) = {}",
            field.value(x)
        ));
    }

    let barrier = ScalarField::barrier(geometry, s);
    let barrier_values: Vec<_> = cap
        .par_iter()
        .map(|x| evaluate_operator(&barrier, x, params, cfg))
        .collect::<Result<_>>()?;
    let c1 = barrier_values
        .iter()
        .map(|r| r.value)
        .fold(f64::NEG_INFINITY, f64::max);

    let probe = SubsolutionSpec {
        beta: Some(1.0),
        ..spec.clone()
    };
    let m0 = subsolution_field(&probe, geometry, s)?.m0;
    let o = &geometry.touching_point;
    let r = geometry.flattening_radius * geometry.radius;
    let far = spec.inner_set.farthest_from(o);
    let c_bar = (r + far).powf(-(params.n as f64 + params.sp()));
    let measure = spec.inner_set.measure();
    let m2 = params.normalization
        * c_bar
        * 0.5f64.powf(params.p - 1.0)
        * m0.powf(params.p - 1.0)
        * measure;
    let m3 = outer_samples(geometry)
        .iter()
        .map(|x| field.value(x))
        .fold(f64::INFINITY, f64::min);
    let constants = HopfConstants {
        m0,
        m1: c1.max(0.0),
        m2,
        m3,
    };
    let beta_admissible = constants.beta_bound(params.p);
    let beta = spec.beta.unwrap_or(BETA_SAFETY * beta_admissible);

    let sub = subsolution_field(
        &SubsolutionSpec {
            beta: Some(beta),
            ..spec.clone()
        },
        geometry,
        s,
    )?;
    let sub_values: Vec<_> = cap
        .par_iter()
        .map(|x| evaluate_operator(&sub.field, x, params, cfg))
        .collect::<Result<_>>()?;

    let kernel_exp = params.n as f64 + params.sp();
    let mut samples = Vec::with_capacity(cap.len());
    let mut identity_mismatch: f64 = 0.0;
    for ((x, b), v) in cap.iter().zip(&barrier_values).zip(&sub_values) {
        let bx = beta * barrier.value(x);
        let d_part = spec.inner_set.integrate(options.inner_order, |y| {
            (g(bx - spec.reference.value(y), params.p) - g(bx, params.p))
                / dist(x, y).powf(kernel_exp)
        })?;
        let identity_value = beta.powf(params.p - 1.0) * b.value + params.normalization * d_part;
        identity_mismatch =
            identity_mismatch.max(((v.value - identity_value) / identity_value).abs());
        samples.push(HopfSample {
            x: x.clone(),
            barrier_operator: b.value,
            subsolution_operator: v.value,
            error_estimate: v.error_estimate,
            converged: v.converged && b.converged,
            identity_value,
        });
    }
    let subsolution_max_operator = samples
        .iter()
        .map(|h| h.subsolution_operator)
        .fold(f64::NEG_INFINITY, f64::max);
    let violations = samples
        .iter()
        .filter(|h| !(h.subsolution_operator < 0.0))
        .map(|h| h.x.clone())
        .collect();

    let ts = linspace(options.t_min, options.t_max, options.ratio_points);
    let ratio_scan = hopf_ratio_scan(field, geometry, s, &ts)?;
    let ratio_min = ratio_scan
        .iter()
        .map(|row| row.ratio)
        .fold(f64::INFINITY, f64::min);

    let subsolution_bound = constants_bound(&constants, beta, params.p);
    Ok(HopfReport {
        geometry: geometry.clone(),
        params: *params,
        constants,
        barrier_bound_c1: c1,
        beta_admissible,
        beta,
        subsolution_max_operator,
        subsolution_bound,
        identity_mismatch,
        samples,
        violations,
        ratio_scan,
        ratio_min,
    })
}

fn constants_bound(c: &HopfConstants, beta: f64, p: f64) -> f64 {
    c.m1 * beta.powf(p - 1.0) - c.m2
}
