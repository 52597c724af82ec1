//! The fractional p-Laplacian and its first derivatives.
//!
//! Values are computed from the symmetrized ray integrand
//!
//! ```text
//! F(x, y) = [G(u(x) - u(x + y e)) + G(u(x) - u(x - y e))] / y^(1 + sp)
//! ```
//!
//! so that `(-Delta)_p^s u(x) = C sum_e w_e int_0^inf F(x, y) dy`, where the
//! directions `e` cover a half sphere with total weight `|S^(n-1)| / 2`. In
//! one dimension there is a single direction of weight 1. The pairing of `y`
//! with `-y` makes the integrand absolutely integrable at the origin for
//! `p >= 2`, so no cutoff around the singular point is needed.

mod decompose;
mod directions;
mod taylor;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fields::ScalarField;
use crate::kernel::{g, g_weight, OperatorParams};
use crate::quadrature::{
    derivative_tail, graded_with_breaks, tail_closed_form_checked, EvalResult, QuadratureConfig,
};
use taylor::{RayTaylor, SHORT_RAY};

pub use decompose::{decompose_i123, I123Decomposition};
pub use directions::DirectionRule;

/// A base point, field and parameter set, with the ray direction used by
/// the one-dimensional integrands and the coordinate index `i` used by the
/// derivative integrands.
#[derive(Clone, Debug)]
pub struct IntegrandFrame<'a> {
    pub field: &'a ScalarField,
    pub x: Vec<f64>,
    pub params: OperatorParams,
    pub direction: usize,
    pub ray: Vec<f64>,
    u_x: f64,
    v_x: f64,
    taylor: Option<RayTaylor>,
}

impl<'a> IntegrandFrame<'a> {
    pub fn new(
        field: &'a ScalarField,
        x: &[f64],
        params: OperatorParams,
        direction: usize,
    ) -> Result<Self> {
        params.validate()?;
        if x.len() != params.n {
            return invalid(format!(
                "point has {} coordinates but n = {}",
                x.len(),
                params.n
            ));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return invalid("point must be finite");
        }
        if direction >= params.n {
            return invalid(format!(
                "direction {direction} out of range for n = {}",
                params.n
            ));
        }
        field.check_dim(params.n)?;
        let ray = unit(params.n, 0);
        let u_x = field.value(x);
        let v_x = field.directional_derivative(x, &unit(params.n, direction));
        let frame = Self {
            field,
            x: x.to_vec(),
            params,
            direction,
            ray: ray.clone(),
            u_x,
            v_x,
            taylor: None,
        };
        Ok(frame.with_ray(ray))
    }

    /// Same frame along another unit ray.
    pub fn with_ray(mut self, ray: Vec<f64>) -> Self {
        self.ray = ray;
        // reflection points are kinks of G only, which the expansion resolves
        let nearest = self
            .field
            .ray_kinks(&self.x, &self.ray)
            .iter()
            .map(|t| t.abs())
            .filter(|t| *t > 0.0)
            .fold(f64::INFINITY, f64::min);
        let limit = SHORT_RAY * self.field.length_scale().min(nearest);
        self.taylor = if limit.is_finite() && limit > 0.0 {
            RayTaylor::new(self.field, &self.x, &self.ray, self.direction, limit)
        } else {
            None
        };
        self
    }

    /// Ray breaks plus the switch to the short-ray expansion.
    pub fn quadrature_breaks(&self) -> Vec<f64> {
        let mut b = self.breaks();
        let extent = b.last().copied().unwrap_or(0.0);
        for side in [1.0, -1.0] {
            b.extend(self.level_crossings(side, extent));
        }
        if let Some(t) = &self.taylor {
            b.push(t.limit);
        }
        b.retain(|t| *t > 0.0);
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// Distances in `(0, extent]` at which `u(x + side y e)` crosses `u(x)`.
    /// `G` is only Holder there for `p` near 2, which the panel error
    /// estimate does not see unless the point is a break.
    fn level_crossings(&self, side: f64, extent: f64) -> Vec<f64> {
        const SAMPLES: usize = 64;
        if !(extent > 0.0) {
            return Vec::new();
        }
        let d = |y: f64| self.field.value(&self.shifted(side * y)) - self.u_x;
        let mut out = Vec::new();
        let mut prev = (extent / SAMPLES as f64, d(extent / SAMPLES as f64));
        for k in 2..=SAMPLES {
            let y = extent * k as f64 / SAMPLES as f64;
            let cur = (y, d(y));
            if cur.1 == 0.0 {
                out.push(y);
            } else if prev.1 * cur.1 < 0.0 {
                let (mut lo, mut hi, f_lo) = (prev.0, cur.0, prev.1);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if d(mid) * f_lo > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            prev = cur;
        }
        out
    }

    fn short_ray(&self, y: f64) -> Option<&RayTaylor> {
        self.taylor.as_ref().filter(|t| y < t.limit)
    }

    pub fn u_x(&self) -> f64 {
        self.u_x
    }

    pub fn v_x(&self) -> f64 {
        self.v_x
    }

    fn shifted(&self, t: f64) -> Vec<f64> {
        self.x
            .iter()
            .zip(&self.ray)
            .map(|(a, e)| a + t * e)
            .collect()
    }

    /// Positive distances along the ray (either way) at which the integrands
    /// lose smoothness.
    fn breaks(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .field
            .ray_breaks(&self.x, &self.ray)
            .iter()
            .map(|t| t.abs())
            .collect();
        b.retain(|t| *t > 0.0);
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// `F(x, y)` along the frame's ray.
pub fn symmetrized_integrand(frame: &IntegrandFrame, y: f64) -> f64 {
    let p = frame.params.p;
    if let Some(t) = frame.short_ray(y) {
        return t.operator_bracket(y, p) * y.powf(p - 2.0 - frame.params.sp());
    }
    let up = frame.field.value(&frame.shifted(y));
    let um = frame.field.value(&frame.shifted(-y));
    (g(frame.u_x - up, p) + g(frame.u_x - um, p)) / y.powf(1.0 + frame.params.sp())
}

/// `dF/dx_i (x, y)` along the frame's ray.
pub fn derivative_integrand(frame: &IntegrandFrame, y: f64) -> f64 {
    let p = frame.params.p;
    if let Some(t) = frame.short_ray(y) {
        return (p - 1.0) * t.derivative_bracket(y, p) * y.powf(p - 2.0 - frame.params.sp());
    }
    let ei = unit(frame.params.n, frame.direction);
    let xp = frame.shifted(y);
    let xm = frame.shifted(-y);
    let (up, um) = (frame.field.value(&xp), frame.field.value(&xm));
    let vp = frame.field.directional_derivative(&xp, &ei);
    let vm = frame.field.directional_derivative(&xm, &ei);
    let bracket = g_weight(frame.u_x - up, p) * (frame.v_x - vp)
        + g_weight(frame.u_x - um, p) * (frame.v_x - vm);
    (p - 1.0) * bracket / y.powf(1.0 + frame.params.sp())
}

/// Radius beyond which the field is constant as seen from `x`, and the
/// radius actually used for the closed-form tail.
fn tail_radii(field: &ScalarField, x: &[f64], cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let norm_x = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let required = field.constancy_radius() + norm_x;
    let radius = cfg.tail_radius.unwrap_or(required + 1.0);
    if radius < required {
        return Err(Error::TailRadius { radius, required });
    }
    Ok((required, radius))
}

fn check_operator_inputs(
    field: &ScalarField,
    x: &[f64],
    params: &OperatorParams,
    cfg: &QuadratureConfig,
) -> Result<()> {
    params.validate()?;
    cfg.validate()?;
    if params.p < 2.0 {
        return Err(Error::UnsupportedExponent {
            p: params.p,
            reason:
                "operator evaluation needs p >= 2; for 1 < p < 2 the principal value can diverge \
                     (already the p-Laplacian of x^2 at its minimum is infinite)"
                    .into(),
        });
    }
    if x.len() != params.n {
        return invalid(format!(
            "point has {} coordinates but n = {}",
            x.len(),
            params.n
        ));
    }
    field.check_dim(params.n)?;
    field.lsp_tail_check(params)
}

/// Inner rules may work to a looser, magnitude-relative target; the flag
/// reported to callers always refers to `cfg`.
fn honest(mut r: EvalResult, cfg: &QuadratureConfig) -> EvalResult {
    r.converged &= r.error_estimate <= cfg.target(r.value);
    r
}

/// `(-Delta)_p^s u(x)`.
pub fn evaluate_operator(
    field: &ScalarField,
    x: &[f64],
    params: &OperatorParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    check_operator_inputs(field, x, params, cfg)?;
    let (required, radius) = tail_radii(field, x, cfg)?;
    let frame = IntegrandFrame::new(field, x, *params, 0)?;
    let rule = DirectionRule::for_config(params.n, cfg)?;
    let rays = rule.integrate(field, x, cfg, |e, ray_cfg| {
        let fr = frame.clone().with_ray(e.to_vec());
        graded_with_breaks(
            |y| symmetrized_integrand(&fr, y),
            radius,
            &fr.quadrature_breaks(),
            ray_cfg,
        )
    })?;
    let w = frame.u_x - field.far_value();
    let tail = tail_closed_form_checked(w, radius, required, params)?;
    Ok(honest(
        rays.plus(&EvalResult::exact(tail))
            .scaled(params.normalization),
        cfg,
    ))
}

/// Outcome of differentiating the operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum DerivativeOutcome {
    Finite(EvalResult),
    /// The singular panels failed to decay: the differentiated integral is
    /// not absolutely convergent at this point.
    BlowupSuspected {
        partial_sum: f64,
        panels: usize,
    },
}

impl DerivativeOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            DerivativeOutcome::Finite(r) => Some(r.value),
            DerivativeOutcome::BlowupSuspected { .. } => None,
        }
    }

    pub fn result(&self) -> Option<&EvalResult> {
        match self {
            DerivativeOutcome::Finite(r) => Some(r),
            DerivativeOutcome::BlowupSuspected { .. } => None,
        }
    }
}

/// `d/dx_i (-Delta)_p^s u (x)` from the differentiated integrand.
pub fn evaluate_operator_derivative(
    field: &ScalarField,
    x: &[f64],
    i: usize,
    params: &OperatorParams,
    cfg: &QuadratureConfig,
) -> Result<DerivativeOutcome> {
    check_operator_inputs(field, x, params, cfg)?;
    if params.p <= 2.0 {
        return Err(Error::UnsupportedExponent {
            p: params.p,
            reason: "the derivative of the operator is evaluated for p > 2 only".into(),
        });
    }
    if field.smoothness_order() < 3 {
        return Err(Error::InsufficientSmoothness {
            requested: 3,
            available: field.smoothness_order(),
        });
    }
    let (_, radius) = tail_radii(field, x, cfg)?;
    let frame = IntegrandFrame::new(field, x, *params, i)?;
    let rule = DirectionRule::for_config(params.n, cfg)?;
    let rays = rule.integrate(field, x, cfg, |e, ray_cfg| {
        let fr = frame.clone().with_ray(e.to_vec());
        graded_with_breaks(
            |y| derivative_integrand(&fr, y),
            radius,
            &fr.quadrature_breaks(),
            ray_cfg,
        )
    });
    let rays = match rays {
        Ok(r) => r,
        Err(Error::NotIntegrable {
            partial_sum,
            panels,
        }) => {
            return Ok(DerivativeOutcome::BlowupSuspected {
                partial_sum,
                panels,
            })
        }
        Err(e) => return Err(e),
    };
    let w = frame.u_x - field.far_value();
    let tail = derivative_tail(w, frame.v_x, radius, params);
    Ok(DerivativeOutcome::Finite(honest(
        rays.plus(&EvalResult::exact(tail))
            .scaled(params.normalization),
        cfg,
    )))
}

/// Central difference `[op(x + h e_i) - op(x - h e_i)] / (2h)`.
pub fn finite_difference_derivative(
    field: &ScalarField,
    x: &[f64],
    i: usize,
    params: &OperatorParams,
    cfg: &QuadratureConfig,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0) {
        return invalid(format!("step h must be positive, got {h}"));
    }
    if i >= x.len() {
        return invalid(format!("direction {i} out of range"));
    }
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[i] += h;
    xm[i] -= h;
    let fp = evaluate_operator(field, &xp, params, cfg)?.value;
    let fm = evaluate_operator(field, &xm, params, cfg)?.value;
    Ok((fp - fm) / (2.0 * h))
}

/// Forward difference `[op(x + h e_i) - op(x)] / h`.
pub fn one_sided_difference(
    field: &ScalarField,
    x: &[f64],
    i: usize,
    params: &OperatorParams,
    cfg: &QuadratureConfig,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0) {
        return invalid(format!("step h must be positive, got {h}"));
    }
    if i >= x.len() {
        return invalid(format!("direction {i} out of range"));
    }
    let mut xp = x.to_vec();
    xp[i] += h;
    let fp = evaluate_operator(field, &xp, params, cfg)?.value;
    let f0 = evaluate_operator(field, x, params, cfg)?.value;
    Ok((fp - f0) / h)
}
