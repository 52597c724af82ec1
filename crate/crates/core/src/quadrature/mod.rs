//! One-dimensional adaptive quadrature, graded meshes toward integrable
//! endpoint singularities, and closed-form tails.

pub mod adaptive;
pub mod gauss;
pub mod graded;
pub mod tail;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use adaptive::{adaptive_integrate, adaptive_integrate_with_breaks};
pub use gauss::gauss_legendre;
pub use graded::{graded_singular_integrate, graded_with_breaks};
pub use tail::{
    derivative_tail, mapped_tail_integrate, tail_closed_form, tail_closed_form_checked,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Ratio of consecutive geometric panels toward a singular endpoint.
    pub grading_ratio: f64,
    /// Radius beyond which the tail is closed analytically; `None` picks the
    /// smallest admissible value plus one.
    pub tail_radius: Option<f64>,
    /// Lower cutoff of the singular integral; 0 integrates down to the
    /// singular point.
    pub pv_floor: f64,
    /// Equispaced directions over the half circle for n = 2; `None` uses
    /// adaptive angular integration.
    pub sphere_points: Option<usize>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_panels: 20_000,
            grading_ratio: 0.5,
            tail_radius: None,
            pv_floor: 0.0,
            sphere_points: None,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return invalid("tolerances must be positive");
        }
        if !(self.grading_ratio > 0.0 && self.grading_ratio < 1.0) {
            return invalid(format!(
                "grading_ratio must lie in (0, 1), got {}",
                self.grading_ratio
            ));
        }
        if self.max_panels < 1 {
            return invalid("max_panels must be at least 1");
        }
        if !(self.pv_floor >= 0.0) {
            return invalid("pv_floor must be non-negative");
        }
        if let Some(r) = self.tail_radius {
            if !(r > 0.0) {
                return invalid("tail_radius must be positive");
            }
        }
        if let Some(m) = self.sphere_points {
            if m == 0 {
                return invalid("sphere_points must be positive");
            }
        }
        Ok(())
    }

    /// The stopping tolerance for a result of size `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels_used: usize,
    pub evaluations: usize,
    pub converged: bool,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            panels_used: 0,
            evaluations: 0,
            converged: true,
        }
    }

    /// Sum of two independent pieces.
    pub fn plus(&self, other: &EvalResult) -> EvalResult {
        EvalResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            panels_used: self.panels_used + other.panels_used,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scaled(&self, c: f64) -> EvalResult {
        EvalResult {
            value: c * self.value,
            error_estimate: c.abs() * self.error_estimate,
            ..self.clone()
        }
    }
}

/// Compensated (Neumaier) summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
