//! Far-field contributions beyond a radius where the field is constant.

use super::graded::graded_singular_integrate;
use super::{EvalResult, QuadratureConfig};
use crate::error::{Error, Result};
use crate::kernel::{g, g_weight, OperatorParams};

/// `|S^(n-1)|`, the surface area of the unit sphere in `R^n`.
pub fn sphere_area(n: usize) -> f64 {
    let h = 0.5 * n as f64;
    2.0 * std::f64::consts::PI.powf(h) / gamma_half_integer(n)
}

/// `Gamma(n / 2)` for positive integers `n`.
fn gamma_half_integer(n: usize) -> f64 {
    let mut v = if n.is_multiple_of(2) {
        1.0
    } else {
        std::f64::consts::PI.sqrt()
    };
    let mut k = if n.is_multiple_of(2) { 1.0 } else { 0.5 };
    while k < 0.5 * n as f64 - 1e-9 {
        v *= k;
        k += 1.0;
    }
    v
}

/// Integral over `|y| > R` of `G(u_x) / |y|^(n + sp)`:
/// `|S^(n-1)| G(u_x) R^(-sp) / (sp)`. In one dimension this is
/// `2 G(u_x) R^(-sp) / (sp)`.
pub fn tail_closed_form(u_x: f64, radius: f64, params: &OperatorParams) -> f64 {
    let sp = params.sp();
    sphere_area(params.n) * g(u_x, params.p) * radius.powf(-sp) / sp
}

/// [`tail_closed_form`] after checking that `radius` reaches the constancy
/// region of the field.
pub fn tail_closed_form_checked(
    u_x: f64,
    radius: f64,
    required: f64,
    params: &OperatorParams,
) -> Result<f64> {
    if radius < required {
        return Err(Error::TailRadius { radius, required });
    }
    Ok(tail_closed_form(u_x, radius, params))
}

/// Far-field part of the differentiated operator:
/// `|S^(n-1)| (p-1) |w|^(p-2) v R^(-sp) / (sp)` with `w = u(x) - far value`.
pub fn derivative_tail(w: f64, v_x: f64, radius: f64, params: &OperatorParams) -> f64 {
    let sp = params.sp();
    sphere_area(params.n) * (params.p - 1.0) * g_weight(w, params.p) * v_x * radius.powf(-sp) / sp
}

/// `int_a^inf f(y) dy` by the substitution `y = a / t`.
pub fn mapped_tail_integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    graded_singular_integrate(
        |t: f64| {
            let y = a / t;
            f(y) * a / (t * t)
        },
        1.0,
        cfg,
    )
}
