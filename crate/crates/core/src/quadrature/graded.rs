//! Geometric panels toward an integrable singularity at the origin.

use super::adaptive::{adaptive_integrate, adaptive_integrate_with_breaks};
use super::{Accumulator, EvalResult, QuadratureConfig};
use crate::error::{Error, Result};

/// Consecutive non-decreasing panel contributions that signal divergence.
const DIVERGENCE_RUN: usize = 10;
const MAX_GRADED_PANELS: usize = 4000;

/// Integrates `f` over `(0, b]` where `f` may be singular at 0.
pub fn graded_singular_integrate(
    f: impl Fn(f64) -> f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    graded_with_breaks(f, b, &[], cfg)
}

/// As [`graded_singular_integrate`], with known non-smooth points of `f` in
/// `(0, b)`. Geometric grading starts below the smallest break, so every
/// graded panel sees a smooth integrand.
pub fn graded_with_breaks(
    f: impl Fn(f64) -> f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if !(b > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "graded integration needs b > 0, got {b}"
        )));
    }
    let floor = cfg.pv_floor;
    if floor >= b {
        return Ok(EvalResult::exact(0.0));
    }
    let y0 = breaks
        .iter()
        .copied()
        .filter(|t| t.is_finite() && *t > floor && *t < b * (1.0 - 1e-14))
        .fold(b, f64::min);

    let mut local = cfg.clone();
    let mut last = None;
    for _ in 0..4 {
        let r = graded_pass(&f, y0, b, breaks, &local)?;
        let target = cfg.target(r.value);
        if !r.converged || r.error_estimate <= target {
            return Ok(EvalResult {
                converged: r.converged && r.error_estimate <= target,
                ..r
            });
        }
        // cancellation between pieces: tighten and try again
        let shrink = (0.25 * target / r.error_estimate).max(1e-4);
        local.rel_tol *= shrink;
        local.abs_tol *= shrink;
        last = Some(r);
    }
    let r = last.expect("at least one pass");
    Ok(EvalResult {
        converged: false,
        ..r
    })
}

fn graded_pass(
    f: &impl Fn(f64) -> f64,
    y0: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let mut total = if y0 < b {
        adaptive_integrate_with_breaks(f, y0, b, breaks, cfg)
    } else {
        EvalResult::exact(0.0)
    };
    let panel_cfg = QuadratureConfig {
        abs_tol: 0.01 * cfg.abs_tol,
        ..cfg.clone()
    };
    let q = cfg.grading_ratio;
    let mut sum = Accumulator::default();
    sum.add(total.value);
    let mut hi = y0;
    let mut prev: Option<f64> = None;
    let mut run = 0;
    let mut count = 0;
    loop {
        let lo = hi * q;
        if lo <= cfg.pv_floor || lo < f64::MIN_POSITIVE * 1e10 {
            let r = adaptive_integrate(f, cfg.pv_floor, hi, &panel_cfg);
            sum.add(r.value);
            total = total.plus(&r);
            total.converged &= cfg.pv_floor > 0.0;
            break;
        }
        let r = adaptive_integrate(f, lo, hi, &panel_cfg);
        if !r.value.is_finite() {
            return Err(Error::NotIntegrable {
                partial_sum: sum.value(),
                panels: count,
            });
        }
        sum.add(r.value);
        total = total.plus(&r);
        count += 1;
        let cur = r.value.abs();
        if let Some(pv) = prev {
            if cur == 0.0 && pv == 0.0 {
                break;
            }
            if cur < pv {
                let rho = cur / pv;
                let remainder = r.value * rho / (1.0 - rho);
                if 4.0 * remainder.abs() <= cfg.target(sum.value()) {
                    sum.add(remainder);
                    total.error_estimate += remainder.abs();
                    break;
                }
                run = 0;
            } else {
                run += 1;
                if run >= DIVERGENCE_RUN {
                    return Err(Error::NotIntegrable {
                        partial_sum: sum.value(),
                        panels: count,
                    });
                }
            }
        }
        if count >= MAX_GRADED_PANELS.min(cfg.max_panels) {
            total.converged = false;
            break;
        }
        prev = Some(cur);
        hi = lo;
    }
    total.value = sum.value();
    Ok(total)
}
