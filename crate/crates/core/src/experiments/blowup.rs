//! Growth of the derivative of the operator near the degenerate minimum of
//! the bump-square field.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{power_law_fit, PowerLawFit};
use crate::error::{invalid, Result};
use crate::fields::ScalarField;
use crate::kernel::OperatorParams;
use crate::operator::{
    decompose_i123, evaluate_operator_derivative, finite_difference_derivative,
    one_sided_difference,
};
use crate::quadrature::QuadratureConfig;

/// Fitted exponents within this distance of zero count as a bounded,
/// non-vanishing limit.
pub const FLAT_EXPONENT: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Blowup,
    CriticalJump,
    Regular,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Blowup => "blowup",
            Classification::CriticalJump => "critical-jump",
            Classification::Regular => "regular",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupSample {
    pub x: f64,
    pub deriv_value: f64,
    pub err_estimate: f64,
    pub converged: bool,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupReport {
    pub params: OperatorParams,
    /// Samples ordered by decreasing `x`.
    pub samples: Vec<BlowupSample>,
    pub fitted_exponent: f64,
    pub predicted_exponent: f64,
    pub fit_r2: f64,
    pub classification: Classification,
    /// Central difference quotient of the operator at 0 with step equal to
    /// the smallest sample point.
    pub origin_quotient: f64,
}

impl BlowupReport {
    pub fn x_samples(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.x).collect()
    }

    pub fn derivative_values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.deriv_value).collect()
    }
}

/// `count` log-spaced points in `[lo, hi]`, largest first.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (hi.ln(), lo.ln());
    (0..count)
        .map(|k| (a + (b - a) * k as f64 / (count.max(2) - 1) as f64).exp())
        .collect()
}

/// Twelve log-spaced points in `[1e-4, 10^-1.2]`.
pub fn default_blowup_grid() -> Vec<f64> {
    log_grid(1e-4, 10f64.powf(-1.2), 12)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 6 {
        return invalid(format!(
            "blow-up grid needs at least 6 points, got {}",
            grid.len()
        ));
    }
    if grid.iter().any(|x| !(*x > 0.0 && *x < 0.125)) {
        return invalid("blow-up grid points must lie in (0, 1/8)");
    }
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = grid.iter().copied().fold(0.0, f64::max);
    let decades = (hi / lo).log10();
    if decades < 1.5 {
        return invalid(format!(
            "blow-up grid spans {decades:.2} decades; at least 1.5 are needed"
        ));
    }
    Ok(())
}

/// Classifies from the data: a growing power law is a blow-up, a flat one a
/// jump to a nonzero limit, and a decaying one a continuous derivative.
pub fn classify(fit: &PowerLawFit, magnitudes_toward_zero: &[f64]) -> Classification {
    let growing = magnitudes_toward_zero.windows(2).all(|w| w[1] > w[0]);
    if fit.exponent < -FLAT_EXPONENT && growing {
        Classification::Blowup
    } else if fit.exponent <= FLAT_EXPONENT {
        Classification::CriticalJump
    } else {
        Classification::Regular
    }
}

/// Evaluates the derivative of the operator of the bump-square field on
/// `x_grid` (default [`default_blowup_grid`]) through the range
/// decomposition and fits its power law.
pub fn blowup_experiment(
    params: &OperatorParams,
    x_grid: Option<&[f64]>,
    cfg: &QuadratureConfig,
) -> Result<BlowupReport> {
    params.validate()?;
    if params.n != 1 {
        return invalid("the blow-up experiment is one-dimensional; use n = 1");
    }
    let mut grid = x_grid
        .map(<[f64]>::to_vec)
        .unwrap_or_else(default_blowup_grid);
    check_grid(&grid)?;
    grid.sort_by(|a, b| b.total_cmp(a));
    let samples: Vec<BlowupSample> = grid
        .par_iter()
        .map(|&x| {
            let d = decompose_i123(x, params, cfg)?;
            Ok(BlowupSample {
                x,
                deriv_value: d.derivative.value,
                err_estimate: d.derivative.error_estimate,
                converged: d.derivative.converged,
                i1: d.i1.value,
                i2: d.i2.value,
                i3: d.i3.value,
            })
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s.x, s.deriv_value)).collect();
    let fit = power_law_fit(&pairs)?;
    let magnitudes: Vec<f64> = samples.iter().map(|s| s.deriv_value.abs()).collect();
    let classification = classify(&fit, &magnitudes);
    let h = grid[grid.len() - 1];
    let origin_quotient =
        finite_difference_derivative(&ScalarField::BumpSquare, &[0.0], 0, params, cfg, h)?;
    Ok(BlowupReport {
        params: *params,
        samples,
        fitted_exponent: fit.exponent,
        predicted_exponent: params.blowup_exponent(),
        fit_r2: fit.r2,
        classification,
        origin_quotient,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub s: f64,
    pub p: f64,
    pub threshold: f64,
    pub classification: Classification,
    pub fitted_exponent: f64,
}

/// Classification of every `(s, p)` pair, in row-major order of the inputs.
pub fn threshold_sweep(
    s_list: &[f64],
    p_list: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<SweepRow>> {
    if let Some(p) = p_list.iter().find(|p| !(**p > 2.0)) {
        return invalid(format!("threshold sweep needs p > 2, got {p}"));
    }
    let cells: Vec<(f64, f64)> = s_list
        .iter()
        .flat_map(|&s| p_list.iter().map(move |&p| (s, p)))
        .collect();
    cells
        .par_iter()
        .map(|&(s, p)| {
            let params = OperatorParams::new(1, s, p)?;
            let report = blowup_experiment(&params, None, cfg)?;
            Ok(SweepRow {
                s,
                p,
                threshold: params.threshold(),
                classification: report.classification,
                fitted_exponent: report.fitted_exponent,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalRow {
    pub k: u32,
    pub h: f64,
    /// `[op(h) - op(-h)] / (2h)`.
    pub symmetric_quotient: f64,
    /// `[op(h) - op(0)] / h`.
    pub one_sided_quotient: f64,
    /// Derivative of the operator at `x = h`.
    pub derivative: f64,
    pub derivative_error: f64,
}

/// Difference quotients at the origin and derivatives at `x = 2^-k`.
pub fn critical_scan(
    params: &OperatorParams,
    ks: &[u32],
    cfg: &QuadratureConfig,
) -> Result<Vec<CriticalRow>> {
    let field = ScalarField::BumpSquare;
    ks.par_iter()
        .map(|&k| {
            let h = 0.5f64.powi(k as i32);
            let symmetric_quotient =
                finite_difference_derivative(&field, &[0.0], 0, params, cfg, h)?;
            let one_sided_quotient = one_sided_difference(&field, &[0.0], 0, params, cfg, h)?;
            let d = evaluate_operator_derivative(&field, &[h], 0, params, cfg)?;
            let (derivative, derivative_error) = match d.result() {
                Some(r) => (r.value, r.error_estimate),
                None => (f64::NAN, f64::INFINITY),
            };
            Ok(CriticalRow {
                k,
                h,
                symmetric_quotient,
                one_sided_quotient,
                derivative,
                derivative_error,
            })
        })
        .collect()
}
