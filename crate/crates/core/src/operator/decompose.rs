//! Splitting of the differentiated operator of the bump-square field into a
//! near range `(0, 1/2)`, a middle range `(1/2, 5/2)` and a far range
//! `(5/2, inf)`.

use serde::{Deserialize, Serialize};

use super::{derivative_integrand, IntegrandFrame};
use crate::error::{invalid, Error, Result};
use crate::fields::ScalarField;
use crate::kernel::OperatorParams;
use crate::quadrature::{
    adaptive_integrate_with_breaks, graded_with_breaks, mapped_tail_integrate, EvalResult,
    QuadratureConfig,
};

const NEAR: f64 = 0.5;
const FAR: f64 = 2.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct I123Decomposition {
    pub x: f64,
    pub params: OperatorParams,
    pub i1: EvalResult,
    pub i2: EvalResult,
    pub i3: EvalResult,
    /// `4 x^(2p-3) (5/2)^(-sp) / (sp)`.
    pub i3_closed_form: f64,
    /// `C (p - 1) (I1 + I2 + I3)`.
    pub derivative: EvalResult,
}

impl I123Decomposition {
    pub fn i1_value(&self) -> f64 {
        self.i1.value
    }

    pub fn i3_relative_mismatch(&self) -> f64 {
        ((self.i3.value - self.i3_closed_form) / self.i3_closed_form).abs()
    }
}

/// Range integrals of `[f(x, y) + f(x, -y)] / y^(1 + sp)` for the bump-square
/// field, with `f(x, y) = |u(x) - u(x + y)|^(p-2) (u'(x) - u'(x + y))`.
pub fn decompose_i123(
    x: f64,
    params: &OperatorParams,
    cfg: &QuadratureConfig,
) -> Result<I123Decomposition> {
    params.validate()?;
    cfg.validate()?;
    if params.n != 1 {
        return invalid("the range decomposition is one-dimensional; use n = 1");
    }
    if !(x > 0.0 && x < 0.125) {
        return Err(Error::OutOfDomain(format!("x = {x} must lie in (0, 1/8)")));
    }
    if params.p <= 2.0 {
        return Err(Error::UnsupportedExponent {
            p: params.p,
            reason: "the differentiated integrand is used for p > 2 only".into(),
        });
    }
    let field = ScalarField::BumpSquare;
    let frame = IntegrandFrame::new(&field, &[x], *params, 0)?;
    let scale = 1.0 / (params.p - 1.0);
    let f = |y: f64| scale * derivative_integrand(&frame, y);

    let i1 = graded_with_breaks(f, NEAR, &[2.0 * x], cfg)?;
    let middle = [1.0 - x, 1.0 + x, 2.0 - x, 2.0 + x];
    let i2 = adaptive_integrate_with_breaks(f, NEAR, FAR, &middle, cfg);
    let i3 = mapped_tail_integrate(f, FAR, cfg)?;
    let sp = params.sp();
    let i3_closed_form = 4.0 * x.powf(2.0 * params.p - 3.0) * FAR.powf(-sp) / sp;
    let derivative = i1
        .plus(&i2)
        .plus(&i3)
        .scaled(params.normalization * (params.p - 1.0));
    Ok(I123Decomposition {
        x,
        params: *params,
        i1,
        i2,
        i3,
        i3_closed_form,
        derivative,
    })
}
