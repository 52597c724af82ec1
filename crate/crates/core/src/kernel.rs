//! The scalar nonlinearity `G(t) = |t|^(p-2) t` and the operator parameters.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Dimension, order and exponent of the fractional p-Laplacian, together
/// with the positive multiplicative constant in front of the integral.
///
/// The constant defaults to 1. Every operator value scales linearly in it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub n: usize,
    pub s: f64,
    pub p: f64,
    #[serde(default = "default_normalization")]
    pub normalization: f64,
}

fn default_normalization() -> f64 {
    1.0
}

impl OperatorParams {
    pub fn new(n: usize, s: f64, p: f64) -> Result<Self> {
        let params = Self {
            n,
            s,
            p,
            normalization: 1.0,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_normalization(mut self, normalization: f64) -> Result<Self> {
        self.normalization = normalization;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return invalid("dimension n must be at least 1");
        }
        if !(self.s > 0.0 && self.s < 1.0) {
            return invalid(format!("order s = {} must lie in (0, 1)", self.s));
        }
        if !(self.p > 1.0) || !self.p.is_finite() {
            return invalid(format!("exponent p = {} must exceed 1", self.p));
        }
        if !(self.normalization > 0.0) || !self.normalization.is_finite() {
            return invalid(format!(
                "normalization = {} must be a positive finite number",
                self.normalization
            ));
        }
        Ok(())
    }

    /// The product `s p`, which sets the decay of the kernel beyond the
    /// dimension: the kernel is `|y|^-(n + sp)`.
    pub fn sp(&self) -> f64 {
        self.s * self.p
    }

    pub fn kernel_order(&self) -> f64 {
        self.n as f64 + self.sp()
    }

    /// `3 / (2 - s)`, the C^1 threshold for the operator applied to smooth fields.
    pub fn threshold(&self) -> f64 {
        threshold_unchecked(self.s)
    }

    /// `2p - sp - 3`: the power law of the derivative of the operator applied
    /// to the bump-square field near its degenerate minimum.
    pub fn blowup_exponent(&self) -> f64 {
        2.0 * self.p - self.sp() - 3.0
    }
}

/// `|t|^(p-2) t`, evaluated as `sign(t) |t|^(p-1)` so that `t = 0` maps to 0.
pub fn kernel_g(t: f64, p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return invalid(format!("kernel exponent p = {p} must exceed 1"));
    }
    Ok(g(t, p))
}

#[inline]
pub(crate) fn g(t: f64, p: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.signum() * t.abs().powf(p - 1.0)
    }
}

/// `|t|^(p-2)`, the derivative weight `G'(t) / (p - 1)`. Zero at the origin
/// for `p > 2`.
#[inline]
pub(crate) fn g_weight(t: f64, p: f64) -> f64 {
    if t == 0.0 {
        if p > 2.0 {
            0.0
        } else if p == 2.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        t.abs().powf(p - 2.0)
    }
}

pub fn regularity_threshold(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return invalid(format!("order s = {s} must lie in (0, 1)"));
    }
    Ok(threshold_unchecked(s))
}

fn threshold_unchecked(s: f64) -> f64 {
    3.0 / (2.0 - s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_values() {
        assert_eq!(kernel_g(0.0, 2.5).unwrap(), 0.0);
        assert_eq!(kernel_g(2.0, 3.0).unwrap(), 4.0);
        assert_eq!(kernel_g(-2.0, 3.0).unwrap(), -4.0);
        let v = kernel_g(0.5, 2.5).unwrap();
        assert!((v - 0.353_553_390_6).abs() < 1e-10);
    }

    #[test]
    fn kernel_rejects_small_p() {
        assert!(kernel_g(1.0, 1.0).is_err());
        assert!(kernel_g(1.0, 0.5).is_err());
    }

    #[test]
    fn thresholds() {
        assert!((regularity_threshold(0.8).unwrap() - 2.5).abs() < 1e-15);
        assert!((regularity_threshold(0.5).unwrap() - 2.0).abs() < 1e-15);
        assert!((regularity_threshold(1e-12).unwrap() - 1.5).abs() < 1e-11);
        assert!(regularity_threshold(0.0).is_err());
        assert!(regularity_threshold(1.0).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(OperatorParams::new(1, 0.5, 2.5).is_ok());
        assert!(OperatorParams::new(0, 0.5, 2.5).is_err());
        assert!(OperatorParams::new(1, 1.0, 2.5).is_err());
        assert!(OperatorParams::new(1, 0.5, 1.0).is_err());
        let p = OperatorParams::new(2, 0.5, 2.5).unwrap();
        assert!(p.with_normalization(0.0).is_err());
        assert!(p.kernel_order() > p.sp());
        assert!((p.blowup_exponent() - (5.0 - 1.25 - 3.0)).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn odd(t in -1e3f64..1e3, p in 1.01f64..6.0) {
            prop_assert_eq!(g(-t, p), -g(t, p));
        }

        #[test]
        fn strictly_increasing(a in -50f64..50.0, b in -50f64..50.0, p in 1.01f64..6.0) {
            prop_assume!((a - b).abs() > 1e-9);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(g(lo, p) < g(hi, p));
        }

        #[test]
        fn homogeneous(t in -20f64..20.0, c in 0.01f64..50.0, p in 1.01f64..6.0) {
            let lhs = g(c * t, p);
            let rhs = c.powf(p - 1.0) * g(t, p);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(f64::MIN_POSITIVE));
        }

        #[test]
        fn threshold_range(s in 1e-6f64..0.999_999) {
            let t = regularity_threshold(s).unwrap();
            prop_assert!(t > 1.5 && t < 3.0);
        }
    }
}
