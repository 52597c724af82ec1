//! Cancellation-free integrands for short rays.
//!
//! For small `y` both `u(x) - u(x + y e)` and `u(x) - u(x - y e)` are
//! differences of nearly equal numbers, and the two halves of the
//! symmetrized integrands cancel to leading order. Writing
//!
//! ```text
//! u(x) - u(x + y e) = -y P+(y),   u(x) - u(x - y e) = y P-(y),
//! P+-(y) = E(y) +- O(y),   E = a1 + a3 y^2 + a5 y^4,   O = y (a2 + a4 y^2)
//! ```
//!
//! with the exact Taylor coefficients of `u` along `e`, the cancelling parts
//! are formed from `P-` and `P+` with `expm1` and `ln_1p`. The derivative
//! integrand uses the same split for `v = du/dx_i`.

use crate::fields::ScalarField;

/// Threshold, relative to the local length scale, below which the short-ray
/// forms are used. The dropped terms are of relative size `(y / L)^4`; past
/// the threshold the direct second differences are well conditioned.
pub(crate) const SHORT_RAY: f64 = 3e-3;

#[derive(Clone, Copy, Debug)]
pub(crate) struct RayTaylor {
    /// Coefficients of `y^k` in `u(x + y e)`, `k = 1..=5`.
    a: [f64; 5],
    /// Coefficients of `y^k` in `v(x + y e)`, `k = 1..=4`.
    b: [f64; 4],
    /// Largest `y` for which the expansion is used.
    pub limit: f64,
}

impl RayTaylor {
    pub fn new(field: &ScalarField, x: &[f64], e: &[f64], i: usize, limit: f64) -> Option<Self> {
        let ju = field.ray_jet(x, e);
        let mut a = [0.0; 5];
        a.copy_from_slice(&ju.c[1..6]);
        // The coefficient of y^k in v along e is the t-linear part of the
        // y^(k+1) coefficient of u along e + t e_i, a polynomial of degree
        // k + 1 <= 5 in t. Its odd part over t is even and quadratic in t^2,
        // so three symmetric pairs recover it exactly.
        let line = |t: f64| {
            let d: Vec<f64> = (0..x.len())
                .map(|k| e[k] + if k == i { t } else { 0.0 })
                .collect();
            field.ray_jet(x, &d).c
        };
        let odd = |t: f64| {
            let (p, m) = (line(t), line(-t));
            let mut o = [0.0; 4];
            for k in 0..4 {
                o[k] = 0.5 * (p[k + 2] - m[k + 2]) / t;
            }
            o
        };
        let (o1, o2, o3) = (odd(1.0), odd(2.0), odd(3.0));
        let mut b = [0.0; 4];
        for k in 0..4 {
            b[k] = 1.5 * o1[k] - 0.6 * o2[k] + 0.1 * o3[k];
        }
        let r = Self { a, b, limit };
        let ok = r.a.iter().chain(&r.b).all(|v| v.is_finite());
        ok.then_some(r)
    }

    /// `(P+, P-, |P-| - |P+|)`, the last without cancellation.
    fn polys(&self, y: f64) -> (f64, f64, f64) {
        let [a1, a2, a3, a4, a5] = self.a;
        let y2 = y * y;
        let even = a1 + y2 * (a3 + y2 * a5);
        let odd = y * (a2 + y2 * a4);
        let (pp, pm) = (even + odd, even - odd);
        let d = if (pp >= 0.0) == (pm >= 0.0) {
            -2.0 * odd * pp.signum()
        } else {
            -2.0 * even * pp.signum()
        };
        (pp, pm, d)
    }

    /// `|P-|^q - |P+|^q`.
    fn power_gap(pp: f64, pm: f64, d: f64, q: f64) -> f64 {
        let ap = pp.abs();
        if ap == 0.0 {
            return pm.abs().powf(q);
        }
        ap.powf(q) * (q * (d / ap).ln_1p()).exp_m1()
    }

    /// `G(u(x) - u(x + y e)) + G(u(x) - u(x - y e))`, divided by `y^(p-1)`.
    pub fn operator_bracket(&self, y: f64, p: f64) -> f64 {
        let (pp, pm, d) = self.polys(y);
        if pp == 0.0 && pm == 0.0 {
            return 0.0;
        }
        if (pp >= 0.0) == (pm >= 0.0) {
            pp.signum() * Self::power_gap(pp, pm, d, p - 1.0)
        } else {
            // G(P-) - G(P+) with P- and P+ of opposite signs: no cancellation
            pm.signum() * pm.abs().powf(p - 1.0) - pp.signum() * pp.abs().powf(p - 1.0)
        }
    }

    /// `|D+|^(p-2) V+ + |D-|^(p-2) V-`, divided by `y^(p-1)`, where
    /// `D+- = u(x) - u(x +- y e)` and `V+- = v(x) - v(x +- y e)`.
    pub fn derivative_bracket(&self, y: f64, p: f64) -> f64 {
        let (pp, pm, d) = self.polys(y);
        let q = p - 2.0;
        let gap = Self::power_gap(pp, pm, d, q);
        let sum = pp.abs().powf(q) + pm.abs().powf(q);
        let [b1, b2, b3, b4] = self.b;
        let y2 = y * y;
        (b1 + y2 * b3) * gap - y * (b2 + y2 * b4) * sum
    }
}
