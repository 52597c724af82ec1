//! Scalar-field descriptors.
//!
//! Every field is eventually constant: outside a ball about the origin of
//! radius [`ScalarField::constancy_radius`] it equals
//! [`ScalarField::far_value`]. This is what lets the operator close its far
//! field analytically, and it makes the `L_sp` tail condition automatic.

pub mod bump;
pub mod geometry;
pub mod shapes;
pub mod subsolution;
pub mod tabulated;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::jet::{Jet, Real};
use crate::kernel::OperatorParams;
use shapes::{dot, norm, sphere_crossings, tangent_angles, wrap_half_turn, InnerSet};
use tabulated::{Extension, TabulatedField};

pub use bump::eta_bump;
pub use geometry::{barrier_rho, psi_inverse, psi_map, BallGeometry};
pub use shapes::{signed_distance, Shape};
pub use subsolution::{subsolution_field, HopfConstants, Subsolution, SubsolutionSpec};

/// Smoothness order reported for infinitely differentiable families.
pub const SMOOTH: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldFamily {
    Constant,
    BumpSquare,
    BarrierPower,
    GetoorBall,
    CustomTabulated,
    Composite,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ScalarField {
    Constant {
        value: f64,
    },
    /// `eta(|x|) |x|^2`, with `eta` the smooth even bump of [`eta_bump`].
    BumpSquare,
    /// `scale * (radius - |x - center|)_+^exponent`.
    BarrierPower {
        center: Vec<f64>,
        radius: f64,
        exponent: f64,
        scale: f64,
    },
    /// `(radius^2 - |x - center|^2)_+^exponent`.
    GetoorBall {
        center: Vec<f64>,
        radius: f64,
        exponent: f64,
    },
    Tabulated {
        table: TabulatedField,
    },
    /// `amplitude * inner(scale * (x - shift))`; an empty shift means zero.
    Transformed {
        inner: Box<ScalarField>,
        amplitude: f64,
        scale: f64,
        #[serde(default)]
        shift: Vec<f64>,
    },
    Sum {
        terms: Vec<ScalarField>,
    },
    /// `beta * rho^exponent + chi_D * reference`, with `rho` the distance to
    /// the complement of `B_radius(center)`.
    Subsolution {
        beta: f64,
        center: Vec<f64>,
        radius: f64,
        exponent: f64,
        inner_set: InnerSet,
        reference: Box<ScalarField>,
    },
}

/// All partial derivatives of one order at a point.
#[derive(Clone, Debug, PartialEq)]
pub enum Derivatives {
    Value(f64),
    Gradient(Vec<f64>),
    /// Row-major `n x n`.
    Hessian(Vec<Vec<f64>>),
    /// Flattened `n x n x n`, index `(i * n + j) * n + k`.
    Third(Vec<f64>),
}

impl ScalarField {
    pub fn constant(value: f64) -> Self {
        ScalarField::Constant { value }
    }

    pub fn getoor_ball(center: Vec<f64>, radius: f64, exponent: f64) -> Self {
        ScalarField::GetoorBall {
            center,
            radius,
            exponent,
        }
    }

    /// `rho^s` for the ball of `geometry`.
    pub fn barrier(geometry: &BallGeometry, s: f64) -> Self {
        ScalarField::BarrierPower {
            center: geometry.center.clone(),
            radius: geometry.radius,
            exponent: s,
            scale: 1.0,
        }
    }

    pub fn tabulated(table: TabulatedField) -> Self {
        ScalarField::Tabulated { table }
    }

    /// `amplitude * self(scale * (x - shift))`.
    pub fn transformed(self, amplitude: f64, scale: f64, shift: Vec<f64>) -> Self {
        ScalarField::Transformed {
            inner: Box::new(self),
            amplitude,
            scale,
            shift,
        }
    }

    /// `x -> c * self(x)`.
    pub fn scaled(self, c: f64) -> Self {
        self.transformed(c, 1.0, Vec::new())
    }

    /// `x -> self(x - a)`.
    pub fn translated(self, a: Vec<f64>) -> Self {
        self.transformed(1.0, 1.0, a)
    }

    /// `x -> self(lambda x)`.
    pub fn dilated(self, lambda: f64) -> Self {
        self.transformed(1.0, lambda, Vec::new())
    }

    /// `x -> self(-x)`.
    pub fn reflected(self) -> Self {
        self.transformed(1.0, -1.0, Vec::new())
    }

    pub fn family(&self) -> FieldFamily {
        match self {
            ScalarField::Constant { .. } => FieldFamily::Constant,
            ScalarField::BumpSquare => FieldFamily::BumpSquare,
            ScalarField::BarrierPower { .. } => FieldFamily::BarrierPower,
            ScalarField::GetoorBall { .. } => FieldFamily::GetoorBall,
            ScalarField::Tabulated { .. } => FieldFamily::CustomTabulated,
            ScalarField::Transformed { .. }
            | ScalarField::Sum { .. }
            | ScalarField::Subsolution { .. } => FieldFamily::Composite,
        }
    }

    /// The dimension this field is tied to, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            ScalarField::Constant { .. } | ScalarField::BumpSquare => None,
            ScalarField::BarrierPower { center, .. }
            | ScalarField::GetoorBall { center, .. }
            | ScalarField::Subsolution { center, .. } => Some(center.len()),
            ScalarField::Tabulated { .. } => Some(1),
            ScalarField::Transformed { inner, shift, .. } => inner.dim().or(if shift.is_empty() {
                None
            } else {
                Some(shift.len())
            }),
            ScalarField::Sum { terms } => terms.iter().find_map(|t| t.dim()),
        }
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if let Some(d) = self.dim() {
            if d != n {
                return invalid(format!("field is {d}-dimensional but n = {n}"));
            }
        }
        if let ScalarField::Transformed { inner, shift, .. } = self {
            if !shift.is_empty() && shift.len() != n {
                return invalid(format!("shift has {} components but n = {n}", shift.len()));
            }
            inner.check_dim(n)?;
        }
        if let ScalarField::Sum { terms } = self {
            for t in terms {
                t.check_dim(n)?;
            }
        }
        Ok(())
    }

    /// Declared number of continuous derivatives (everywhere).
    pub fn smoothness_order(&self) -> u32 {
        match self {
            ScalarField::Constant { .. } | ScalarField::BumpSquare => SMOOTH,
            ScalarField::BarrierPower { .. } | ScalarField::GetoorBall { .. } => 0,
            ScalarField::Tabulated { table } => table.meta.smoothness_order,
            ScalarField::Transformed { inner, .. } => inner.smoothness_order(),
            ScalarField::Sum { terms } => terms
                .iter()
                .map(|t| t.smoothness_order())
                .min()
                .unwrap_or(SMOOTH),
            ScalarField::Subsolution { .. } => 0,
        }
    }

    /// Radius of the smallest origin-centred ball outside of which the field
    /// is constant.
    pub fn constancy_radius(&self) -> f64 {
        match self {
            ScalarField::Constant { .. } => 0.0,
            ScalarField::BumpSquare => 2.0,
            ScalarField::BarrierPower { center, radius, .. }
            | ScalarField::GetoorBall { center, radius, .. } => norm(center) + radius,
            ScalarField::Tabulated { table } => table.meta.support_radius,
            ScalarField::Transformed {
                inner,
                scale,
                shift,
                ..
            } => norm(shift) + inner.constancy_radius() / scale.abs(),
            ScalarField::Sum { terms } => terms
                .iter()
                .map(|t| t.constancy_radius())
                .fold(0.0, f64::max),
            ScalarField::Subsolution {
                center,
                radius,
                inner_set,
                ..
            } => {
                let origin = vec![0.0; center.len()];
                (norm(center) + radius).max(inner_set.farthest_from(&origin))
            }
        }
    }

    /// A length over which the field varies appreciably.
    pub(crate) fn length_scale(&self) -> f64 {
        match self {
            ScalarField::Constant { .. } => f64::INFINITY,
            ScalarField::BumpSquare => 1.0,
            ScalarField::BarrierPower { radius, .. } | ScalarField::GetoorBall { radius, .. } => {
                *radius
            }
            ScalarField::Tabulated { table } => table.step,
            ScalarField::Transformed { inner, scale, .. } => inner.length_scale() / scale.abs(),
            ScalarField::Sum { terms } => terms
                .iter()
                .map(|t| t.length_scale())
                .fold(f64::INFINITY, f64::min),
            ScalarField::Subsolution {
                radius,
                inner_set,
                reference,
                ..
            } => {
                let inner = match inner_set {
                    InnerSet::Ball { radius, .. } => *radius,
                    InnerSet::Box { lo, hi } => lo
                        .iter()
                        .zip(hi)
                        .map(|(a, b)| b - a)
                        .fold(f64::INFINITY, f64::min),
                };
                radius.min(inner).min(reference.length_scale())
            }
        }
    }

    /// Value of the field outside [`constancy_radius`](Self::constancy_radius).
    pub fn far_value(&self) -> f64 {
        match self {
            ScalarField::Constant { value } => *value,
            ScalarField::Transformed {
                inner, amplitude, ..
            } => amplitude * inner.far_value(),
            ScalarField::Sum { terms } => terms.iter().map(|t| t.far_value()).sum(),
            _ => 0.0,
        }
    }

    /// Support radius about the origin; `None` when the support is unbounded.
    pub fn support_radius(&self) -> Option<f64> {
        if self.far_value() != 0.0 {
            None
        } else {
            Some(self.constancy_radius())
        }
    }

    /// Fails when the field cannot be evaluated on all of space.
    pub fn check_evaluable(&self) -> Result<()> {
        match self {
            ScalarField::Tabulated { table } if table.meta.extension == Extension::None => {
                Err(Error::Table(
                    "table has no declared extension; the operator needs the field on all of space"
                        .into(),
                ))
            }
            ScalarField::Transformed { inner, scale, .. } => {
                if *scale == 0.0 {
                    return invalid("transformed field needs a nonzero scale");
                }
                inner.check_evaluable()
            }
            ScalarField::Sum { terms } => terms.iter().try_for_each(|t| t.check_evaluable()),
            ScalarField::Subsolution { reference, .. } => reference.check_evaluable(),
            _ => Ok(()),
        }
    }

    /// `int |u(x)|^(p-1) / (1 + |x|)^(n + sp) dx < infinity`. Eventually
    /// constant fields always pass; the check guards against evaluability
    /// and non-finite parameters.
    pub fn lsp_tail_check(&self, params: &OperatorParams) -> Result<()> {
        self.check_evaluable()?;
        let far = self.far_value();
        if !far.is_finite() || !self.constancy_radius().is_finite() {
            return invalid("field does not have a finite far-field value");
        }
        // |far|^(p-1) is integrable against (1+|x|)^-(n+sp) because sp > 0.
        debug_assert!(params.kernel_order() > params.n as f64);
        Ok(())
    }

    pub(crate) fn eval_t<T: Real>(&self, x: &[T]) -> T {
        match self {
            ScalarField::Constant { value } => T::cst(*value),
            ScalarField::BumpSquare => bump::bump_square(x),
            ScalarField::BarrierPower {
                center,
                radius,
                exponent,
                scale,
            } => {
                let d2 = sq_dist(x, center);
                let gap = T::cst(*radius) - d2.sqrt();
                if gap.re() <= 0.0 {
                    T::cst(0.0)
                } else {
                    gap.powf(*exponent).scale(*scale)
                }
            }
            ScalarField::GetoorBall {
                center,
                radius,
                exponent,
            } => {
                let q = T::cst(radius * radius) - sq_dist(x, center);
                if q.re() <= 0.0 {
                    T::cst(0.0)
                } else {
                    q.powf(*exponent)
                }
            }
            ScalarField::Tabulated { table } => table.eval_t(x[0]),
            ScalarField::Transformed {
                inner,
                amplitude,
                scale,
                shift,
            } => {
                let y: Vec<T> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &xi)| {
                        (xi - T::cst(shift.get(i).copied().unwrap_or(0.0))).scale(*scale)
                    })
                    .collect();
                inner.eval_t(&y).scale(*amplitude)
            }
            ScalarField::Sum { terms } => {
                terms.iter().fold(T::cst(0.0), |acc, t| acc + t.eval_t(x))
            }
            ScalarField::Subsolution {
                beta,
                center,
                radius,
                exponent,
                inner_set,
                reference,
            } => {
                let d2 = sq_dist(x, center);
                let gap = T::cst(*radius) - d2.sqrt();
                let barrier = if gap.re() <= 0.0 {
                    T::cst(0.0)
                } else {
                    gap.powf(*exponent).scale(*beta)
                };
                let xv: Vec<f64> = x.iter().map(|v| v.re()).collect();
                if inner_set.contains(&xv) {
                    barrier + reference.eval_t(x)
                } else {
                    barrier
                }
            }
        }
    }

    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        self.eval_t(x)
    }

    /// Taylor jet of `t -> u(x + t e)` at `t = 0`.
    pub fn ray_jet(&self, x: &[f64], e: &[f64]) -> Jet {
        let pt: Vec<Jet> = x.iter().zip(e).map(|(&xi, &ei)| Jet::var(xi, ei)).collect();
        self.eval_t(&pt)
    }

    /// First derivative of `u` along `e` at `x`.
    pub fn directional_derivative(&self, x: &[f64], e: &[f64]) -> f64 {
        self.ray_jet(x, e).c[1]
    }

    /// Value or all partial derivatives of order `order` (0..=3).
    pub fn eval(&self, x: &[f64], order: u32) -> Result<Derivatives> {
        self.check_dim(x.len())?;
        if order > 3 {
            return invalid(format!(
                "derivative order {order} is above the supported maximum 3"
            ));
        }
        if order > self.smoothness_order() {
            return Err(Error::InsufficientSmoothness {
                requested: order,
                available: self.smoothness_order(),
            });
        }
        if let ScalarField::Tabulated { table } = self {
            if table.meta.extension == Extension::None && !table.in_table(x[0]) {
                return Err(Error::OutOfDomain(format!(
                    "x = {} outside the table [{}, {}] and no extension declared",
                    x[0],
                    table.start,
                    table.end()
                )));
            }
        }
        let n = x.len();
        let unit = |i: usize| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        };
        let along = |e: &[f64], k: usize| self.ray_jet(x, e).derivative(k);
        Ok(match order {
            0 => Derivatives::Value(self.value(x)),
            1 => Derivatives::Gradient((0..n).map(|i| along(&unit(i), 1)).collect()),
            2 => {
                let diag: Vec<f64> = (0..n).map(|i| along(&unit(i), 2)).collect();
                let mut h = vec![vec![0.0; n]; n];
                for i in 0..n {
                    h[i][i] = diag[i];
                    for j in 0..i {
                        let e: Vec<f64> = unit(i).iter().zip(unit(j)).map(|(a, b)| a + b).collect();
                        let v = 0.5 * (along(&e, 2) - diag[i] - diag[j]);
                        h[i][j] = v;
                        h[j][i] = v;
                    }
                }
                Derivatives::Hessian(h)
            }
            _ => {
                // polarization of the symmetric trilinear form
                let q = |idx: &[usize]| {
                    let mut e = vec![0.0; n];
                    for &i in idx {
                        e[i] += 1.0;
                    }
                    along(&e, 3)
                };
                let mut t = vec![0.0; n * n * n];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let v = (q(&[i, j, k]) - q(&[i, j]) - q(&[i, k]) - q(&[j, k])
                                + q(&[i])
                                + q(&[j])
                                + q(&[k]))
                                / 6.0;
                            t[(i * n + j) * n + k] = v;
                        }
                    }
                }
                Derivatives::Third(t)
            }
        })
    }

    /// Signed ray parameters `t` at which `t -> u(x + t e)` changes branch,
    /// loses smoothness, or returns to the value `u(x)` for structural
    /// reasons (reflection through a centre of symmetry).
    pub fn ray_breaks(&self, x: &[f64], e: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_ray_breaks(x, e, true, &mut out);
        out.retain(|t| t.is_finite());
        out
    }

    /// The subset of [`ray_breaks`](Self::ray_breaks) at which `t -> u(x + t e)`
    /// itself is not smooth.
    pub fn ray_kinks(&self, x: &[f64], e: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_ray_breaks(x, e, false, &mut out);
        out.retain(|t| t.is_finite());
        out
    }

    fn collect_ray_breaks(&self, x: &[f64], e: &[f64], reflections: bool, out: &mut Vec<f64>) {
        let reflect = |c: &[f64]| {
            if !reflections {
                return f64::NAN;
            }
            let w: Vec<f64> = x.iter().zip(c).map(|(a, b)| a - b).collect();
            -2.0 * dot(e, &w) / dot(e, e)
        };
        let closest = |c: &[f64]| {
            let w: Vec<f64> = x.iter().zip(c).map(|(a, b)| a - b).collect();
            -dot(e, &w) / dot(e, e)
        };
        match self {
            ScalarField::Constant { .. } => {}
            ScalarField::BumpSquare => {
                let origin = vec![0.0; x.len()];
                out.push(reflect(&origin));
                out.extend(sphere_crossings(x, e, &origin, 1.0));
                out.extend(sphere_crossings(x, e, &origin, 2.0));
            }
            ScalarField::BarrierPower { center, radius, .. } => {
                out.push(reflect(center));
                out.push(closest(center));
                out.extend(sphere_crossings(x, e, center, *radius));
            }
            ScalarField::GetoorBall { center, radius, .. } => {
                out.push(reflect(center));
                out.extend(sphere_crossings(x, e, center, *radius));
            }
            ScalarField::Tabulated { table } => {
                if e[0] != 0.0 {
                    out.push((table.start - x[0]) / e[0]);
                    out.push((table.end() - x[0]) / e[0]);
                }
            }
            ScalarField::Transformed {
                inner,
                scale,
                shift,
                ..
            } => {
                let y: Vec<f64> = x
                    .iter()
                    .enumerate()
                    .map(|(i, xi)| scale * (xi - shift.get(i).copied().unwrap_or(0.0)))
                    .collect();
                let ey: Vec<f64> = e.iter().map(|v| v * scale).collect();
                inner.collect_ray_breaks(&y, &ey, reflections, out);
            }
            ScalarField::Sum { terms } => {
                for t in terms {
                    t.collect_ray_breaks(x, e, reflections, out);
                }
            }
            ScalarField::Subsolution {
                center,
                radius,
                inner_set,
                reference,
                ..
            } => {
                out.push(reflect(center));
                out.push(closest(center));
                out.extend(sphere_crossings(x, e, center, *radius));
                out.extend(inner_set.ray_crossings(x, e));
                let mut inner_breaks = Vec::new();
                reference.collect_ray_breaks(x, e, reflections, &mut inner_breaks);
                let crossings = inner_set.ray_crossings(x, e);
                if crossings.len() == 2 {
                    out.extend(
                        inner_breaks
                            .into_iter()
                            .filter(|t| *t > crossings[0] && *t < crossings[1]),
                    );
                }
            }
        }
    }

    /// Planar directions (angles in `[0, pi)`) from `x` across which the ray
    /// integrals of this field are not smooth. Only meaningful for n = 2.
    pub fn angular_breaks(&self, x: &[f64]) -> Vec<f64> {
        if x.len() != 2 {
            return Vec::new();
        }
        let toward = |c: &[f64]| wrap_half_turn((c[1] - x[1]).atan2(c[0] - x[0]));
        match self {
            ScalarField::Constant { .. } => Vec::new(),
            ScalarField::BumpSquare => {
                let o = [0.0, 0.0];
                let mut v = tangent_angles(x, &o, 1.0);
                v.extend(tangent_angles(x, &o, 2.0));
                v
            }
            ScalarField::BarrierPower { center, radius, .. } => {
                let mut v = tangent_angles(x, center, *radius);
                v.push(toward(center));
                v
            }
            ScalarField::GetoorBall { center, radius, .. } => tangent_angles(x, center, *radius),
            ScalarField::Tabulated { .. } => Vec::new(),
            ScalarField::Transformed {
                inner,
                scale,
                shift,
                ..
            } => {
                let y: Vec<f64> = x
                    .iter()
                    .enumerate()
                    .map(|(i, xi)| scale * (xi - shift.get(i).copied().unwrap_or(0.0)))
                    .collect();
                inner.angular_breaks(&y)
            }
            ScalarField::Sum { terms } => terms.iter().flat_map(|t| t.angular_breaks(x)).collect(),
            ScalarField::Subsolution {
                center,
                radius,
                inner_set,
                reference,
                ..
            } => {
                let mut v = tangent_angles(x, center, *radius);
                v.push(toward(center));
                v.extend(inner_set.angular_breaks(x));
                v.extend(reference.angular_breaks(x));
                v
            }
        }
    }
}

fn sq_dist<T: Real>(x: &[T], c: &[f64]) -> T {
    x.iter().zip(c).fold(T::cst(0.0), |acc, (&xi, &ci)| {
        let d = xi - T::cst(ci);
        acc + d * d
    })
}

/// Value (order 0) or partial derivatives of `field` at `x`.
pub fn field_eval(field: &ScalarField, x: &[f64], order: u32) -> Result<Derivatives> {
    field.eval(x, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(
            field_eval(&ScalarField::constant(3.0), &[1.7], 0).unwrap(),
            Derivatives::Value(3.0)
        );
        let b = ScalarField::BumpSquare;
        assert_eq!(field_eval(&b, &[0.5], 0).unwrap(), Derivatives::Value(0.25));
        assert_eq!(
            field_eval(&b, &[0.5], 1).unwrap(),
            Derivatives::Gradient(vec![1.0])
        );
    }

    #[test]
    fn order_errors() {
        let g = ScalarField::getoor_ball(vec![0.0], 1.0, 0.5);
        assert!(matches!(
            g.eval(&[0.2], 1),
            Err(Error::InsufficientSmoothness { .. })
        ));
        assert!(ScalarField::BumpSquare.eval(&[0.2], 4).is_err());
        assert!(g.eval(&[0.2, 0.1], 0).is_err());
    }

    #[test]
    fn compact_support() {
        let fields = [
            ScalarField::BumpSquare,
            ScalarField::getoor_ball(vec![0.5], 1.0, 0.5),
            ScalarField::BumpSquare.translated(vec![1.0]).dilated(2.0),
        ];
        for f in &fields {
            let r = f.constancy_radius();
            for x in [r + 1e-9, r + 1.0, -r - 0.5, -(r + 3.0)] {
                assert_eq!(f.value(&[x]), 0.0, "{f:?} at {x}");
            }
            assert_eq!(f.support_radius(), Some(r));
        }
        assert_eq!(ScalarField::constant(2.0).support_radius(), None);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let f = ScalarField::BumpSquare
            .scaled(1.3)
            .translated(vec![0.2, -0.1]);
        let x = [1.1, 0.6];
        let h = 1e-5;
        let grad = match f.eval(&x, 1).unwrap() {
            Derivatives::Gradient(g) => g,
            _ => unreachable!(),
        };
        let hess = match f.eval(&x, 2).unwrap() {
            Derivatives::Hessian(h) => h,
            _ => unreachable!(),
        };
        let third = match f.eval(&x, 3).unwrap() {
            Derivatives::Third(t) => t,
            _ => unreachable!(),
        };
        for i in 0..2 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            let fd = (f.value(&xp) - f.value(&xm)) / (2.0 * h);
            assert!((fd - grad[i]).abs() < 1e-7, "{i}: {fd} vs {}", grad[i]);
            let gp = match f.eval(&xp, 1).unwrap() {
                Derivatives::Gradient(g) => g,
                _ => unreachable!(),
            };
            let gm = match f.eval(&xm, 1).unwrap() {
                Derivatives::Gradient(g) => g,
                _ => unreachable!(),
            };
            let hp = match f.eval(&xp, 2).unwrap() {
                Derivatives::Hessian(h) => h,
                _ => unreachable!(),
            };
            let hm = match f.eval(&xm, 2).unwrap() {
                Derivatives::Hessian(h) => h,
                _ => unreachable!(),
            };
            for j in 0..2 {
                assert!(((gp[j] - gm[j]) / (2.0 * h) - hess[i][j]).abs() < 1e-6);
                for k in 0..2 {
                    let fd3 = (hp[j][k] - hm[j][k]) / (2.0 * h);
                    assert!((fd3 - third[(i * 2 + j) * 2 + k]).abs() < 1e-5, "{i}{j}{k}");
                }
            }
        }
    }

    #[test]
    fn finite_differences_converge_at_second_order() {
        // central-difference error of the first derivative should drop ~4x per halving
        let f = ScalarField::BumpSquare;
        let x = [1.37];
        let exact = f.directional_derivative(&x, &[1.0]);
        let err =
            |h: f64| ((f.value(&[x[0] + h]) - f.value(&[x[0] - h])) / (2.0 * h) - exact).abs();
        let ratio = err(1e-2) / err(5e-3);
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn getoor_ratio_identity() {
        let n = 3;
        let f = ScalarField::getoor_ball(vec![0.0; n], 1.0, 0.4);
        let ball = Shape::Ball {
            center: vec![0.0; n],
            radius: 1.0,
        };
        for k in 1..50 {
            let t = k as f64 / 50.0;
            let x = [0.6 * t, -0.3 * t, 0.7 * t];
            let r = norm(&x);
            let d = signed_distance(&ball, &x);
            let ratio = f.value(&x) / d.powf(0.4);
            assert!((ratio - (1.0 + r).powf(0.4)).abs() < 1e-12);
            assert!(ratio >= 1.0 && ratio <= 2f64.powf(0.4) + 1e-12);
        }
    }

    #[test]
    fn bump_square_is_even() {
        for k in 0..300 {
            let x = k as f64 * 0.01;
            assert_eq!(
                ScalarField::BumpSquare.value(&[x]),
                ScalarField::BumpSquare.value(&[-x])
            );
        }
    }

    #[test]
    fn ray_breaks_include_reflection_point() {
        let b = ScalarField::BumpSquare.ray_breaks(&[0.05], &[1.0]);
        assert!(b.iter().any(|t| (t + 0.1).abs() < 1e-15));
        let shifted = ScalarField::BumpSquare.translated(vec![0.3]);
        let b = shifted.ray_breaks(&[0.35], &[1.0]);
        assert!(b.iter().any(|t| (t + 0.1).abs() < 1e-12));
    }

    #[test]
    fn serde_round_trip() {
        let f = ScalarField::getoor_ball(vec![0.0, 2.0], 2.0, 0.5).scaled(2.0);
        let s = serde_json::to_string(&f).unwrap();
        let back: ScalarField = serde_json::from_str(&s).unwrap();
        assert_eq!(f, back);
    }
}
