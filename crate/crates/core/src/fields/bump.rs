//! Smooth cutoffs built from the exponential transition `e^{-1/t}`.

use crate::jet::Real;

/// Smooth monotone descent on `[0, 1]`: 1 at `t <= 0`, 0 at `t >= 1`,
/// infinitely differentiable, steepest slope 2 at `t = 1/2`.
pub fn transition<T: Real>(t: T) -> T {
    let tv = t.re();
    if tv <= 0.0 {
        T::cst(1.0)
    } else if tv >= 1.0 {
        T::cst(0.0)
    } else {
        let one = T::cst(1.0);
        let a = (-(one / (one - t))).exp();
        let b = (-(one / t)).exp();
        a / (a + b)
    }
}

/// Even bump equal to 1 on `[-1, 1]` and 0 outside `(-2, 2)`, with
/// `|eta'| <= 2`.
pub fn eta_bump(x: f64) -> f64 {
    transition(x.abs() - 1.0)
}

/// The bump applied to a radius `r >= 0`.
pub(crate) fn eta_radial<T: Real>(r: T) -> T {
    transition(r - T::cst(1.0))
}

/// Bump-square profile `eta(|x|) |x|^2` written in terms of `|x|^2` so that it
/// stays smooth through the origin.
pub(crate) fn bump_square<T: Real>(x: &[T]) -> T {
    let r2 = x.iter().fold(T::cst(0.0), |acc, &xi| acc + xi * xi);
    let r2v = r2.re();
    if r2v <= 1.0 {
        r2
    } else if r2v >= 4.0 {
        T::cst(0.0)
    } else {
        eta_radial(r2.sqrt()) * r2
    }
}
