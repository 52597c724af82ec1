//! Domain primitives: distance to the complement, and the inner sets used by
//! the subsolution construction.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature::gauss::gauss_legendre;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Volume of the unit ball in `n` dimensions.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(n - 2) * 2.0 * PI / n as f64,
    }
}

/// Parameters `t` with `|x + t e - c| = r`, sorted.
pub(crate) fn sphere_crossings(x: &[f64], e: &[f64], c: &[f64], r: f64) -> Vec<f64> {
    let w: Vec<f64> = x.iter().zip(c).map(|(a, b)| a - b).collect();
    let a = dot(e, e);
    let b = dot(e, &w);
    let cc = dot(&w, &w) - r * r;
    let disc = b * b - a * cc;
    if a == 0.0 || disc <= 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // stable roots
    let q = -(b + b.signum() * sq);
    let (t1, t2) = if q == 0.0 {
        (sq / a, -sq / a)
    } else {
        (q / a, cc / q)
    };
    if t1 < t2 {
        vec![t1, t2]
    } else {
        vec![t2, t1]
    }
}

/// Directions (angles in `[0, pi)`) from a planar point `x` that are tangent
/// to the circle `(c, r)`. Empty when `x` lies inside the circle.
pub(crate) fn tangent_angles(x: &[f64], c: &[f64], r: f64) -> Vec<f64> {
    let d = dist(x, c);
    if d <= r || x.len() != 2 {
        return Vec::new();
    }
    let base = (c[1] - x[1]).atan2(c[0] - x[0]);
    let half = (r / d).asin();
    vec![wrap_half_turn(base - half), wrap_half_turn(base + half)]
}

pub(crate) fn wrap_half_turn(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    if t >= PI {
        0.0
    } else {
        t
    }
}

/// The primitive domains supported by [`Shape::distance_to_complement`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Shape {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    /// `{ x : x . normal > offset }` with a unit normal.
    HalfSpace {
        normal: Vec<f64>,
        offset: f64,
    },
    BallComplement {
        center: Vec<f64>,
        radius: f64,
    },
}

impl Shape {
    /// Builds a shape from its name: `ball`, `half-space` or `ball-complement`.
    /// Balls default to the unit ball centred at `e_n`; the half-space is
    /// `{x_n > 0}`.
    pub fn from_name(name: &str, n: usize) -> Result<Shape> {
        let mut en = vec![0.0; n];
        if n > 0 {
            en[n - 1] = 1.0;
        }
        match name {
            "ball" => Ok(Shape::Ball {
                center: en,
                radius: 1.0,
            }),
            "half-space" => Ok(Shape::HalfSpace {
                normal: en,
                offset: 0.0,
            }),
            "ball-complement" => Ok(Shape::BallComplement {
                center: en,
                radius: 1.0,
            }),
            other => invalid(format!(
                "unsupported shape '{other}' (expected ball, half-space or ball-complement)"
            )),
        }
    }

    /// `dist(x, complement)`, zero outside the shape.
    pub fn distance_to_complement(&self, x: &[f64]) -> f64 {
        match self {
            Shape::Ball { center, radius } => (radius - dist(x, center)).max(0.0),
            Shape::HalfSpace { normal, offset } => (dot(x, normal) - offset).max(0.0),
            Shape::BallComplement { center, radius } => (dist(x, center) - radius).max(0.0),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.distance_to_complement(x) > 0.0
    }
}

/// `d(x) = dist(x, complement of shape)`.
pub fn signed_distance(shape: &Shape, x: &[f64]) -> f64 {
    shape.distance_to_complement(x)
}

/// The set `D` on which the subsolution copies the reference field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InnerSet {
    Ball { center: Vec<f64>, radius: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

impl InnerSet {
    pub fn dim(&self) -> usize {
        match self {
            InnerSet::Ball { center, .. } => center.len(),
            InnerSet::Box { lo, .. } => lo.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            InnerSet::Ball { radius, .. } if !(*radius > 0.0) => {
                Err(Error::Geometry("inner ball radius must be positive".into()))
            }
            InnerSet::Box { lo, hi }
                if lo.len() != hi.len() || lo.iter().zip(hi).any(|(a, b)| !(a < b)) =>
            {
                Err(Error::Geometry(
                    "inner box needs lo < hi in every coordinate".into(),
                ))
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            InnerSet::Ball { center, radius } => dist(x, center) < *radius,
            InnerSet::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(v, (a, b))| v > a && v < b),
        }
    }

    /// Exact Lebesgue measure.
    pub fn measure(&self) -> f64 {
        match self {
            InnerSet::Ball { center, radius } => {
                unit_ball_volume(center.len()) * radius.powi(center.len() as i32)
            }
            InnerSet::Box { lo, hi } => lo.iter().zip(hi).map(|(a, b)| b - a).product(),
        }
    }

    /// Distance from the set to the ball `B_radius(center)`; positive when they
    /// are separated.
    pub fn gap_to_ball(&self, center: &[f64], radius: f64) -> f64 {
        match self {
            InnerSet::Ball {
                center: c,
                radius: r,
            } => dist(c, center) - r - radius,
            InnerSet::Box { lo, hi } => {
                let nearest: Vec<f64> = center
                    .iter()
                    .zip(lo.iter().zip(hi))
                    .map(|(v, (a, b))| v.clamp(*a, *b))
                    .collect();
                dist(&nearest, center) - radius
            }
        }
    }

    /// Largest distance from `x` to a point of the closed set.
    pub fn farthest_from(&self, x: &[f64]) -> f64 {
        match self {
            InnerSet::Ball { center, radius } => dist(x, center) + radius,
            InnerSet::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(v, (a, b))| {
                    let d = (v - a).abs().max((v - b).abs());
                    d * d
                })
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Signed ray parameters where `x + t e` crosses the boundary.
    pub fn ray_crossings(&self, x: &[f64], e: &[f64]) -> Vec<f64> {
        match self {
            InnerSet::Ball { center, radius } => sphere_crossings(x, e, center, *radius),
            InnerSet::Box { lo, hi } => {
                let mut t_enter = f64::NEG_INFINITY;
                let mut t_exit = f64::INFINITY;
                for i in 0..x.len() {
                    if e[i] == 0.0 {
                        if x[i] <= lo[i] || x[i] >= hi[i] {
                            return Vec::new();
                        }
                        continue;
                    }
                    let a = (lo[i] - x[i]) / e[i];
                    let b = (hi[i] - x[i]) / e[i];
                    t_enter = t_enter.max(a.min(b));
                    t_exit = t_exit.min(a.max(b));
                }
                if t_enter < t_exit {
                    vec![t_enter, t_exit]
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// Planar directions from `x` at which ray integrals lose smoothness.
    pub fn angular_breaks(&self, x: &[f64]) -> Vec<f64> {
        match self {
            InnerSet::Ball { center, radius } => tangent_angles(x, center, *radius),
            InnerSet::Box { lo, hi } => {
                if x.len() != 2 {
                    return Vec::new();
                }
                let corners = [
                    [lo[0], lo[1]],
                    [lo[0], hi[1]],
                    [hi[0], lo[1]],
                    [hi[0], hi[1]],
                ];
                corners
                    .iter()
                    .map(|c| wrap_half_turn((c[1] - x[1]).atan2(c[0] - x[0])))
                    .collect()
            }
        }
    }

    /// Tensor Gauss cubature of `f` over the set with `order` nodes per axis.
    /// Balls use polar (n = 2) or spherical (n = 3) coordinates; n = 1 balls
    /// are intervals.
    pub fn integrate(&self, order: usize, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
        let (nodes, weights) = gauss_legendre(order);
        match self {
            InnerSet::Box { lo, hi } => {
                let n = lo.len();
                let mut idx = vec![0usize; n];
                let mut total = 0.0;
                let mut pt = vec![0.0; n];
                loop {
                    let mut w = 1.0;
                    for d in 0..n {
                        let half = 0.5 * (hi[d] - lo[d]);
                        pt[d] = lo[d] + half * (nodes[idx[d]] + 1.0);
                        w *= half * weights[idx[d]];
                    }
                    total += w * f(&pt);
                    let mut d = 0;
                    loop {
                        if d == n {
                            return Ok(total);
                        }
                        idx[d] += 1;
                        if idx[d] < order {
                            break;
                        }
                        idx[d] = 0;
                        d += 1;
                    }
                }
            }
            InnerSet::Ball { center, radius } => {
                let n = center.len();
                let r = *radius;
                // radial nodes on (0, r)
                let radial: Vec<(f64, f64)> = nodes
                    .iter()
                    .zip(&weights)
                    .map(|(t, w)| (0.5 * r * (t + 1.0), 0.5 * r * w))
                    .collect();
                match n {
                    1 => Ok(radial
                        .iter()
                        .map(|(rho, w)| w * (f(&[center[0] + rho]) + f(&[center[0] - rho])))
                        .sum()),
                    2 => {
                        let m = 2 * order;
                        let mut total = 0.0;
                        for (rho, w) in &radial {
                            for k in 0..m {
                                let th = 2.0 * PI * (k as f64 + 0.5) / m as f64;
                                let pt = [center[0] + rho * th.cos(), center[1] + rho * th.sin()];
                                total += w * rho * (2.0 * PI / m as f64) * f(&pt);
                            }
                        }
                        Ok(total)
                    }
                    3 => {
                        let m = 2 * order;
                        let mut total = 0.0;
                        for (rho, w) in &radial {
                            for (z, wz) in nodes.iter().zip(&weights) {
                                let ring = (1.0 - z * z).sqrt();
                                for k in 0..m {
                                    let ph = 2.0 * PI * (k as f64 + 0.5) / m as f64;
                                    let pt = [
                                        center[0] + rho * ring * ph.cos(),
                                        center[1] + rho * ring * ph.sin(),
                                        center[2] + rho * z,
                                    ];
                                    total += w * rho * rho * wz * (2.0 * PI / m as f64) * f(&pt);
                                }
                            }
                        }
                        Ok(total)
                    }
                    _ => invalid(format!(
                        "ball cubature is implemented for n <= 3, got n = {n}"
                    )),
                }
            }
        }
    }
}
