//! Shared helpers for the integration tests and the acceptance run.
//!
//! The brute-force oracle below is deliberately independent of the library:
//! it evaluates the fields from their closed forms and integrates the
//! one-dimensional operator with a plain graded trapezoid rule.

#![allow(dead_code)]

use fracplap::ScalarField;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Closed-form one-dimensional test fields. Each is a polynomial near the
/// evaluation points used here, which lets the oracle form differences
/// `u(x) - u(x +- y)` without cancellation.
#[derive(Clone, Debug)]
pub enum OracleField {
    /// `a * bump_square(k (x - b))`.
    Bump { a: f64, k: f64, b: f64 },
    /// `(r^2 - (x - c)^2)_+`.
    Getoor { c: f64, r: f64 },
    /// `(r - |x - c|)_+^2`.
    Barrier { c: f64, r: f64 },
}

fn transition(t: f64) -> f64 {
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        let a = (-1.0 / (1.0 - t)).exp();
        let b = (-1.0 / t).exp();
        a / (a + b)
    }
}

fn bump_square(x: f64) -> f64 {
    transition(x.abs() - 1.0) * x * x
}

/// Local expansion `u(x + t) = c0 + c1 t + c2 t^2`, valid for
/// `-back < t < fwd`.
struct Piece {
    c1: f64,
    c2: f64,
    fwd: f64,
    back: f64,
}

impl OracleField {
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            OracleField::Bump { a, k, b } => a * bump_square(k * (x - b)),
            OracleField::Getoor { c, r } => (r * r - (x - c) * (x - c)).max(0.0),
            OracleField::Barrier { c, r } => (r - (x - c).abs()).max(0.0).powi(2),
        }
    }

    fn piece(&self, x: f64) -> Option<Piece> {
        match *self {
            OracleField::Bump { a, k, b } => {
                let z = k * (x - b);
                (z.abs() < 1.0).then(|| Piece {
                    c1: 2.0 * a * z * k,
                    c2: a * k * k,
                    fwd: b + 1.0 / k - x,
                    back: x - b + 1.0 / k,
                })
            }
            OracleField::Getoor { c, r } => {
                let w = x - c;
                (w.abs() < r).then(|| Piece {
                    c1: -2.0 * w,
                    c2: -1.0,
                    fwd: c + r - x,
                    back: x - c + r,
                })
            }
            OracleField::Barrier { c, r } => {
                let w = x - c;
                if w > 0.0 && w < r {
                    Some(Piece {
                        c1: -2.0 * (r - w),
                        c2: 1.0,
                        fwd: c + r - x,
                        back: w,
                    })
                } else if w < 0.0 && w > -r {
                    Some(Piece {
                        c1: 2.0 * (r + w),
                        c2: 1.0,
                        fwd: -w,
                        back: x - c + r,
                    })
                } else {
                    None
                }
            }
        }
    }

    /// Half-width of an interval around 0 outside which the field vanishes.
    pub fn reach(&self) -> f64 {
        match *self {
            OracleField::Bump { k, b, .. } => b.abs() + 2.0 / k.abs(),
            OracleField::Getoor { c, r } | OracleField::Barrier { c, r } => c.abs() + r,
        }
    }

    pub fn to_field(&self) -> ScalarField {
        match *self {
            OracleField::Bump { a, k, b } => ScalarField::BumpSquare.transformed(a, k, vec![b]),
            OracleField::Getoor { c, r } => ScalarField::getoor_ball(vec![c], r, 1.0),
            OracleField::Barrier { c, r } => ScalarField::BarrierPower {
                center: vec![c],
                radius: r,
                exponent: 2.0,
                scale: 1.0,
            },
        }
    }

    /// `G(u(x) - u(x + y)) + G(u(x) - u(x - y))`.
    fn symmetric_sum(&self, x: f64, ux: f64, y: f64, p: f64) -> f64 {
        if let Some(pc) = self.piece(x) {
            if y < pc.fwd && y < pc.back {
                // d_minus = u(x) - u(x - y), sigma = d_plus + d_minus
                let d = pc.c1 * y - pc.c2 * y * y;
                let sigma = -2.0 * pc.c2 * y * y;
                if d != 0.0 && sigma.abs() < 0.5 * d.abs() {
                    return -g(d, p) * ((p - 1.0) * (-sigma / d).ln_1p()).exp_m1();
                }
                return g(sigma - d, p) + g(d, p);
            }
        }
        g(ux - self.value(x + y), p) + g(ux - self.value(x - y), p)
    }
}

fn g(t: f64, p: f64) -> f64 {
    t.abs().powf(p - 2.0) * t
}

/// Compensated (Neumaier) running sum.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Operator value with normalization 1, and an error estimate taken as the
/// difference between the rule on `points` nodes and on every second node.
///
/// The ray integral runs over `y = Y t^8`, `t in [0, 1]`, with `Y` past the
/// support; the constant remainder is closed by hand.
pub fn brute_force(field: &OracleField, x: f64, s: f64, p: f64, points: usize) -> (f64, f64) {
    let sp = s * p;
    let ux = field.value(x);
    let big_y = field.reach() + x.abs() + 1.0;
    let h = 1.0 / points as f64;
    let mut fine = Neumaier::default();
    let mut coarse = Neumaier::default();
    for i in 1..=points {
        let t = i as f64 * h;
        let t7 = t.powi(7);
        let y = big_y * t7 * t;
        let jac = 8.0 * big_y * t7;
        let f = field.symmetric_sum(x, ux, y, p) * y.powf(-1.0 - sp) * jac;
        let w = if i == points { 0.5 } else { 1.0 };
        fine.add(w * f);
        if i % 2 == 0 {
            coarse.add(w * f);
        }
    }
    let tail = 2.0 * g(ux, p) * big_y.powf(-sp) / sp;
    let fine = fine.value() * h + tail;
    let coarse = coarse.value() * 2.0 * h + tail;
    (fine, (fine - coarse).abs())
}

/// A random oracle case: field, point inside the support, `s`, `p`.
pub fn random_case(rng: &mut ChaCha8Rng) -> (OracleField, f64, f64, f64) {
    let s = rng.gen_range(0.3..0.85);
    let p = rng.gen_range(2.0..3.2);
    let field = match rng.gen_range(0..3) {
        0 => OracleField::Bump {
            a: rng.gen_range(0.5..2.0),
            k: rng.gen_range(0.7..1.5),
            b: rng.gen_range(-0.3..0.3),
        },
        1 => OracleField::Getoor {
            c: rng.gen_range(-0.3..0.3),
            r: rng.gen_range(0.8..1.5),
        },
        _ => OracleField::Barrier {
            c: rng.gen_range(-0.3..0.3),
            r: rng.gen_range(0.8..1.5),
        },
    };
    let side = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let x = match field {
        OracleField::Bump { k, b, .. } => b + side * rng.gen_range(0.05..0.95) / k,
        OracleField::Getoor { c, r } => c + side * r * rng.gen_range(0.0..0.8),
        OracleField::Barrier { c, r } => c + side * r * rng.gen_range(0.1..0.8),
    };
    (field, x, s, p)
}

/// `count` log-spaced points in `[lo, hi]`, largest first.
pub fn log_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| (hi.ln() + (lo.ln() - hi.ln()) * k as f64 / (count - 1) as f64).exp())
        .collect()
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// Uniform random point of the ball of `radius` about the origin.
pub fn random_in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-radius..radius)).collect();
        if v.iter().map(|a| a * a).sum::<f64>().sqrt() < radius {
            return v;
        }
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Largest `|Psi^-1(Psi(X)) - X|` over `count` points of `B_4r`.
pub fn psi_round_trip_error(
    geometry: &fracplap::fields::BallGeometry,
    count: usize,
    seed: u64,
) -> f64 {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = geometry.flattening_radius;
    let n = geometry.dim();
    (0..count)
        .map(|_| {
            let x = random_in_ball(&mut rng, n, 4.0 * r);
            let back = geometry
                .psi_inverse(&geometry.psi_map(&x))
                .expect("inverse");
            dist(&back, &x)
        })
        .fold(0.0, f64::max)
}

/// Largest `|rho(Psi(X)) - (X_n)_+|` over `count` points of `B_2r`.
pub fn barrier_identity_error(
    geometry: &fracplap::fields::BallGeometry,
    count: usize,
    seed: u64,
) -> f64 {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = geometry.flattening_radius;
    let n = geometry.dim();
    (0..count)
        .map(|_| {
            let x = random_in_ball(&mut rng, n, 2.0 * r);
            (geometry.rho(&geometry.psi_map(&x)) - x[n - 1].max(0.0)).abs()
        })
        .fold(0.0, f64::max)
}

/// Smallest difference-quotient slope of `X_n -> Psi(X', X_n)_n` over
/// `sections` random `X'` with `|X'| <= 3r`, each on a uniform grid of its
/// chord through `B_3r`.
pub fn section_min_slope(
    geometry: &fracplap::fields::BallGeometry,
    sections: usize,
    seed: u64,
) -> f64 {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = geometry.flattening_radius;
    let n = geometry.dim();
    let grid = 2000;
    let mut worst = f64::INFINITY;
    for _ in 0..sections {
        let tangential = random_in_ball(&mut rng, n - 1, 3.0 * r);
        let t2: f64 = tangential.iter().map(|a| a * a).sum();
        let half = (9.0 * r * r - t2).sqrt();
        let step = 2.0 * half / grid as f64;
        let mut prev = geometry.section_value(&tangential, -half);
        for i in 1..=grid {
            let z = -half + i as f64 * step;
            let h = geometry.section_value(&tangential, z);
            worst = worst.min((h - prev) / step);
            prev = h;
        }
    }
    worst
}

/// `1 - 3 / (2 + sqrt 3)`.
pub fn section_slope_bound() -> f64 {
    1.0 - 3.0 / (2.0 + 3f64.sqrt())
}

/// Worst relative mismatches of the homogeneity, translation, dilation and
/// reflection identities over `cases` random cases each.
pub fn identity_errors(cases: usize, seed: u64, rel_tol: f64) -> [f64; 4] {
    use fracplap::operator::evaluate_operator;
    use fracplap::{OperatorParams, QuadratureConfig};
    use rand::SeedableRng;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = QuadratureConfig::default().with_tolerances(rel_tol, 1e-14);
    let op = |f: &ScalarField, x: &[f64], params: &OperatorParams| {
        let r = evaluate_operator(f, x, params, &cfg).expect("operator");
        assert!(
            r.converged,
            "unconverged evaluation of {f:?} at {x:?} with {params:?}: {r:?}"
        );
        r.value
    };
    let mut worst = [0.0f64; 4];
    for case in 0..cases {
        let n = if case % 2 == 0 { 1 } else { 2 };
        let s = rng.gen_range(0.3..0.85);
        let p = rng.gen_range(2.0..3.2);
        let params = OperatorParams::new(n, s, p).unwrap();
        let center: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.3..0.3)).collect();
        let field = if rng.gen_bool(0.5) {
            ScalarField::BumpSquare.transformed(
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.7..1.5),
                center.clone(),
            )
        } else {
            ScalarField::getoor_ball(
                center.clone(),
                rng.gen_range(0.8..1.5),
                rng.gen_range(0.5..1.5),
            )
        };
        // points well inside the support, away from the field's centre
        let x: Vec<f64> = loop {
            let v = random_in_ball(&mut rng, n, 0.6);
            let v: Vec<f64> = v.iter().zip(&center).map(|(a, c)| a + c).collect();
            if dist(&v, &center) > 0.15 {
                break v;
            }
        };
        let base = op(&field, &x, &params);

        let c: f64 = rng.gen_range(0.3..3.0);
        let scaled = op(&field.clone().scaled(c), &x, &params);
        worst[0] = worst[0].max(rel_diff(scaled, c.powf(p - 1.0) * base));

        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let xa: Vec<f64> = x.iter().zip(&a).map(|(u, v)| u + v).collect();
        let moved = op(&field.clone().translated(a), &xa, &params);
        worst[1] = worst[1].max(rel_diff(moved, base));

        let lambda: f64 = rng.gen_range(0.5..2.0);
        let xl: Vec<f64> = x.iter().map(|v| v / lambda).collect();
        let dilated = op(&field.clone().dilated(lambda), &xl, &params);
        worst[2] = worst[2].max(rel_diff(dilated, lambda.powf(s * p) * base));

        let xr: Vec<f64> = x.iter().map(|v| -v).collect();
        let reflected = op(&field.clone().reflected(), &xr, &params);
        worst[3] = worst[3].max(rel_diff(reflected, base));
    }
    worst
}
