//! Interior-ball geometry at a boundary point: the flattening map `Psi`,
//! its inverse, and the barrier `rho(x) = dist(x, complement of the ball)`.
//!
//! All maps work in a local frame where the touching point is the origin,
//! the ball is `B_1(e_n)` and the flattening radius is `r`. A general
//! geometry is brought to that frame by a translation, a scaling and a
//! Householder reflection taking the inward normal to `e_n`.

use serde::{Deserialize, Serialize};

use super::bump::transition;
use super::shapes::{dist, dot, norm};
use crate::error::{Error, Result};
use crate::jet::{Jet, Real};

/// Upper bound on the flattening radius, `1 / (3 sqrt 5)`.
pub fn max_flattening_radius() -> f64 {
    1.0 / (3.0 * 5f64.sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallGeometry {
    pub center: Vec<f64>,
    pub radius: f64,
    pub touching_point: Vec<f64>,
    pub flattening_radius: f64,
}

impl BallGeometry {
    /// Unit ball centred at `e_n`, touching the boundary at the origin,
    /// flattening radius 0.1.
    pub fn standard(n: usize) -> Self {
        let mut center = vec![0.0; n];
        center[n - 1] = 1.0;
        Self {
            center,
            radius: 1.0,
            touching_point: vec![0.0; n],
            flattening_radius: 0.1,
        }
    }

    pub fn with_flattening_radius(mut self, r: f64) -> Result<Self> {
        self.flattening_radius = r;
        self.validate()?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.center.len();
        if n == 0 || self.touching_point.len() != n {
            return Err(Error::Geometry(
                "center and touching point must share a positive dimension".into(),
            ));
        }
        if !(self.radius > 0.0) {
            return Err(Error::Geometry("radius must be positive".into()));
        }
        let gap = dist(&self.center, &self.touching_point);
        if (gap - self.radius).abs() > 1e-12 * self.radius.max(1.0) {
            return Err(Error::Geometry(format!(
                "|center - touching point| = {gap} differs from the radius {}",
                self.radius
            )));
        }
        let r = self.flattening_radius;
        if !(r > 0.0 && r < max_flattening_radius()) {
            return Err(Error::Geometry(format!(
                "flattening radius {r} must lie in (0, {})",
                max_flattening_radius()
            )));
        }
        Ok(())
    }

    /// Inward unit normal at the touching point.
    pub fn normal(&self) -> Vec<f64> {
        self.center
            .iter()
            .zip(&self.touching_point)
            .map(|(c, o)| (c - o) / self.radius)
            .collect()
    }

    /// Householder vector taking the normal to `e_n`; `None` when they agree.
    fn householder(&self) -> Option<Vec<f64>> {
        let n = self.dim();
        let mut w = self.normal();
        w[n - 1] -= 1.0;
        if norm(&w) < 1e-15 {
            None
        } else {
            Some(w)
        }
    }

    fn reflect(&self, v: &mut [f64]) {
        if let Some(w) = self.householder() {
            let k = 2.0 * dot(&w, v) / dot(&w, &w);
            for (vi, wi) in v.iter_mut().zip(&w) {
                *vi -= k * wi;
            }
        }
    }

    pub fn to_local(&self, x: &[f64]) -> Vec<f64> {
        let mut v: Vec<f64> = x
            .iter()
            .zip(&self.touching_point)
            .map(|(a, o)| (a - o) / self.radius)
            .collect();
        self.reflect(&mut v);
        v
    }

    pub fn from_local(&self, big_x: &[f64]) -> Vec<f64> {
        let mut v = big_x.to_vec();
        self.reflect(&mut v);
        v.iter()
            .zip(&self.touching_point)
            .map(|(a, o)| o + self.radius * a)
            .collect()
    }

    /// Local-frame cutoff: 1 on `B_2r`, 0 outside `B_3r`.
    fn cutoff<T: Real>(&self, big_x: &[T]) -> T {
        let r = self.flattening_radius;
        let r2 = big_x.iter().fold(T::cst(0.0), |acc, &v| acc + v * v);
        let rv = r2.re().sqrt();
        if rv <= 2.0 * r {
            T::cst(1.0)
        } else if rv >= 3.0 * r {
            T::cst(0.0)
        } else {
            transition((r2.sqrt() - T::cst(2.0 * r)).scale(1.0 / r))
        }
    }

    /// Last coordinate of `Psi` in the local frame, as a function of all
    /// local coordinates.
    fn psi_last<T: Real>(&self, big_x: &[T]) -> T {
        let n = big_x.len();
        let xn = big_x[n - 1];
        let tangential = big_x[..n - 1]
            .iter()
            .fold(T::cst(0.0), |acc, &v| acc + v * v);
        let one_minus = T::cst(1.0) - xn;
        let rad = one_minus * one_minus - tangential;
        let root = if rad.re() > 0.0 {
            rad.sqrt()
        } else {
            T::cst(0.0)
        };
        xn + (one_minus - root) * self.cutoff(big_x)
    }

    fn psi_local(&self, big_x: &[f64]) -> Vec<f64> {
        let mut out = big_x.to_vec();
        if norm(big_x) < 3.0 * self.flattening_radius {
            let n = big_x.len();
            out[n - 1] = self.psi_last(big_x);
        }
        out
    }

    /// The flattening diffeomorphism in global coordinates. Identity outside
    /// `B_3r` of the touching point (in the scaled frame).
    pub fn psi_map(&self, x: &[f64]) -> Vec<f64> {
        self.from_local(&self.psi_local(&self.to_local(x)))
    }

    /// The section map `X_n -> Psi(X', X_n)_n` and its derivative, in the
    /// local frame.
    pub fn section(&self, tangential: &[f64], xn: f64) -> (f64, f64) {
        let mut pt: Vec<Jet> = tangential.iter().map(|&v| Jet::cst(v)).collect();
        pt.push(Jet::var(xn, 1.0));
        let big_r = tangential.iter().map(|v| v * v).sum::<f64>() + xn * xn;
        if big_r.sqrt() >= 3.0 * self.flattening_radius {
            return (xn, 1.0);
        }
        let h = self.psi_last(&pt);
        (h.re(), h.derivative(1))
    }

    /// Value of the section map only.
    pub fn section_value(&self, tangential: &[f64], xn: f64) -> f64 {
        let mut pt = tangential.to_vec();
        pt.push(xn);
        if norm(&pt) >= 3.0 * self.flattening_radius {
            return xn;
        }
        self.psi_last(&pt)
    }

    fn psi_inverse_local(&self, x: &[f64]) -> Result<Vec<f64>> {
        let r = self.flattening_radius;
        let n = x.len();
        if norm(x) >= 3.0 * r {
            return Ok(x.to_vec());
        }
        let tangential = &x[..n - 1];
        let t2: f64 = tangential.iter().map(|v| v * v).sum();
        // closed form on Psi(B_2r)
        let mut cand = x.to_vec();
        cand[n - 1] = 1.0 - ((1.0 - x[n - 1]).powi(2) + t2).sqrt();
        if norm(&cand) < 2.0 * r {
            return Ok(cand);
        }
        // monotone section solve on the vertical chord of B_3r
        let half = (9.0 * r * r - t2).max(0.0).sqrt();
        let target = x[n - 1];
        let (mut lo, mut hi) = (-half, half);
        let mut z = target.clamp(lo, hi);
        for _ in 0..200 {
            let (h, dh) = self.section(tangential, z);
            let f = h - target;
            if f.abs() <= 1e-15 {
                cand[n - 1] = z;
                return Ok(cand);
            }
            if f > 0.0 {
                hi = z;
            } else {
                lo = z;
            }
            let newton = z - f / dh;
            z = if dh > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 1e-14 {
                cand[n - 1] = z;
                return Ok(cand);
            }
        }
        Err(Error::NoConvergence(format!(
            "Psi inverse section solve at {x:?}"
        )))
    }

    /// Inverse of [`psi_map`](Self::psi_map).
    pub fn psi_inverse(&self, x: &[f64]) -> Result<Vec<f64>> {
        let local = self.psi_inverse_local(&self.to_local(x))?;
        Ok(self.from_local(&local))
    }

    /// `rho(x) = (radius - |x - center|)_+`.
    pub fn rho(&self, x: &[f64]) -> f64 {
        (self.radius - dist(x, &self.center)).max(0.0)
    }

    /// Is `x` in `B_radius(center)` and within `r * radius` of the touching point?
    pub fn in_flattened_cap(&self, x: &[f64]) -> bool {
        dist(x, &self.center) < self.radius
            && dist(x, &self.touching_point) < self.flattening_radius * self.radius
    }
}

/// `rho(x)` for the given geometry.
pub fn barrier_rho(geometry: &BallGeometry, x: &[f64]) -> f64 {
    geometry.rho(x)
}

pub fn psi_map(geometry: &BallGeometry, x: &[f64]) -> Vec<f64> {
    geometry.psi_map(x)
}

pub fn psi_inverse(geometry: &BallGeometry, x: &[f64]) -> Result<Vec<f64>> {
    geometry.psi_inverse(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-radius..radius)).collect();
            if norm(&v) < radius {
                return v;
            }
        }
    }

    #[test]
    fn rho_values() {
        let g = BallGeometry::standard(2);
        assert_eq!(g.rho(&[0.0, 1.0]), 1.0);
        assert_eq!(g.rho(&[0.0, 0.0]), 0.0);
        assert!((g.rho(&[0.0, 0.3]) - 0.3).abs() < 1e-15);
        assert_eq!(g.rho(&[0.0, -0.5]), 0.0);
    }

    #[test]
    fn psi_identities() {
        let g = BallGeometry::standard(2);
        // on the axis
        let x = [0.0, 0.12];
        assert_eq!(g.psi_map(&x), x.to_vec());
        // outside B_3r
        let far = [0.25, 0.2];
        assert_eq!(g.psi_map(&far), far.to_vec());
        // closed-form inverse
        let x = [0.05, 0.02];
        let big_x = [
            x[0],
            1.0 - ((1.0 - x[1]) * (1.0 - x[1]) + x[0] * x[0]).sqrt(),
        ];
        let back = g.psi_map(&big_x);
        assert!(dist(&back, &x) < 1e-15);
    }

    #[test]
    fn psi_round_trip_and_barrier_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2usize, 3] {
            let g = BallGeometry::standard(n);
            let r = g.flattening_radius;
            for _ in 0..300 {
                let big_x = random_in_ball(&mut rng, n, 3.0 * r);
                let y = g.psi_map(&big_x);
                let back = g.psi_inverse(&y).unwrap();
                assert!(dist(&back, &big_x) < 1e-12, "{big_x:?} -> {back:?}");
                if norm(&big_x) < 2.0 * r {
                    let lhs = g.rho(&y);
                    assert!((lhs - big_x[n - 1].max(0.0)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn cap_inclusion() {
        let g = BallGeometry::standard(2);
        let r = g.flattening_radius;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 200 {
            let x = random_in_ball(&mut rng, 2, r);
            if !g.in_flattened_cap(&x) {
                continue;
            }
            let big_x = g.psi_inverse(&x).unwrap();
            assert!(big_x[1] > 0.0);
            assert!(norm(&big_x) <= 2f64.sqrt() * r + 1e-14);
            checked += 1;
        }
    }

    #[test]
    fn general_orientation() {
        // ball of radius 2 centred at (2, 0), touching at the origin
        let g = BallGeometry {
            center: vec![2.0, 0.0],
            radius: 2.0,
            touching_point: vec![0.0, 0.0],
            flattening_radius: 0.1,
        };
        g.validate().unwrap();
        let loc = g.to_local(&[2.0, 0.0]);
        assert!(dist(&loc, &[0.0, 1.0]) < 1e-15);
        let x = [0.1, 0.05];
        let y = g.psi_map(&x);
        assert!(dist(&g.psi_inverse(&y).unwrap(), &x) < 1e-12);
    }

    #[test]
    fn geometry_validation() {
        let mut g = BallGeometry::standard(2);
        assert!(g.clone().with_flattening_radius(0.2).is_err());
        g.radius = 2.0;
        assert!(g.validate().is_err());
    }
}
