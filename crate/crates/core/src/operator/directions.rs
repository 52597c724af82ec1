//! Rules for integrating ray integrals over half-sphere directions.

use std::cell::{Cell, RefCell};
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::fields::ScalarField;
use crate::quadrature::{
    adaptive_integrate_with_breaks, gauss_legendre, EvalResult, QuadratureConfig,
};

/// Directions `e` and weights with total weight `|S^(n-1)| / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectionRule {
    /// n = 1: the single direction `+1` with weight 1.
    Line,
    /// n = 2: adaptive Gauss-Kronrod in the angle over `[0, pi)`, split at
    /// the field's angular break directions.
    AdaptiveCircle,
    /// n = 2: `m` equispaced angles.
    Circle(usize),
    /// n = 3: Gauss-Legendre in the height times equispaced azimuths in
    /// `[0, pi)`.
    Sphere { heights: usize, azimuths: usize },
}

impl DirectionRule {
    pub fn for_config(n: usize, cfg: &QuadratureConfig) -> Result<Self> {
        match n {
            1 => Ok(DirectionRule::Line),
            2 => Ok(cfg
                .sphere_points
                .map_or(DirectionRule::AdaptiveCircle, DirectionRule::Circle)),
            3 => {
                let m = cfg.sphere_points.unwrap_or(6);
                Ok(DirectionRule::Sphere {
                    heights: m,
                    azimuths: m,
                })
            }
            _ => invalid(format!(
                "operator evaluation is implemented for n <= 3, got n = {n}"
            )),
        }
    }

    /// `sum_e w_e ray(e)`, where `ray` returns the integral along `e`.
    ///
    /// Ray tolerances are relative to the mean ray magnitude found by a
    /// coarse pilot pass, so rays whose integral happens to vanish do not
    /// chase an absolute target below rounding level. The adaptive angular
    /// rule likewise measures its target against the direction-averaged
    /// magnitude, which keeps totals that nearly cancel affordable.
    pub fn integrate<F>(
        &self,
        field: &ScalarField,
        x: &[f64],
        cfg: &QuadratureConfig,
        ray: F,
    ) -> Result<EvalResult>
    where
        F: Fn(&[f64], &QuadratureConfig) -> Result<EvalResult>,
    {
        if *self == DirectionRule::Line {
            return ray(&[1.0], cfg);
        }
        let scale = self.pilot_scale(cfg, &ray)?;
        let first = self.integrate_at_scale(field, x, cfg, &ray, scale, 1.0)?;
        // The pilot directions can miss a narrow sector that dominates the
        // total; retry once with every tolerance shrunk by the shortfall.
        let target = cfg.abs_tol.max(cfg.rel_tol * first.value.abs());
        if first.error_estimate <= target {
            return Ok(first);
        }
        let tighten = (0.5 * target / first.error_estimate).max(1e-3);
        let second = self.integrate_at_scale(field, x, cfg, &ray, scale, tighten)?;
        Ok(EvalResult {
            panels_used: first.panels_used + second.panels_used,
            evaluations: first.evaluations + second.evaluations,
            ..second
        })
    }

    fn integrate_at_scale<F>(
        &self,
        field: &ScalarField,
        x: &[f64],
        cfg: &QuadratureConfig,
        ray: &F,
        scale: f64,
        tighten: f64,
    ) -> Result<EvalResult>
    where
        F: Fn(&[f64], &QuadratureConfig) -> Result<EvalResult>,
    {
        let cfg = &QuadratureConfig {
            rel_tol: tighten * cfg.rel_tol,
            abs_tol: tighten * cfg.abs_tol,
            ..cfg.clone()
        };
        let scale = scale.max(f64::MIN_POSITIVE);
        let ray_cfg = |factor: f64| QuadratureConfig {
            rel_tol: factor * cfg.rel_tol,
            abs_tol: factor * cfg.abs_tol.max(cfg.rel_tol * scale),
            ..cfg.clone()
        };
        match *self {
            DirectionRule::Line => unreachable!(),
            DirectionRule::Circle(m) => {
                let rc = ray_cfg(1.0);
                let w = PI / m as f64;
                let mut total = EvalResult::exact(0.0);
                for k in 0..m {
                    let th = PI * (k as f64 + 0.5) / m as f64;
                    total = total.plus(&ray(&[th.cos(), th.sin()], &rc)?.scaled(w));
                }
                Ok(total)
            }
            DirectionRule::Sphere { heights, azimuths } => {
                let rc = ray_cfg(1.0);
                let (z, wz) = gauss_legendre(heights);
                let wphi = PI / azimuths as f64;
                let mut total = EvalResult::exact(0.0);
                for (zi, wi) in z.iter().zip(&wz) {
                    let ring = (1.0 - zi * zi).sqrt();
                    for k in 0..azimuths {
                        let ph = PI * (k as f64 + 0.5) / azimuths as f64;
                        let e = [ring * ph.cos(), ring * ph.sin(), *zi];
                        total = total.plus(&ray(&e, &rc)?.scaled(wi * wphi));
                    }
                }
                Ok(total)
            }
            DirectionRule::AdaptiveCircle => {
                let inner = ray_cfg(0.1);
                let outer_cfg = QuadratureConfig {
                    abs_tol: cfg.abs_tol.max(0.1 * cfg.rel_tol * scale * PI),
                    ..cfg.clone()
                };
                let failure: RefCell<Option<Error>> = RefCell::new(None);
                let worst = Cell::new(0.0f64);
                let all_converged = Cell::new(true);
                let panels = Cell::new(0usize);
                let evals = Cell::new(0usize);
                let outer = adaptive_integrate_with_breaks(
                    |th: f64| {
                        if failure.borrow().is_some() {
                            return 0.0;
                        }
                        match ray(&[th.cos(), th.sin()], &inner) {
                            Ok(r) => {
                                worst.set(worst.get().max(r.error_estimate));
                                all_converged.set(all_converged.get() && r.converged);
                                panels.set(panels.get() + r.panels_used);
                                evals.set(evals.get() + r.evaluations);
                                r.value
                            }
                            Err(e) => {
                                *failure.borrow_mut() = Some(e);
                                0.0
                            }
                        }
                    },
                    0.0,
                    PI,
                    &field.angular_breaks(x),
                    &outer_cfg,
                );
                if let Some(e) = failure.into_inner() {
                    return Err(e);
                }
                Ok(EvalResult {
                    value: outer.value,
                    error_estimate: outer.error_estimate + PI * worst.get(),
                    panels_used: outer.panels_used + panels.get(),
                    evaluations: evals.get(),
                    converged: outer.converged && all_converged.get(),
                })
            }
        }
    }

    /// Mean of `|ray(e)|` over a few fixed directions, at loose tolerance.
    fn pilot_scale<F>(&self, cfg: &QuadratureConfig, ray: &F) -> Result<f64>
    where
        F: Fn(&[f64], &QuadratureConfig) -> Result<EvalResult>,
    {
        let loose = QuadratureConfig {
            rel_tol: cfg.rel_tol.max(1e-3),
            abs_tol: cfg.abs_tol.max(1e-6),
            ..cfg.clone()
        };
        let dirs: Vec<Vec<f64>> = match self {
            DirectionRule::Sphere { .. } => (0..8)
                .map(|k| {
                    let z = if k < 4 { -0.5 } else { 0.5 };
                    let ph = PI * ((k % 4) as f64 + 0.5) / 4.0;
                    let ring = (1.0f64 - z * z).sqrt();
                    vec![ring * ph.cos(), ring * ph.sin(), z]
                })
                .collect(),
            _ => (0..8)
                .map(|k| {
                    let th = PI * (k as f64 + 0.5) / 8.0;
                    vec![th.cos(), th.sin()]
                })
                .collect(),
        };
        let mut sum = 0.0;
        for e in &dirs {
            sum += ray(e, &loose)?.value.abs();
        }
        Ok(sum / dirs.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight_total(rule: DirectionRule, n: usize) -> f64 {
        let cfg = QuadratureConfig::default();
        let x = vec![0.0; n];
        rule.integrate(&ScalarField::constant(0.0), &x, &cfg, |_, _| {
            Ok(EvalResult::exact(1.0))
        })
        .unwrap()
        .value
    }

    #[test]
    fn weights_cover_half_sphere() {
        assert_eq!(weight_total(DirectionRule::Line, 1), 1.0);
        assert!((weight_total(DirectionRule::Circle(16), 2) - PI).abs() < 1e-14);
        assert!((weight_total(DirectionRule::AdaptiveCircle, 2) - PI).abs() < 1e-14);
        let s = DirectionRule::Sphere {
            heights: 6,
            azimuths: 6,
        };
        assert!((weight_total(s, 3) - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn quadratic_moments() {
        // average of e_1^2 over the circle is 1/2, over the sphere 1/3
        let cfg = QuadratureConfig::default();
        let f = ScalarField::constant(0.0);
        let r = DirectionRule::AdaptiveCircle
            .integrate(&f, &[0.0, 0.0], &cfg, |e, _| {
                Ok(EvalResult::exact(e[0] * e[0]))
            })
            .unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-12);
        let r = DirectionRule::Sphere {
            heights: 6,
            azimuths: 6,
        }
        .integrate(&f, &[0.0; 3], &cfg, |e, _| {
            Ok(EvalResult::exact(e[2] * e[2]))
        })
        .unwrap();
        assert!((r.value - 2.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn high_dimensions_rejected() {
        assert!(DirectionRule::for_config(4, &QuadratureConfig::default()).is_err());
    }
}
