//! Log-log least squares.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r2: f64,
}

/// Fits `|value| = prefactor * x^exponent` by ordinary least squares on
/// `(ln x, ln |value|)`.
pub fn power_law_fit(samples: &[(f64, f64)]) -> Result<PowerLawFit> {
    if samples.len() < 6 {
        return invalid(format!(
            "power-law fit needs at least 6 samples, got {}",
            samples.len()
        ));
    }
    if samples.iter().any(|(x, _)| !(*x > 0.0)) {
        return invalid("power-law fit needs positive abscissae");
    }
    let positive = samples.iter().all(|(_, v)| *v > 0.0);
    let negative = samples.iter().all(|(_, v)| *v < 0.0);
    if !(positive || negative) {
        return invalid("power-law fit needs nonzero values of one sign");
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|(x, v)| (x.ln(), v.abs().ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return invalid("power-law fit needs at least two distinct abscissae");
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let sse: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - exponent * p.0).powi(2))
        .sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Ok(PowerLawFit {
        exponent,
        prefactor: intercept.exp(),
        r2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid() -> Vec<f64> {
        (0..12)
            .map(|k| 1e-4 * 10f64.powf(k as f64 * 3.0 / 11.0))
            .collect()
    }

    #[test]
    fn exact_laws() {
        let s: Vec<(f64, f64)> = grid().iter().map(|&x| (x, x.powf(-0.5))).collect();
        let f = power_law_fit(&s).unwrap();
        assert!((f.exponent + 0.5).abs() < 1e-10);
        assert!((f.r2 - 1.0).abs() < 1e-12);
        let s: Vec<(f64, f64)> = grid().iter().map(|&x| (x, -3.0 * x * x)).collect();
        let f = power_law_fit(&s).unwrap();
        assert!((f.exponent - 2.0).abs() < 1e-10);
        assert!((f.prefactor - 3.0).abs() < 1e-9);
    }

    #[test]
    fn noisy_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s: Vec<(f64, f64)> = grid()
            .iter()
            .map(|&x| (x, x.powf(-0.36) * (1.0 + rng.gen_range(-1e-3..1e-3))))
            .collect();
        let f = power_law_fit(&s).unwrap();
        assert!((f.exponent + 0.36).abs() < 0.01);
    }

    #[test]
    fn rejects_bad_samples() {
        let mut s: Vec<(f64, f64)> = grid().iter().map(|&x| (x, x)).collect();
        s[3].1 = -1.0;
        assert!(power_law_fit(&s).is_err());
        s[3].1 = 0.0;
        assert!(power_law_fit(&s).is_err());
        assert!(power_law_fit(&s[..5]).is_err());
    }
}
