//! Deterministic low-discrepancy samples.

use std::f64::consts::PI;

use crate::fields::shapes::dist;

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

const BASES: [usize; 4] = [2, 3, 5, 7];

/// Point `index` (starting at 1) of the Halton sequence in `[0, 1]^n`.
pub fn halton_point(index: usize, n: usize) -> Vec<f64> {
    (0..n)
        .map(|d| halton(index, BASES[d % BASES.len()]))
        .collect()
}

/// `count` Halton points in the ball `B_radius(center)` that also satisfy
/// `keep`, in sequence order.
pub fn halton_in_ball(
    center: &[f64],
    radius: f64,
    count: usize,
    keep: impl Fn(&[f64]) -> bool,
) -> Vec<Vec<f64>> {
    let n = center.len();
    let mut out = Vec::with_capacity(count);
    let mut index = 1;
    let limit = 1000 * count.max(1) + 10_000;
    while out.len() < count && index < limit {
        let h = halton_point(index, n);
        index += 1;
        let pt: Vec<f64> = if n == 2 {
            // area-preserving map of the unit square onto the disc
            let r = radius * h[0].sqrt();
            let th = 2.0 * PI * h[1];
            vec![center[0] + r * th.cos(), center[1] + r * th.sin()]
        } else {
            let pt: Vec<f64> = h
                .iter()
                .zip(center)
                .map(|(u, c)| c + radius * (2.0 * u - 1.0))
                .collect();
            if dist(&pt, center) >= radius {
                continue;
            }
            pt
        };
        if keep(&pt) {
            out.push(pt);
        }
    }
    out
}
