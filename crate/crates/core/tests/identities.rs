mod common;

use common::{identity_errors, rel_diff};
use fracplap::operator::{decompose_i123, evaluate_operator};
use fracplap::{OperatorParams, QuadratureConfig, ScalarField};

#[test]
fn symmetry_identities() {
    let worst = identity_errors(20, 41, 1e-9);
    for (name, e) in ["homogeneity", "translation", "dilation", "reflection"]
        .iter()
        .zip(worst)
    {
        assert!(e < 1e-7, "{name}: {e}");
    }
}

#[test]
fn normalization_scales_linearly() {
    let cfg = QuadratureConfig::default();
    let params = OperatorParams::new(1, 0.4, 2.6).unwrap();
    let base = evaluate_operator(&ScalarField::BumpSquare, &[0.3], &params, &cfg).unwrap();
    let scaled_params = params.with_normalization(2.5).unwrap();
    let scaled = evaluate_operator(&ScalarField::BumpSquare, &[0.3], &scaled_params, &cfg).unwrap();
    assert!(rel_diff(scaled.value, 2.5 * base.value) < 1e-14);
}

#[test]
fn constants_are_annihilated() {
    let cfg = QuadratureConfig::default();
    for n in [1, 2, 3] {
        let params = OperatorParams::new(n, 0.5, 2.5).unwrap();
        let x = vec![0.2; n];
        let r = evaluate_operator(&ScalarField::constant(3.0), &x, &params, &cfg).unwrap();
        assert_eq!(r.value, 0.0);
    }
}

#[test]
fn far_range_closed_form() {
    let cfg = QuadratureConfig::default().with_tolerances(1e-12, 1e-15);
    for (s, p) in [(0.5, 2.5), (0.8, 2.2)] {
        let params = OperatorParams::new(1, s, p).unwrap();
        for x in [1e-3, 1e-2, 0.05, 0.1, 0.12] {
            let d = decompose_i123(x, &params, &cfg).unwrap();
            let closed = 4.0 * x.powf(2.0 * p - 3.0) * 2.5f64.powf(-s * p) / (s * p);
            assert!(rel_diff(d.i3.value, closed) < 1e-8, "s={s} p={p} x={x}");
        }
    }
}
