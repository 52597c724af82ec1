//! Reproducible numerical experiments built on the operator: blow-up of the
//! derivative near a degenerate minimum, the regularity threshold, the
//! boundary barrier construction and pointwise comparison checks.

pub mod blowup;
pub mod comparison;
pub mod fit;
pub mod hopf;
pub mod sampling;

pub use blowup::{
    blowup_experiment, critical_scan, default_blowup_grid, log_grid, threshold_sweep, BlowupReport,
    BlowupSample, Classification, CriticalRow, SweepRow,
};
pub use comparison::{
    comparison_check, pointwise_classify, ComparisonReport, ComparisonStatus, PointwiseClass,
    PointwiseReport,
};
pub use fit::{power_law_fit, PowerLawFit};
pub use hopf::{
    cap_samples, default_hopf_setup, hopf_experiment, hopf_ratio_scan, HopfOptions, HopfReport,
    HopfSample, RatioRow,
};
pub use sampling::{halton, halton_in_ball, halton_point};
