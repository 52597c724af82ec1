//! Numerical evaluation of the fractional p-Laplacian
//!
//! ```text
//! (-Delta)_p^s u(x) = C  P.V. int |u(x) - u(y)|^(p-2) (u(x) - u(y)) / |x - y|^(n + sp) dy
//! ```
//!
//! by principal-value quadrature of the symmetrized integrand, together with
//! the derivative of the operator, the blow-up experiments around the
//! threshold `p = 3 / (2 - s)`, and the Hopf barrier construction on a ball.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod experiments;
pub mod fields;
mod jet;
pub mod kernel;
pub mod operator;
pub mod quadrature;

pub use error::{Error, Result};
pub use fields::{Derivatives, ScalarField};
pub use kernel::{kernel_g, regularity_threshold, OperatorParams};
pub use quadrature::{EvalResult, QuadratureConfig};
