//! Shared numerical machinery: jets, quadrature, Chebyshev series,
//! convergence-order fits and derivative checks.

mod cheby;
mod diff;
mod fit;
mod jet;
mod quad;

pub use cheby::ChebSeries;
pub use diff::check_derivatives;
pub use fit::{fit_order, OrderFit};
pub use jet::Jet3;
pub use quad::{gauss_rule, integrate, integrate_fixed, GaussRule, QuadResult, QuadScheme, QuadSpec};
