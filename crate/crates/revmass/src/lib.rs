//! Quasi-local masses of convex revolution surfaces in Schwarzschild-like
//! 3-manifolds.
//!
//! The crate computes the Brown-York mass, the Hawking mass and the ADM flux
//! integral for scale families of closed convex surfaces of revolution inside
//! Euclidean, Schwarzschild-conformal (phi^4 delta with phi = 1 + m/(2r)) and
//! axisymmetric perturbed ambient metrics, and measures the convergence
//! m_BY(S_a) -> m_ADM together with the decay rates of the intermediate
//! curvature comparisons.
//!
//! Pipeline per surface and scale:
//! 1. a generating curve (w, h) on [0, l] ([`profiles`]),
//! 2. the induced 2-metric E dphi^2 + G dtheta^2 under the ambient metric
//!    ([`geometry`]),
//! 3. the explicit isometric embedding u = sqrt(G)/a,
//!    v' = -sqrt(E/a^2 - u'^2) of that metric into flat space
//!    ([`embedding`]),
//! 4. the mass integrals over the profile parameter ([`masses`]),
//! 5. convergence tables, decay-order fits and verdicts ([`experiments`]).
//!
//! Runnable walkthroughs live in `examples/` (one per capability); the
//! `revmass` binary drives the same experiment harness from a TOML config.

pub mod ambient;
pub mod embedding;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod masses;
pub mod numerics;
pub mod profiles;

pub use error::{Error, Result};
