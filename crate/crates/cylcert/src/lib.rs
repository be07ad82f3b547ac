//! Exact-arithmetic engine for sum-of-squares certificates on cylinders.
//!
//! Given a polynomial `f` in `Q[x1..xn, y]` that is positive on `S × R`,
//! where `S = {g_1 >= 0, ..., g_s >= 0}` is a compact basic closed
//! semialgebraic set with an archimedean quadratic module, this crate
//! constructs an explicit representation
//!
//! ```text
//! f = sigma_0 + sigma_1 * g_1 + ... + sigma_s * g_s
//! ```
//!
//! with each `sigma_i` a sum of weighted squares over the rationals, and
//! verifies the identity exactly (zero residual, positive weights, degree
//! audit). All arithmetic is exact: coefficients are arbitrary-precision
//! rationals, positivity decisions go through Sturm sequences, and the few
//! irrational constants that appear in the bound formulas are replaced by
//! rational enclosures rounded in the sound direction.
//!
//! The pipeline follows the constructive route: homogenize `y` against a
//! circle variable `z`, damp the generators into `h = fbar - lambda * (y^2 +
//! z^2)^(m/2) * sum g_i (g_i - 1)^(2k)`, bihomogenize with a slack variable
//! `x0`, multiply by powers of `x0 + x1 + ... + xn` until every coefficient
//! form `b_alpha(y, z)` is strictly positive on the unit circle, decompose
//! each `b_alpha(y,1)` into univariate sums of squares, and splice the
//! pieces together through a registry of corner-monomial certificates.
//!
//! Entry points: [`pipeline::certify_problem`] drives the whole
//! construction, [`verify::verify_certificate`] is the independent checker,
//! and the `cylcert` binary exposes both plus bound reporting and built-in
//! demonstration instances.

pub mod assemble;
pub mod bounds;
pub mod error;
pub mod pipeline;
pub mod polya;
pub mod polyring;
pub mod problem;
pub mod region;
pub mod registry;
pub mod scalar;
pub mod sos1d;
pub mod verify;

pub use error::Error;
pub use scalar::Rat;
