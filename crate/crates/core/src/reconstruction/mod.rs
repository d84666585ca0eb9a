//! Orbit points with prescribed GT values.
//!
//! A skew matrix of size `m` with chamber spectrum `a` is bordered by a vector `Y`
//! to reach size `m+1` with spectrum `b`. The squared norms of `Y` on the
//! coordinate circles are fixed by the characteristic polynomial:
//!
//! * odd sizes: a Cauchy system solved in closed form ([`solve_cauchy_weights`]);
//! * even sizes: a Hermitian arrow matrix ([`arrow_matrix_solve`]) plus the
//!   Pfaffian to choose between `Y` and `-Y`.
//!
//! [`build_orbit_point`] stacks these borders from level 2 up to the top.

mod arrow;
mod build;
mod cauchy;
mod extend;

pub use arrow::{arrow_matrix_solve, arrow_matrix_solve_tol, ArrowSolution};
pub use build::{build_orbit_point, reconstruct, GaugeEntry, Gauges, ReconstructionReport, BUILD_TOLERANCE};
pub use cauchy::{solve_cauchy_weights, solve_cauchy_weights_tol};
pub use extend::{extend_even, extend_odd, extend_odd_weights, BorderSolution, InterlacingPair, Parity};
