//! Gelfand-Tsetlin machinery for coadjoint orbits of `SO(2n+1)` and `SO(2n)`.
//!
//! The crate builds the Gelfand-Tsetlin (GT) polytope of an orbit, reconstructs
//! explicit skew-symmetric orbit points with prescribed GT values, enumerates the
//! polytope edges at the distinguished vertex together with their lattice lengths,
//! and turns those lengths into Gromov-width lower bounds. Every constructive step
//! has a brute-force matrix check in [`oracle`].
//!
//! Module map:
//!
//! * [`root_system`]: groups, chamber points, coroots and their pairings.
//! * [`orbit_matrix`]: skew matrices, characteristic polynomials, Pfaffians, the GT map.
//! * [`gt_pattern`]: patterns, polytope inequalities, edges at `Λ(λ)`.
//! * [`reconstruction`]: Cauchy weights, arrow matrices, bordering vectors, orbit points.
//! * [`width_bound`]: the regular and non-regular bounds, standard-torus comparison.
//! * [`oracle`]: random orbit sampling and verification reports.

pub mod error;
pub mod exec;
pub mod gt_pattern;
pub mod json;
pub mod oracle;
pub mod orbit_matrix;
pub mod reconstruction;
pub mod root_system;
pub mod scalar;
pub mod width_bound;

pub use error::{OrbitError, Result};
pub use gt_pattern::{EdgeDescriptor, EdgeKind, GtPattern, Violation};
pub use orbit_matrix::{ChamberSpectrum, SkewMatrix};
pub use root_system::{ChamberClass, Coroot, CorootKind, Family, GroupSpec, WeylPoint};
pub use scalar::{Rational, Scalar};
