//! Zero localization, counting and orientation analysis for the two-parameter
//! harmonic quadrinomial
//!
//! ```text
//! q(z) = b z^k + conj(z)^n + c conj(z)^m + z,    b, c real,  n > m >= 1.
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`quad_model`] evaluates `q`, its Wirtinger derivatives, the Jacobian and
//!   the dilatation, and classifies points as sense-preserving, sense-reversing
//!   or singular.
//! * [`real_roots`] holds the small real-polynomial toolkit (Descartes sign
//!   counting, deflation at `x = 1`, bracketed positive-root isolation) used by
//!   the disk bounds.
//! * [`bounds`] produces zero-inclusion disks and zero-count bounds.
//! * [`contour`] computes winding numbers along circles and rectangles.
//! * [`zero_finder`] locates every zero with a pruned quadtree and Newton's
//!   method, then cross-checks the result with the argument principle.
//! * [`critical_set`] covers the unit-dilatation circle, the local univalence
//!   radius and a few exploratory helpers.
//! * [`sweep`] evaluates a `(b, c)` grid in parallel with deterministic output.

pub mod bounds;
pub mod contour;
pub mod critical_set;
mod error;
pub mod quad_model;
pub mod real_roots;
pub mod sweep;
pub mod zero_finder;

pub use num_complex::Complex64;

pub use bounds::{count_bound, radius_bound, CountBound, CountBranch, DiskBound, RadiusSource};
pub use contour::{winding_number, Contour, WindingReport};
pub use critical_set::{
    b0_orientation_inequality, circle_image, critical_radius, modular_root_census, pure_imaginary_rays,
    univalence_radius, verify_critical_circle, CriticalCircle, CriticalCircleCheck, ModularCensus, UnivalenceRadius,
};
pub use error::{Error, Result};
pub use quad_model::{ComplexPoint, HarmonicMap, HarmonicPolynomial, HarmonicQuadrinomial, OrientationClass};
pub use real_roots::{PositiveRoot, RealPoly};
pub use sweep::{run_sweep, Axis, SweepCell, SweepGrid, SweepSpec, Violation};
pub use zero_finder::{
    count_zeros, find_zeros, newton_step, real_system, SolveConfig, WindingCheck, ZeroRecord, ZeroSetReport,
};
