//! Exact computations around the fundamental alcove of a simple, simply
//! connected, compact Lie group: root data, affine Weyl group geometry,
//! the distinguished conjugacy classes attached to alcove vertices, their
//! matrix and Clifford-algebra realizations, and the resulting upper bound
//! on the Lusternik-Schnirelmann category of the group.
//!
//! Everything is computed over the rationals. Points of the torus Lie
//! algebra are rescaled so that the alcove condition reads `0 < α(H) < 1`
//! and the kernel of the torus exponential is the coroot lattice itself;
//! with this normalization every quantity in sight is an exact rational
//! and boundary cases are decided without tolerances.
//!
//! Module map:
//! - [`exact`], [`matrix`], [`quaternion`]: rational scalars, dense exact
//!   linear algebra, rational quaternions.
//! - [`root_system`]: simple roots, the full root set, highest root,
//!   marks, coroots, and the coroot lattice for all seven families.
//! - [`affine`]: the fundamental alcove, its vertices and walls, affine
//!   Weyl group elements, vertex stabilizers, cells, and reduction of
//!   arbitrary points into the closed alcove.
//! - [`orbits`]: root subsystems at vertices, Dynkin classification of
//!   stabilizers, homogeneous-space identifications, and the category
//!   upper bound.
//! - [`su`], [`symplectic`], [`clifford`], [`grassmann`]: concrete models
//!   of the distinguished classes in the classical groups.
//! - [`verify`]: seeded brute-force verification campaigns over all of
//!   the above.

pub mod affine;
pub mod clifford;
pub mod exact;
pub mod grassmann;
pub mod matrix;
pub mod orbits;
pub mod quaternion;
pub mod root_system;
pub mod su;
pub mod symplectic;
pub mod verify;

pub use exact::{CRat, Rat};
pub use matrix::Mat;
