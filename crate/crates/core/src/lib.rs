//! Canonical representatives, equivalence and congruence of square matrices
//! under the unitriangular group U, the Borel group B, and standard parabolic
//! subgroups P, over exactly-represented fields.
//!
//! The crate computes canonical forms with explicit transforming witnesses,
//! decides the associated relations through polynomial-time invariants, and
//! ships a brute-force orbit oracle that verifies every uniqueness claim at
//! desk scale.

pub mod census;
pub mod congr;
pub mod equiv;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod parabolic;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use matrix::{Matrix, MatrixFlags, SubPermCouple};
