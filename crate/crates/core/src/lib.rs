//! Exact finite-field toolkit for line-Grassmann varieties of polar spaces.
//!
//! The crate builds, over small finite fields, the point sets on the Plücker
//! quadric cut out by totally isotropic (or totally singular) lines of a
//! reflexive sesquilinear or quadratic form, and measures them: spans,
//! tangent spaces, defining equations, residues at a point, and the
//! projective embeddings of the associated point-line geometries.

pub mod casebook;
pub mod embeddings;
pub mod field;
pub mod forms;
pub mod linalg;
pub mod projective;
pub mod varieties;
pub mod wedge;

pub use field::{Felt, Field, FieldError};
pub use forms::{FormError, PolarForm, QuadForm, SesquiForm};
pub use linalg::{span_dim, LinalgError, Mat, Rref, Subspace};
pub use projective::ProjLine;
pub use wedge::{WedgeError, WedgeIndex, WedgePoint};
