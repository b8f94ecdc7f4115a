//! Rational invariants for the orthogonal group acting on even-degree forms.
//!
//! A form of degree `2d` in `n` variables is moved into a slice by
//! diagonalizing its quadratic part. On the slice only the signed permutation
//! group `B(n)` remains, and a finite list of rational invariants of that
//! group (the *fingerprint*) decides generic `O(n)`-equivalence.
//!
//! Module map:
//! - [`scalar`], [`combinatorics`], [`form`], [`text`]: exact and floating
//!   homogeneous polynomial arithmetic and the form file format.
//! - [`linalg`]: fraction-free exact solves and orthogonal matrices.
//! - [`slice`]: harmonic projection, slice basis, coordinates.
//! - [`invariants`]: generator evaluation, fingerprints, reconstruction.
//! - [`oracle`]: brute force over `B(n)` for verification.
//! - [`pipeline`]: end-to-end fingerprinting and equivalence verdicts.

pub mod combinatorics;
pub mod error;
pub mod form;
pub mod invariants;
pub mod linalg;
pub mod oracle;
pub mod pipeline;
pub mod scalar;
pub mod slice;
pub mod symbolic;
pub mod text;

pub use combinatorics::{enumerate_multi_indices, enumerate_partitions, multinomial, IntegerPartition, MultiIndex};
pub use error::{Error, Result};
pub use form::Form;
pub use invariants::{Fingerprint, GenericityFlag, InvariantVariant};
pub use linalg::OrthogonalMatrix;
pub use oracle::{GraphSpec, SignedPermutation};
pub use scalar::{Field, Rational, Ring, Scalar, ScalarMode};
pub use slice::{Shape, SliceBasis, SliceCoordinates, SliceLayout};
