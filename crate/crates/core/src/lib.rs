//! Numerical core for bounded noncommutative function theory on the nc unit ball.
//!
//! The crate is organized around five pieces:
//!
//! - [`freealg`]: words in the free monoid, free polynomials and their evaluation on
//!   matrix tuples.
//! - [`fock`]: the truncated full Fock space, left creation operators and the nc Szegő
//!   kernel with its kernel functions.
//! - [`ideals`]: homogeneous two-sided ideals, subproduct fibers, compressed shifts,
//!   membership and Nullstellensatz witnesses.
//! - [`pick`]: Pick interpolation feasibility through the Choi matrix of the
//!   de Branges–Rovnyak map, and homogeneous multiplier norms.
//! - [`mobius`]: automorphisms of the nc unit ball as `SU(1,d)` block data.
//!
//! All scalars are `Complex64`; all matrices are dense `nalgebra` matrices. Large
//! products and Hermitian spectra go through faster kernels in [`linalg`].

pub mod error;
pub mod fock;
pub mod freealg;
pub mod ideals;
pub mod json;
pub mod linalg;
pub mod mobius;
pub mod pick;
pub mod random;

pub use error::{NcError, Result};
pub use fock::{CreationTuple, SzegoSolver, TruncatedFock};
pub use freealg::{eval_poly, FreePoly, MatrixTuple, Word};
pub use ideals::{GradedIdeal, Membership, SubproductFiber, Witness};
pub use linalg::{CMatrix, CVector};
pub use mobius::{BallAutomorphism, Provenance};
pub use num_complex::Complex64;
pub use pick::{ChoiMatrix, Feasibility, PickProblem};

/// Largest admissible number of variables.
pub const MAX_ARITY: usize = 8;

/// Upper bound on any single basis dimension (Fock truncation or `d^n` per degree).
pub const DIMENSION_GUARD: usize = 20_000;
