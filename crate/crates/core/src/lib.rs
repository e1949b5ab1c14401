//! Multiindex matrices and a matrix calculus for polynomial maps.
//!
//! A polynomial map `phi: F^n -> F^n'` is represented by a block matrix `M_phi`
//! whose rows and columns are numbered by multiindices. A binomial-weighted
//! product `odot` turns products of polynomials into products of matrices,
//! and composition becomes `M_{phi o psi} = Exp(M_psi) M_phi`.
//!
//! Modules:
//! - [`multiindex`]: the graded order, ranking, factorials, binomials.
//! - [`graded_matrix`]: homogeneous blocks and the `odot` product.
//! - [`block_matrix`]: finite block matrices and `Exp`.
//! - [`polymap`]: polynomial maps, parsing, and both composition routes.
//! - [`analysis`]: rho-norms, Bombieri norm, and the norm inequalities.
//! - [`cli`]: the `odot` command line.

pub mod analysis;
pub mod block_matrix;
pub mod cli;
pub mod error;
pub mod exec;
pub mod graded_matrix;
pub mod interchange;
pub mod multiindex;
pub mod polymap;
pub mod random;
pub mod scalar;
pub mod verify;

pub use block_matrix::BlockMatrix;
pub use error::{Error, Result};
pub use exec::Exec;
pub use graded_matrix::{odot_multi, GradedMatrix};
pub use multiindex::Multiindex;
pub use polymap::{HomogPoly, PolyMap};
pub use scalar::{Rational, Scalar};
