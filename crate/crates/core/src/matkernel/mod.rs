//! Scalar and matrix arithmetic over R, C and H.
//!
//! All spectral work goes through the real embedding `ρ` and a cyclic Jacobi
//! eigensolver; see [`svd`] for how real eigenspaces are lifted back to K^n.

pub mod eigen;
pub mod matrix;
pub mod real;
pub mod scalar;
pub mod subspace;
pub mod svd;

pub use eigen::{sym_eigen, sym_eigenvalues, SymEigen};
pub use matrix::{KMatrix, KVector};
pub use real::{real_embed, RealMatrix};
pub use scalar::{BaseField, DivisionAlgebra, KScalar};
pub use subspace::{gram_schmidt_k, KSubspace};
pub use svd::{operator_norm, svd, SvdResult, CLUSTER_TOL};

/// `adjoint(A)`: the conjugate transpose.
pub fn adjoint(a: &KMatrix) -> KMatrix {
    a.adjoint()
}
