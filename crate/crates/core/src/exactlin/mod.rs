//! Exact arithmetic kernel: 𝔽₂ linear algebra, integer Smith normal form and
//! matrices over the real cyclotomic rings ℤ[2cos(π/N)].

mod cyclotomic;
mod f2;
mod ring_matrix;
mod snf;

pub use cyclotomic::{
    cyclotomic_polynomial, euler_phi, real_cyclotomic_ring, RealCyclotomicRing, RingElement,
    MAX_DEGREE,
};
pub use f2::{f2_rank, f2_solve, EchelonBasis, F2Matrix, F2Vector};
pub use ring_matrix::{ring_mat_mul, RingMatrix};
pub use snf::{snf, IntMatrix, SnfDecomposition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("coefficient overflow in exact ring arithmetic")]
    Overflow,
}
