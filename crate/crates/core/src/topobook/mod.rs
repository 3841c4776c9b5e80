//! Integral homology bookkeeping: chain complexes, plumbing trees and the
//! growth and entropy bound arithmetic.

mod bounds;
mod chain;
mod plumbing;

pub use bounds::{entropy_lower_bound, symplectic_growth_lower_bound, EntropyBoundInput};
pub use chain::{chain_homology, is_homology_sphere, ChainComplex, ChainComplexFile, DegreeHomology, HomologyProfile};
pub use plumbing::{
    plumbing_homology, BoundaryStatus, PlumbingFile, PlumbingHomology, PlumbingTree, PlumbingVertex, VertexEntry,
};

use thiserror::Error;

use crate::exactlin::LinError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Lin(#[from] LinError),
}
