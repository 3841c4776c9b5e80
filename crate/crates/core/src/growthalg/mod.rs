//! Filtered 𝔽₂ group algebras and their modules.
//!
//! The level of a group element is its word length for a fixed generating
//! set; the level of a sum is the largest level in its support. Algebraic
//! growth counts the dimensions of the spans `W_S(n)` of products of at
//! most `n` elements of a finite set `S`.

mod algebra;
mod growth;
mod module;

pub use algebra::{check_subadditivity, FilteredAlgebra, GroupAlgebraElement, SubadditivityReport};
pub use growth::{algebraic_growth, default_window, fds_from_ball_filtration, AlgebraicGrowth};
pub use module::{
    check_module_subadditivity, module_growth_compare, stretching_check, uniform_family_check, ComparisonReport,
    ComparisonRow, FilteredModule, ModuleElement, ModuleSpec, Representation, StretchReport, UniformReport,
};

use thiserror::Error;

use crate::exactlin::LinError;
use crate::fds::FdsError;
use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("level {level} is beyond the enumerated radius {radius}")]
    Range { level: usize, radius: usize },
    #[error("the element does not stretch the algebra up to level {level}; {witness} acts as zero")]
    NotStretching { level: usize, witness: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fds(#[from] FdsError),
}

impl From<LinError> for AlgError {
    fn from(e: LinError) -> Self {
        match e {
            LinError::Shape(m) => AlgError::Shape(m),
            other => AlgError::Domain(other.to_string()),
        }
    }
}
