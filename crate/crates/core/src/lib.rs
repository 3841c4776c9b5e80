//! Growth calculus for filtered directed systems, filtered 𝔽₂-algebras and
//! finitely presented groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`]: 𝔽₂ matrices, integer Smith normal form and exact
//!   arithmetic over ℤ[2cos(π/N)].
//! * [`fds`]: filtered directed systems sampled at integer levels, spectral
//!   numbers, growth estimates, dilation and interleaving checks.
//! * [`groups`]: presentations, Knuth–Bendix completion, exact Tits
//!   representations of triangle groups, ball growth and abelianization.
//! * [`growthalg`]: group algebras over 𝔽₂ with word-length filtrations,
//!   algebraic growth, stretched modules and growth comparisons.
//! * [`topobook`]: integral chain-complex homology, plumbing-tree homology
//!   tables and the entropy bound arithmetic.

pub mod exactlin;
pub mod fds;
pub mod groups;
pub mod growthalg;
pub mod topobook;

pub use exactlin::{F2Matrix, F2Vector, IntMatrix, LinError, RingMatrix};
pub use fds::{FdsError, FilteredSystem, GrowthEstimate, GrowthMethod, StreamedFds, TabulatedFds};
pub use groups::{
    BallTable, FpGroupPresentation, GroupEngine, GroupError, RewritingEngine, TitsEngine, Word,
};
pub use growthalg::{AlgError, FilteredAlgebra, FilteredModule, GroupAlgebraElement};
pub use topobook::{ChainComplex, HomologyProfile, PlumbingTree, TopoError};
