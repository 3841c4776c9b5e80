//! Solved word problems and ball growth for finitely presented groups.
//!
//! Two kinds of engines are provided: Knuth–Bendix rewriting systems for
//! arbitrary presentations, and exact Tits reflection representations for
//! Coxeter triangle groups and their rotation (von Dyck) subgroups.

mod abelian;
mod ball;
mod engine;
mod normal_forms;
mod presentation;
mod rewriting;
mod tits;
mod word;

pub use abelian::{abelianize, kervaire_check, AbelianInvariants, H2Status, KervaireReport};
pub use ball::{ball_sizes, enumerate_ball, BallEnumeration, BallTable, DEFAULT_MEMORY_CAP};
pub use engine::{EngineKind, GroupEngine};
pub use normal_forms::{ball_sizes_from_normal_forms, normal_form_counts};
pub use presentation::{
    brieskorn_presentation, coxeter_presentation, free_presentation, von_dyck_presentation,
    FpGroupPresentation, PresentationFile,
};
pub use rewriting::{knuth_bendix, CompletionStats, KbCaps, RewritingEngine, RewritingSystem, StopReason};
pub use tits::{coxeter_triangle_engine, von_dyck_engine, TitsEngine};
pub use word::{free_reduce, invert_word, shortlex_cmp, Alphabet, Letter, Word};

use thiserror::Error;

use crate::exactlin::LinError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("input error: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Arithmetic(#[from] LinError),
}
