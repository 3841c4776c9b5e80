//! Filtered directed systems of 𝔽₂ vector spaces.
//!
//! Systems are sampled at integer levels `n ≥ 0`. A system supplies the
//! dimension of `V_n` and the persistence matrix `π_{n→n+1}`; everything
//! else (composed maps, spectral filtrations, growth estimates and the
//! interleaving checks) is derived from those two.

mod growth;
mod interleave;
mod reindex;
mod streamed;
mod tabulated;

pub use growth::{growth_rate, ln_or_zero, GrowthEstimate, GrowthMethod};
pub use interleave::{
    canonical_family, check_interleaving, check_morphism, check_weak_interleaving, CandidateFile,
    CheckReport, InterleavingCandidate, LevelFamily, Violation, ViolationKind,
};
pub use reindex::{dilate, reparametrize, Reindexed};
pub use streamed::{LevelRule, StreamedFds};
pub use tabulated::{FdsElement, TabulatedFds, TabulatedFile};

use thiserror::Error;

use crate::exactlin::{f2_rank, F2Matrix, LinError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FdsError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("order error: {0}")]
    Order(String),
    #[error("level {level} is beyond the available data (horizon {horizon})")]
    Range { level: usize, horizon: usize },
    #[error("input error: {0}")]
    Input(String),
}

impl From<LinError> for FdsError {
    fn from(e: LinError) -> Self {
        match e {
            LinError::Shape(m) => FdsError::Shape(m),
            other => FdsError::Domain(other.to_string()),
        }
    }
}

/// A filtered directed system sampled at the integer levels.
pub trait FilteredSystem: Send + Sync {
    /// `dim V_n`.
    fn dim(&self, n: usize) -> Result<usize, FdsError>;

    /// The persistence matrix `π_{n→n+1}`, of shape `dim(n+1) × dim(n)`.
    fn step(&self, n: usize) -> Result<F2Matrix, FdsError>;

    /// Largest level with data, or `None` when every level is available.
    fn horizon(&self) -> Option<usize> {
        None
    }

    /// All persistence maps are injective.
    fn is_monotone(&self) -> bool {
        false
    }

    /// `π_{s→t}`; the identity when `s = t`.
    fn map_between(&self, s: usize, t: usize) -> Result<F2Matrix, FdsError> {
        if s > t {
            return Err(FdsError::Order(format!("level {s} is above level {t}")));
        }
        let mut acc = F2Matrix::identity(self.dim(s)?);
        for n in s..t {
            acc = self.step(n)?.mul(&acc)?;
        }
        Ok(acc)
    }

    fn dims(&self, n_max: usize) -> Result<Vec<usize>, FdsError> {
        (0..=n_max).map(|n| self.dim(n)).collect()
    }

    /// `d_n = dim{x : c(x) ≤ n}` for `n ≤ n_max`. For monotone systems this
    /// is `dim V_n`; otherwise the rank of `π_{n→n_max}`, the image in the
    /// last sampled space standing in for the direct limit.
    fn d_sequence(&self, n_max: usize) -> Result<Vec<u64>, FdsError> {
        if self.is_monotone() {
            return Ok(self.dims(n_max)?.into_iter().map(|d| d as u64).collect());
        }
        (0..=n_max).map(|n| Ok(f2_rank(&self.map_between(n, n_max)?) as u64)).collect()
    }
}

impl<T: FilteredSystem + ?Sized> FilteredSystem for &T {
    fn dim(&self, n: usize) -> Result<usize, FdsError> {
        (**self).dim(n)
    }
    fn step(&self, n: usize) -> Result<F2Matrix, FdsError> {
        (**self).step(n)
    }
    fn horizon(&self) -> Option<usize> {
        (**self).horizon()
    }
    fn is_monotone(&self) -> bool {
        (**self).is_monotone()
    }
    fn map_between(&self, s: usize, t: usize) -> Result<F2Matrix, FdsError> {
        (**self).map_between(s, t)
    }
    fn d_sequence(&self, n_max: usize) -> Result<Vec<u64>, FdsError> {
        (**self).d_sequence(n_max)
    }
}

impl<T: FilteredSystem + ?Sized> FilteredSystem for std::sync::Arc<T> {
    fn dim(&self, n: usize) -> Result<usize, FdsError> {
        (**self).dim(n)
    }
    fn step(&self, n: usize) -> Result<F2Matrix, FdsError> {
        (**self).step(n)
    }
    fn horizon(&self) -> Option<usize> {
        (**self).horizon()
    }
    fn is_monotone(&self) -> bool {
        (**self).is_monotone()
    }
    fn map_between(&self, s: usize, t: usize) -> Result<F2Matrix, FdsError> {
        (**self).map_between(s, t)
    }
    fn d_sequence(&self, n_max: usize) -> Result<Vec<u64>, FdsError> {
        (**self).d_sequence(n_max)
    }
}

/// `dim V_t` at a real level with the right-continuous step convention.
pub fn dim_at(fds: &TabulatedFds, t: f64) -> Result<usize, FdsError> {
    fds.dim_at(t)
}

/// Growth estimate of a system's spectral d-sequence over `window`.
pub fn fds_growth_rate<S: FilteredSystem + ?Sized>(
    fds: &S,
    window: (usize, usize),
    method: GrowthMethod,
) -> Result<GrowthEstimate, FdsError> {
    let d = fds.d_sequence(window.1)?;
    growth_rate(&d, window, method, false)
}

/// Freezes levels `0..=n_max` of a system into a tabulated one with
/// breakpoints at the integers, constant from `n_max` on.
pub fn tabulate<S: FilteredSystem + ?Sized>(fds: &S, n_max: usize) -> Result<TabulatedFds, FdsError> {
    let levels = (0..=n_max).map(|n| n as f64).collect();
    let dims = fds.dims(n_max)?;
    let maps = (0..n_max).map(|n| fds.step(n)).collect::<Result<_, _>>()?;
    TabulatedFds::new(levels, dims, maps)
}
