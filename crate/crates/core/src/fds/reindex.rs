use std::fmt;
use std::sync::Arc;

use super::{FdsError, FilteredSystem};
use crate::exactlin::F2Matrix;

/// `W_n = V_{σ(n)·n}` for an integer stretch `σ ≥ 1` with `n ↦ σ(n)·n`
/// nondecreasing. Dilation is the constant-stretch case.
#[derive(Clone)]
pub struct Reindexed<S> {
    inner: S,
    stretch: Arc<dyn Fn(usize) -> usize + Send + Sync>,
}

impl<S> fmt::Debug for Reindexed<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first: Vec<usize> = (0..6).map(|n| (self.stretch)(n)).collect();
        f.debug_struct("Reindexed").field("stretch", &first).finish_non_exhaustive()
    }
}

impl<S: FilteredSystem> Reindexed<S> {
    pub fn inner(&self) -> &S {
        &self.inner
    }

    pub fn stretch(&self, n: usize) -> Result<usize, FdsError> {
        let s = (self.stretch)(n);
        if s < 1 {
            return Err(FdsError::Domain(format!("stretch factor at level {n} is {s}, must be at least 1")));
        }
        Ok(s)
    }

    /// The level of the underlying system sampled at level `n`.
    pub fn source_level(&self, n: usize) -> Result<usize, FdsError> {
        self.stretch(n)?
            .checked_mul(n)
            .ok_or_else(|| FdsError::Domain(format!("level {n} overflows after stretching")))
    }
}

/// `V(η)_t = V_{ηt}`.
pub fn dilate<S: FilteredSystem>(fds: S, eta: usize) -> Result<Reindexed<S>, FdsError> {
    if eta < 1 {
        return Err(FdsError::Domain(format!("dilation factor must be at least 1, got {eta}")));
    }
    Ok(Reindexed { inner: fds, stretch: Arc::new(move |_| eta) })
}

/// `W_t = V_{σ(t)t}`. The stretch is validated lazily at each sampled level.
pub fn reparametrize<S: FilteredSystem>(
    fds: S,
    sigma: impl Fn(usize) -> usize + Send + Sync + 'static,
) -> Reindexed<S> {
    Reindexed { inner: fds, stretch: Arc::new(sigma) }
}

impl<S: FilteredSystem> FilteredSystem for Reindexed<S> {
    fn dim(&self, n: usize) -> Result<usize, FdsError> {
        self.inner.dim(self.source_level(n)?)
    }

    fn step(&self, n: usize) -> Result<F2Matrix, FdsError> {
        self.map_between(n, n + 1)
    }

    fn horizon(&self) -> Option<usize> {
        let h = self.inner.horizon()?;
        let mut n = 0;
        while self.source_level(n + 1).is_ok_and(|l| l <= h) {
            n += 1;
        }
        Some(n)
    }

    fn is_monotone(&self) -> bool {
        self.inner.is_monotone()
    }

    fn map_between(&self, s: usize, t: usize) -> Result<F2Matrix, FdsError> {
        if s > t {
            return Err(FdsError::Order(format!("level {s} is above level {t}")));
        }
        let (a, b) = (self.source_level(s)?, self.source_level(t)?);
        if a > b {
            return Err(FdsError::Domain(format!(
                "stretched levels must be nondecreasing: level {s} maps to {a}, level {t} to {b}"
            )));
        }
        self.inner.map_between(a, b)
    }
}
