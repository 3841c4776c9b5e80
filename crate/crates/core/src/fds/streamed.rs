use std::fmt;
use std::sync::Arc;

use super::{FdsError, FilteredSystem};
use crate::exactlin::{f2_rank, F2Matrix};

/// The per-level data of a streamed system. Implementations must be pure
/// functions of the level.
pub trait LevelRule: Send + Sync {
    fn dim(&self, n: usize) -> Result<usize, FdsError>;

    /// `π_{n→n+1}`.
    fn step(&self, n: usize) -> Result<F2Matrix, FdsError>;

    /// Basis labels of `V_n`.
    fn labels(&self, n: usize) -> Result<Vec<String>, FdsError> {
        Ok((0..self.dim(n)?).map(|i| format!("e{i}")).collect())
    }

    fn horizon(&self) -> Option<usize> {
        None
    }

    /// A direct formula for `π_{s→t}` when one is cheaper than composing.
    fn between(&self, _s: usize, _t: usize) -> Option<Result<F2Matrix, FdsError>> {
        None
    }
}

struct FnRule<D, S> {
    dim: D,
    step: S,
    horizon: Option<usize>,
}

impl<D, S> LevelRule for FnRule<D, S>
where
    D: Fn(usize) -> usize + Send + Sync,
    S: Fn(usize) -> F2Matrix + Send + Sync,
{
    fn dim(&self, n: usize) -> Result<usize, FdsError> {
        Ok((self.dim)(n))
    }
    fn step(&self, n: usize) -> Result<F2Matrix, FdsError> {
        Ok((self.step)(n))
    }
    fn horizon(&self) -> Option<usize> {
        self.horizon
    }
}

/// Nested spaces `V_0 ⊆ V_1 ⊆ …` whose bases extend one another, so every
/// persistence map is a coordinate inclusion.
struct InclusionRule<D> {
    dim: D,
    horizon: Option<usize>,
    labels: Option<Arc<dyn Fn(usize) -> Vec<String> + Send + Sync>>,
}

impl<D: Fn(usize) -> usize + Send + Sync> InclusionRule<D> {
    fn inclusion(&self, s: usize, t: usize) -> Result<F2Matrix, FdsError> {
        let (ds, dt) = ((self.dim)(s), (self.dim)(t));
        if dt < ds {
            return Err(FdsError::Domain(format!("inclusion from dimension {ds} into {dt}")));
        }
        Ok(F2Matrix::inclusion(dt, ds))
    }
}

impl<D: Fn(usize) -> usize + Send + Sync> LevelRule for InclusionRule<D> {
    fn dim(&self, n: usize) -> Result<usize, FdsError> {
        Ok((self.dim)(n))
    }
    fn step(&self, n: usize) -> Result<F2Matrix, FdsError> {
        self.inclusion(n, n + 1)
    }
    fn labels(&self, n: usize) -> Result<Vec<String>, FdsError> {
        match &self.labels {
            Some(f) => Ok(f(n)),
            None => Ok((0..(self.dim)(n)).map(|i| format!("e{i}")).collect()),
        }
    }
    fn horizon(&self) -> Option<usize> {
        self.horizon
    }
    fn between(&self, s: usize, t: usize) -> Option<Result<F2Matrix, FdsError>> {
        Some(self.inclusion(s, t))
    }
}

/// A system produced level by level from a rule, possibly unbounded.
#[derive(Clone)]
pub struct StreamedFds {
    rule: Arc<dyn LevelRule>,
    monotone: bool,
}

impl fmt::Debug for StreamedFds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StreamedFds")
            .field("monotone", &self.monotone)
            .field("horizon", &self.rule.horizon())
            .finish()
    }
}

impl StreamedFds {
    /// `monotone` declares every map injective; it is checked lazily by
    /// [`StreamedFds::verify_monotone`].
    pub fn new(rule: impl LevelRule + 'static, monotone: bool) -> Self {
        Self { rule: Arc::new(rule), monotone }
    }

    pub fn from_fns(
        dim: impl Fn(usize) -> usize + Send + Sync + 'static,
        step: impl Fn(usize) -> F2Matrix + Send + Sync + 'static,
        monotone: bool,
    ) -> Self {
        Self::new(FnRule { dim, step, horizon: None }, monotone)
    }

    /// Nested spaces of the given dimensions with coordinate inclusions.
    pub fn inclusions(dim: impl Fn(usize) -> usize + Send + Sync + 'static, horizon: Option<usize>) -> Self {
        Self::new(InclusionRule { dim, horizon, labels: None }, true)
    }

    /// Nested spaces with labeled bases; `labels(n)` must extend `labels(n-1)`.
    pub fn labeled_inclusions(
        dims: Vec<usize>,
        labels: impl Fn(usize) -> Vec<String> + Send + Sync + 'static,
    ) -> Self {
        let horizon = dims.len().checked_sub(1);
        let dims = Arc::new(dims);
        let dim = move |n: usize| dims[n.min(dims.len() - 1)];
        Self::new(InclusionRule { dim, horizon, labels: Some(Arc::new(labels)) }, true)
    }

    pub fn labels(&self, n: usize) -> Result<Vec<String>, FdsError> {
        self.check_range(n)?;
        self.rule.labels(n)
    }

    /// First level `n ≤ n_max` whose map `π_{n→n+1}` is not injective.
    pub fn verify_monotone(&self, n_max: usize) -> Result<Option<usize>, FdsError> {
        for n in 0..n_max {
            let m = self.step(n)?;
            if f2_rank(&m) != m.cols() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    fn check_range(&self, n: usize) -> Result<(), FdsError> {
        match self.rule.horizon() {
            Some(h) if n > h => Err(FdsError::Range { level: n, horizon: h }),
            _ => Ok(()),
        }
    }
}

impl FilteredSystem for StreamedFds {
    fn dim(&self, n: usize) -> Result<usize, FdsError> {
        self.check_range(n)?;
        self.rule.dim(n)
    }

    fn step(&self, n: usize) -> Result<F2Matrix, FdsError> {
        self.check_range(n + 1)?;
        let m = self.rule.step(n)?;
        let expected = (self.rule.dim(n + 1)?, self.rule.dim(n)?);
        if m.shape() != expected {
            return Err(FdsError::Shape(format!("step {n} has shape {:?}, expected {:?}", m.shape(), expected)));
        }
        Ok(m)
    }

    fn horizon(&self) -> Option<usize> {
        self.rule.horizon()
    }

    fn is_monotone(&self) -> bool {
        self.monotone
    }

    fn map_between(&self, s: usize, t: usize) -> Result<F2Matrix, FdsError> {
        if s > t {
            return Err(FdsError::Order(format!("level {s} is above level {t}")));
        }
        self.check_range(t)?;
        if let Some(m) = self.rule.between(s, t) {
            return m;
        }
        let mut acc = F2Matrix::identity(self.dim(s)?);
        for n in s..t {
            acc = self.step(n)?.mul(&acc)?;
        }
        Ok(acc)
    }
}
