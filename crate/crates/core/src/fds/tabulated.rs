use serde::{Deserialize, Serialize};

use super::{FdsError, FilteredSystem};
use crate::exactlin::{f2_rank, f2_solve, F2Matrix, F2Vector};

/// On-disk form: `{"levels":[...], "dims":[...], "maps":[[0,1,...], ...]}`
/// with each map flattened row-major, shape `dims[i+1] × dims[i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TabulatedFile {
    pub levels: Vec<f64>,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: Vec<Vec<u8>>,
}

/// A system given by finitely many breakpoints `t₀ < … < t_m`. It is zero
/// below `t₀`, jumps at each breakpoint, and is constant after `t_m`, so
/// the direct limit is `V_{t_m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedFds {
    levels: Vec<f64>,
    dims: Vec<usize>,
    maps: Vec<F2Matrix>,
}

/// A vector in the space at breakpoint index `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdsElement {
    pub level: usize,
    pub vector: F2Vector,
}

impl FdsElement {
    pub fn new(level: usize, vector: F2Vector) -> Self {
        Self { level, vector }
    }

    pub fn add(&self, other: &FdsElement) -> Result<FdsElement, FdsError> {
        if self.level != other.level || self.vector.len() != other.vector.len() {
            return Err(FdsError::Shape("elements live in different spaces".into()));
        }
        let mut vector = self.vector.clone();
        vector.add_assign(&other.vector);
        Ok(FdsElement { level: self.level, vector })
    }
}

impl TabulatedFds {
    pub fn new(levels: Vec<f64>, dims: Vec<usize>, maps: Vec<F2Matrix>) -> Result<Self, FdsError> {
        if levels.is_empty() {
            return Err(FdsError::Domain("at least one breakpoint is required".into()));
        }
        if levels.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(FdsError::Domain("breakpoints must be finite and non-negative".into()));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FdsError::Domain("breakpoints must be strictly increasing".into()));
        }
        if dims.len() != levels.len() {
            return Err(FdsError::Shape(format!("{} breakpoints but {} dimensions", levels.len(), dims.len())));
        }
        if maps.len() + 1 != levels.len() {
            return Err(FdsError::Shape(format!("{} breakpoints need {} maps, got {}", levels.len(), levels.len() - 1, maps.len())));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.shape() != (dims[i + 1], dims[i]) {
                return Err(FdsError::Shape(format!(
                    "map {i} has shape {:?}, expected {:?}",
                    m.shape(),
                    (dims[i + 1], dims[i])
                )));
            }
        }
        Ok(Self { levels, dims, maps })
    }

    /// A system with one space of dimension `dim` from level 0 on.
    pub fn constant(dim: usize) -> Self {
        Self { levels: vec![0.0], dims: vec![dim], maps: Vec::new() }
    }

    pub fn from_file(f: TabulatedFile) -> Result<Self, FdsError> {
        if f.dims.len() != f.levels.len() {
            return Err(FdsError::Shape(format!("{} breakpoints but {} dimensions", f.levels.len(), f.dims.len())));
        }
        if f.maps.len() + 1 != f.levels.len() {
            return Err(FdsError::Shape(format!(
                "{} breakpoints need {} maps, got {}",
                f.levels.len(),
                f.levels.len().saturating_sub(1),
                f.maps.len()
            )));
        }
        let maps = f
            .maps
            .iter()
            .enumerate()
            .map(|(i, flat)| F2Matrix::from_flat(f.dims[i + 1], f.dims[i], flat))
            .collect::<Result<_, _>>()?;
        Self::new(f.levels, f.dims, maps)
    }

    pub fn to_file(&self) -> TabulatedFile {
        TabulatedFile {
            levels: self.levels.clone(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(F2Matrix::to_flat).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, FdsError> {
        let f: TabulatedFile = serde_json::from_str(text).map_err(|e| FdsError::Input(e.to_string()))?;
        Self::from_file(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain data serializes")
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn breakpoint_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[F2Matrix] {
        &self.maps
    }

    pub fn last_index(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn limit_dim(&self) -> usize {
        self.dims[self.last_index()]
    }

    /// Index of the last breakpoint `≤ t`.
    pub fn index_at(&self, t: f64) -> Option<usize> {
        self.levels.partition_point(|&l| l <= t).checked_sub(1)
    }

    fn check_level(t: f64) -> Result<(), FdsError> {
        if t.is_nan() || t < 0.0 {
            return Err(FdsError::Domain(format!("level must be non-negative, got {t}")));
        }
        Ok(())
    }

    pub fn dim_at(&self, t: f64) -> Result<usize, FdsError> {
        Self::check_level(t)?;
        Ok(self.index_at(t).map_or(0, |i| self.dims[i]))
    }

    /// Composite of the breakpoint maps from index `i` to index `j`.
    pub fn map_between_indices(&self, i: usize, j: usize) -> Result<F2Matrix, FdsError> {
        if i > j {
            return Err(FdsError::Order(format!("breakpoint index {i} is above {j}")));
        }
        if j > self.last_index() {
            return Err(FdsError::Range { level: j, horizon: self.last_index() });
        }
        let mut acc = F2Matrix::identity(self.dims[i]);
        for k in i..j {
            acc = self.maps[k].mul(&acc)?;
        }
        Ok(acc)
    }

    /// `π_{s→t}` at real levels; the zero map out of `V_s = 0` below `t₀`.
    pub fn map_between_at(&self, s: f64, t: f64) -> Result<F2Matrix, FdsError> {
        Self::check_level(s)?;
        Self::check_level(t)?;
        if s > t {
            return Err(FdsError::Order(format!("level {s} is above level {t}")));
        }
        match (self.index_at(s), self.index_at(t)) {
            (Some(i), Some(j)) => self.map_between_indices(i, j),
            (None, j) => Ok(F2Matrix::zeros(j.map_or(0, |j| self.dims[j]), 0)),
            (Some(_), None) => unreachable!("s ≤ t"),
        }
    }

    /// Image of an element in the direct limit `V_{t_m}`.
    pub fn to_limit(&self, x: &FdsElement) -> Result<F2Vector, FdsError> {
        if x.level > self.last_index() {
            return Err(FdsError::Shape(format!("element level {} has no breakpoint", x.level)));
        }
        if x.vector.len() != self.dims[x.level] {
            return Err(FdsError::Shape(format!(
                "element has {} coordinates but the space at breakpoint {} has dimension {}",
                x.vector.len(),
                x.level,
                self.dims[x.level]
            )));
        }
        Ok(self.map_between_indices(x.level, self.last_index())?.mul_vec(&x.vector)?)
    }

    /// Least breakpoint whose image in the direct limit contains the class
    /// of `x`. The zero class is hit everywhere, so it gets `t₀`.
    pub fn spectral_number(&self, x: &FdsElement) -> Result<f64, FdsError> {
        let y = self.to_limit(x)?;
        if y.is_zero() {
            return Ok(self.levels[0]);
        }
        let m = self.last_index();
        for s in 0..m {
            if f2_solve(&self.map_between_indices(s, m)?, &y)?.is_some() {
                return Ok(self.levels[s]);
            }
        }
        Ok(self.levels[m])
    }
}

impl FilteredSystem for TabulatedFds {
    fn dim(&self, n: usize) -> Result<usize, FdsError> {
        self.dim_at(n as f64)
    }

    fn step(&self, n: usize) -> Result<F2Matrix, FdsError> {
        self.map_between_at(n as f64, (n + 1) as f64)
    }

    fn is_monotone(&self) -> bool {
        self.maps.iter().all(|m| f2_rank(m) == m.cols())
    }

    fn map_between(&self, s: usize, t: usize) -> Result<F2Matrix, FdsError> {
        if s > t {
            return Err(FdsError::Order(format!("level {s} is above level {t}")));
        }
        self.map_between_at(s as f64, t as f64)
    }

    /// Ranks of the maps into the direct limit.
    fn d_sequence(&self, n_max: usize) -> Result<Vec<u64>, FdsError> {
        let m = self.last_index();
        (0..=n_max)
            .map(|n| {
                Ok(match self.index_at(n as f64) {
                    None => 0,
                    Some(i) => f2_rank(&self.map_between_indices(i, m)?) as u64,
                })
            })
            .collect()
    }
}
