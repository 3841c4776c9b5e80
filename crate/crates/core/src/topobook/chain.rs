//! Integral chain complexes and their homology via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::TopoError;
use crate::exactlin::{snf, IntMatrix};

/// `C_n → … → C_1 → C_0` with `∂_k : C_k → C_{k−1}` stored as a
/// `dim C_{k−1} × dim C_k` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

/// On-disk form. `boundaries[k-1]` lists the rows of `∂_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexFile {
    pub top: usize,
    pub dims: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<i64>>>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, TopoError> {
        if dims.is_empty() {
            return Err(TopoError::InvalidComplex("a complex needs at least C_0".into()));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(TopoError::InvalidComplex(format!(
                "{} chain groups need {} boundary maps, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let k = i + 1;
            if d.shape() != (dims[k - 1], dims[k]) {
                return Err(TopoError::InvalidComplex(format!(
                    "boundary {k} has shape {:?}, expected {:?}",
                    d.shape(),
                    (dims[k - 1], dims[k])
                )));
            }
        }
        for k in 1..boundaries.len() {
            let dd = boundaries[k - 1].mul(&boundaries[k])?;
            if !dd.is_zero() {
                return Err(TopoError::InvalidComplex(format!("boundary {k} composed with boundary {} is nonzero", k + 1)));
            }
        }
        Ok(Self { dims, boundaries })
    }

    /// Cells in the given degrees with all boundaries zero.
    pub fn with_zero_boundaries(dims: Vec<usize>) -> Result<Self, TopoError> {
        let boundaries = (1..dims.len()).map(|k| IntMatrix::zeros(dims[k - 1], dims[k])).collect();
        Self::new(dims, boundaries)
    }

    pub fn from_file(f: &ChainComplexFile) -> Result<Self, TopoError> {
        if f.dims.len() != f.top + 1 {
            return Err(TopoError::Input(format!("top degree {} needs {} dims, got {}", f.top, f.top + 1, f.dims.len())));
        }
        let boundaries = f
            .boundaries
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                let (r, c) = (f.dims[i], f.dims.get(i + 1).copied().unwrap_or(0));
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(TopoError::InvalidComplex(format!("boundary {} is not a {r}×{c} matrix", i + 1)));
                }
                let flat: Vec<i64> = rows.iter().flatten().copied().collect();
                Ok(IntMatrix::from_flat(r, c, &flat)?)
            })
            .collect::<Result<Vec<_>, TopoError>>()?;
        Self::new(f.dims.clone(), boundaries)
    }

    pub fn from_json(s: &str) -> Result<Self, TopoError> {
        let f: ChainComplexFile = serde_json::from_str(s).map_err(|e| TopoError::Input(e.to_string()))?;
        Self::from_file(&f)
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_k`, for `1 ≤ k ≤ top`.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

/// Homology of one degree: `ℤ^free_rank ⊕ ⨁ ℤ/dᵢ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeHomology {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for DegreeHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyProfile {
    degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn new(degrees: Vec<DegreeHomology>) -> Self {
        Self { degrees }
    }

    /// Free ranks only, no torsion.
    pub fn from_betti(betti: &[usize]) -> Self {
        Self { degrees: betti.iter().map(|&b| DegreeHomology { free_rank: b, torsion: Vec::new() }).collect() }
    }

    pub fn degrees(&self) -> &[DegreeHomology] {
        &self.degrees
    }

    /// `H_k`; zero above the top degree.
    pub fn degree(&self, k: usize) -> DegreeHomology {
        self.degrees.get(k).cloned().unwrap_or_default()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.free_rank).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(k, d)| if k % 2 == 0 { d.free_rank as i64 } else { -(d.free_rank as i64) })
            .sum()
    }

    /// `{"degrees":[{"degree":k,"free_rank":b,"torsion":[...]}, ...]}`.
    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let torsion: Vec<Value> =
                    d.torsion.iter().map(|t| t.to_u64().map_or_else(|| json!(t.to_string()), |v| json!(v))).collect();
                json!({"degree": k, "free_rank": d.free_rank, "torsion": torsion})
            })
            .collect();
        json!({ "degrees": degrees })
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().enumerate().map(|(k, d)| format!("H{k} = {d}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `H_k = ker ∂_k / im ∂_{k+1}` with free rank
/// `dim C_k − rank ∂_k − rank ∂_{k+1}` and torsion from the invariant
/// factors of `∂_{k+1}`.
pub fn chain_homology(c: &ChainComplex) -> HomologyProfile {
    let decompositions: Vec<_> = c.boundaries.iter().map(snf).collect();
    let rank = |k: usize| k.checked_sub(1).and_then(|i| decompositions.get(i)).map_or(0, |d| d.rank());
    let degrees = (0..=c.top())
        .map(|k| {
            let torsion = decompositions
                .get(k)
                .map(|d| d.invariant_factors().into_iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect())
                .unwrap_or_default();
            DegreeHomology { free_rank: c.dims[k] - rank(k) - rank(k + 1), torsion }
        })
        .collect();
    HomologyProfile { degrees }
}

/// `b₀ = b_n = 1`, every other group zero, no torsion.
pub fn is_homology_sphere(h: &HomologyProfile, n: usize) -> bool {
    let top = h.degrees.len().max(n + 1);
    (0..top).all(|k| {
        let d = h.degree(k);
        let expected = usize::from(k == 0 || k == n);
        let expected = if n == 0 && k == 0 { 2 } else { expected };
        d.torsion.is_empty() && d.free_rank == expected
    })
}
