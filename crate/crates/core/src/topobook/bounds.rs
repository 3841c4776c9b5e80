//! Lower bounds for symplectic growth and Reeb-flow entropy from algebraic
//! growth.

use serde::{Deserialize, Serialize};

use super::TopoError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyBoundInput {
    pub gamma_alg: f64,
    pub rho: f64,
    pub max_f: f64,
}

fn finite(name: &str, x: f64) -> Result<f64, TopoError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(TopoError::Domain(format!("{name} must be finite, got {x}")))
    }
}

/// `Γ^alg_S / ρ(S)`.
pub fn symplectic_growth_lower_bound(gamma_alg: f64, rho: f64) -> Result<f64, TopoError> {
    let (g, r) = (finite("gamma_alg", gamma_alg)?, finite("rho", rho)?);
    if g < 0.0 {
        return Err(TopoError::Domain(format!("gamma_alg must be non-negative, got {g}")));
    }
    if r <= 0.0 {
        return Err(TopoError::Domain(format!("rho must be positive, got {r}")));
    }
    Ok(g / r)
}

/// `Γ^alg_S / (ρ(S) · max f)`.
pub fn entropy_lower_bound(inp: EntropyBoundInput) -> Result<f64, TopoError> {
    let f = finite("max_f", inp.max_f)?;
    if f <= 0.0 {
        return Err(TopoError::Domain(format!("max_f must be positive, got {f}")));
    }
    Ok(symplectic_growth_lower_bound(inp.gamma_alg, inp.rho)? / f)
}
