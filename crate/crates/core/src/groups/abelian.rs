use num_bigint::BigInt;
use num_traits::One;

use super::presentation::FpGroupPresentation;
use crate::exactlin::{snf, IntMatrix};

/// `H₁ = ℤ^free_rank ⊕ ⨁ ℤ/dᵢ`, listing only the factors `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the abelianization, `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Abelianization from the Smith form of the exponent-sum relation matrix.
pub fn abelianize(p: &FpGroupPresentation) -> AbelianInvariants {
    let n = p.generator_count();
    let rows = p.exponent_sums();
    let m = if rows.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows(&rows).expect("exponent sums are rectangular")
    };
    let decomposition = snf(&m);
    let factors = decomposition.invariant_factors();
    AbelianInvariants {
        free_rank: n - factors.len(),
        invariant_factors: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H2Status {
    /// Second homology is not computed; it is reported, never guessed.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KervaireReport {
    pub h1_trivial: bool,
    pub deficiency_ok: bool,
    pub h2_status: H2Status,
    pub abelianization: AbelianInvariants,
}

/// Checks the computable Kervaire conditions: trivial H₁ and no more
/// relators than generators.
pub fn kervaire_check(p: &FpGroupPresentation) -> KervaireReport {
    let abelianization = abelianize(p);
    KervaireReport {
        h1_trivial: abelianization.is_trivial(),
        deficiency_ok: p.relators().len() <= p.generator_count(),
        h2_status: H2Status::Unknown,
        abelianization,
    }
}
