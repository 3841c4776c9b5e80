//! Exact Tits reflection representations of triangle groups.
//!
//! Labels `(p, q, r)` mean `m(s₁,s₂) = p`, `m(s₁,s₃) = q`, `m(s₂,s₃) = r`.
//! The bilinear form is `B(αᵢ,αⱼ) = −2cos(π/m_ij)`, `B(αᵢ,αᵢ) = 2`, and
//! `σᵢ(v) = v − B(v,αᵢ)αᵢ`. Matrices act on column vectors in the basis of
//! simple roots; the representation is faithful, so matrix equality decides
//! the word problem.

use std::sync::Arc;

use num_integer::Integer;

use super::engine::{EngineKind, GroupEngine};
use super::word::{Alphabet, Letter, Word};
use super::GroupError;
use crate::exactlin::{real_cyclotomic_ring, ring_mat_mul, RealCyclotomicRing, RingElement, RingMatrix};

#[derive(Clone, Debug)]
pub struct TitsEngine {
    kind: EngineKind,
    labels: (usize, usize, usize),
    alphabet: Alphabet,
    ring: Arc<RealCyclotomicRing>,
    reflections: [RingMatrix; 3],
    /// Matrix per letter code.
    letters: Vec<RingMatrix>,
}

/// Ring order for the form entries: the lcm of the labels that are not 2
/// or 3 (whose cosines are the integers 0 and 1), or 2 when there is none.
fn ring_order(labels: [usize; 3]) -> usize {
    labels.iter().filter(|&&m| m > 3).fold(1usize, |acc, &m| acc.lcm(&m)).max(2)
}

fn build_reflections(
    p: usize,
    q: usize,
    r: usize,
) -> Result<(Arc<RealCyclotomicRing>, [RingMatrix; 3]), GroupError> {
    if p < 2 || q < 2 || r < 2 {
        return Err(GroupError::Domain(format!("triangle labels must be at least 2, got ({p},{q},{r})")));
    }
    let ring = Arc::new(real_cyclotomic_ring(ring_order([p, q, r]))?);
    let m = [[1, p, q], [p, 1, r], [q, r, 1]];
    let mut form: Vec<Vec<RingElement>> = vec![Vec::with_capacity(3); 3];
    for i in 0..3 {
        for j in 0..3 {
            let b = if i == j {
                ring.from_int(2)
            } else {
                ring.neg(&ring.two_cos_pi_over(m[i][j])?)
            };
            form[i].push(b);
        }
    }
    let make = |i: usize| -> Result<RingMatrix, GroupError> {
        // Column j is σᵢ(αⱼ) = αⱼ − B(αⱼ, αᵢ) αᵢ.
        let mut entries = Vec::with_capacity(9);
        for row in 0..3 {
            for col in 0..3 {
                let id = if row == col { ring.one() } else { ring.zero() };
                let e = if row == i { ring.sub(&id, &form[col][i])? } else { id };
                entries.push(e);
            }
        }
        Ok(RingMatrix::from_entries(&ring, 3, &entries)?)
    };
    let reflections = [make(0)?, make(1)?, make(2)?];
    Ok((ring, reflections))
}

impl TitsEngine {
    pub fn labels(&self) -> (usize, usize, usize) {
        self.labels
    }

    pub fn ring(&self) -> &Arc<RealCyclotomicRing> {
        &self.ring
    }

    /// The simple reflections `s₁, s₂, s₃`.
    pub fn reflections(&self) -> &[RingMatrix; 3] {
        &self.reflections
    }

    pub fn mul(&self, a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix, GroupError> {
        Ok(ring_mat_mul(a, b)?)
    }

    pub fn power(&self, a: &RingMatrix, k: usize) -> Result<RingMatrix, GroupError> {
        let mut acc = RingMatrix::identity(&self.ring, 3);
        for _ in 0..k {
            acc = ring_mat_mul(&acc, a)?;
        }
        Ok(acc)
    }
}

/// Coxeter group with reflection generators `a = s₁`, `b = s₂`, `c = s₃`.
pub fn coxeter_triangle_engine(p: usize, q: usize, r: usize) -> Result<TitsEngine, GroupError> {
    let (ring, reflections) = build_reflections(p, q, r)?;
    // Each reflection is its own inverse.
    let letters = reflections.iter().flat_map(|s| [s.clone(), s.clone()]).collect();
    Ok(TitsEngine {
        kind: EngineKind::CoxeterTits,
        labels: (p, q, r),
        alphabet: Alphabet::first(3)?,
        ring,
        reflections,
        letters,
    })
}

/// Rotation subgroup with generators `x = s₁s₂` (order p) and `y = s₂s₃`
/// (order r); `xy = s₁s₃` has order q.
pub fn von_dyck_engine(p: usize, q: usize, r: usize) -> Result<TitsEngine, GroupError> {
    let (ring, reflections) = build_reflections(p, q, r)?;
    let [s1, s2, s3] = &reflections;
    let x = ring_mat_mul(s1, s2)?;
    let y = ring_mat_mul(s2, s3)?;
    let letters = vec![x.clone(), x.inverse()?, y.clone(), y.inverse()?];
    Ok(TitsEngine {
        kind: EngineKind::VonDyck,
        labels: (p, q, r),
        alphabet: Alphabet::new(['x', 'y'])?,
        ring,
        reflections,
        letters,
    })
}

impl GroupEngine for TitsEngine {
    type Elem = RingMatrix;

    fn kind(&self) -> EngineKind {
        self.kind
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> RingMatrix {
        RingMatrix::identity(&self.ring, 3)
    }

    fn letter(&self, l: Letter) -> Result<RingMatrix, GroupError> {
        self.letters
            .get(l.0 as usize)
            .cloned()
            .ok_or_else(|| GroupError::Input(format!("letter code {} outside the alphabet", l.0)))
    }

    fn compose(&self, a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix, GroupError> {
        Ok(ring_mat_mul(a, b)?)
    }

    fn invert(&self, a: &RingMatrix) -> Result<RingMatrix, GroupError> {
        Ok(a.inverse()?)
    }

    fn key(&self, a: &RingMatrix) -> String {
        a.key()
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn default_generating_set(&self) -> Vec<Word> {
        match self.kind {
            EngineKind::VonDyck => self.alphabet.letters().into_iter().map(|l| vec![l]).collect(),
            _ => (0..3).map(|g| vec![Letter::generator(g)]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflections_are_involutions_with_coxeter_orders() {
        for (p, q, r) in [(2, 3, 7), (2, 3, 5), (2, 4, 5), (3, 3, 3), (2, 3, 3)] {
            let e = coxeter_triangle_engine(p, q, r).unwrap();
            let [s1, s2, s3] = e.reflections().clone();
            for s in [&s1, &s2, &s3] {
                assert!(e.mul(s, s).unwrap().is_identity());
            }
            for (a, b, m) in [(&s1, &s2, p), (&s1, &s3, q), (&s2, &s3, r)] {
                let ab = e.mul(a, b).unwrap();
                assert!(e.power(&ab, m).unwrap().is_identity(), "({p},{q},{r}) order {m}");
                for k in 1..m {
                    assert!(!e.power(&ab, k).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn commuting_reflections() {
        let e = coxeter_triangle_engine(2, 3, 7).unwrap();
        // m(s₁,s₂) = 2, so s₁s₂s₁ = s₂.
        assert_eq!(e.normalize_str("aba").unwrap(), e.normalize_str("b").unwrap());
        assert_ne!(e.normalize_str("aca").unwrap(), e.normalize_str("c").unwrap());
        assert!(e.normalize_str("aa").unwrap().is_identity());
        assert!(e.normalize_str("").unwrap().is_identity());
    }

    #[test]
    fn von_dyck_generator_orders() {
        let e = von_dyck_engine(2, 3, 7).unwrap();
        let x = e.normalize_str("x").unwrap();
        let y = e.normalize_str("y").unwrap();
        assert!(e.power(&x, 2).unwrap().is_identity());
        assert!(e.power(&y, 7).unwrap().is_identity());
        let xy = e.mul(&x, &y).unwrap();
        assert!(e.power(&xy, 3).unwrap().is_identity());
        assert!(e.normalize_str("xX").unwrap().is_identity());
    }

    #[test]
    fn small_labels_rejected() {
        assert!(matches!(coxeter_triangle_engine(1, 3, 7), Err(GroupError::Domain(_))));
        assert!(matches!(von_dyck_engine(2, 0, 7), Err(GroupError::Domain(_))));
    }

    #[test]
    fn ring_choice() {
        assert_eq!(ring_order([2, 3, 7]), 7);
        assert_eq!(ring_order([2, 3, 3]), 2);
        assert_eq!(ring_order([2, 4, 5]), 20);
    }
}
