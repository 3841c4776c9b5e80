use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::cyclotomic::{RealCyclotomicRing, RingElement};
use super::LinError;

/// Square matrix over ℤ[2cos(π/N)] with entries stored as flat reduced
/// coefficient blocks.
///
/// Equality, ordering and hashing only look at the ring order and the
/// coefficients, so two matrices built independently over the same ring
/// compare equal when their entries agree.
#[derive(Clone)]
pub struct RingMatrix {
    ring: Arc<RealCyclotomicRing>,
    dim: usize,
    coeffs: Box<[i64]>,
}

impl RingMatrix {
    pub fn identity(ring: &Arc<RealCyclotomicRing>, dim: usize) -> Self {
        let entries: Vec<RingElement> = (0..dim * dim)
            .map(|k| if k / dim == k % dim { ring.one() } else { ring.zero() })
            .collect();
        Self::from_entries(ring, dim, &entries).expect("identity shape")
    }

    /// Row-major entries.
    pub fn from_entries(
        ring: &Arc<RealCyclotomicRing>,
        dim: usize,
        entries: &[RingElement],
    ) -> Result<Self, LinError> {
        if entries.len() != dim * dim {
            return Err(LinError::Shape(format!(
                "{} entries for a {dim}x{dim} ring matrix",
                entries.len()
            )));
        }
        let d = ring.degree();
        let mut coeffs = Vec::with_capacity(dim * dim * d);
        for e in entries {
            if e.coefficients().len() != d {
                return Err(LinError::Domain("entry from a different ring".into()));
            }
            coeffs.extend_from_slice(e.coefficients());
        }
        Ok(Self { ring: Arc::clone(ring), dim, coeffs: coeffs.into_boxed_slice() })
    }

    pub fn ring(&self) -> &Arc<RealCyclotomicRing> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, c: usize) -> RingElement {
        let d = self.ring.degree();
        let start = (r * self.dim + c) * d;
        RingElement(self.coeffs[start..start + d].to_vec())
    }

    pub fn is_identity(&self) -> bool {
        *self == RingMatrix::identity(&self.ring, self.dim)
    }

    /// Canonical serialization: ring order, then coefficients row-major.
    pub fn key(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        format!("Z[2cos(pi/{})]:{}:{}", self.ring.order(), self.dim, body.join(","))
    }

    pub fn approx(&self) -> Vec<f64> {
        (0..self.dim * self.dim)
            .map(|k| self.ring.approx(&self.entry(k / self.dim, k % self.dim)))
            .collect()
    }

    /// Determinant by cofactor expansion (dimensions here are tiny).
    pub fn determinant(&self) -> Result<RingElement, LinError> {
        let idx: Vec<usize> = (0..self.dim).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Result<RingElement, LinError> {
        let ring = &self.ring;
        match rows.len() {
            0 => Ok(ring.one()),
            1 => Ok(self.entry(rows[0], cols[0])),
            _ => {
                let mut acc = ring.zero();
                for (j, &c) in cols.iter().enumerate() {
                    let e = self.entry(rows[0], c);
                    if e.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = ring.mul(&e, &self.minor_det(&rows[1..], &rest)?)?;
                    acc = if j % 2 == 0 { ring.add(&acc, &term)? } else { ring.sub(&acc, &term)? };
                }
                Ok(acc)
            }
        }
    }

    /// Inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse(&self) -> Result<RingMatrix, LinError> {
        let ring = &self.ring;
        let det = self.determinant()?;
        let sign = match det.as_integer() {
            Some(1) => 1,
            Some(-1) => -1,
            _ => return Err(LinError::Domain("matrix is not unimodular over the ring".into())),
        };
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                // adj[r][c] = (−1)^{r+c} · minor(c, r)
                let rows: Vec<usize> = (0..n).filter(|&x| x != c).collect();
                let cols: Vec<usize> = (0..n).filter(|&x| x != r).collect();
                let mut m = self.minor_det(&rows, &cols)?;
                if (r + c + (sign == -1) as usize) % 2 == 1 {
                    m = ring.neg(&m);
                }
                entries.push(m);
            }
        }
        RingMatrix::from_entries(ring, n, &entries)
    }
}

/// Exact product `a · b`, with entries reduced modulo the minimal polynomial.
pub fn ring_mat_mul(a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix, LinError> {
    if a.ring.order() != b.ring.order() {
        return Err(LinError::Domain(format!(
            "ring mismatch: Z[2cos(pi/{})] vs Z[2cos(pi/{})]",
            a.ring.order(),
            b.ring.order()
        )));
    }
    if a.dim != b.dim {
        return Err(LinError::Shape(format!("{}x{} vs {}x{}", a.dim, a.dim, b.dim, b.dim)));
    }
    let n = a.dim;
    let d = a.ring.degree();
    let minpoly = a.ring.minpoly();
    let mut out = vec![0i64; n * n * d];
    let mut wide = vec![0i128; 2 * d - 1];
    for r in 0..n {
        for c in 0..n {
            wide.iter_mut().for_each(|w| *w = 0);
            for k in 0..n {
                let x = &a.coeffs[(r * n + k) * d..(r * n + k + 1) * d];
                let y = &b.coeffs[(k * n + c) * d..(k * n + c + 1) * d];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        wide[i + j] += xi as i128 * yj as i128;
                    }
                }
            }
            for k in (d..2 * d - 1).rev() {
                let top = wide[k];
                if top == 0 {
                    continue;
                }
                for i in 0..d {
                    wide[k - d + i] -= top * minpoly[i] as i128;
                }
                wide[k] = 0;
            }
            let dst = &mut out[(r * n + c) * d..(r * n + c + 1) * d];
            for (slot, &w) in dst.iter_mut().zip(&wide[..d]) {
                *slot = i64::try_from(w).map_err(|_| LinError::Overflow)?;
            }
        }
    }
    Ok(RingMatrix { ring: Arc::clone(&a.ring), dim: n, coeffs: out.into_boxed_slice() })
}

impl PartialEq for RingMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring.order() == other.ring.order() && self.dim == other.dim && self.coeffs == other.coeffs
    }
}

impl Eq for RingMatrix {}

impl Hash for RingMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for RingMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ring.order(), self.dim, &self.coeffs).cmp(&(other.ring.order(), other.dim, &other.coeffs))
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMatrix({})", self.key())
    }
}
