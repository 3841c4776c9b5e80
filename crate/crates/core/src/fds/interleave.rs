//! Morphisms and (weak) interleavings between sampled systems.
//!
//! A family `f_n : V_n → W_{τ(n)}` is checked on adjacent squares
//! `f_{n+1}·π^V_{n→n+1} = π^W_{τ(n)→τ(n+1)}·f_n`; by functoriality this
//! covers every pair `s < t` past the cutoff.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FdsError, FilteredSystem};
use crate::exactlin::F2Matrix;

/// Per-level maps; levels at or below a cutoff may be absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelFamily {
    maps: Vec<Option<F2Matrix>>,
}

impl LevelFamily {
    pub fn new(maps: Vec<Option<F2Matrix>>) -> Self {
        Self { maps }
    }

    pub fn get(&self, n: usize) -> Option<&F2Matrix> {
        self.maps.get(n).and_then(Option::as_ref)
    }

    pub fn set(&mut self, n: usize, m: Option<F2Matrix>) {
        if self.maps.len() <= n {
            self.maps.resize(n + 1, None);
        }
        self.maps[n] = m;
    }

    /// One past the last level with an entry slot.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Option<F2Matrix>] {
        &self.maps
    }

    /// Zero maps `V_n → W_{τ(n)}` for `n ≤ n_max`.
    pub fn zero<V: FilteredSystem + ?Sized, W: FilteredSystem + ?Sized>(
        v: &V,
        w: &W,
        n_max: usize,
        target: impl Fn(usize) -> usize,
    ) -> Result<Self, FdsError> {
        let maps = (0..=n_max)
            .map(|n| Ok(Some(F2Matrix::zeros(w.dim(target(n))?, v.dim(n)?))))
            .collect::<Result<_, FdsError>>()?;
        Ok(Self { maps })
    }
}

/// The persistence maps `π_{n→τ(n)}` of `v` for `n ≤ n_max`.
pub fn canonical_family<V: FilteredSystem + ?Sized>(
    v: &V,
    n_max: usize,
    target: impl Fn(usize) -> usize,
) -> Result<LevelFamily, FdsError> {
    let maps = (0..=n_max).map(|n| Ok(Some(v.map_between(n, target(n))?))).collect::<Result<_, FdsError>>()?;
    Ok(LevelFamily { maps })
}

/// Which identity failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Naturality square of the first family between `level` and `level+1`.
    FSquare,
    /// Naturality square of the second family.
    GSquare,
    /// `g ∘ f ≠ π^V` starting at `level`.
    GAfterF,
    /// `f ∘ g ≠ π^W` starting at `level`.
    FAfterG,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub level: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::FSquare => "square for f",
            ViolationKind::GSquare => "square for g",
            ViolationKind::GAfterF => "composite g∘f",
            ViolationKind::FAfterG => "composite f∘g",
        };
        write!(f, "{what} fails at level {}", self.level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub ok: bool,
    pub first_violation: Option<Violation>,
    /// Number of identities verified.
    pub checked: usize,
}

struct Checker {
    checked: usize,
    first: Option<Violation>,
}

impl Checker {
    fn new() -> Self {
        Self { checked: 0, first: None }
    }

    fn record(&mut self, holds: bool, kind: ViolationKind, level: usize) {
        self.checked += 1;
        if !holds && self.first.is_none() {
            self.first = Some(Violation { kind, level });
        }
    }

    fn report(self) -> CheckReport {
        CheckReport { ok: self.first.is_none(), first_violation: self.first, checked: self.checked }
    }
}

fn validate_shapes<V: FilteredSystem + ?Sized, W: FilteredSystem + ?Sized>(
    name: &str,
    v: &V,
    w: &W,
    f: &LevelFamily,
    target: &dyn Fn(usize) -> Result<usize, FdsError>,
) -> Result<(), FdsError> {
    for (n, m) in f.maps.iter().enumerate() {
        if let Some(m) = m {
            let expected = (w.dim(target(n)?)?, v.dim(n)?);
            if m.shape() != expected {
                return Err(FdsError::Shape(format!(
                    "{name} at level {n} has shape {:?}, expected {:?}",
                    m.shape(),
                    expected
                )));
            }
        }
    }
    Ok(())
}

fn check_squares<V: FilteredSystem + ?Sized, W: FilteredSystem + ?Sized>(
    c: &mut Checker,
    kind: ViolationKind,
    v: &V,
    w: &W,
    f: &LevelFamily,
    cutoff: usize,
    target: &dyn Fn(usize) -> Result<usize, FdsError>,
) -> Result<(), FdsError> {
    for n in cutoff + 1..f.len().saturating_sub(1) {
        let (Some(fn0), Some(fn1)) = (f.get(n), f.get(n + 1)) else { continue };
        let left = fn1.mul(&v.step(n)?)?;
        let right = w.map_between(target(n)?, target(n + 1)?)?.mul(fn0)?;
        c.record(left == right, kind.clone(), n);
    }
    Ok(())
}

/// Checks that `f_n : V_n → W_n` commutes with the persistence maps past
/// `cutoff`.
pub fn check_morphism<V: FilteredSystem + ?Sized, W: FilteredSystem + ?Sized>(
    v: &V,
    w: &W,
    f: &LevelFamily,
    cutoff: usize,
) -> Result<CheckReport, FdsError> {
    let id = |n: usize| Ok(n);
    validate_shapes("f", v, w, f, &id)?;
    let mut c = Checker::new();
    check_squares(&mut c, ViolationKind::FSquare, v, w, f, cutoff, &id)?;
    Ok(c.report())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingCandidate {
    pub eta1: usize,
    pub eta2: usize,
    pub cutoff: usize,
    /// `f_n : V_n → W_{η₁n}`.
    pub f: LevelFamily,
    /// `g_n : W_n → V_{η₂n}`.
    pub g: LevelFamily,
}

/// On-disk form: `{"eta1":, "eta2":, "cutoff":, "f":[...], "g":[...]}` where
/// each map is a row-major 0/1 list (or `null` when absent); shapes come
/// from the two systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateFile {
    pub eta1: usize,
    pub eta2: usize,
    #[serde(default)]
    pub cutoff: usize,
    pub f: Vec<Option<Vec<u8>>>,
    pub g: Vec<Option<Vec<u8>>>,
}

impl CandidateFile {
    pub fn resolve<V: FilteredSystem + ?Sized, W: FilteredSystem + ?Sized>(
        &self,
        v: &V,
        w: &W,
    ) -> Result<InterleavingCandidate, FdsError> {
        let build = |flat: &[Option<Vec<u8>>], src: &dyn Fn(usize) -> Result<usize, FdsError>, dst: &dyn Fn(usize) -> Result<usize, FdsError>| {
            flat.iter()
                .enumerate()
                .map(|(n, m)| match m {
                    None => Ok(None),
                    Some(bits) => Ok(Some(F2Matrix::from_flat(dst(n)?, src(n)?, bits)?)),
                })
                .collect::<Result<Vec<_>, FdsError>>()
        };
        let (e1, e2) = (self.eta1, self.eta2);
        let f = build(&self.f, &|n| v.dim(n), &|n| w.dim(e1 * n))?;
        let g = build(&self.g, &|n| w.dim(n), &|n| v.dim(e2 * n))?;
        Ok(InterleavingCandidate {
            eta1: e1,
            eta2: e2,
            cutoff: self.cutoff,
            f: LevelFamily::new(f),
            g: LevelFamily::new(g),
        })
    }

    pub fn from_candidate(c: &InterleavingCandidate) -> Self {
        let flat = |fam: &LevelFamily| fam.maps().iter().map(|m| m.as_ref().map(F2Matrix::to_flat)).collect();
        Self { eta1: c.eta1, eta2: c.eta2, cutoff: c.cutoff, f: flat(&c.f), g: flat(&c.g) }
    }
}

fn check_cross<V: FilteredSystem + ?Sized, W: FilteredSystem + ?Sized>(
    v: &V,
    w: &W,
    f: &LevelFamily,
    g: &LevelFamily,
    cutoff: usize,
    tau1: &dyn Fn(usize) -> Result<usize, FdsError>,
    tau2: &dyn Fn(usize) -> Result<usize, FdsError>,
) -> Result<CheckReport, FdsError> {
    validate_shapes("f", v, w, f, tau1)?;
    validate_shapes("g", w, v, g, tau2)?;
    let mut c = Checker::new();
    check_squares(&mut c, ViolationKind::FSquare, v, w, f, cutoff, tau1)?;
    check_squares(&mut c, ViolationKind::GSquare, w, v, g, cutoff, tau2)?;
    for n in cutoff + 1..f.len() {
        let Some(fn0) = f.get(n) else { continue };
        let mid = tau1(n)?;
        let Some(gm) = g.get(mid) else { continue };
        let composite = gm.mul(fn0)?;
        c.record(composite == v.map_between(n, tau2(mid)?)?, ViolationKind::GAfterF, n);
    }
    for n in cutoff + 1..g.len() {
        let Some(gn) = g.get(n) else { continue };
        let mid = tau2(n)?;
        let Some(fm) = f.get(mid) else { continue };
        let composite = fm.mul(gn)?;
        c.record(composite == w.map_between(n, tau1(mid)?)?, ViolationKind::FAfterG, n);
    }
    Ok(c.report())
}

/// Checks an `(η₁,η₂)`-interleaving: both families are asymptotic
/// morphisms into the dilated systems and the composites are the
/// persistence maps `π_{n→η₁η₂n}`.
pub fn check_interleaving<V: FilteredSystem + ?Sized, W: FilteredSystem + ?Sized>(
    v: &V,
    w: &W,
    cand: &InterleavingCandidate,
) -> Result<CheckReport, FdsError> {
    if cand.eta1 < 1 || cand.eta2 < 1 {
        return Err(FdsError::Domain("interleaving factors must be at least 1".into()));
    }
    let (e1, e2) = (cand.eta1, cand.eta2);
    check_cross(v, w, &cand.f, &cand.g, cand.cutoff, &|n| Ok(e1 * n), &|n| Ok(e2 * n))
}

/// Same as [`check_interleaving`] with level-dependent stretches: `f_n`
/// lands in `W_{σ₁(n)n}` and `g_n` in `V_{σ₂(n)n}`.
pub fn check_weak_interleaving<V: FilteredSystem + ?Sized, W: FilteredSystem + ?Sized>(
    v: &V,
    w: &W,
    sigma1: impl Fn(usize) -> usize,
    sigma2: impl Fn(usize) -> usize,
    f: &LevelFamily,
    g: &LevelFamily,
    cutoff: usize,
) -> Result<CheckReport, FdsError> {
    let stretch = |sigma: &dyn Fn(usize) -> usize, n: usize| -> Result<usize, FdsError> {
        let s = sigma(n);
        if s < 1 {
            return Err(FdsError::Domain(format!("stretch at level {n} is {s}, must be at least 1")));
        }
        Ok(s * n)
    };
    check_cross(v, w, f, g, cutoff, &|n| stretch(&sigma1, n), &|n| stretch(&sigma2, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fds::{dilate, reparametrize, StreamedFds, TabulatedFds};

    fn line_with_identities(n: usize) -> TabulatedFds {
        let levels = (0..n).map(|i| i as f64).collect();
        TabulatedFds::new(levels, vec![1; n], vec![F2Matrix::identity(1); n - 1]).unwrap()
    }

    #[test]
    fn identity_and_zero_morphisms() {
        let v = line_with_identities(6);
        let id = canonical_family(&v, 5, |n| n).unwrap();
        assert!(check_morphism(&v, &v, &id, 0).unwrap().ok);
        let zero = LevelFamily::zero(&v, &v, 5, |n| n).unwrap();
        assert!(check_morphism(&v, &v, &zero, 0).unwrap().ok);
    }

    #[test]
    fn alternating_family_fails_at_first_mixed_square() {
        let v = line_with_identities(6);
        let f = LevelFamily::new((0..6).map(|n| Some(F2Matrix::from_flat(1, 1, &[(n % 2 == 0) as u8]).unwrap())).collect());
        let r = check_morphism(&v, &v, &f, 0).unwrap();
        assert_eq!(r.first_violation, Some(Violation { kind: ViolationKind::FSquare, level: 1 }));
        let r = check_morphism(&v, &v, &f, 4).unwrap();
        assert!(r.ok);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let v = line_with_identities(3);
        let f = LevelFamily::new(vec![Some(F2Matrix::identity(2))]);
        assert!(matches!(check_morphism(&v, &v, &f, 0), Err(FdsError::Shape(_))));
    }

    #[test]
    fn dilation_interleaving() {
        let v = StreamedFds::inclusions(|n| 2 * 3usize.pow(n as u32) - 1, None);
        let eta = 2;
        let w = dilate(&v, eta).unwrap();
        let f = canonical_family(&v, 3, |n| eta * n).unwrap();
        let g = canonical_family(&w, 3, |n| n).unwrap();
        let cand = InterleavingCandidate { eta1: 1, eta2: eta, cutoff: 0, f, g };
        let r = check_interleaving(&v, &w, &cand).unwrap();
        assert!(r.ok, "{r:?}");
        assert!(r.checked > 0);

        let same = InterleavingCandidate {
            eta1: 1,
            eta2: 1,
            cutoff: 0,
            f: canonical_family(&v, 3, |n| n).unwrap(),
            g: canonical_family(&v, 3, |n| n).unwrap(),
        };
        assert!(check_interleaving(&v, &v, &same).unwrap().ok);
    }

    #[test]
    fn zero_return_map_is_rejected() {
        let v = line_with_identities(8);
        let cand = InterleavingCandidate {
            eta1: 1,
            eta2: 1,
            cutoff: 0,
            f: canonical_family(&v, 6, |n| n).unwrap(),
            g: LevelFamily::zero(&v, &v, 6, |n| n).unwrap(),
        };
        let r = check_interleaving(&v, &v, &cand).unwrap();
        assert!(!r.ok);
        assert_eq!(r.first_violation.unwrap().kind, ViolationKind::GAfterF);
    }

    #[test]
    fn weak_interleaving_with_growing_stretch() {
        let v = line_with_identities(4);
        let sigma = |n: usize| 1 + n;
        let w = reparametrize(&v, sigma);
        let f = canonical_family(&v, 3, |n| (1 + n) * n).unwrap();
        let g = canonical_family(&w, 3, |n| n).unwrap();
        assert!(check_weak_interleaving(&v, &w, |_| 1, sigma, &f, &g, 0).unwrap().ok);
        assert!(matches!(
            check_weak_interleaving(&v, &w, |_| 0, sigma, &f, &g, 0),
            Err(FdsError::Domain(_))
        ));
    }

    #[test]
    fn candidate_file_round_trip() {
        let v = line_with_identities(4);
        let cand = InterleavingCandidate {
            eta1: 1,
            eta2: 1,
            cutoff: 1,
            f: LevelFamily::new(vec![None, None, Some(F2Matrix::identity(1)), Some(F2Matrix::identity(1))]),
            g: LevelFamily::new(vec![None, None, Some(F2Matrix::identity(1))]),
        };
        let file = CandidateFile::from_candidate(&cand);
        let text = serde_json::to_string(&file).unwrap();
        let back: CandidateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.resolve(&v, &v).unwrap(), cand);
    }
}
