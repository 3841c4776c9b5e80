//! Filtered modules over a filtered group algebra, stretching elements and
//! the finite-level growth comparisons they imply.

use std::collections::{BTreeMap, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::algebra::{FilteredAlgebra, GroupAlgebraElement};
use super::AlgError;
use crate::exactlin::{f2_rank, F2Matrix, F2Vector};
use crate::groups::{GroupEngine, Letter};

/// A finite-dimensional module given by generator matrices and a level for
/// each basis vector. The level of a vector is the largest level in its
/// support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    levels: Vec<usize>,
    /// Matrix per letter code (generator, then its inverse).
    letters: Vec<F2Matrix>,
}

impl Representation {
    /// `actions[g]` is the matrix of generator `g`; inverses are computed.
    pub fn new(levels: Vec<usize>, actions: Vec<F2Matrix>) -> Result<Self, AlgError> {
        let dim = levels.len();
        let mut letters = Vec::with_capacity(2 * actions.len());
        for (g, m) in actions.into_iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(AlgError::Shape(format!("action of generator {g} is {:?}, expected {dim}×{dim}", m.shape())));
            }
            let inv = m
                .inverse()?
                .ok_or_else(|| AlgError::Domain(format!("action of generator {g} is not invertible")))?;
            letters.push(m);
            letters.push(inv);
        }
        Ok(Self { dim, levels, letters })
    }

    /// The trivial one-dimensional module: every group element acts as the
    /// identity on 𝔽₂.
    pub fn augmentation(rank: usize) -> Self {
        Self::new(vec![0], vec![F2Matrix::identity(1); rank]).expect("identity actions are valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level_of(&self, v: &F2Vector) -> usize {
        v.ones().map(|i| self.levels[i]).max().unwrap_or(0)
    }

    /// Number of basis vectors of level at most `t`.
    pub fn dim_up_to(&self, t: usize) -> usize {
        self.levels.iter().filter(|&&l| l <= t).count()
    }

    /// `w·v` for a word `w`, letters applied right to left.
    pub fn act_word(&self, w: &[Letter], v: &F2Vector) -> Result<F2Vector, AlgError> {
        let mut out = v.clone();
        for l in w.iter().rev() {
            let m = self
                .letters
                .get(l.0 as usize)
                .ok_or_else(|| AlgError::Domain(format!("no action for letter code {}", l.0)))?;
            out = m.mul_vec(&out)?;
        }
        Ok(out)
    }
}

/// On-disk module description: `{"kind":"self-shift","shift":c}`,
/// `{"kind":"augmentation"}` or
/// `{"kind":"tabulated","levels":[...],"actions":{"a":[row-major], ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModuleSpec {
    SelfShift { shift: usize },
    Augmentation,
    Tabulated { levels: Vec<usize>, actions: BTreeMap<char, Vec<u8>> },
}

/// A filtered module `W` with `level(a∗m) ≤ level(a) + level(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilteredModule {
    /// The algebra acting on itself with every level raised by `shift`.
    SelfShift { shift: usize },
    Representation(Representation),
}

/// An element of a module: an algebra element for shifted copies of the
/// algebra, a coordinate vector for representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleElement<T> {
    Algebra(GroupAlgebraElement<T>),
    Vector(F2Vector),
}

impl FilteredModule {
    pub fn from_spec<E: GroupEngine>(spec: &ModuleSpec, alg: &FilteredAlgebra<E>) -> Result<Self, AlgError> {
        let alphabet = alg.engine().alphabet();
        Ok(match spec {
            ModuleSpec::SelfShift { shift } => FilteredModule::SelfShift { shift: *shift },
            ModuleSpec::Augmentation => FilteredModule::Representation(Representation::augmentation(alphabet.rank())),
            ModuleSpec::Tabulated { levels, actions } => {
                let dim = levels.len();
                let mut mats = Vec::with_capacity(alphabet.rank());
                for &c in alphabet.names() {
                    let flat = actions
                        .get(&c)
                        .ok_or_else(|| AlgError::Input(format!("no action given for generator '{c}'")))?;
                    mats.push(F2Matrix::from_flat(dim, dim, flat)?);
                }
                if let Some(c) = actions.keys().find(|c| !alphabet.names().contains(c)) {
                    return Err(AlgError::Input(format!("action given for unknown generator '{c}'")));
                }
                FilteredModule::Representation(Representation::new(levels.clone(), mats)?)
            }
        })
    }

    /// Parses a module element: algebra syntax for self-shift modules, a
    /// 0/1 coordinate string such as `"101"` for representations.
    pub fn parse_element<E: GroupEngine>(
        &self,
        alg: &FilteredAlgebra<E>,
        s: &str,
    ) -> Result<ModuleElement<E::Elem>, AlgError> {
        match self {
            FilteredModule::SelfShift { .. } => Ok(ModuleElement::Algebra(alg.parse_element(s)?)),
            FilteredModule::Representation(r) => {
                let s = s.trim();
                if s.len() != r.dim() || !s.chars().all(|c| c == '0' || c == '1') {
                    return Err(AlgError::Input(format!("expected {} coordinates of 0/1, got '{s}'", r.dim())));
                }
                Ok(ModuleElement::Vector(F2Vector::from_bits(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>())))
            }
        }
    }

    pub fn level<E: GroupEngine>(&self, alg: &FilteredAlgebra<E>, m: &ModuleElement<E::Elem>) -> Result<usize, AlgError> {
        match (self, m) {
            (FilteredModule::SelfShift { shift }, ModuleElement::Algebra(x)) => {
                Ok(if x.is_zero() { 0 } else { alg.filtration_level(x)? + shift })
            }
            (FilteredModule::Representation(r), ModuleElement::Vector(v)) if v.len() == r.dim() => Ok(r.level_of(v)),
            _ => Err(AlgError::Shape("module element does not belong to this module".into())),
        }
    }

    /// `dim{m : level(m) ≤ t}`.
    pub fn dim_up_to<E: GroupEngine>(&self, alg: &FilteredAlgebra<E>, t: usize) -> Result<usize, AlgError> {
        match self {
            FilteredModule::SelfShift { shift } => {
                if t < *shift {
                    Ok(0)
                } else {
                    alg.ball_size(t - shift)
                }
            }
            FilteredModule::Representation(r) => Ok(r.dim_up_to(t)),
        }
    }

    /// The action `a ∗ m`.
    pub fn act<E: GroupEngine>(
        &self,
        alg: &FilteredAlgebra<E>,
        a: &GroupAlgebraElement<E::Elem>,
        m: &ModuleElement<E::Elem>,
    ) -> Result<ModuleElement<E::Elem>, AlgError> {
        match (self, m) {
            (FilteredModule::SelfShift { .. }, ModuleElement::Algebra(x)) => Ok(ModuleElement::Algebra(alg.multiply(a, x)?)),
            (FilteredModule::Representation(r), ModuleElement::Vector(v)) if v.len() == r.dim() => {
                let mut out = F2Vector::zeros(r.dim());
                for g in a.support() {
                    let i = *alg
                        .ball()
                        .index
                        .get(g)
                        .ok_or(AlgError::Range { level: alg.radius() + 1, radius: alg.radius() })?;
                    out.add_assign(&r.act_word(&alg.ball().word_of(i), v)?);
                }
                Ok(ModuleElement::Vector(out))
            }
            _ => Err(AlgError::Shape("module element does not belong to this module".into())),
        }
    }
}

/// Result of testing whether `a ↦ a∗m₀` is injective on the level-`≤ L`
/// part of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StretchReport<T> {
    pub m0: ModuleElement<T>,
    pub checked_level: usize,
    pub injective: bool,
    /// A nonzero algebra element killed by `m₀`, when one exists.
    pub witness: Option<GroupAlgebraElement<T>>,
}

pub fn stretching_check<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    module: &FilteredModule,
    m0: &ModuleElement<E::Elem>,
    level: usize,
) -> Result<StretchReport<E::Elem>, AlgError> {
    let basis = alg.ball_elements(level)?;
    module.level(alg, m0)?;
    let columns: Vec<F2Vector> = match (module, m0) {
        (FilteredModule::SelfShift { .. }, ModuleElement::Algebra(x)) => {
            let images: Vec<GroupAlgebraElement<E::Elem>> =
                basis.iter().map(|g| alg.multiply(&alg.basis(g.clone()), x)).collect::<Result<_, _>>()?;
            let mut coords: HashMap<&E::Elem, usize> = HashMap::new();
            for img in &images {
                for h in img.support() {
                    let next = coords.len();
                    coords.entry(h).or_insert(next);
                }
            }
            images
                .iter()
                .map(|img| {
                    let mut v = F2Vector::zeros(coords.len());
                    for h in img.support() {
                        v.set(coords[h], true);
                    }
                    v
                })
                .collect()
        }
        _ => basis
            .iter()
            .map(|g| match module.act(alg, &alg.basis(g.clone()), m0)? {
                ModuleElement::Vector(v) => Ok(v),
                ModuleElement::Algebra(_) => unreachable!("representations act on vectors"),
            })
            .collect::<Result<_, AlgError>>()?,
    };
    let rows = columns.first().map_or(0, F2Vector::len);
    let matrix = F2Matrix::from_columns(rows, &columns);
    let injective = f2_rank(&matrix) == basis.len();
    let witness = if injective {
        None
    } else {
        let k = matrix.kernel().into_iter().next().expect("rank deficit gives a kernel vector");
        Some(alg.from_elements(k.ones().map(|i| basis[i].clone())))
    };
    Ok(StretchReport { m0: m0.clone(), checked_level: level, injective, witness })
}

/// One row of a growth comparison: `d^V_t ≤ d^W_{t+c}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub t: usize,
    pub algebra_dim: usize,
    pub module_dim: usize,
}

impl ComparisonRow {
    pub fn holds(&self) -> bool {
        self.algebra_dim <= self.module_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub m0_level: usize,
    pub rows: Vec<ComparisonRow>,
    pub ok: bool,
}

/// Checks `dim{a : level(a) ≤ t} ≤ dim{m : level(m) ≤ t + level(m₀)}` for
/// every `t` in the window, after confirming that `m₀` stretches the
/// level-`≤ t_max` part of the algebra.
pub fn module_growth_compare<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    module: &FilteredModule,
    m0: &ModuleElement<E::Elem>,
    window: (usize, usize),
) -> Result<ComparisonReport, AlgError> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(AlgError::Domain(format!("empty window [{lo}, {hi}]")));
    }
    let stretch = stretching_check(alg, module, m0, hi)?;
    if !stretch.injective {
        let witness = stretch.witness.as_ref().map(|w| alg.format(w)).unwrap_or_default();
        return Err(AlgError::NotStretching { level: hi, witness });
    }
    let c = module.level(alg, m0)?;
    let rows = (lo..=hi)
        .map(|t| {
            Ok(ComparisonRow { t, algebra_dim: alg.ball_size(t)?, module_dim: module.dim_up_to(alg, t + c)? })
        })
        .collect::<Result<Vec<_>, AlgError>>()?;
    let ok = rows.iter().all(ComparisonRow::holds);
    Ok(ComparisonReport { m0_level: c, rows, ok })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformReport {
    pub ok: bool,
    /// First member that breaks the level bound, fails to stretch, or
    /// violates its inequality, with the reason.
    pub failing_member: Option<(usize, String)>,
    /// `(t, d^V_t, min_i d^{W(i)}_{t+B})`.
    pub family_infimum: Vec<(usize, usize, usize)>,
}

/// Checks a uniformly stretched family: every `m₀ᵢ` has level at most
/// `bound`, stretches, and `d^V_t ≤ d^{W(i)}_{t+bound}` on the window.
pub fn uniform_family_check<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    members: &[(FilteredModule, ModuleElement<E::Elem>)],
    bound: usize,
    window: (usize, usize),
) -> Result<UniformReport, AlgError> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(AlgError::Domain(format!("empty window [{lo}, {hi}]")));
    }
    let fail = |i: usize, why: String| UniformReport { ok: false, failing_member: Some((i, why)), family_infimum: Vec::new() };
    let mut inf: Vec<usize> = vec![usize::MAX; hi - lo + 1];
    for (i, (module, m0)) in members.iter().enumerate() {
        let c = module.level(alg, m0)?;
        if c > bound {
            return Ok(fail(i, format!("stretching element has level {c} above the bound {bound}")));
        }
        let s = stretching_check(alg, module, m0, hi)?;
        if !s.injective {
            return Ok(fail(i, format!("not stretching at level {hi}")));
        }
        for t in lo..=hi {
            let d = module.dim_up_to(alg, t + bound)?;
            if alg.ball_size(t)? > d {
                return Ok(fail(i, format!("inequality fails at t = {t}")));
            }
            inf[t - lo] = inf[t - lo].min(d);
        }
    }
    let family_infimum = (lo..=hi)
        .map(|t| Ok((t, alg.ball_size(t)?, inf[t - lo])))
        .collect::<Result<Vec<_>, AlgError>>()?;
    Ok(UniformReport { ok: true, failing_member: None, family_infimum })
}

/// Samples random `(a, m)` and checks `level(a∗m) ≤ level(a) + level(m)`.
/// Returns the first failing `(level(a), level(m), level(a∗m))`.
pub fn check_module_subadditivity<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    module: &FilteredModule,
    samples: usize,
    max_level: usize,
    seed: u64,
) -> Result<Option<(usize, usize, usize)>, AlgError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = alg.random_element(&mut rng, max_level, 3)?;
        let m = match module {
            FilteredModule::SelfShift { .. } => ModuleElement::Algebra(alg.random_element(&mut rng, max_level, 3)?),
            FilteredModule::Representation(r) => {
                let bits: Vec<bool> = (0..r.dim()).map(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
                ModuleElement::Vector(F2Vector::from_bools(&bits))
            }
        };
        let (la, lm) = (alg.filtration_level(&a)?, module.level(alg, &m)?);
        let lam = module.level(alg, &module.act(alg, &a, &m)?)?;
        if lam > la + lm {
            return Ok(Some((la, lm, lam)));
        }
    }
    Ok(None)
}
