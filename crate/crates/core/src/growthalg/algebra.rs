use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AlgError;
use crate::groups::{enumerate_ball, BallEnumeration, GroupEngine, Word, DEFAULT_MEMORY_CAP};

static NEXT_ALGEBRA: AtomicU64 = AtomicU64::new(1);

/// An element of 𝔽₂[G]: a finite set of group elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement<T> {
    algebra: u64,
    support: BTreeSet<T>,
}

impl<T: Ord + Clone> GroupAlgebraElement<T> {
    pub fn support(&self) -> &BTreeSet<T> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// A single group element.
    pub fn is_basis(&self) -> bool {
        self.support.len() == 1
    }

    fn same_algebra(&self, other: &Self) -> Result<(), AlgError> {
        if self.algebra != other.algebra {
            return Err(AlgError::Domain("elements belong to different algebras".into()));
        }
        Ok(())
    }

    /// `x + y`: symmetric difference of supports.
    pub fn add(&self, other: &Self) -> Result<Self, AlgError> {
        self.same_algebra(other)?;
        let support = self.support.symmetric_difference(&other.support).cloned().collect();
        Ok(Self { algebra: self.algebra, support })
    }
}

impl<T: fmt::Debug> fmt::Debug for GroupAlgebraElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.support).finish()
    }
}

/// The group algebra 𝔽₂[G] filtered by word length with respect to a
/// fixed generating set. Word lengths are read off a breadth-first ball
/// of the given radius.
pub struct FilteredAlgebra<E: GroupEngine> {
    id: u64,
    engine: Arc<E>,
    generating_set: Vec<Word>,
    ball: BallEnumeration<E::Elem>,
}

impl<E: GroupEngine> fmt::Debug for FilteredAlgebra<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FilteredAlgebra")
            .field("kind", &self.engine.kind())
            .field("radius", &self.radius())
            .field("ball_size", &self.ball.elements.len())
            .finish()
    }
}

impl<E: GroupEngine> FilteredAlgebra<E> {
    /// Filtration by word length in `generating_set`, known up to `radius`.
    pub fn new(engine: Arc<E>, generating_set: Vec<Word>, radius: usize) -> Result<Self, AlgError> {
        Self::with_memory_cap(engine, generating_set, radius, DEFAULT_MEMORY_CAP)
    }

    pub fn with_memory_cap(
        engine: Arc<E>,
        generating_set: Vec<Word>,
        radius: usize,
        memory_cap: usize,
    ) -> Result<Self, AlgError> {
        let ball = enumerate_ball(engine.as_ref(), &generating_set, radius, memory_cap)?;
        if ball.truncated {
            return Err(AlgError::Domain(format!(
                "ball of radius {radius} exceeds the memory cap of {memory_cap} elements"
            )));
        }
        Ok(Self { id: NEXT_ALGEBRA.fetch_add(1, Ordering::Relaxed), engine, generating_set, ball })
    }

    /// Uses the engine's default generating set.
    pub fn with_default_generators(engine: Arc<E>, radius: usize) -> Result<Self, AlgError> {
        let gens = engine.default_generating_set();
        Self::new(engine, gens, radius)
    }

    pub fn engine(&self) -> &E {
        &self.engine
    }

    pub fn generating_set(&self) -> &[Word] {
        &self.generating_set
    }

    /// Largest word length for which levels are known.
    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    pub fn ball(&self) -> &BallEnumeration<E::Elem> {
        &self.ball
    }

    /// `|B(t)|`, the dimension of the level-`≤ t` part of the algebra.
    pub fn ball_size(&self, t: usize) -> Result<usize, AlgError> {
        if t > self.radius() {
            if self.ball.closed {
                return Ok(self.ball.elements.len());
            }
            return Err(AlgError::Range { level: t, radius: self.radius() });
        }
        Ok(self.ball.layer_ends[t])
    }

    /// Group elements of length at most `t`, in breadth-first order.
    pub fn ball_elements(&self, t: usize) -> Result<&[E::Elem], AlgError> {
        Ok(&self.ball.elements[..self.ball_size(t)?])
    }

    pub fn zero(&self) -> GroupAlgebraElement<E::Elem> {
        GroupAlgebraElement { algebra: self.id, support: BTreeSet::new() }
    }

    pub fn one(&self) -> GroupAlgebraElement<E::Elem> {
        self.basis(self.engine.identity())
    }

    pub fn basis(&self, g: E::Elem) -> GroupAlgebraElement<E::Elem> {
        GroupAlgebraElement { algebra: self.id, support: BTreeSet::from([g]) }
    }

    /// Sum of the given group elements, cancelling repeats in pairs.
    pub fn from_elements(&self, elems: impl IntoIterator<Item = E::Elem>) -> GroupAlgebraElement<E::Elem> {
        let mut support = BTreeSet::new();
        for g in elems {
            if !support.remove(&g) {
                support.insert(g);
            }
        }
        GroupAlgebraElement { algebra: self.id, support }
    }

    pub fn from_words(&self, words: &[Word]) -> Result<GroupAlgebraElement<E::Elem>, AlgError> {
        let elems = words.iter().map(|w| self.engine.normalize(w)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.from_elements(elems))
    }

    /// Parses `"a + ab"`; `"0"` is the zero element and `"1"` or `""` the
    /// identity.
    pub fn parse_element(&self, s: &str) -> Result<GroupAlgebraElement<E::Elem>, AlgError> {
        if s.trim() == "0" {
            return Ok(self.zero());
        }
        let words = s.split('+').map(|t| self.engine.parse_word(t.trim())).collect::<Result<Vec<_>, _>>()?;
        self.from_words(&words)
    }

    /// Terms as shortest words when they lie in the known ball, otherwise
    /// as engine keys; sorted by length then shortlex.
    pub fn format(&self, x: &GroupAlgebraElement<E::Elem>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let alphabet = self.engine.alphabet();
        let mut terms: Vec<(usize, String)> = x
            .support
            .iter()
            .map(|g| match self.ball.index.get(g) {
                Some(&i) => {
                    let w = self.ball.word_of(i);
                    let s = alphabet.display(&w).to_string();
                    (w.len(), s)
                }
                None => (usize::MAX, self.engine.key(g)),
            })
            .collect();
        terms.sort();
        terms.into_iter().map(|t| t.1).collect::<Vec<_>>().join(" + ")
    }

    fn check(&self, x: &GroupAlgebraElement<E::Elem>) -> Result<(), AlgError> {
        if x.algebra != self.id {
            return Err(AlgError::Domain("element belongs to a different algebra".into()));
        }
        Ok(())
    }

    /// The 𝔽₂ convolution product.
    pub fn multiply(
        &self,
        x: &GroupAlgebraElement<E::Elem>,
        y: &GroupAlgebraElement<E::Elem>,
    ) -> Result<GroupAlgebraElement<E::Elem>, AlgError> {
        self.check(x)?;
        self.check(y)?;
        let mut products = Vec::with_capacity(x.support.len() * y.support.len());
        for a in &x.support {
            for b in &y.support {
                products.push(self.engine.compose(a, b)?);
            }
        }
        Ok(self.from_elements(products))
    }

    pub fn add(
        &self,
        x: &GroupAlgebraElement<E::Elem>,
        y: &GroupAlgebraElement<E::Elem>,
    ) -> Result<GroupAlgebraElement<E::Elem>, AlgError> {
        self.check(x)?;
        x.add(y)
    }

    /// Word length of a group element.
    pub fn element_level(&self, g: &E::Elem) -> Result<usize, AlgError> {
        self.ball
            .length_of(g)
            .ok_or(AlgError::Range { level: self.radius() + 1, radius: self.radius() })
    }

    /// Maximum word length over the support; 0 for the zero element.
    pub fn filtration_level(&self, x: &GroupAlgebraElement<E::Elem>) -> Result<usize, AlgError> {
        self.check(x)?;
        x.support.iter().map(|g| self.element_level(g)).try_fold(0, |acc, l| Ok(acc.max(l?)))
    }

    /// `ρ(S)`: the largest level over `s`.
    pub fn rho(&self, s: &[GroupAlgebraElement<E::Elem>]) -> Result<usize, AlgError> {
        s.iter().map(|x| self.filtration_level(x)).try_fold(0, |acc, l| Ok(acc.max(l?)))
    }

    /// A random element whose support is 1 to `max_terms` group elements of
    /// length at most `max_level`.
    pub fn random_element(
        &self,
        rng: &mut impl Rng,
        max_level: usize,
        max_terms: usize,
    ) -> Result<GroupAlgebraElement<E::Elem>, AlgError> {
        let pool = self.ball_elements(max_level)?;
        let k = rng.gen_range(1..=max_terms.max(1));
        Ok(self.from_elements(pool.choose_multiple(rng, k.min(pool.len())).cloned()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubadditivityReport {
    pub samples: usize,
    pub ok: bool,
    /// `(level(x), level(y), level(x⋆y))` of the first failure.
    pub counterexample: Option<(String, String, usize, usize, usize)>,
}

/// Samples random pairs and checks `level(x⋆y) ≤ level(x) + level(y)`.
/// Products must stay within the known ball, so `2·max_level` must not
/// exceed the radius.
pub fn check_subadditivity<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    sample_count: usize,
    max_level: usize,
    seed: u64,
) -> Result<SubadditivityReport, AlgError> {
    if 2 * max_level > alg.radius() && !alg.ball.closed {
        return Err(AlgError::Range { level: 2 * max_level, radius: alg.radius() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..sample_count {
        let x = alg.random_element(&mut rng, max_level, 3)?;
        let y = alg.random_element(&mut rng, max_level, 3)?;
        let (lx, ly) = (alg.filtration_level(&x)?, alg.filtration_level(&y)?);
        let lxy = alg.filtration_level(&alg.multiply(&x, &y)?)?;
        if lxy > lx + ly {
            return Ok(SubadditivityReport {
                samples: sample_count,
                ok: false,
                counterexample: Some((alg.format(&x), alg.format(&y), lx, ly, lxy)),
            });
        }
    }
    Ok(SubadditivityReport { samples: sample_count, ok: true, counterexample: None })
}
