//! Breadth-first enumeration of word-metric balls.

use std::collections::HashMap;

use rayon::prelude::*;

use super::engine::GroupEngine;
use super::word::{Alphabet, Word};
use super::GroupError;

pub const DEFAULT_MEMORY_CAP: usize = 10_000_000;

/// Ball sizes `|B(0)|, …, |B(n)|` for a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallTable {
    pub generating_set: Vec<String>,
    pub sizes: Vec<u64>,
    pub spheres: Vec<u64>,
    /// The memory cap stopped the enumeration before `n_max`.
    pub truncated: bool,
    /// A sphere came out empty, so the whole group has been enumerated; the
    /// remaining sizes up to `n_max` repeat the group order.
    pub closed: bool,
}

impl BallTable {
    pub fn radius(&self) -> usize {
        self.sizes.len().saturating_sub(1)
    }

    /// Group order when the enumeration closed.
    pub fn closure_size(&self) -> Option<u64> {
        self.closed.then(|| *self.sizes.last().expect("B(0) always present"))
    }

    /// First pair `(m, n)` with `|B(m+n)| > |B(m)|·|B(n)|`, if any.
    pub fn submultiplicativity_violation(&self) -> Option<(usize, usize)> {
        let n_max = self.radius();
        for m in 0..=n_max {
            for n in 0..=n_max - m {
                if self.sizes[m + n] > self.sizes[m].saturating_mul(self.sizes[n]) {
                    return Some((m, n));
                }
            }
        }
        None
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.sizes.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect()
    }
}

/// Elements of a ball in BFS order with their distances and a
/// representative word for each.
#[derive(Clone, Debug)]
pub struct BallEnumeration<T> {
    pub elements: Vec<T>,
    /// `layer_ends[n]` is the number of elements of length at most `n`.
    pub layer_ends: Vec<usize>,
    pub index: HashMap<T, usize>,
    /// `(parent index, generator index)` per element; the identity has none.
    parents: Vec<Option<(usize, usize)>>,
    generating_words: Vec<Word>,
    pub truncated: bool,
    pub closed: bool,
}

impl<T: Clone + Eq + std::hash::Hash> BallEnumeration<T> {
    pub fn radius(&self) -> usize {
        self.layer_ends.len() - 1
    }

    pub fn length_of(&self, x: &T) -> Option<usize> {
        let i = *self.index.get(x)?;
        Some(self.layer_ends.partition_point(|&end| end <= i))
    }

    /// Shortest representative word found by the search.
    pub fn word_of(&self, i: usize) -> Word {
        let mut parts = Vec::new();
        let mut cur = i;
        while let Some((parent, g)) = self.parents[cur] {
            parts.push(g);
            cur = parent;
        }
        parts.iter().rev().flat_map(|&g| self.generating_words[g].iter().copied()).collect()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.layer_ends.iter().map(|&n| n as u64).collect()
    }

    pub fn table(&self, alphabet: &Alphabet) -> BallTable {
        let sizes = self.sizes();
        let spheres = std::iter::once(sizes[0]).chain(sizes.windows(2).map(|w| w[1] - w[0])).collect();
        BallTable {
            generating_set: self.generating_words.iter().map(|w| alphabet.format(w)).collect(),
            sizes,
            spheres,
            truncated: self.truncated,
            closed: self.closed,
        }
    }
}

/// Enumerates `B(0) ⊆ … ⊆ B(n_max)` for the generating words `gens`,
/// deduplicating by canonical form. Frontier products are computed in
/// parallel and merged in a fixed order, so the output does not depend on
/// the thread count.
pub fn enumerate_ball<E: GroupEngine>(
    engine: &E,
    gens: &[Word],
    n_max: usize,
    memory_cap: usize,
) -> Result<BallEnumeration<E::Elem>, GroupError> {
    if gens.is_empty() {
        return Err(GroupError::Domain("generating set must be nonempty".into()));
    }
    let gen_elems: Vec<E::Elem> = gens.iter().map(|w| engine.normalize(w)).collect::<Result<_, _>>()?;
    let id = engine.identity();
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut parents = vec![None];
    let mut layer_ends = vec![1usize];
    let mut truncated = false;
    let mut closed = false;

    for _ in 0..n_max {
        let start = layer_ends.len().checked_sub(2).map_or(0, |k| layer_ends[k]);
        let end = *layer_ends.last().unwrap();
        let products: Vec<(usize, usize, E::Elem)> = (start..end)
            .into_par_iter()
            .flat_map_iter(|i| {
                let x = &elements[i];
                gen_elems.iter().enumerate().map(move |(g, s)| engine.compose(x, s).map(|y| (i, g, y)))
            })
            .collect::<Result<_, _>>()?;
        let before = elements.len();
        for (i, g, y) in products {
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() >= memory_cap {
                truncated = true;
                break;
            }
            index.insert(y.clone(), elements.len());
            elements.push(y);
            parents.push(Some((i, g)));
        }
        if truncated {
            // Drop the partial layer so every reported ball is complete.
            for y in elements.drain(before..) {
                index.remove(&y);
            }
            parents.truncate(before);
            break;
        }
        if elements.len() == before {
            closed = true;
            break;
        }
        layer_ends.push(elements.len());
    }
    if closed {
        // Balls are constant from here on.
        let last = *layer_ends.last().unwrap();
        layer_ends.resize(n_max + 1, last);
    }
    Ok(BallEnumeration {
        elements,
        layer_ends,
        index,
        parents,
        generating_words: gens.to_vec(),
        truncated,
        closed,
    })
}

/// Exact ball sizes by breadth-first search.
pub fn ball_sizes<E: GroupEngine>(
    engine: &E,
    gens: &[Word],
    n_max: usize,
    memory_cap: usize,
) -> Result<BallTable, GroupError> {
    if n_max == 0 {
        return Err(GroupError::Domain("n_max must be at least 1".into()));
    }
    Ok(enumerate_ball(engine, gens, n_max, memory_cap)?.table(engine.alphabet()))
}
