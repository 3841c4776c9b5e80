use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use super::algebra::{FilteredAlgebra, GroupAlgebraElement};
use super::AlgError;
use crate::exactlin::{EchelonBasis, F2Vector};
use crate::fds::{growth_rate, GrowthEstimate, GrowthMethod, StreamedFds};
use crate::groups::GroupEngine;

/// `dim W_S(n)` for `n = 1..=n_max` together with the span bases.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicGrowth {
    /// `w_dims[n-1] = dim W_S(n)`.
    pub w_dims: Vec<u64>,
    /// `ρ(S)`, the largest level over `S`.
    pub rho: usize,
    pub estimate: GrowthEstimate,
    /// Basis labels in insertion order; the first `w_dims[n-1]` span `W_S(n)`.
    pub labels: Vec<String>,
}

impl AlgebraicGrowth {
    /// `d_0 = 0, d_n = dim W_S(n)`.
    pub fn d_sequence(&self) -> Vec<u64> {
        std::iter::once(0).chain(self.w_dims.iter().copied()).collect()
    }
}

/// Default window: the upper half of `[1, n_max]`.
pub fn default_window(n_max: usize) -> (usize, usize) {
    ((n_max / 2).max(1), n_max)
}

struct Spans {
    w_dims: Vec<u64>,
    labels: Vec<String>,
}

fn basis_case<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    s: &[E::Elem],
    n_max: usize,
) -> Result<Spans, AlgError> {
    let engine = alg.engine();
    let mut seen: HashSet<E::Elem> = HashSet::new();
    let mut order: Vec<E::Elem> = Vec::new();
    let mut frontier: Vec<E::Elem> = Vec::new();
    for g in s {
        if !frontier.contains(g) {
            frontier.push(g.clone());
        }
    }
    let mut w_dims = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            // Products of exactly n factors, merged in a fixed order.
            let next: Vec<E::Elem> = frontier
                .par_iter()
                .flat_map_iter(|x| s.iter().map(move |g| engine.compose(x, g)))
                .collect::<Result<_, _>>()?;
            let mut dedup = HashSet::with_capacity(next.len());
            frontier = next.into_iter().filter(|y| dedup.insert(y.clone())).collect();
        }
        for y in &frontier {
            if seen.insert(y.clone()) {
                order.push(y.clone());
            }
        }
        w_dims.push(seen.len() as u64);
    }
    let labels = order.iter().map(|g| alg.format(&alg.basis(g.clone()))).collect();
    Ok(Spans { w_dims, labels })
}

fn span_case<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    s: &[GroupAlgebraElement<E::Elem>],
    n_max: usize,
) -> Result<Spans, AlgError> {
    let mut coords: HashMap<E::Elem, usize> = HashMap::new();
    let mut basis = EchelonBasis::new(0);
    let mut labels = Vec::new();
    let mut frontier: Vec<GroupAlgebraElement<E::Elem>> = Vec::new();
    let mut frontier_keys: HashSet<BTreeSet<E::Elem>> = HashSet::new();
    for x in s {
        if frontier_keys.insert(x.support().clone()) {
            frontier.push(x.clone());
        }
    }
    let mut w_dims = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            let next: Vec<GroupAlgebraElement<E::Elem>> = frontier
                .par_iter()
                .flat_map_iter(|x| s.iter().map(move |g| alg.multiply(x, g)))
                .collect::<Result<_, _>>()?;
            frontier_keys.clear();
            frontier = next.into_iter().filter(|y| frontier_keys.insert(y.support().clone())).collect();
        }
        for y in &frontier {
            for g in y.support() {
                if !coords.contains_key(g) {
                    coords.insert(g.clone(), coords.len());
                }
            }
            basis.extend_len(coords.len());
            let mut v = F2Vector::zeros(coords.len());
            for g in y.support() {
                v.set(coords[g], true);
            }
            if basis.insert(&v) {
                labels.push(alg.format(y));
            }
        }
        w_dims.push(basis.rank() as u64);
    }
    Ok(Spans { w_dims, labels })
}

/// Algebraic growth of `S`: the dimensions of `W_S(n)`, the span of all
/// products of at most `n` elements of `S`, and a growth estimate on the
/// sequence `d_0 = 0, d_n = dim W_S(n)`.
pub fn algebraic_growth<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    s: &[GroupAlgebraElement<E::Elem>],
    n_max: usize,
    window: Option<(usize, usize)>,
    method: GrowthMethod,
) -> Result<AlgebraicGrowth, AlgError> {
    if n_max == 0 {
        return Err(AlgError::Domain("n_max must be at least 1".into()));
    }
    let s: Vec<GroupAlgebraElement<E::Elem>> = s.iter().filter(|x| !x.is_zero()).cloned().collect();
    let window = window.unwrap_or_else(|| default_window(n_max));
    if s.is_empty() {
        let estimate = growth_rate(&[0], (0, 0), method, false)?;
        return Ok(AlgebraicGrowth { w_dims: Vec::new(), rho: 0, estimate: GrowthEstimate { window, ..estimate }, labels: Vec::new() });
    }
    let rho = alg.rho(&s).unwrap_or(0);
    let spans = if s.iter().all(GroupAlgebraElement::is_basis) {
        let elems: Vec<E::Elem> = s.iter().map(|x| x.support().iter().next().unwrap().clone()).collect();
        basis_case(alg, &elems, n_max)?
    } else {
        span_case(alg, &s, n_max)?
    };
    let d: Vec<u64> = std::iter::once(0).chain(spans.w_dims.iter().copied()).collect();
    let estimate = growth_rate(&d, window, method, true)?;
    Ok(AlgebraicGrowth { w_dims: spans.w_dims, rho, estimate, labels: spans.labels })
}

/// The f.d.s. `V_n = W_S(n)` with inclusion maps, `V_0 = 0`, known up to
/// `n_max` and constant afterwards when the spans stabilize.
pub fn fds_from_ball_filtration<E: GroupEngine>(
    alg: &FilteredAlgebra<E>,
    s: &[GroupAlgebraElement<E::Elem>],
    n_max: usize,
) -> Result<StreamedFds, AlgError> {
    let growth = algebraic_growth(alg, s, n_max, None, GrowthMethod::Slope)?;
    let dims: Vec<usize> = growth.d_sequence().iter().map(|&d| d as usize).collect();
    let dims = if growth.w_dims.is_empty() { vec![0; n_max + 1] } else { dims };
    let labels = growth.labels;
    let cut = dims.clone();
    Ok(StreamedFds::labeled_inclusions(dims, move |n| labels[..cut[n.min(cut.len() - 1)]].to_vec()))
}
