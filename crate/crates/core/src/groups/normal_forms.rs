//! Counting normal forms of a confluent rewriting system with an
//! Aho–Corasick automaton over the rule left-hand sides.

use std::collections::VecDeque;

use super::rewriting::RewritingSystem;
use super::GroupError;

struct Automaton {
    goto: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

fn build(sys: &RewritingSystem) -> Automaton {
    let letters = 2 * sys.alphabet().rank();
    let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; letters]];
    let mut dead = vec![false];
    for (lhs, _) in sys.rules() {
        let mut s = 0;
        for l in lhs {
            let c = l.0 as usize;
            s = match children[s][c] {
                Some(t) => t,
                None => {
                    children.push(vec![None; letters]);
                    dead.push(false);
                    let t = children.len() - 1;
                    children[s][c] = Some(t);
                    t
                }
            };
        }
        dead[s] = true;
    }
    let n = children.len();
    let mut goto = vec![vec![0usize; letters]; n];
    let mut fail = vec![0usize; n];
    let mut queue = VecDeque::new();
    for c in 0..letters {
        if let Some(t) = children[0][c] {
            goto[0][c] = t;
            queue.push_back(t);
        }
    }
    while let Some(s) = queue.pop_front() {
        dead[s] = dead[s] || dead[fail[s]];
        for c in 0..letters {
            match children[s][c] {
                Some(t) => {
                    fail[t] = goto[fail[s]][c];
                    goto[s][c] = t;
                    queue.push_back(t);
                }
                None => goto[s][c] = goto[fail[s]][c],
            }
        }
    }
    Automaton { goto, dead }
}

/// Number of irreducible words of each length `0..=n_max`.
///
/// For a confluent shortlex system every element has exactly one
/// irreducible word and it is a shortest one, so these are the sphere sizes
/// for the generating set of all letters and inverses.
pub fn normal_form_counts(sys: &RewritingSystem, n_max: usize) -> Result<Vec<u128>, GroupError> {
    if !sys.is_confluent() {
        return Err(GroupError::Domain("irreducible words only count elements when the system is confluent".into()));
    }
    let a = build(sys);
    let mut counts = vec![0u128; a.goto.len()];
    counts[0] = 1;
    let mut out = vec![1u128];
    for _ in 0..n_max {
        let mut next = vec![0u128; counts.len()];
        for (s, &k) in counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for &t in &a.goto[s] {
                if !a.dead[t] {
                    next[t] = next[t].checked_add(k).ok_or_else(|| GroupError::Domain("normal form count overflow".into()))?;
                }
            }
        }
        let total = next.iter().try_fold(0u128, |acc, &k| acc.checked_add(k));
        out.push(total.ok_or_else(|| GroupError::Domain("normal form count overflow".into()))?);
        counts = next;
    }
    Ok(out)
}

/// Ball sizes `|B(0)|, …, |B(n_max)|` as partial sums of
/// [`normal_form_counts`].
pub fn ball_sizes_from_normal_forms(sys: &RewritingSystem, n_max: usize) -> Result<Vec<u128>, GroupError> {
    let mut acc = 0u128;
    normal_form_counts(sys, n_max)?
        .into_iter()
        .map(|k| {
            acc = acc.checked_add(k).ok_or_else(|| GroupError::Domain("ball size overflow".into()))?;
            Ok(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{
        ball_sizes, coxeter_presentation, coxeter_triangle_engine, free_presentation, knuth_bendix, GroupEngine, KbCaps,
        DEFAULT_MEMORY_CAP,
    };

    #[test]
    fn free_group_counts() {
        let sys = knuth_bendix(&free_presentation(2).unwrap(), KbCaps::default()).unwrap();
        let b = ball_sizes_from_normal_forms(&sys, 15).unwrap();
        for (n, &x) in b.iter().enumerate() {
            assert_eq!(x, 2 * 3u128.pow(n as u32) - 1);
        }
    }

    #[test]
    fn matches_matrix_enumeration() {
        let sys = knuth_bendix(&coxeter_presentation(2, 3, 7).unwrap(), KbCaps::default()).unwrap();
        let counted = ball_sizes_from_normal_forms(&sys, 25).unwrap();
        let e = coxeter_triangle_engine(2, 3, 7).unwrap();
        let bfs = ball_sizes(&e, &e.default_generating_set(), 25, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(counted, bfs.sizes.iter().map(|&x| x as u128).collect::<Vec<_>>());
    }

    #[test]
    fn finite_group_spheres_vanish() {
        let sys = knuth_bendix(&coxeter_presentation(2, 3, 3).unwrap(), KbCaps::default()).unwrap();
        let b = ball_sizes_from_normal_forms(&sys, 12).unwrap();
        assert_eq!(*b.last().unwrap(), 24);
    }

    #[test]
    fn incomplete_systems_are_rejected() {
        let sys = knuth_bendix(&coxeter_presentation(2, 3, 7).unwrap(), KbCaps { max_rules: 3, max_len: 64 }).unwrap();
        assert!(normal_form_counts(&sys, 3).is_err());
    }
}
