//! Shortlex Knuth–Bendix completion for group presentations.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};

use super::engine::{EngineKind, GroupEngine};
use super::presentation::FpGroupPresentation;
use super::word::{invert_word, shortlex_cmp, Alphabet, Letter, Word};
use super::GroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KbCaps {
    pub max_rules: usize,
    pub max_len: usize,
}

impl Default for KbCaps {
    fn default() -> Self {
        Self { max_rules: 20_000, max_len: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Completed,
    RuleCap,
    LengthCap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionStats {
    pub rules_added: usize,
    pub critical_pairs: usize,
    pub final_rules: usize,
    pub longest_lhs: usize,
    pub stop: StopReason,
}

/// Interreduced shortlex rewriting rules `lhs → rhs` with `lhs > rhs`.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    alphabet: Alphabet,
    rules: Vec<(Word, Word)>,
    index: HashMap<Word, Word>,
    lengths: BTreeSet<usize>,
    confluent: bool,
    stats: CompletionStats,
}

impl RewritingSystem {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    pub fn stats(&self) -> &CompletionStats {
        &self.stats
    }

    pub fn reduce(&self, w: &[Letter]) -> Word {
        reduce_with(&self.index, &self.lengths, w)
    }

    /// Checks every critical pair directly; independent of how the system
    /// was produced.
    pub fn verify_local_confluence(&self) -> bool {
        for (l1, r1) in &self.rules {
            for (l2, r2) in &self.rules {
                for (a, b) in overlaps(l1, r1, l2, r2) {
                    if self.reduce(&a) != self.reduce(&b) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn reduce_with(index: &HashMap<Word, Word>, lengths: &BTreeSet<usize>, w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
    while let Some(l) = pending.pop() {
        out.push(l);
        for &len in lengths {
            if len > out.len() {
                break;
            }
            let start = out.len() - len;
            if let Some(rhs) = index.get(&out[start..]) {
                out.truncate(start);
                pending.extend(rhs.iter().rev());
                break;
            }
        }
    }
    out
}

/// Critical pairs from proper overlaps of `l1` (suffix) with `l2` (prefix).
fn overlaps(l1: &[Letter], r1: &[Letter], l2: &[Letter], r2: &[Letter]) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            // word = l1[..n-k] · l2
            let mut a = r1.to_vec();
            a.extend_from_slice(&l2[k..]);
            let mut b = l1[..l1.len() - k].to_vec();
            b.extend_from_slice(r2);
            out.push((a, b));
        }
    }
    out
}

fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

struct Completion {
    slots: Vec<Option<(Word, Word)>>,
    index: HashMap<Word, Word>,
    lengths: BTreeSet<usize>,
    length_counts: HashMap<usize, usize>,
    queue: VecDeque<(Word, Word)>,
    caps: KbCaps,
    stats: CompletionStats,
    /// Current bound on left-hand side length; longer rules wait in `deferred`.
    limit: usize,
    deferred: Vec<(Word, Word)>,
}

impl Completion {
    fn reduce(&self, w: &[Letter]) -> Word {
        reduce_with(&self.index, &self.lengths, w)
    }

    fn live(&self) -> usize {
        self.index.len()
    }

    fn remove_slot(&mut self, i: usize) -> (Word, Word) {
        let (l, r) = self.slots[i].take().expect("live slot");
        self.index.remove(&l);
        let n = self.length_counts.get_mut(&l.len()).expect("length count");
        *n -= 1;
        if *n == 0 {
            self.length_counts.remove(&l.len());
            self.lengths.remove(&l.len());
        }
        (l, r)
    }

    fn insert(&mut self, l: Word, r: Word) {
        self.lengths.insert(l.len());
        *self.length_counts.entry(l.len()).or_default() += 1;
        self.index.insert(l.clone(), r.clone());
        self.slots.push(Some((l, r)));
        self.stats.rules_added += 1;
        self.stats.longest_lhs = self.stats.longest_lhs.max(self.slots.last().unwrap().as_ref().unwrap().0.len());
    }

    /// Drains the equation queue; returns `false` once the rule cap is hit.
    fn process_queue(&mut self) -> bool {
        while let Some((u, v)) = self.queue.pop_front() {
            let u = self.reduce(&u);
            let v = self.reduce(&v);
            let (l, r) = match shortlex_cmp(&u, &v) {
                Ordering::Equal => continue,
                Ordering::Greater => (u, v),
                Ordering::Less => (v, u),
            };
            if l.len() > self.limit {
                self.deferred.push((l, r));
                continue;
            }
            // Interreduce: rules whose lhs contains l go back to the queue.
            for i in 0..self.slots.len() {
                let Some((li, _)) = &self.slots[i] else { continue };
                if contains(li, &l) {
                    let (li, ri) = self.remove_slot(i);
                    self.queue.push_back((li, ri));
                }
            }
            self.insert(l.clone(), r.clone());
            // Keep right-hand sides normal.
            for i in 0..self.slots.len() {
                let Some((li, ri)) = &self.slots[i] else { continue };
                if contains(ri, &l) {
                    let li = li.clone();
                    let nr = self.reduce(ri);
                    self.index.insert(li.clone(), nr.clone());
                    self.slots[i] = Some((li, nr));
                }
            }
            if self.live() > self.caps.max_rules {
                return false;
            }
        }
        true
    }
}

/// Runs shortlex completion. Exceeding a cap yields a system with the
/// confluent flag cleared rather than an error.
pub fn knuth_bendix(p: &FpGroupPresentation, caps: KbCaps) -> Result<RewritingSystem, GroupError> {
    if caps.max_rules == 0 || caps.max_len == 0 {
        return Err(GroupError::Domain("completion caps must be positive".into()));
    }
    let alphabet = p.alphabet().clone();
    let mut c = Completion {
        slots: Vec::new(),
        index: HashMap::new(),
        lengths: BTreeSet::new(),
        length_counts: HashMap::new(),
        queue: VecDeque::new(),
        caps,
        stats: CompletionStats {
            rules_added: 0,
            critical_pairs: 0,
            final_rules: 0,
            longest_lhs: 0,
            stop: StopReason::Completed,
        },
        limit: 0,
        deferred: Vec::new(),
    };
    for g in 0..alphabet.rank() {
        let (x, xi) = (Letter::generator(g), Letter::inverse_of_generator(g));
        c.queue.push_back((vec![x, xi], Vec::new()));
        c.queue.push_back((vec![xi, x], Vec::new()));
    }
    let mut relators: Vec<Word> = p.relators().to_vec();
    relators.sort_by(|a, b| shortlex_cmp(a, b));
    c.limit = relators.iter().map(Vec::len).max().unwrap_or(2).max(2).min(caps.max_len);
    for r in relators {
        c.queue.push_back((r, Vec::new()));
    }

    // Complete up to the current length bound, then raise the bound and
    // retry the deferred equations until nothing is deferred.
    let mut ok = c.process_queue();
    let mut i = 0;
    'outer: while ok {
        while i < c.slots.len() {
            for j in 0..=i {
                let (Some(ri), Some(rj)) = (c.slots[i].clone(), c.slots[j].clone()) else { continue };
                let mut pairs = overlaps(&ri.0, &ri.1, &rj.0, &rj.1);
                if i != j {
                    pairs.extend(overlaps(&rj.0, &rj.1, &ri.0, &ri.1));
                }
                c.stats.critical_pairs += pairs.len();
                pairs.sort_by_key(|(a, b)| a.len().max(b.len()));
                c.queue.extend(pairs);
                if !c.process_queue() {
                    ok = false;
                    break 'outer;
                }
                if c.slots[i].is_none() {
                    break;
                }
            }
            i += 1;
        }
        if c.deferred.is_empty() {
            break;
        }
        if c.limit >= caps.max_len {
            break;
        }
        c.limit = (c.limit * 3 / 2).max(c.limit + 1).min(caps.max_len);
        c.queue.extend(c.deferred.drain(..));
        ok = c.process_queue();
    }

    c.stats.stop = if !ok {
        StopReason::RuleCap
    } else if !c.deferred.is_empty() {
        StopReason::LengthCap
    } else {
        StopReason::Completed
    };
    let mut rules: Vec<(Word, Word)> = c.slots.into_iter().flatten().collect();
    rules.sort_by(|a, b| shortlex_cmp(&a.0, &b.0));
    c.stats.final_rules = rules.len();
    Ok(RewritingSystem {
        alphabet,
        confluent: c.stats.stop == StopReason::Completed,
        index: c.index,
        lengths: c.lengths,
        rules,
        stats: c.stats,
    })
}

/// Group engine backed by a rewriting system; elements are reduced words.
#[derive(Clone, Debug)]
pub struct RewritingEngine {
    system: RewritingSystem,
}

impl RewritingEngine {
    pub fn new(system: RewritingSystem) -> Self {
        Self { system }
    }

    pub fn from_presentation(p: &FpGroupPresentation, caps: KbCaps) -> Result<Self, GroupError> {
        Ok(Self::new(knuth_bendix(p, caps)?))
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }
}

impl GroupEngine for RewritingEngine {
    type Elem = Word;

    fn kind(&self) -> EngineKind {
        EngineKind::Rewriting
    }

    fn alphabet(&self) -> &Alphabet {
        &self.system.alphabet
    }

    fn identity(&self) -> Word {
        Vec::new()
    }

    fn letter(&self, l: Letter) -> Result<Word, GroupError> {
        Ok(self.system.reduce(&[l]))
    }

    fn compose(&self, a: &Word, b: &Word) -> Result<Word, GroupError> {
        let mut w = a.clone();
        w.extend_from_slice(b);
        Ok(self.system.reduce(&w))
    }

    fn invert(&self, a: &Word) -> Result<Word, GroupError> {
        Ok(self.system.reduce(&invert_word(a)))
    }

    fn key(&self, a: &Word) -> String {
        self.system.alphabet.display(a).to_string()
    }

    fn is_exact(&self) -> bool {
        self.system.confluent
    }

    fn default_generating_set(&self) -> Vec<Word> {
        self.alphabet().letters().into_iter().map(|l| vec![l]).collect()
    }

    fn normalize(&self, w: &[Letter]) -> Result<Word, GroupError> {
        if let Some(l) = w.iter().find(|l| l.generator_index() >= self.alphabet().rank()) {
            return Err(GroupError::Input(format!("letter code {} outside the alphabet", l.0)));
        }
        Ok(self.system.reduce(w))
    }
}
