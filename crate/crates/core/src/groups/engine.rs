use std::fmt;
use std::hash::Hash;

use super::word::{Alphabet, Letter, Word};
use super::GroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Rewriting,
    CoxeterTits,
    VonDyck,
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Rewriting => "rewriting",
            EngineKind::CoxeterTits => "coxeter-tits",
            EngineKind::VonDyck => "von-dyck",
        })
    }
}

/// A solved word problem: canonical forms with multiplication and inversion.
///
/// Two words are equal in the group iff their normal forms are equal,
/// provided [`GroupEngine::is_exact`] holds.
pub trait GroupEngine: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Send + Sync + fmt::Debug;

    fn kind(&self) -> EngineKind;

    fn alphabet(&self) -> &Alphabet;

    fn identity(&self) -> Self::Elem;

    fn letter(&self, l: Letter) -> Result<Self::Elem, GroupError>;

    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, GroupError>;

    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem, GroupError>;

    /// Canonical serialization of an element.
    fn key(&self, a: &Self::Elem) -> String;

    /// Whether equal group elements always have equal normal forms.
    fn is_exact(&self) -> bool;

    /// Generating set used for growth runs when none is supplied.
    fn default_generating_set(&self) -> Vec<Word>;

    fn normalize(&self, w: &[Letter]) -> Result<Self::Elem, GroupError> {
        let mut acc = self.identity();
        for &l in w {
            if l.generator_index() >= self.alphabet().rank() {
                return Err(GroupError::Input(format!("letter code {} outside the alphabet", l.0)));
            }
            acc = self.compose(&acc, &self.letter(l)?)?;
        }
        Ok(acc)
    }

    fn parse_word(&self, s: &str) -> Result<Word, GroupError> {
        self.alphabet().parse(s)
    }

    fn normalize_str(&self, s: &str) -> Result<Self::Elem, GroupError> {
        self.normalize(&self.parse_word(s)?)
    }

    fn equal_words(&self, u: &[Letter], v: &[Letter]) -> Result<bool, GroupError> {
        Ok(self.normalize(u)? == self.normalize(v)?)
    }
}
