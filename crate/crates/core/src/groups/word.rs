use std::fmt;

use super::GroupError;

/// A generator or its formal inverse: code `2g` is generator `g`, `2g + 1`
/// its inverse. Sorting letters by code gives the shortlex letter order
/// (generators in presentation order, each inverse right after it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u16);

impl Letter {
    pub fn generator(g: usize) -> Self {
        Letter((2 * g) as u16)
    }

    pub fn inverse_of_generator(g: usize) -> Self {
        Letter((2 * g + 1) as u16)
    }

    pub fn generator_index(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

pub type Word = Vec<Letter>;

/// Ordered single-letter generator names; uppercase denotes the inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: impl IntoIterator<Item = char>) -> Result<Self, GroupError> {
        let names: Vec<char> = names.into_iter().collect();
        for (i, &c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(GroupError::Input(format!(
                    "generator name '{c}' must be a single lowercase ASCII letter"
                )));
            }
            if names[..i].contains(&c) {
                return Err(GroupError::Input(format!("duplicate generator name '{c}'")));
            }
        }
        Ok(Self { names })
    }

    /// The first `k` letters of the alphabet starting at `a`.
    pub fn first(k: usize) -> Result<Self, GroupError> {
        if k > 26 {
            return Err(GroupError::Domain(format!("at most 26 generators, asked for {k}")));
        }
        Self::new((0..k).map(|i| (b'a' + i as u8) as char))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    /// All letters: every generator followed by its inverse.
    pub fn letters(&self) -> Vec<Letter> {
        (0..2 * self.rank()).map(|c| Letter(c as u16)).collect()
    }

    pub fn letter(&self, c: char) -> Result<Letter, GroupError> {
        let lower = c.to_ascii_lowercase();
        let g = self
            .names
            .iter()
            .position(|&n| n == lower)
            .ok_or_else(|| GroupError::Input(format!("unknown letter '{c}'")))?;
        Ok(if c.is_ascii_uppercase() { Letter::inverse_of_generator(g) } else { Letter::generator(g) })
    }

    /// Parses a word; `""`, `"1"` and `"e"` (when `e` is not a generator)
    /// denote the identity.
    pub fn parse(&self, s: &str) -> Result<Word, GroupError> {
        let s = s.trim();
        if s.is_empty() || s == "1" || (s == "e" && !self.names.contains(&'e')) {
            return Ok(Vec::new());
        }
        s.chars().filter(|c| !c.is_whitespace()).map(|c| self.letter(c)).collect()
    }

    pub fn char_of(&self, l: Letter) -> char {
        let c = self.names[l.generator_index()];
        if l.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn format(&self, w: &[Letter]) -> String {
        w.iter().map(|&l| self.char_of(l)).collect()
    }

    pub fn display<'a>(&'a self, w: &'a [Letter]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Alphabet, &'a [Letter]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.1.is_empty() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", self.0.format(self.1))
                }
            }
        }
        D(self, w)
    }
}

/// Cancels adjacent `x x⁻¹` pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Shortlex comparison: shorter first, then lexicographic by letter code.
pub fn shortlex_cmp(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
