use serde::{Deserialize, Serialize};

use super::word::{free_reduce, invert_word, Alphabet, Letter, Word};
use super::GroupError;

/// JSON form: `{"generators":["a","b"], "relators":["aa","bbb"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
}

/// Finitely presented group: generators plus freely reduced relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGroupPresentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl FpGroupPresentation {
    /// Builds a presentation from already reduced relators.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, GroupError> {
        for r in &relators {
            if r.iter().any(|l| l.generator_index() >= alphabet.rank()) {
                return Err(GroupError::Input("relator uses a letter outside the alphabet".into()));
            }
            if free_reduce(r).len() != r.len() {
                return Err(GroupError::Input(format!(
                    "relator {} is not freely reduced",
                    alphabet.format(r)
                )));
            }
        }
        Ok(Self { alphabet, relators })
    }

    /// Parses string relators, freely reducing them. Returns the
    /// presentation and a warning per relator that changed or vanished.
    pub fn parse(
        generators: &[String],
        relators: &[String],
    ) -> Result<(Self, Vec<String>), GroupError> {
        let mut names = Vec::with_capacity(generators.len());
        for g in generators {
            let mut chars = g.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => names.push(c),
                _ => {
                    return Err(GroupError::Input(format!(
                        "generator name {g:?} is not a single letter"
                    )))
                }
            }
        }
        let alphabet = Alphabet::new(names)?;
        let mut warnings = Vec::new();
        let mut words = Vec::new();
        for r in relators {
            let w = alphabet.parse(r)?;
            let reduced = free_reduce(&w);
            if reduced.is_empty() {
                warnings.push(format!("relator {r:?} reduces to the empty word and was dropped"));
                continue;
            }
            if reduced.len() != w.len() {
                warnings.push(format!(
                    "relator {r:?} freely reduced to {:?}",
                    alphabet.format(&reduced)
                ));
            }
            words.push(reduced);
        }
        Ok((Self { alphabet, relators: words }, warnings))
    }

    pub fn from_file(file: &PresentationFile) -> Result<(Self, Vec<String>), GroupError> {
        Self::parse(&file.generators, &file.relators)
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            generators: self.alphabet.names().iter().map(|c| c.to_string()).collect(),
            relators: self.relators.iter().map(|r| self.alphabet.format(r)).collect(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.rank()
    }

    /// Exponent-sum vector of each relator, one row per relator.
    pub fn exponent_sums(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.alphabet.rank()];
                for l in r {
                    row[l.generator_index()] += if l.is_inverse() { -1 } else { 1 };
                }
                row
            })
            .collect()
    }
}

fn power(l: Letter, k: usize) -> Word {
    vec![l; k]
}

fn repeat(w: &[Letter], k: usize) -> Word {
    w.iter().copied().cycle().take(w.len() * k).collect()
}

/// Free group on `k` generators `a, b, …`.
pub fn free_presentation(k: usize) -> Result<FpGroupPresentation, GroupError> {
    FpGroupPresentation::new(Alphabet::first(k)?, Vec::new())
}

/// `⟨γ₁, γ₂, γ₃ | γ₁^p = γ₂^q = γ₃^r = γ₁γ₂γ₃⟩` with generators `a, b, c`,
/// encoded by the relators `γᵢ^{eᵢ}(γ₁γ₂γ₃)⁻¹`.
pub fn brieskorn_presentation(p: usize, q: usize, r: usize) -> Result<FpGroupPresentation, GroupError> {
    if p < 2 || q < 2 || r < 2 {
        return Err(GroupError::Domain(format!("exponents must be at least 2, got ({p},{q},{r})")));
    }
    let alphabet = Alphabet::first(3)?;
    let product: Word = (0..3).map(Letter::generator).collect();
    let inv = invert_word(&product);
    let relators = [p, q, r]
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let mut w = power(Letter::generator(i), e);
            w.extend_from_slice(&inv);
            free_reduce(&w)
        })
        .collect();
    FpGroupPresentation::new(alphabet, relators)
}

/// Coxeter triangle group `⟨a, b, c | a², b², c², (ab)^p, (ac)^q, (bc)^r⟩`.
pub fn coxeter_presentation(p: usize, q: usize, r: usize) -> Result<FpGroupPresentation, GroupError> {
    if p < 2 || q < 2 || r < 2 {
        return Err(GroupError::Domain(format!("Coxeter labels must be at least 2, got ({p},{q},{r})")));
    }
    let alphabet = Alphabet::first(3)?;
    let g = Letter::generator;
    let mut relators: Vec<Word> = (0..3).map(|i| power(g(i), 2)).collect();
    relators.push(repeat(&[g(0), g(1)], p));
    relators.push(repeat(&[g(0), g(2)], q));
    relators.push(repeat(&[g(1), g(2)], r));
    FpGroupPresentation::new(alphabet, relators)
}

/// Rotation subgroup of the Coxeter group with labels (p, q, r), on the
/// generators `x = s₁s₂`, `y = s₂s₃`: `⟨x, y | x^p, y^r, (xy)^q⟩`
/// (`xy = s₁s₃` has order q).
pub fn von_dyck_presentation(p: usize, q: usize, r: usize) -> Result<FpGroupPresentation, GroupError> {
    if p < 2 || q < 2 || r < 2 {
        return Err(GroupError::Domain(format!("orders must be at least 2, got ({p},{q},{r})")));
    }
    let alphabet = Alphabet::new(['x', 'y'])?;
    let (x, y) = (Letter::generator(0), Letter::generator(1));
    let relators = vec![power(x, p), power(y, r), repeat(&[x, y], q)];
    FpGroupPresentation::new(alphabet, relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brieskorn_237() {
        let p = brieskorn_presentation(2, 3, 7).unwrap();
        let f = p.to_file();
        assert_eq!(f.relators, ["aaCBA", "bbbCBA", "ccccccBA"]);
        assert_eq!(p.exponent_sums(), vec![vec![1, -1, -1], vec![-1, 2, -1], vec![-1, -1, 6]]);
        assert!(brieskorn_presentation(1, 3, 7).is_err());
    }

    #[test]
    fn brieskorn_relator_reduces_when_exponent_is_small() {
        let p = brieskorn_presentation(2, 2, 2).unwrap();
        assert_eq!(p.to_file().relators, ["aaCBA", "bbCBA", "cBA"]);
        assert_eq!(p.exponent_sums()[2], vec![-1, -1, 1]);
    }

    #[test]
    fn parse_warns_and_drops() {
        let (p, warnings) = FpGroupPresentation::parse(
            &["a".into(), "b".into()],
            &["aA".into(), "abBa".into()],
        )
        .unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.alphabet().format(&p.relators()[0]), "aa");
        assert_eq!(warnings.len(), 2);
    }

    #[test]
    fn parse_rejects_duplicates() {
        let err = FpGroupPresentation::parse(&["a".into(), "a".into()], &[]);
        assert!(matches!(err, Err(GroupError::Input(_))));
        let err = FpGroupPresentation::parse(&["ab".into()], &[]);
        assert!(matches!(err, Err(GroupError::Input(_))));
    }

    #[test]
    fn von_dyck_shape() {
        let p = von_dyck_presentation(2, 7, 3).unwrap();
        assert_eq!(p.to_file().relators, ["xx", "yyy", "xyxyxyxyxyxyxy"]);
    }
}
