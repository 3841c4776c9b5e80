use std::fmt;
use std::path::{Path, PathBuf};

use growthlab_core::groups::{FpGroupPresentation, PresentationFile};
use serde::de::DeserializeOwned;

/// A file that could not be read or parsed, with a 1-based line when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub path: PathBuf,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.path.display())?;
        if let Some(l) = self.line {
            write!(f, ":{l}")?;
            if let Some(c) = self.column {
                write!(f, ":{c}")?;
            }
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError {
        path: path.into(),
        line: None,
        column: None,
        message: e.to_string(),
    })
}

/// Reads and deserializes a JSON file, reporting syntax and schema errors
/// with their position.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<(T, String), InputError> {
    let text = read(path)?;
    match serde_json::from_str(&text) {
        Ok(v) => Ok((v, text)),
        Err(e) => Err(InputError {
            path: path.into(),
            line: Some(e.line()),
            column: Some(e.column()),
            message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
        }),
    }
}

/// Line of the `occurrence`-th (0-based) appearance of `needle` after
/// `after`, 1-based.
fn line_of(text: &str, after: &str, needle: &str, occurrence: usize) -> Option<usize> {
    let start = text.find(after).unwrap_or(0);
    let (pos, _) = text[start..].match_indices(needle).nth(occurrence)?;
    Some(text[..start + pos].matches('\n').count() + 1)
}

#[derive(Clone, Debug)]
pub struct ParsedPresentation {
    pub presentation: FpGroupPresentation,
    /// One per relator that free reduction changed or removed.
    pub warnings: Vec<String>,
}

/// Reads `{"generators":[...], "relators":[...]}`, rejecting duplicate or
/// malformed generator names and freely reducing relators.
pub fn parse_presentation_file(path: &Path) -> Result<ParsedPresentation, InputError> {
    let (file, text): (PresentationFile, String) = read_json(path)?;
    let err = |line: Option<usize>, message: String| InputError { path: path.into(), line, column: None, message };
    for (i, g) in file.generators.iter().enumerate() {
        let quoted = serde_json::to_string(g).expect("strings serialize");
        if g.chars().count() != 1 {
            return Err(err(
                line_of(&text, "\"generators\"", &quoted, 0),
                format!("generator name {quoted} is not a single letter"),
            ));
        }
        if file.generators[..i].contains(g) {
            return Err(err(line_of(&text, "\"generators\"", &quoted, 1), format!("duplicate generator {quoted}")));
        }
    }
    for r in &file.relators {
        let quoted = serde_json::to_string(r).expect("strings serialize");
        if let Some(c) = r.chars().find(|c| !file.generators.iter().any(|g| g.eq_ignore_ascii_case(&c.to_string()))) {
            return Err(err(
                line_of(&text, "\"relators\"", &quoted, 0),
                format!("relator {quoted} uses '{c}', which is not a generator or inverse"),
            ));
        }
    }
    let (presentation, warnings) = FpGroupPresentation::from_file(&file).map_err(|e| err(None, e.to_string()))?;
    Ok(ParsedPresentation { presentation, warnings })
}
