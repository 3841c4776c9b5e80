use growthlab_core::groups::{
    brieskorn_presentation, coxeter_presentation, coxeter_triangle_engine, free_presentation, von_dyck_engine,
    von_dyck_presentation, FpGroupPresentation, GroupError, TitsEngine,
};
use growthlab_core::topobook::PlumbingTree;

/// Named groups: `coxeter-p-q-r`, `von-dyck-p-q-r`, `brieskorn-p-q-r`,
/// `free-k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupPreset {
    Coxeter(usize, usize, usize),
    VonDyck(usize, usize, usize),
    Brieskorn(usize, usize, usize),
    Free(usize),
}

fn numbers(rest: &str, count: usize, name: &str) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = rest.split('-').collect();
    if parts.len() != count {
        return Err(format!("preset {name} expects {count} numbers"));
    }
    parts.iter().map(|p| p.parse::<usize>().map_err(|_| format!("'{p}' is not a number in preset {name}"))).collect()
}

impl std::str::FromStr for GroupPreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let triple = |rest: &str| numbers(rest, 3, s).map(|v| (v[0], v[1], v[2]));
        if let Some(rest) = s.strip_prefix("coxeter-") {
            let (p, q, r) = triple(rest)?;
            Ok(GroupPreset::Coxeter(p, q, r))
        } else if let Some(rest) = s.strip_prefix("von-dyck-") {
            let (p, q, r) = triple(rest)?;
            Ok(GroupPreset::VonDyck(p, q, r))
        } else if let Some(rest) = s.strip_prefix("brieskorn-") {
            let (p, q, r) = triple(rest)?;
            Ok(GroupPreset::Brieskorn(p, q, r))
        } else if let Some(rest) = s.strip_prefix("free-") {
            Ok(GroupPreset::Free(numbers(rest, 1, s)?[0]))
        } else {
            Err(format!("unknown group preset '{s}'"))
        }
    }
}

impl std::fmt::Display for GroupPreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupPreset::Coxeter(p, q, r) => write!(f, "coxeter-{p}-{q}-{r}"),
            GroupPreset::VonDyck(p, q, r) => write!(f, "von-dyck-{p}-{q}-{r}"),
            GroupPreset::Brieskorn(p, q, r) => write!(f, "brieskorn-{p}-{q}-{r}"),
            GroupPreset::Free(k) => write!(f, "free-{k}"),
        }
    }
}

impl GroupPreset {
    pub fn presentation(self) -> Result<FpGroupPresentation, GroupError> {
        match self {
            GroupPreset::Coxeter(p, q, r) => coxeter_presentation(p, q, r),
            GroupPreset::VonDyck(p, q, r) => von_dyck_presentation(p, q, r),
            GroupPreset::Brieskorn(p, q, r) => brieskorn_presentation(p, q, r),
            GroupPreset::Free(k) => free_presentation(k),
        }
    }

    /// The exact matrix engine, for the triangle-group presets.
    pub fn tits_engine(self) -> Option<Result<TitsEngine, GroupError>> {
        match self {
            GroupPreset::Coxeter(p, q, r) => Some(coxeter_triangle_engine(p, q, r)),
            GroupPreset::VonDyck(p, q, r) => Some(von_dyck_engine(p, q, r)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlumbingPreset {
    E8,
    TwoVertex,
}

impl std::str::FromStr for PlumbingPreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "e8-plumbing-tree" => Ok(PlumbingPreset::E8),
            "two-vertex-plumbing" => Ok(PlumbingPreset::TwoVertex),
            _ => Err(format!("unknown plumbing preset '{s}'")),
        }
    }
}

impl std::fmt::Display for PlumbingPreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlumbingPreset::E8 => "e8-plumbing-tree",
            PlumbingPreset::TwoVertex => "two-vertex-plumbing",
        })
    }
}

impl PlumbingPreset {
    pub fn default_dim(self) -> usize {
        match self {
            PlumbingPreset::E8 => 4,
            PlumbingPreset::TwoVertex => 3,
        }
    }

    pub fn tree(self, n: usize) -> PlumbingTree {
        match self {
            PlumbingPreset::E8 => PlumbingTree::e8(n),
            PlumbingPreset::TwoVertex => PlumbingTree::two_vertex(n),
        }
    }
}
