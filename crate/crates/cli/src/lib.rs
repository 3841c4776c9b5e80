//! Command-line front end: reads inputs, runs library operations and
//! writes text or JSON reports.

mod commands;
mod input;
mod presets;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use growthlab_core::fds::GrowthMethod;

pub use input::{parse_presentation_file, read_json, InputError, ParsedPresentation};
pub use presets::{GroupPreset, PlumbingPreset};
pub use report::{emit_report, OutputFormat, ReportDocument};

#[derive(Debug, Parser)]
#[command(name = "growthlab", version, about = "Growth rates of groups, algebras and filtered systems")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true, env = "GROWTHLAB_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ball sizes of a group and their exponential growth rate.
    GroupGrowth(GroupGrowthArgs),
    /// Abelianization by Smith normal form.
    GroupAbelianize(GroupSource),
    /// Trivial H₁ and deficiency checks for a presentation.
    GroupKervaire(GroupSource),
    /// Algebraic growth of a finite set in the group algebra over 𝔽₂.
    AlgGrowth(AlgGrowthArgs),
    /// Growth of a tabulated filtered directed system.
    FdsGrowth(FdsGrowthArgs),
    /// Checks an interleaving candidate between two tabulated systems.
    FdsInterleave(FdsInterleaveArgs),
    /// Spectral number of an element of a tabulated system.
    FdsSpectral(FdsSpectralArgs),
    /// Checks a stretching element and the growth comparison it gives.
    ModuleStretch(ModuleStretchArgs),
    /// Homology of an integral chain complex.
    ChainHomology(ChainHomologyArgs),
    /// Homology tables of a plumbing tree.
    Plumbing(PlumbingArgs),
    /// Symplectic growth and Reeb entropy lower bounds.
    EntropyBound(EntropyBoundArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GroupSource {
    /// Presentation JSON file.
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    pub input: Option<PathBuf>,
    /// coxeter-p-q-r, von-dyck-p-q-r, brieskorn-p-q-r or free-k.
    #[arg(long)]
    pub preset: Option<GroupPreset>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EngineChoice {
    /// Matrices for triangle-group presets, rewriting otherwise.
    Auto,
    Rewriting,
    Tits,
}

#[derive(Debug, Clone, Args)]
pub struct EngineOpts {
    #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
    pub engine: EngineChoice,
    /// Rule cap for Knuth–Bendix completion.
    #[arg(long, default_value_t = 20_000)]
    pub kb_max_rules: usize,
    /// Longest rule side kept during completion.
    #[arg(long, default_value_t = 64)]
    pub kb_max_len: usize,
}

#[derive(Debug, Clone, Args)]
pub struct WindowOpts {
    /// Growth window as `lo,hi`; the upper half of [1, n_max] by default.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(usize, usize)>,
    #[arg(long, default_value = "slope")]
    pub method: GrowthMethod,
}

#[derive(Debug, Clone, Args)]
pub struct GroupGrowthArgs {
    #[command(flatten)]
    pub source: GroupSource,
    #[command(flatten)]
    pub engine: EngineOpts,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    #[command(flatten)]
    pub window: WindowOpts,
    /// Comma-separated generating words; all letters and inverses by default.
    #[arg(long)]
    pub generating_set: Option<String>,
    /// Largest number of ball elements kept in memory.
    #[arg(long, default_value_t = growthlab_core::groups::DEFAULT_MEMORY_CAP)]
    pub memory_cap: usize,
    /// Count irreducible words of the completed rewriting system instead of
    /// enumerating the ball. Needs a confluent system and the default
    /// generating set.
    #[arg(long, conflicts_with = "generating_set")]
    pub normal_forms: bool,
}

#[derive(Debug, Clone, Args)]
pub struct AlgGrowthArgs {
    #[command(flatten)]
    pub source: GroupSource,
    #[command(flatten)]
    pub engine: EngineOpts,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[command(flatten)]
    pub window: WindowOpts,
    /// Comma-separated algebra elements such as `a,b+ab`; the generators
    /// and their inverses by default.
    #[arg(long)]
    pub generating_set: Option<String>,
    /// Radius of the word-length ball used for levels and labels.
    #[arg(long, default_value_t = 4)]
    pub radius: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FdsGrowthArgs {
    /// Tabulated system JSON file.
    pub input: PathBuf,
    /// Last integer level sampled; the last breakpoint by default.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[command(flatten)]
    pub window: WindowOpts,
}

#[derive(Debug, Clone, Args)]
pub struct FdsInterleaveArgs {
    /// Tabulated system V.
    pub v: PathBuf,
    /// Tabulated system W.
    pub w: PathBuf,
    /// Candidate maps JSON file.
    #[arg(long)]
    pub candidate: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FdsSpectralArgs {
    /// Tabulated system JSON file.
    pub input: PathBuf,
    /// Breakpoint index the vector lives at.
    #[arg(long)]
    pub level: usize,
    /// Coordinates as a 0/1 string, e.g. `0110`.
    #[arg(long)]
    pub vector: String,
}

#[derive(Debug, Clone, Args)]
pub struct ModuleStretchArgs {
    #[command(flatten)]
    pub source: GroupSource,
    #[command(flatten)]
    pub engine: EngineOpts,
    /// Module JSON file; the algebra itself when absent.
    #[arg(long, conflicts_with = "shift")]
    pub module: Option<PathBuf>,
    /// Use the algebra with levels raised by this amount.
    #[arg(long)]
    pub shift: Option<usize>,
    /// The candidate stretching element.
    #[arg(long, default_value = "1")]
    pub m0: String,
    /// Levels `lo,hi` on which the comparison is checked.
    #[arg(long, value_parser = parse_window, default_value = "0,5")]
    pub window: (usize, usize),
}

#[derive(Debug, Clone, Args)]
pub struct ChainHomologyArgs {
    /// Chain complex JSON file.
    pub input: PathBuf,
    /// Also test for the homology of this sphere.
    #[arg(long)]
    pub sphere_dim: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct PlumbingArgs {
    /// Plumbing tree JSON file.
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    pub input: Option<PathBuf>,
    /// e8-plumbing-tree or two-vertex-plumbing.
    #[arg(long)]
    pub preset: Option<PlumbingPreset>,
    /// Vertex dimension for presets.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct EntropyBoundArgs {
    /// Algebraic growth rate.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Largest level of the generating set.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub rho: f64,
    /// Maximum of the contact form's reparametrization factor.
    #[arg(long, allow_negative_numbers = true)]
    pub max_f: Option<f64>,
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once([',', ':']).ok_or_else(|| format!("window '{s}' is not of the form lo,hi"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("'{x}' is not a level"));
    let (lo, hi) = (p(a)?, p(b)?);
    if lo > hi {
        return Err(format!("window [{lo}, {hi}] is empty"));
    }
    Ok((lo, hi))
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns 0 on success, 1 on errors or failed checks, 2 on usage
/// errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let report = match cli.threads {
        Some(0) => {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return 2;
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli.command)),
            Err(e) => {
                let _ = writeln!(err, "error: cannot start thread pool: {e}");
                return 1;
            }
        },
        None => commands::dispatch(&cli.command),
    };
    let text = emit_report(&report, cli.format);
    for d in &report.diagnostics {
        if report.exit_status != 0 {
            let _ = writeln!(err, "{}: {d}", report.command);
        }
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    report.exit_status
}
