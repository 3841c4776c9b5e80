use std::sync::Arc;

use growthlab_core::exactlin::F2Vector;
use growthlab_core::fds::{
    check_interleaving, growth_rate, CandidateFile, FdsElement, FilteredSystem, GrowthEstimate, TabulatedFds,
    TabulatedFile,
};
use growthlab_core::groups::{
    abelianize, ball_sizes, ball_sizes_from_normal_forms, kervaire_check, AbelianInvariants, FpGroupPresentation, GroupEngine, KbCaps,
    RewritingEngine, TitsEngine,
};
use growthlab_core::growthalg::{
    algebraic_growth, default_window, stretching_check, module_growth_compare, FilteredAlgebra, FilteredModule,
    ModuleSpec,
};
use growthlab_core::topobook::{
    chain_homology, entropy_lower_bound, is_homology_sphere, plumbing_homology, symplectic_growth_lower_bound,
    ChainComplex, ChainComplexFile, EntropyBoundInput, PlumbingFile, PlumbingTree,
};
use serde_json::{json, Value};

use crate::input::{parse_presentation_file, read_json};
use crate::report::ReportDocument;
use crate::{
    AlgGrowthArgs, ChainHomologyArgs, Command, EngineChoice, EngineOpts, EntropyBoundArgs, FdsGrowthArgs,
    FdsInterleaveArgs, FdsSpectralArgs, GroupGrowthArgs, GroupSource, ModuleStretchArgs, PlumbingArgs, WindowOpts,
};

type Outcome = Result<(), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn dispatch(cmd: &Command) -> ReportDocument {
    let (name, f): (&str, &dyn Fn(&mut ReportDocument) -> Outcome) = match cmd {
        Command::GroupGrowth(a) => ("group-growth", &|r| group_growth(a, r)),
        Command::GroupAbelianize(a) => ("group-abelianize", &|r| group_abelianize(a, r)),
        Command::GroupKervaire(a) => ("group-kervaire", &|r| group_kervaire(a, r)),
        Command::AlgGrowth(a) => ("alg-growth", &|r| alg_growth(a, r)),
        Command::FdsGrowth(a) => ("fds-growth", &|r| fds_growth(a, r)),
        Command::FdsInterleave(a) => ("fds-interleave", &|r| fds_interleave(a, r)),
        Command::FdsSpectral(a) => ("fds-spectral", &|r| fds_spectral(a, r)),
        Command::ModuleStretch(a) => ("module-stretch", &|r| module_stretch(a, r)),
        Command::ChainHomology(a) => ("chain-homology", &|r| chain(a, r)),
        Command::Plumbing(a) => ("plumbing", &|r| plumbing(a, r)),
        Command::EntropyBound(a) => ("entropy-bound", &|r| entropy_bound(a, r)),
    };
    let mut report = ReportDocument::new(name);
    if let Err(e) = f(&mut report) {
        report.fail(format!("error: {e}"));
    }
    report
}

enum AnyEngine {
    Rewriting(RewritingEngine),
    Tits(TitsEngine),
}

macro_rules! with_engine {
    ($engine:expr, |$e:ident| $body:expr) => {
        match $engine {
            AnyEngine::Rewriting($e) => $body,
            AnyEngine::Tits($e) => $body,
        }
    };
}

fn presentation(src: &GroupSource, r: &mut ReportDocument) -> Result<FpGroupPresentation, String> {
    if let Some(p) = src.preset {
        r.input("preset", p.to_string());
        return p.presentation().map_err(err);
    }
    let path = src.input.as_ref().expect("clap requires an input or a preset");
    r.input("input", path.display().to_string());
    let parsed = parse_presentation_file(path).map_err(err)?;
    for w in parsed.warnings {
        r.diagnose(format!("warning: {w}"));
    }
    Ok(parsed.presentation)
}

fn build_engine(src: &GroupSource, opts: &EngineOpts, r: &mut ReportDocument) -> Result<AnyEngine, String> {
    let tits = src.preset.and_then(|p| p.tits_engine());
    let engine = match (opts.engine, tits) {
        (EngineChoice::Tits, None) => {
            return Err("the matrix engine only covers the coxeter and von-dyck presets".into());
        }
        (EngineChoice::Auto | EngineChoice::Tits, Some(t)) => {
            if let Some(p) = src.preset {
                r.input("preset", p.to_string());
            }
            AnyEngine::Tits(t.map_err(err)?)
        }
        _ => {
            let p = presentation(src, r)?;
            let caps = KbCaps { max_rules: opts.kb_max_rules, max_len: opts.kb_max_len };
            let e = RewritingEngine::from_presentation(&p, caps).map_err(err)?;
            let stats = e.system().stats();
            r.input("kb_max_rules", opts.kb_max_rules).input("kb_max_len", opts.kb_max_len);
            r.result("kb_rules", stats.final_rules).result("kb_stop", format!("{:?}", stats.stop).to_lowercase());
            if !e.is_exact() {
                r.diagnose(format!(
                    "completion stopped early ({:?}) with {} rules; distinct normal forms may name the same element, so counts are upper bounds",
                    stats.stop, stats.final_rules
                ));
            }
            AnyEngine::Rewriting(e)
        }
    };
    let kind = with_engine!(&engine, |e| e.kind().to_string());
    r.input("engine", kind);
    Ok(engine)
}

fn window_for(opts: &WindowOpts, n_max: usize, available: usize, r: &mut ReportDocument) -> (usize, usize) {
    let (lo, hi) = opts.window.unwrap_or_else(|| default_window(n_max));
    let hi_eff = hi.min(available);
    if hi_eff < hi {
        r.diagnose(format!("window clipped to level {hi_eff}, the last one computed"));
    }
    let w = (lo.min(hi_eff), hi_eff);
    r.input("window", json!([w.0, w.1])).input("method", opts.method.to_string());
    w
}

fn estimate_results(est: &GrowthEstimate, r: &mut ReportDocument) {
    r.result("rate", est.rate)
        .result("growth_base", est.rate.exp())
        .result("slope", est.slope)
        .result("slope_base", est.slope.exp())
        .result("last_ratio", est.last_ratio)
        .result("last_ratio_base", est.last_ratio.exp());
    if let Some(u) = est.certified_upper {
        r.result("certified_upper", u);
    }
}

fn group_growth(a: &GroupGrowthArgs, r: &mut ReportDocument) -> Outcome {
    if a.normal_forms {
        return group_growth_by_normal_forms(a, r);
    }
    let engine = build_engine(&a.source, &a.engine, r)?;
    r.input("n_max", a.n_max);
    with_engine!(engine, |e| group_growth_with(&e, a, r))
}

fn group_growth_by_normal_forms(a: &GroupGrowthArgs, r: &mut ReportDocument) -> Outcome {
    if a.engine.engine == EngineChoice::Tits {
        return Err("normal-form counting needs the rewriting engine".into());
    }
    if a.n_max == 0 {
        return Err("n_max must be at least 1".into());
    }
    let opts = EngineOpts { engine: EngineChoice::Rewriting, ..a.engine.clone() };
    let AnyEngine::Rewriting(e) = build_engine(&a.source, &opts, r)? else { unreachable!("rewriting was requested") };
    r.input("n_max", a.n_max).input("counting", "normal-forms");
    r.input("generating_set", e.default_generating_set().iter().map(|w| e.key(w)).collect::<Vec<_>>());
    let sizes: Vec<u64> = ball_sizes_from_normal_forms(e.system(), a.n_max)
        .map_err(err)?
        .into_iter()
        .map(|x| u64::try_from(x).map_err(|_| format!("ball size {x} does not fit in 64 bits")))
        .collect::<Result<_, _>>()?;
    let spheres: Vec<u64> = std::iter::once(1).chain(sizes.windows(2).map(|w| w[1] - w[0])).collect();
    let closed = spheres.iter().any(|&s| s == 0);
    r.input("exact", true);
    r.result("ball_sizes", sizes.clone()).result("sphere_sizes", spheres).result("closed", closed);
    if closed {
        r.result("group_order", *sizes.last().expect("n_max ≥ 1"));
    }
    let window = window_for(&a.window, a.n_max, a.n_max, r);
    let est = growth_rate(&sizes, window, a.window.method, true).map_err(err)?;
    estimate_results(&est, r);
    Ok(())
}

fn group_growth_with<E: GroupEngine>(e: &E, a: &GroupGrowthArgs, r: &mut ReportDocument) -> Outcome {
    let gens = match &a.generating_set {
        Some(s) => s.split(',').map(|w| e.parse_word(w.trim())).collect::<Result<Vec<_>, _>>().map_err(err)?,
        None => e.default_generating_set(),
    };
    let table = ball_sizes(e, &gens, a.n_max, a.memory_cap).map_err(err)?;
    r.input("generating_set", table.generating_set.clone()).input("exact", e.is_exact());
    r.result("ball_sizes", table.sizes.clone()).result("sphere_sizes", table.spheres.clone());
    r.result("closed", table.closed).result("truncated", table.truncated);
    if let Some(n) = table.closure_size() {
        r.result("group_order", n);
    }
    if table.truncated {
        r.diagnose(format!("memory cap {} reached; balls computed up to radius {}", a.memory_cap, table.radius()));
    }
    let window = window_for(&a.window, a.n_max, table.radius(), r);
    let est = growth_rate(&table.sizes, window, a.window.method, true).map_err(err)?;
    estimate_results(&est, r);
    if let Some((m, n)) = table.submultiplicativity_violation() {
        r.diagnose(format!("ball sizes are not submultiplicative at ({m}, {n})"));
    }
    Ok(())
}

fn invariants_json(inv: &AbelianInvariants) -> Value {
    let factors: Vec<Value> = inv
        .invariant_factors
        .iter()
        .map(|d| d.to_string().parse::<u64>().map_or_else(|_| json!(d.to_string()), |v| json!(v)))
        .collect();
    json!({"free_rank": inv.free_rank, "torsion": factors})
}

fn h1_text(inv: &AbelianInvariants) -> String {
    if inv.is_trivial() {
        "trivial".into()
    } else {
        inv.to_string()
    }
}

fn group_abelianize(a: &GroupSource, r: &mut ReportDocument) -> Outcome {
    let p = presentation(a, r)?;
    let inv = abelianize(&p);
    r.result("h1", h1_text(&inv)).result("free_rank", inv.free_rank);
    r.result("invariant_factors", invariants_json(&inv)["torsion"].clone());
    Ok(())
}

fn group_kervaire(a: &GroupSource, r: &mut ReportDocument) -> Outcome {
    let p = presentation(a, r)?;
    let k = kervaire_check(&p);
    r.result("h1", h1_text(&k.abelianization))
        .result("h1_trivial", k.h1_trivial)
        .result("generators", p.generator_count())
        .result("relators", p.relators().len())
        .result("deficiency_ok", k.deficiency_ok)
        .result("h2", "unknown");
    r.diagnose("H2 is not computed");
    if !k.h1_trivial {
        r.fail("H1 is not trivial");
    }
    if !k.deficiency_ok {
        r.fail("more relators than generators");
    }
    Ok(())
}

fn alg_growth(a: &AlgGrowthArgs, r: &mut ReportDocument) -> Outcome {
    let engine = build_engine(&a.source, &a.engine, r)?;
    r.input("n_max", a.n_max).input("radius", a.radius);
    with_engine!(engine, |e| alg_growth_with(e, a, r))
}

fn alg_growth_with<E: GroupEngine>(e: E, a: &AlgGrowthArgs, r: &mut ReportDocument) -> Outcome {
    let alg = FilteredAlgebra::with_default_generators(Arc::new(e), a.radius).map_err(err)?;
    let s = match &a.generating_set {
        Some(text) => text.split(',').map(|x| alg.parse_element(x)).collect::<Result<Vec<_>, _>>().map_err(err)?,
        None => {
            let words = alg.engine().default_generating_set();
            words.iter().map(|w| alg.from_words(std::slice::from_ref(w))).collect::<Result<Vec<_>, _>>().map_err(err)?
        }
    };
    r.input("generating_set", s.iter().map(|x| alg.format(x)).collect::<Vec<_>>());
    let window = window_for(&a.window, a.n_max, a.n_max, r);
    let g = algebraic_growth(&alg, &s, a.n_max, Some(window), a.window.method).map_err(err)?;
    r.result("w_dims", g.w_dims.clone()).result("rho", g.rho);
    estimate_results(&g.estimate, r);
    if g.rho > 0 {
        let b = symplectic_growth_lower_bound(g.estimate.rate, g.rho as f64).map_err(err)?;
        r.result("symplectic_growth_bound", b);
    }
    Ok(())
}

fn read_fds(path: &std::path::Path) -> Result<TabulatedFds, String> {
    let (file, _): (TabulatedFile, _) = read_json(path).map_err(err)?;
    TabulatedFds::from_file(file).map_err(|e| format!("{}: {e}", path.display()))
}

fn fds_growth(a: &FdsGrowthArgs, r: &mut ReportDocument) -> Outcome {
    let v = read_fds(&a.input)?;
    r.input("input", a.input.display().to_string());
    let last = v.levels()[v.last_index()];
    let n_max = a.n_max.unwrap_or((last.max(0.0).ceil() as usize).max(1));
    r.input("n_max", n_max);
    let window = window_for(&a.window, n_max, n_max, r);
    let d = v.d_sequence(n_max).map_err(err)?;
    let est = growth_rate(&d, window, a.window.method, false).map_err(err)?;
    r.result("dims", v.dims(n_max).map_err(err)?).result("d_sequence", d).result("limit_dim", v.limit_dim());
    estimate_results(&est, r);
    Ok(())
}

fn fds_interleave(a: &FdsInterleaveArgs, r: &mut ReportDocument) -> Outcome {
    let v = read_fds(&a.v)?;
    let w = read_fds(&a.w)?;
    let (cand, _): (CandidateFile, _) = read_json(&a.candidate).map_err(err)?;
    r.input("v", a.v.display().to_string())
        .input("w", a.w.display().to_string())
        .input("candidate", a.candidate.display().to_string())
        .input("eta1", cand.eta1)
        .input("eta2", cand.eta2)
        .input("cutoff", cand.cutoff);
    let c = cand.resolve(&v, &w).map_err(err)?;
    let report = check_interleaving(&v, &w, &c).map_err(err)?;
    r.result("interleaved", report.ok).result("checked", report.checked);
    match report.first_violation {
        Some(viol) => {
            let kind = format!("{:?}", viol.kind);
            r.result("first_violation", json!({"kind": kind, "level": viol.level}));
            r.fail(format!("{kind} fails at level {}", viol.level));
        }
        None => {
            r.result("first_violation", Value::Null);
        }
    }
    Ok(())
}

fn parse_bits(s: &str) -> Result<F2Vector, String> {
    let bits: Vec<u8> = s
        .trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(format!("'{c}' is not a 0/1 coordinate")),
        })
        .collect::<Result<_, _>>()?;
    Ok(F2Vector::from_bits(&bits))
}

fn fds_spectral(a: &FdsSpectralArgs, r: &mut ReportDocument) -> Outcome {
    let v = read_fds(&a.input)?;
    r.input("input", a.input.display().to_string()).input("level", a.level).input("vector", a.vector.clone());
    let level_value = *v.levels().get(a.level).ok_or_else(|| format!("no breakpoint with index {}", a.level))?;
    let x = FdsElement::new(a.level, parse_bits(&a.vector)?);
    let c = v.spectral_number(&x).map_err(err)?;
    r.result("breakpoint", level_value).result("spectral_number", c);
    Ok(())
}

fn module_stretch(a: &ModuleStretchArgs, r: &mut ReportDocument) -> Outcome {
    let engine = build_engine(&a.source, &a.engine, r)?;
    with_engine!(engine, |e| module_stretch_with(e, a, r))
}

fn module_stretch_with<E: GroupEngine>(e: E, a: &ModuleStretchArgs, r: &mut ReportDocument) -> Outcome {
    let (lo, hi) = a.window;
    let longest = a.m0.split('+').map(|t| t.trim().chars().filter(|c| !c.is_whitespace()).count()).max().unwrap_or(0);
    let alg = FilteredAlgebra::with_default_generators(Arc::new(e), hi + longest).map_err(err)?;
    let spec = match (&a.module, a.shift) {
        (Some(path), _) => {
            r.input("module", path.display().to_string());
            read_json::<ModuleSpec>(path).map_err(err)?.0
        }
        (None, shift) => {
            r.input("shift", shift.unwrap_or(0));
            ModuleSpec::SelfShift { shift: shift.unwrap_or(0) }
        }
    };
    let module = FilteredModule::from_spec(&spec, &alg).map_err(err)?;
    let m0 = module.parse_element(&alg, &a.m0).map_err(err)?;
    r.input("m0", a.m0.clone()).input("window", json!([lo, hi]));
    let stretch = stretching_check(&alg, &module, &m0, hi).map_err(err)?;
    r.result("m0_level", module.level(&alg, &m0).map_err(err)?).result("stretching", stretch.injective);
    if let Some(w) = &stretch.witness {
        let w = alg.format(w);
        r.result("witness", w.clone());
        r.fail(format!("{w} acts as zero on m0, so m0 does not stretch up to level {hi}"));
        return Ok(());
    }
    let cmp = module_growth_compare(&alg, &module, &m0, a.window).map_err(err)?;
    let rows: Vec<Value> = cmp
        .rows
        .iter()
        .map(|row| json!({"t": row.t, "algebra_dim": row.algebra_dim, "module_dim": row.module_dim}))
        .collect();
    r.result("comparison", rows).result("comparison_holds", cmp.ok);
    if !cmp.ok {
        r.fail("the dimension comparison fails");
    }
    Ok(())
}

fn chain(a: &ChainHomologyArgs, r: &mut ReportDocument) -> Outcome {
    let (file, _): (ChainComplexFile, _) = read_json(&a.input).map_err(err)?;
    let c = ChainComplex::from_file(&file).map_err(err)?;
    r.input("input", a.input.display().to_string());
    let h = chain_homology(&c);
    for (k, d) in h.degrees().iter().enumerate() {
        r.result(&format!("H{k}"), d.to_string());
    }
    r.result("betti", h.betti()).result("homology", h.to_json());
    r.result("euler_characteristic", c.euler_characteristic());
    if let Some(n) = a.sphere_dim {
        r.input("sphere_dim", n).result("homology_sphere", is_homology_sphere(&h, n));
    }
    Ok(())
}

fn plumbing(a: &PlumbingArgs, r: &mut ReportDocument) -> Outcome {
    let tree = match (&a.input, a.preset) {
        (_, Some(p)) => {
            let n = a.dim.unwrap_or(p.default_dim());
            r.input("preset", p.to_string()).input("dim", n);
            p.tree(n)
        }
        (Some(path), None) => {
            r.input("input", path.display().to_string());
            let (file, _): (PlumbingFile, _) = read_json(path).map_err(err)?;
            PlumbingTree::from_file(&file).map_err(err)?
        }
        (None, None) => unreachable!("clap requires an input or a preset"),
    };
    let h = plumbing_homology(&tree).map_err(err)?;
    r.result("vertices", tree.vertices().len())
        .result("e8_shape", tree.is_e8_shape())
        .result("interior", h.interior.to_string())
        .result("interior_betti", h.interior.betti())
        .result("boundary_homology_sphere", h.boundary_homology_sphere.to_string())
        .result("boundary", h.boundary.as_ref().map(ToString::to_string))
        .result("model", h.model);
    Ok(())
}

fn entropy_bound(a: &EntropyBoundArgs, r: &mut ReportDocument) -> Outcome {
    r.input("gamma", a.gamma).input("rho", a.rho);
    r.result("symplectic_growth_bound", symplectic_growth_lower_bound(a.gamma, a.rho).map_err(err)?);
    if let Some(f) = a.max_f {
        r.input("max_f", f);
        r.result("entropy_bound", entropy_lower_bound(EntropyBoundInput { gamma_alg: a.gamma, rho: a.rho, max_f: f }).map_err(err)?);
    }
    Ok(())
}
