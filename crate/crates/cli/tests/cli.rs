use std::path::PathBuf;
use std::process::Command;

use growthlab_cli::{run, ReportDocument};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("growthlab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_report(args: &[&str]) -> (i32, ReportDocument) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, _) = invoke(&full);
    (code, serde_json::from_str(&out).expect("json report"))
}

fn num(r: &ReportDocument, key: &str) -> f64 {
    r.results[key].as_f64().unwrap_or_else(|| panic!("{key} is not a number"))
}

#[test]
fn lehmer_growth_from_preset() {
    let (code, r) = json_report(&["group-growth", "--preset", "coxeter-2-3-7", "--n-max", "60"]);
    assert_eq!(code, 0);
    assert!((num(&r, "slope_base") - 1.17628).abs() < 0.005);
    assert!((num(&r, "last_ratio_base") - 1.17628).abs() < 0.005);
    assert_eq!(r.inputs["window"], serde_json::json!([30, 60]));
    assert_eq!(r.inputs["method"], "slope");
    let sizes = r.results["ball_sizes"].as_array().unwrap();
    assert_eq!(sizes.len(), 61);
    assert_eq!(sizes[1], 4);
}

#[test]
fn text_reports_use_six_decimals() {
    let (code, out, _) = invoke(&["entropy-bound", "--gamma", "0.162358", "--rho", "1", "--max-f", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("entropy_bound: 0.081179\n"), "{out}");
    assert!(out.contains("symplectic_growth_bound: 0.162358\n"));
}

#[test]
fn brieskorn_file_is_perfect() {
    let (code, out, _) = invoke(&["group-abelianize", &data("brieskorn-2-3-7.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("h1: trivial\n"), "{out}");
    let (code, r) = json_report(&["group-kervaire", "--preset", "brieskorn-2-3-7"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["h2"], "unknown");
    let (code, _) = json_report(&["group-kervaire", "--preset", "free-2"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(invoke(&["no-such-command"]).0, 2);
    assert_eq!(invoke(&["entropy-bound", "--gamma", "1", "--bogus"]).0, 2);
    assert_eq!(invoke(&["group-growth"]).0, 2);
    assert_eq!(invoke(&["group-growth", "--preset", "lamplighter"]).0, 2);
    assert_eq!(invoke(&["group-growth", "--preset", "free-2", "--window", "9,3"]).0, 2);
    assert_eq!(invoke(&["--threads", "0", "entropy-bound", "--gamma", "1"]).0, 2);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("group-growth"));
}

#[test]
fn library_errors_are_structured() {
    let (code, r) = json_report(&["entropy-bound", "--gamma", "1", "--rho", "0"]);
    assert_eq!(code, 1);
    assert!(r.diagnostics[0].starts_with("error: domain error"));
    let (code, r) = json_report(&["group-growth", "--preset", "free-2", "--engine", "tits"]);
    assert_eq!(code, 1);
    assert!(!r.diagnostics.is_empty());
}

#[test]
fn malformed_files_report_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"generators\": [\"a\", \"a\"],\n  \"relators\": []\n}\n").unwrap();
    let (code, r) = json_report(&["group-abelianize", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(r.diagnostics[0].contains("bad.json:2"), "{:?}", r.diagnostics);

    std::fs::write(&path, "{\n  \"generators\": [\"a\"\n}\n").unwrap();
    let (code, r) = json_report(&["group-abelianize", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(r.diagnostics[0].contains("bad.json:3"), "{:?}", r.diagnostics);
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let args = ["group-growth", "--preset", "von-dyck-2-3-7", "--n-max", "25", "--format", "json"];
    let one = invoke(&[&["--threads", "1"][..], &args[..]].concat()).1;
    let four = invoke(&[&["--threads", "4"][..], &args[..]].concat()).1;
    let default = invoke(&args).1;
    assert_eq!(one, four);
    assert_eq!(one, default);
}

#[test]
fn json_round_trips() {
    let (_, out, _) = invoke(&["alg-growth", "--preset", "free-2", "--n-max", "5", "--format", "json"]);
    let r: ReportDocument = serde_json::from_str(&out).unwrap();
    let again = growthlab_cli::emit_report(&r, growthlab_cli::OutputFormat::Json);
    assert_eq!(out, again);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["w_dims"], serde_json::json!([4, 17, 53, 161, 485]));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = invoke(&["plumbing", "--preset", "two-vertex-plumbing", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let r: ReportDocument = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.results["interior_betti"], serde_json::json!([1, 0, 0, 2]));
    assert_eq!(r.results["boundary_homology_sphere"], "true");
}

#[test]
fn plumbing_and_chain_commands() {
    let (code, r) = json_report(&["plumbing", "--preset", "e8-plumbing-tree"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["interior_betti"], serde_json::json!([1, 0, 0, 0, 8]));
    assert_eq!(r.results["boundary_homology_sphere"], "true");
    let (_, r) = json_report(&["plumbing", &data("two-vertex.plumbing.json")]);
    assert_eq!(r.results["interior_betti"], serde_json::json!([1, 0, 0, 2]));

    let (code, out, _) = invoke(&["chain-homology", &data("projective-plane.chain.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("H1: Z/2\n"));
    let (_, r) = json_report(&["chain-homology", &data("three-sphere.chain.json"), "--sphere-dim", "3"]);
    assert_eq!(r.results["homology_sphere"], true);
}

#[test]
fn fds_commands() {
    let (code, r) = json_report(&["fds-growth", &data("staircase.fds.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.results["d_sequence"], serde_json::json!([1, 2, 2, 3]));

    let fds = data("staircase.fds.json");
    let good = data("staircase.identity.candidate.json");
    let bad = data("staircase.swapped.candidate.json");
    let (code, r) = json_report(&["fds-interleave", &fds, &fds, "--candidate", &good]);
    assert_eq!(code, 0);
    assert_eq!(r.results["interleaved"], true);
    let (code, r) = json_report(&["fds-interleave", &fds, &fds, "--candidate", &bad]);
    assert_eq!(code, 1);
    assert_eq!(r.results["first_violation"]["level"], 1);

    let (_, r) = json_report(&["fds-spectral", &fds, "--level", "2", "--vector", "100"]);
    assert_eq!(num(&r, "spectral_number"), 0.0);
    let (_, r) = json_report(&["fds-spectral", &fds, "--level", "2", "--vector", "001"]);
    assert_eq!(num(&r, "spectral_number"), 2.5);
}

#[test]
fn module_stretch_command() {
    let (code, r) = json_report(&["module-stretch", "--preset", "free-2", "--shift", "2", "--m0", "a + ab"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["stretching"], true);
    assert_eq!(r.results["comparison_holds"], true);
    assert_eq!(r.results["m0_level"], 4);

    let (code, r) = json_report(&["module-stretch", "--preset", "free-2", "--module", &data("augmentation.module.json")]);
    assert_eq!(code, 1);
    assert_eq!(r.results["stretching"], false);
}

#[test]
fn finite_presets_close() {
    let (_, r) = json_report(&["group-growth", "--preset", "coxeter-2-3-3", "--n-max", "20"]);
    assert_eq!(r.results["group_order"], 24);
    let (_, r) = json_report(&["group-growth", "--preset", "von-dyck-2-3-5", "--engine", "rewriting", "--n-max", "20"]);
    assert_eq!(r.results["group_order"], 60);
    assert_eq!(r.results["kb_stop"], "completed");
}

#[test]
fn binary_honors_thread_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_growthlab"))
        .args(["group-growth", "--preset", "free-2", "--n-max", "6", "--format", "json"])
        .env("GROWTHLAB_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.results["ball_sizes"], serde_json::json!([1, 5, 17, 53, 161, 485, 1457]));

    let out = Command::new(env!("CARGO_BIN_EXE_growthlab")).args(["group-growth", "--n-max", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn normal_form_counting() {
    let (code, r) = json_report(&["group-growth", "--preset", "free-2", "--n-max", "15", "--normal-forms"]);
    assert_eq!(code, 0);
    let sizes: Vec<u64> = serde_json::from_value(r.results["ball_sizes"].clone()).unwrap();
    assert_eq!(sizes[15], 2 * 3u64.pow(15) - 1);
    assert!((num(&r, "slope") - 3f64.ln()).abs() < 1e-3);
    let (_, bfs) = json_report(&["group-growth", "--preset", "coxeter-2-3-7", "--n-max", "30"]);
    let (_, nf) = json_report(&["group-growth", "--preset", "coxeter-2-3-7", "--n-max", "30", "--normal-forms"]);
    assert_eq!(bfs.results["ball_sizes"], nf.results["ball_sizes"]);
    let (code, r) = json_report(&["group-growth", "--preset", "brieskorn-2-3-7", "--normal-forms", "--kb-max-rules", "50"]);
    assert_eq!(code, 1);
    assert!(r.diagnostics.iter().any(|d| d.contains("confluent")), "{:?}", r.diagnostics);
    assert_eq!(invoke(&["group-growth", "--preset", "coxeter-2-3-7", "--normal-forms", "--engine", "tits"]).0, 1);
}
