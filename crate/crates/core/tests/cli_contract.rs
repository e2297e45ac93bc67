use lorentz_ssmc::cli::{dispatch, Outcome};
use lorentz_ssmc::spacetimes::catalog;
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    dispatch(std::iter::once("ssmc").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).expect("valid JSON")
}

#[test]
fn exit_codes_follow_verdicts() {
    let ok = run(&["verify", "--model", "catalog:grw-exp", "--theorem", "thm1.5", "--samples", "8"]);
    assert_eq!(ok.exit_code, 0);
    assert_eq!(json(&ok)["verdict"], "verified");

    let unmet = run(&["verify", "--model", "catalog:minkowski", "--theorem", "thm1.3", "--samples", "8"]);
    assert_eq!(unmet.exit_code, 2);
    assert_eq!(json(&unmet)["verdict"], "hypotheses-not-met");

    let violated = run(&["verify", "--model", "catalog:grw-exp", "--theorem", "thm1.6", "--inject-fault", "0.01", "--samples", "8"]);
    assert_eq!(violated.exit_code, 3);
    assert_eq!(json(&violated)["verdict"], "violated");

    let all = run(&["verify", "--model", "catalog:grw-exp", "--samples", "8"]);
    assert_eq!(all.exit_code, 2, "soliton hypotheses fail on this model");
}

#[test]
fn report_echoes_configuration() {
    let o = run(&["verify", "--model", "catalog:grw-hyperbolic", "--theorem", "prop", "--seed", "12", "--samples", "4", "--tol-rel", "1e-7", "--kappa", "2"]);
    let v = json(&o);
    let c = &v["config"];
    assert_eq!(c["seed"], 12);
    assert_eq!(c["samples"], 4);
    assert_eq!(c["tolerances"]["rel"].as_f64(), Some(1e-7));
    assert_eq!(c["kappa"].as_f64(), Some(2.0));
    assert_eq!(c["model_hash"], catalog::by_name("grw-hyperbolic").unwrap().hash());
    assert_eq!(c["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["per_point"].as_array().unwrap().len(), 4);
    for key in ["config", "per_point", "aggregates", "verdict", "erratum_notes"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn reports_are_byte_identical_and_seed_sensitive() {
    let args = ["verify", "--model", "catalog:grw-power", "--seed", "3", "--samples", "6"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--model", "catalog:grw-power", "--seed", "4", "--samples", "6"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn text_format_renders_the_same_report() {
    let args = ["identities", "--model", "catalog:grw-cosh-sphere", "--samples", "3"];
    let j = run(&args);
    let mut text_args = args.to_vec();
    text_args.extend(["--format", "text"]);
    let t = run(&text_args);
    assert_eq!(j.exit_code, t.exit_code);
    let v = json(&j);
    for name in v["aggregates"]["identities"].as_object().unwrap().keys() {
        assert!(t.stdout.contains(name.as_str()), "{name}");
    }
    assert!(t.stdout.contains("verdict: ok"));
}

#[test]
fn model_files_load_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("desitter.json");
    catalog::de_sitter(4).unwrap().save(&path).unwrap();
    let o = run(&["verify", "--model", path.to_str().unwrap(), "--theorem", "thm1.3", "--samples", "5"]);
    assert_eq!(o.exit_code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["config"]["model_name"], "de-sitter");

    std::fs::write(&path, "{ not json").unwrap();
    let o = run(&["verify", "--model", path.to_str().unwrap()]);
    assert_eq!(o.exit_code, 1);
    assert!(o.stderr.contains("malformed"));
}

#[test]
fn errors_name_the_offender() {
    let o = run(&["analyze", "--model", "catalog:minkowski", "--xi", "tachyon"]);
    assert_eq!(o.exit_code, 1);
    assert!(o.stderr.contains("tachyon"));
    let o = run(&["analyze", "--model", "catalog:kerr"]);
    assert_eq!(o.exit_code, 1);
    assert!(o.stderr.contains("kerr"));
    let o = run(&["verify", "--model", "catalog:grw-exp", "--frobnicate"]);
    assert_eq!(o.exit_code, 1);
    assert!(o.stderr.contains("frobnicate"));
    let o = run(&["verify", "--model", "catalog:grw-exp", "--A", "dt"]);
    assert_eq!(o.exit_code, 1);
    assert!(o.stderr.contains("dt"));
}

#[test]
fn eos_needs_curvature() {
    let o = run(&["eos", "--model", "catalog:minkowski"]);
    assert_eq!(o.exit_code, 1);
    assert!(o.stderr.contains("degenerate"));
    let o = run(&["eos", "--model", "catalog:grw-power", "--samples", "4"]);
    assert_eq!(o.exit_code, 0);
    let v = json(&o);
    for p in v["per_point"].as_array().unwrap() {
        assert!(p["fluid_residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn declared_recurrence_form() {
    let o = run(&["verify", "--model", "catalog:grw-exp", "--theorem", "thm1.4", "--A", "zero", "--samples", "4"]);
    assert_eq!(o.exit_code, 0, "{}", o.stdout);
    let o = run(&["verify", "--model", "catalog:grw-exp", "--theorem", "thm1.4", "--A", "grad", "--samples", "4"]);
    assert_eq!(o.exit_code, 2);
}
