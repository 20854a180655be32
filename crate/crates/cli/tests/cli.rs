use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geolin3::parser;
use geolin3_cli::{check, generate_seeds, linearize, parse_hint, verify, GaugeFlag, Options};
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geolin3"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("geolin3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn exit_codes() {
    let cases = [
        ("trig_quintic.txt", 0),
        ("rational_quintic_perturbed.txt", 1),
        ("nonclass.txt", 2),
    ];
    for (file, code) in cases {
        assert_eq!(run(&["check", file]).status.code(), Some(code), "{file}");
    }
    let undecided = scratch("undecided.txt", "ode: y''' + x*y'^3 = 0;\n");
    assert_eq!(run(&["check", undecided.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["check", "missing.txt"]).status.code(), Some(4));
    assert_eq!(run(&["check", "--window", "3:1,0:0", "trig_quintic.txt"]).status.code(), Some(4));
    assert_eq!(run(&["check", "--gauge", "xy0", "trig_quintic.txt"]).status.code(), Some(4));
}

#[test]
fn input_errors_carry_positions() {
    let bad = scratch("bad.txt", "ode: y''' +\n  k*y' = 0;\n");
    let out = run(&["check", "--json", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "input-error");
    let msg = v["error"].as_str().unwrap();
    assert!(msg.starts_with("line 2, column 3"), "{msg}");
}

#[test]
fn json_and_text_agree() {
    let json = run(&["check", "--json", "rational_quintic.txt"]);
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["status"], "linearizable");
    assert_eq!(v["gauge"]["e"], "-1/x");
    assert_eq!(v["gauge"]["f"], "1/y");
    assert!(json.stderr.is_empty(), "timing is only printed with text output");

    let text = run(&["check", "rational_quintic.txt"]);
    let body = stdout(&text);
    assert!(body.lines().any(|l| l == "# status: linearizable"));
    assert!(String::from_utf8(text.stderr).unwrap().starts_with("elapsed: "));
    assert!(!body.contains("elapsed"));
}

#[test]
fn text_report_is_valid_input() {
    let body = stdout(&run(&["linearize", "rational_quintic.txt"]));
    let doc = parser::parse(&body).unwrap();
    let original = parser::parse(&std::fs::read_to_string(fixtures().join("rational_quintic.txt")).unwrap()).unwrap();
    assert_eq!(doc, original);
    // feeding the report back gives the same verdict
    let again = scratch("report.txt", &body);
    assert_eq!(run(&["check", again.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn linearize_rational_quintic_case() {
    let src = std::fs::read_to_string(fixtures().join("rational_quintic.txt")).unwrap();
    let r = linearize(&src, &Options::default());
    assert_eq!(r.status, "linearizable");
    let t = r.transformation.unwrap();
    assert_eq!(t.status, "found");
    assert_eq!(t.map.as_deref(), Some("u = x*y; v = x/y"));
    assert_eq!(t.verified, Some(true));
    let s = r.solution.unwrap();
    assert_eq!(s.family, "A*x*y + B*x/y = 1");
    assert!(s.verified);
    let m = r.metric.unwrap();
    assert_eq!(m.basis_dimension, 3);
    assert_eq!(m.definite, Some(true));
}

#[test]
fn linearize_without_rational_map_suggests_extensions() {
    let src = std::fs::read_to_string(fixtures().join("trig_quintic.txt")).unwrap();
    let r = linearize(&src, &Options::default());
    assert_eq!(r.status, "linearizable");
    assert_eq!(r.transformation.unwrap().status, "not-found-in-ansatz");
    assert!(r.caveats.iter().any(|c| c.contains("ext s(y)")));
}

#[test]
fn supplied_map_and_solution_verify() {
    let src = std::fs::read_to_string(fixtures().join("trig_quintic_map.txt")).unwrap();
    let r = verify(&src, &Options::default());
    assert_eq!(r.status, "verified");
    assert!(r.checks.iter().all(|c| c.holds));

    let wrong = src.replace("solution: A*x*c + B*x*s = 1;", "solution: A*x*c + B*y = 1;");
    let r = verify(&wrong, &Options::default());
    assert_eq!(r.status, "failed");
    assert_eq!(r.exit_code, 1);
    let failing: Vec<&str> = r.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
    assert_eq!(failing, ["solution"]);

    let wrong_map = src.replace("map: u = x*c; v = x*s;", "map: u = x*c; v = x*s + x;");
    let r = verify(&wrong_map, &Options::default());
    assert_eq!(r.status, "failed");
    assert!(r.checks.iter().any(|c| c.name == "map-equation" && !c.holds));
}

#[test]
fn hint_resolves_degenerate_branch() {
    let hint = parse_hint(&std::fs::read_to_string(fixtures().join("constant_coeff_hint.txt")).unwrap()).unwrap();
    let src = std::fs::read_to_string(fixtures().join("constant_coeff.txt")).unwrap();
    let opts = Options {
        hint: Some(hint),
        ..Default::default()
    };
    let r = check(&src, &opts);
    assert_eq!(r.status, "linearizable");
    assert!(r.candidates.iter().any(|c| c.branch == "hint" && c.passes));
    assert!(parse_hint("ode: y''' = 0;").is_err());
}

#[test]
fn gauge_flags() {
    let src = std::fs::read_to_string(fixtures().join("rational_quintic.txt")).unwrap();
    let with_gauge = format!("{src}gauge: e = -1/x; f = 1/y;\n");
    let file = Options {
        gauge: GaugeFlag::File,
        ..Default::default()
    };
    let r = check(&with_gauge, &file);
    assert_eq!(r.gauge.as_ref().map(|g| g.name.as_str()), Some("file"));
    // a gauge statement is required for --gauge file
    assert_eq!(check(&src, &file).exit_code, 4);
    let be0 = Options {
        gauge: "be0".parse().unwrap(),
        ..Default::default()
    };
    let r = check(&src, &be0);
    assert_eq!(r.status, "linearizable");
    assert!(r.gauge.is_none());
    assert!(r.caveats.iter().any(|c| c.contains("no flat gauge")));
}

#[test]
fn seeded_generation_is_reproducible() {
    let a = stdout(&run(&["generate", "--seed", "11", "--count", "2", "--json"]));
    let b = Command::new(env!("CARGO_BIN_EXE_geolin3"))
        .env("GEOLIN3_SEED", "11")
        .args(["generate", "--seed", "99", "--count", "2", "--json"])
        .output()
        .unwrap();
    assert_eq!(a, stdout(&b));
    let v: Value = serde_json::from_str(&a).unwrap();
    let gen = v["generated"].as_array().unwrap();
    assert_eq!(gen.len(), 2);
    assert_eq!(gen[0]["seed"], 11);
    assert_eq!(gen[1]["seed"], 12);

    let r = generate_seeds(11, 1);
    let quintic = &r.generated[0].quintic;
    let back = check(&format!("ode: {quintic};"), &Options::default());
    assert_eq!(back.status, "linearizable");
}

#[test]
fn generate_from_second_order_seed() {
    let out = run(&["generate", "--json", "cubic_seed.txt"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["generated"][0]["quintic"], "y''' - 3*x^2*y'^5 - 7*y'^3 - (6/x^2)*y' = 0");
    assert_eq!(
        v["generated"][0]["semilinear"],
        "y''' + 3*x*y'^2*y'' + (2/x)*y'' + y'^3 - (2/x^2)*y' = 0"
    );
}

#[test]
fn form_override() {
    let out = run(&["check", "--form", "semilinear", "rational_quintic.txt"]);
    assert_eq!(out.status.code(), Some(4));
    let semi = scratch("semi.txt", "ode: y''' + 3*x*y'^2*y'' + (2/x)*y'' + y'^3 - (2/x^2)*y' = 0;\n");
    let out = run(&["check", "--json", semi.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["form"], "semilinear");
    assert_eq!(v["status"], "linearizable");
}

#[test]
fn geodesic_input() {
    let out = run(&["check", "--json", "scalar_fail.txt"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["form"], "geodesic");
    assert_eq!(v["status"], "not-linearizable");
    assert_eq!(out.status.code(), Some(1));
    let flat = scratch("flat_geo.txt", "geodesic: c = -x/y^2; e = -1/x; f = 1/y;\n");
    let out = run(&["check", flat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}
