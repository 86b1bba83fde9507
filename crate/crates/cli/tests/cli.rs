use std::process::{Command, Output};

use serde_json::Value;

fn sextic(args: &[&str]) -> Output {
    sextic_with_env(args, &[])
}

fn sextic_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sextic"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn keys_sorted(v: &Value) -> bool {
    match v {
        Value::Object(m) => {
            let keys: Vec<&String> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(keys_sorted)
        }
        Value::Array(a) => a.iter().all(keys_sorted),
        Value::Number(n) => !n.is_f64(),
        _ => true,
    }
}

#[test]
fn gallery_emission_carries_provenance() {
    let out = sextic(&[
        "gallery",
        "--field",
        "p=101",
        "--gallery",
        "family,r=1",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert!(keys_sorted(&d));
    assert_eq!(d["degree"], 6);
    assert_eq!(d["seed"], 3);
    assert_eq!(d["field"]["spec"], "p=101");
    assert_eq!(d["source"]["name"], "family_r,r=1");
    assert_eq!(d["tool"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn fixture_without_field_searches_for_a_prime() {
    let out = sextic(&["gallery", "--gallery", "collinear5"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["source"]["prime_search"]["prime"], 13);
    assert_eq!(d["field"]["spec"], "p=13");
}

#[test]
fn analyze_reports_rules_and_models() {
    let nodes = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        nodes.path(),
        "[[0,0,1,0],[0,0,0,1],[0,0,1,1],[0,0,1,2],[1,3,5,7]]",
    )
    .unwrap();
    let path = nodes.path().to_str().unwrap();
    let g = sextic(&[
        "gallery",
        "--field",
        "p=31",
        "--gallery",
        "prescribed",
        "--nodes-file",
        path,
        "--seed",
        "5",
    ]);
    assert_eq!(g.status.code(), Some(0));
    let poly = doc(&g)["polynomial"].as_str().unwrap().to_string();

    let a = sextic(&["analyze", "--field", "p=31", "--poly", &poly, "--probes", "2"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let d = doc(&a);
    assert!(keys_sorted(&d));
    let r = &d["report"];
    assert_eq!(r["surface"]["node_count"], 5);
    assert_eq!(r["defect"]["defect"], 0);
    assert_eq!(r["super_rigid"]["state"], "yes");
    assert_eq!(r["super_rigid"]["caveat"], "char-p-lower-bound");
    assert_eq!(r["fibration_count"], 6);
    assert_eq!(r["fano_model_exists"], false);
    let rules: Vec<&str> = r["rules"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(rules.contains(&"elliptic:line-through-four-nodes"));
    for m in r["elliptic_models"].as_array().unwrap() {
        assert!(rules.contains(&m["rule"].as_str().unwrap()));
    }
    let b = r["elliptic_models"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["kind"] == "B")
        .unwrap();
    assert_eq!(b["probes"].as_array().unwrap().len(), 2);

    let c = sextic(&[
        "classify",
        "--field",
        "p=31",
        "--poly",
        &poly,
        "--nodes-file",
        path,
    ]);
    assert_eq!(c.status.code(), Some(0));
    let cr = &doc(&c)["report"];
    assert_eq!(cr["surface"]["supplied"], true);
    assert_eq!(cr["fibration_count"], 6);
}

#[test]
fn non_nodal_surface_exits_2() {
    let out = sextic(&["analyze", "--field", "p=13", "--gallery", "collinear5"]);
    assert_eq!(out.status.code(), Some(2));
    let d = doc(&out);
    assert_eq!(d["error"]["kind"], "non-nodal-surface");
    assert_eq!(d["surface"]["non_nodal"].as_array().unwrap().len(), 5);
}

#[test]
fn malformed_polynomial_reports_position() {
    let out = sextic(&["analyze", "--field", "p=31", "--poly", "x^6 + y^ + z^6"]);
    assert_eq!(out.status.code(), Some(1));
    let d = doc(&out);
    assert_eq!(d["error"]["kind"], "parse");
    assert_eq!(d["error"]["position"], 9);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["analyze", "--field", "p=31"][..],
        &[
            "analyze",
            "--field",
            "p=31",
            "--poly",
            "x^6",
            "--gallery",
            "barth",
        ],
        &["defect", "--field", "p=4", "--poly", "x^6"],
        &["classify", "--field", "p=31", "--poly", "x^6"],
        &["lines", "--field", "p=31", "--poly", "x^6", "--ext-depth", "0"],
        &["frobnicate"],
    ] {
        let out = sextic(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(doc(&out)["error"]["kind"].is_string(), "{args:?}");
    }
}

#[test]
fn enumeration_guard_is_enforced() {
    let out = sextic(&[
        "defect",
        "--field",
        "p=31",
        "--gallery",
        "barth",
        "--max-enum",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc(&out)["error"]["kind"], "enumeration-too-large");
}

#[test]
fn output_is_byte_identical_across_runs_and_workers() {
    let args = [
        "defect",
        "--field",
        "p=19",
        "--gallery",
        "barth",
        "--ext-depth",
        "2",
    ];
    let one = sextic_with_env(&args, &[("RAYON_NUM_THREADS", "1")]);
    let four = sextic_with_env(&args, &[("RAYON_NUM_THREADS", "4")]);
    let again = sextic_with_env(&args, &[("RAYON_NUM_THREADS", "4")]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
    let d = doc(&one);
    assert_eq!(d["defect"]["defect"], 13);
    assert_eq!(d["surface"]["ambient_field"]["degree"], 2);
    assert_eq!(
        d["surface"]["ambient_field"]["modulus"].as_array().unwrap().len(),
        3
    );
}

#[test]
fn out_flag_writes_the_same_document() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let args = ["gallery", "--field", "p=11", "--gallery", "barth"];
    let stdout = sextic(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", file.to_str().unwrap()]);
    let out = sextic(&with_out);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&file).unwrap(), stdout);
}

#[test]
fn lines_report_tangent_plane_test() {
    let nodes = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        nodes.path(),
        "[[0,0,1,0],[0,0,0,1],[0,0,1,1],[0,0,1,2],[0,0,1,3]]",
    )
    .unwrap();
    let path = nodes.path().to_str().unwrap();
    let g = sextic(&[
        "gallery",
        "--field",
        "p=31",
        "--gallery",
        "prescribed",
        "--nodes-file",
        path,
        "--seed",
        "2",
    ]);
    let poly = doc(&g)["polynomial"].as_str().unwrap().to_string();
    let out = sextic(&["lines", "--field", "p=31", "--poly", &poly]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    let lines = d["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["node_count"], 5);
    assert_eq!(lines[0]["contained_in_s"], true);
    assert!(lines[0]["tangent_planes_coincide"].is_boolean());
}
