use std::path::PathBuf;
use std::process::{Command, Output};

use homogeo::riemann::read_curve_csv;
use homogeo_cli::report::{Report, MODEL_WARNINGS};
use serde_json::Value;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn homogeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homogeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn schema_validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(manifest_dir().join("schema/report.v1.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Runs with `--output json`, checks the exit code and validates the schema.
fn json_report(args: &[&str], code: i32) -> Value {
    let mut full: Vec<&str> = args.to_vec();
    let at = full.iter().position(|a| *a == "--").unwrap_or(full.len());
    full.splice(at..at, ["--output", "json"]);
    let out = homogeo(&full);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value: Value = serde_json::from_str(&stdout(&out)).expect("json stdout");
    let validator = schema_validator();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} violates schema: {errors:?}");
    value
}

fn strip_timing(mut v: Value) -> Value {
    v["timing_ms"] = Value::from(0.0);
    v
}

#[test]
fn classify_n2_counts() {
    let r = json_report(&["classify", "--n", "2"], 0);
    assert_eq!(r["results"]["subspaces"], 1);
    assert_eq!(r["results"]["w_dim"], 2);
    assert_eq!(r["results"]["ray_count"], 4);
    let rays = r["results"]["rays"].as_array().unwrap();
    assert!(rays.iter().all(|ray| ray["geodesic"] == true));
    assert_eq!(r["verified"], true);
}

#[test]
fn classify_n1_is_schema_valid() {
    let r = json_report(&["classify", "--n", "1"], 0);
    assert_eq!(r["schema"], homogeo_cli::SCHEMA_ID);
    assert_eq!(r["command"], "classify");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["classify", "--n", "0"],
        vec!["classify", "--n", "2", "--lambda", "-1"],
        vec!["classify", "--n", "2", "--output", "xml"],
        vec!["check-vector", "--n", "2", "--", "1", "1"],
        vec!["geodesic", "residual", "--n", "1", "--", "1", "1", "0", "0"],
        vec!["geodesic", "trace", "--n", "1", "--step", "0", "--", "0", "0", "1"],
        vec!["hadamard", "construct", "--order", "4"],
        vec!["hadamard", "verify"],
    ] {
        let out = homogeo(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn check_vector_examples() {
    let r = json_report(&["check-vector", "--n", "2", "--", "1", "1", "1", "0", "0"], 0);
    assert_eq!(r["results"]["geodesic"], true);
    assert_eq!(r["results"]["agree"], true);
    assert_eq!(r["results"]["class"]["class"], "ray");

    let r = json_report(&["check-vector", "--n", "2", "--", "1", "1", "1", "1", "0"], 0);
    assert_eq!(r["results"]["geodesic"], false);
    assert_eq!(r["results"]["agree"], true);
    let failing: Vec<&str> = r["results"]["failing"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(failing.contains(&"a_1*b_1 = 0"), "{failing:?}");
    assert!(!failing.contains(&"a_2*b_2 = 0"));

    let r = json_report(&["check-vector", "--n", "2", "--", "0", "0", "0", "3", "-1"], 0);
    assert_eq!(r["results"]["geodesic"], true);
    assert_eq!(r["results"]["class"]["class"], "subspace");
}

#[test]
fn check_vector_text_names_failing_condition() {
    let out = homogeo(&["check-vector", "--n", "2", "--", "1", "1", "1", "1", "0"]);
    let text = stdout(&out);
    assert!(text.contains("geodesic: false"));
    assert!(text.contains("failing:") && text.contains("a_1*b_1 = 0"));
}

#[test]
fn max_orthogonal_examples() {
    for (n, total) in [(2, 3), (3, 7), (5, 7)] {
        let r = json_report(&["max-orthogonal", "--n", &n.to_string()], 0);
        let res = &r["results"];
        assert_eq!(res["total"], total, "n = {n}");
        assert_eq!(res["maximality"], "certified");
        let gram = res["gram"].as_array().unwrap();
        assert_eq!(gram.len(), total);
        for (i, row) in gram.iter().enumerate() {
            for (j, x) in row.as_array().unwrap().iter().enumerate() {
                let x = x.as_f64().unwrap();
                if i == j {
                    assert!(x > 0.0);
                } else {
                    assert!(x.abs() <= 1e-12, "n = {n}: gram[{i}][{j}] = {x}");
                }
            }
        }
        let cert = r["certificates"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == "maximality")
            .unwrap();
        assert_eq!(cert["status"], "certified");
    }
}

#[test]
fn tight_budget_reports_lower_bound() {
    let r = json_report(&["max-orthogonal", "--n", "11", "--budget-nodes", "10"], 0);
    let res = &r["results"];
    assert!(res["total"].as_u64().unwrap() >= 12);
    if res["maximality"] == "lower_bound_only" {
        assert!(r["warnings"]
            .as_array()
            .unwrap()
            .iter()
            .any(|w| w.as_str().unwrap().contains("lower bound")));
    }
}

#[test]
fn hadamard_paley_12_writes_verified_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h12.txt");
    let p = path.to_str().unwrap();
    let r = json_report(
        &["hadamard", "construct", "--method", "paley", "--order", "12", "--file", p],
        0,
    );
    assert_eq!(r["results"]["verified"], true);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text
        .lines()
        .all(|l| l.split(' ').all(|e| e == "+1" || e == "-1")));

    let r = json_report(&["hadamard", "verify", "--file", p], 0);
    assert_eq!(r["results"]["verified"], true);
}

#[test]
fn hadamard_verify_reports_offending_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h4.txt");
    std::fs::write(&path, "+ + + +\n+ - + -\n+ + - -\n+ - - -\n").unwrap();
    let r = json_report(&["hadamard", "verify", "--file", path.to_str().unwrap()], 3);
    assert_eq!(r["verified"], false);
    let v = &r["results"]["violation"];
    assert_eq!(v["row_a"], 0);
    assert_eq!(v["row_b"], 3);
    assert_eq!(v["inner_product"], -2);
}

#[test]
fn hadamard_unreachable_order_lists_reachable() {
    let out = homogeo(&["hadamard", "construct", "--method", "sylvester", "--order", "6"]);
    assert_ne!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("order must be a power of 2"), "{err}");
    assert!(err.contains("1, 2, 4, 8, 16"), "{err}");

    let out = homogeo(&["hadamard", "construct", "--method", "paley", "--order", "16"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("4, 8, 12, 20, 24"));
}

#[test]
fn hadamard_kronecker_construct() {
    let r = json_report(&["hadamard", "construct", "--method", "kronecker", "--order", "24"], 0);
    assert_eq!(r["results"]["verified"], true);
    assert_eq!(r["results"]["construction"]["method"], "kronecker");
}

#[test]
fn geodesic_residual_examples() {
    let r = json_report(&["geodesic", "residual", "--n", "1", "--", "1", "1", "0"], 0);
    assert!(r["results"]["residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["results"]["verdict"], "geodesic");

    let r = json_report(&["geodesic", "residual", "--n", "1", "--", "1", "0", "0"], 0);
    assert!(r["results"]["residual"].as_f64().unwrap() >= 0.1);
    assert_eq!(r["results"]["verdict"], "not geodesic");
    assert_eq!(r["results"]["consistent"], true);
}

#[test]
fn geodesic_trace_csv_has_z_equal_t() {
    let out = homogeo(&["geodesic", "trace", "--n", "1", "--output", "csv", "--", "0", "0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let t = header.iter().position(|h| *h == "t").unwrap();
    let z = header.iter().position(|h| *h == "z_1").unwrap();
    let gz = header.iter().position(|h| *h == "geo_z_1").unwrap();
    assert_eq!(*header.last().unwrap(), "deviation");
    let mut rows = 0;
    for line in lines {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cells[z] - cells[t]).abs() <= 1e-12);
        assert!((cells[gz] - cells[t]).abs() <= 1e-9);
        rows += 1;
    }
    assert_eq!(rows, 1001);
}

#[test]
fn geodesic_trace_writes_curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let orbit = dir.path().join("orbit.csv");
    let geo = dir.path().join("geo.csv");
    let r = json_report(
        &[
            "geodesic",
            "trace",
            "--n",
            "2",
            "--t-max",
            "0.5",
            "--step",
            "0.01",
            "--orbit-csv",
            orbit.to_str().unwrap(),
            "--geodesic-csv",
            geo.to_str().unwrap(),
            "--",
            "1",
            "-1",
            "1",
            "0",
            "0",
        ],
        0,
    );
    assert!(r["results"]["sup_deviation"].as_f64().unwrap() < 1e-8);
    let a = read_curve_csv(&std::fs::read_to_string(&orbit).unwrap()).unwrap();
    let b = read_curve_csv(&std::fs::read_to_string(&geo).unwrap()).unwrap();
    assert_eq!(a.len(), 51);
    assert!(a.sup_deviation(&b).unwrap() < 1e-8);
}

#[test]
fn report_examples() {
    for (n, case, max) in [
        (7, "divisible by 4", 15),
        (1, "even, not divisible by 4", 3),
        (4, "odd", 5),
    ] {
        let r = json_report(&["report", "--n", &n.to_string()], 0);
        let res = &r["results"];
        assert_eq!(res["case"], case);
        assert_eq!(res["max_orthogonal"]["total"], max);
        assert_eq!(res["max_orthogonal"]["maximality"], "certified");
        assert_eq!(res["independent_rank"], 2 * n + 1);
        assert_eq!(res["classification"]["ray_count"], 1u64 << n);
        if n == 7 {
            assert_eq!(res["witness"]["construction"]["method"], "sylvester");
            assert_eq!(res["witness"]["order"], 8);
            assert_eq!(res["witness"]["verified"], true);
        } else {
            assert!(res["witness"].is_null());
        }
    }
}

#[test]
fn model_warnings_always_present() {
    for args in [
        vec!["classify", "--n", "1"],
        vec!["check-vector", "--n", "1", "--", "0", "0", "1"],
        vec!["geodesic", "residual", "--n", "1", "--", "1", "1", "0"],
        vec!["report", "--n", "2"],
    ] {
        let r = json_report(&args, 0);
        let warnings: Vec<&str> = r["warnings"]
            .as_array()
            .unwrap()
            .iter()
            .map(|w| w.as_str().unwrap())
            .collect();
        for w in MODEL_WARNINGS {
            assert!(warnings.contains(&w), "{args:?}");
        }
    }
}

#[test]
fn identical_config_gives_identical_json() {
    for args in [
        vec!["classify", "--n", "3", "--seed", "17"],
        vec!["max-orthogonal", "--n", "5", "--jobs", "3"],
        vec!["report", "--n", "3"],
    ] {
        let a = strip_timing(json_report(&args, 0));
        let b = strip_timing(json_report(&args, 0));
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}

#[test]
fn report_round_trips_through_json() {
    let r = json_report(&["max-orthogonal", "--n", "3"], 0);
    let parsed: Report = serde_json::from_value(r.clone()).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), r);
}

#[test]
fn schema_rejects_malformed_reports() {
    let validator = schema_validator();
    let mut r = json_report(&["classify", "--n", "1"], 0);
    assert!(validator.is_valid(&r));
    r["warnings"] = Value::Array(vec![]);
    assert!(!validator.is_valid(&r));
    let mut r = json_report(&["classify", "--n", "1"], 0);
    r["certificates"][0]["status"] = Value::from("maybe");
    assert!(!validator.is_valid(&r));
}

fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(name)
}

/// Compares against a pinned file; `HOMOGEO_BLESS=1` rewrites it instead.
fn check_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("HOMOGEO_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}; rerun with HOMOGEO_BLESS=1");
}

fn golden_json(name: &str, args: &[&str]) {
    let v = strip_timing(json_report(args, 0));
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    check_golden(name, &s);
}

#[test]
fn golden_reports() {
    golden_json("classify_n2.json", &["classify", "--n", "2", "--samples", "50"]);
    golden_json(
        "check_vector_n2.json",
        &["check-vector", "--n", "2", "--", "1", "1", "1", "1", "0"],
    );
    golden_json("max_orthogonal_n3.json", &["max-orthogonal", "--n", "3"]);
    golden_json("report_n7.json", &["report", "--n", "7"]);
    golden_json(
        "geodesic_residual_n1.json",
        &["geodesic", "residual", "--n", "1", "--", "1", "0", "0"],
    );
}

#[test]
fn golden_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    for (name, method, order) in [("sylvester_8.txt", "sylvester", "8"), ("paley_12.txt", "paley", "12")] {
        let path = dir.path().join(name);
        let out = homogeo(&[
            "hadamard",
            "construct",
            "--method",
            method,
            "--order",
            order,
            "--file",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        check_golden(name, &std::fs::read_to_string(&path).unwrap());
    }
}

#[test]
fn golden_schema_is_pinned() {
    let text = std::fs::read_to_string(manifest_dir().join("schema/report.v1.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(schema["$id"], homogeo_cli::SCHEMA_ID);
    assert_eq!(schema["properties"]["schema"]["const"], homogeo_cli::SCHEMA_ID);
    let required: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(
        required,
        ["schema", "command", "config", "results", "certificates", "warnings", "verified", "timing_ms"]
    );
}

