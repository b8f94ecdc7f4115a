use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use orthoinv::oracle::{random_point, trial_rng};
use orthoinv::text::{parse_forms, write_form};
use orthoinv::{Form, OrthogonalMatrix, Rational, Ring, Shape, SliceBasis};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthoinv"))
        .args(args)
        .env_remove("ORTHOINV_ATOL")
        .env_remove("ORTHOINV_RTOL")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn slice_form(seed: u64) -> Form<Rational> {
    let shape = Shape::new(3, 4).unwrap();
    SliceBasis::cached(shape).combine(&random_point(shape, &mut trial_rng(seed, 0)))
}

#[test]
fn basis_counts_and_determinism() {
    let out = run(&["basis", "--n", "3", "--degree", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_forms(std::str::from_utf8(&out.stdout).unwrap()).unwrap().len(), 12);
    assert!(stderr(&out).contains("12 basis elements"));
    assert_eq!(run(&["basis", "--n", "3", "--degree", "4"]).stdout, out.stdout);

    let dir = TempDir::new().unwrap();
    let target = dir.path().join("basis.txt");
    let to_file = run(&["basis", "--n", "3", "--degree", "4", "--out", p(&target)]);
    assert_eq!(code(&to_file), 0);
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), out.stdout);

    let big = run(&["basis", "--n", "4", "--degree", "6", "-q"]);
    assert_eq!(parse_forms(std::str::from_utf8(&big.stdout).unwrap()).unwrap().len(), 78);
    assert!(big.stderr.is_empty());
}

#[test]
fn small_shapes_are_refused() {
    let out = run(&["basis", "--n", "2", "--degree", "4"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("n >= 3"));
    assert_eq!(code(&run(&["generators", "--n", "3", "--degree", "2"])), 3);
}

#[test]
fn generators_count() {
    let out = run(&["generators", "--n", "3", "--degree", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_forms(std::str::from_utf8(&out.stdout).unwrap()).unwrap().len(), 15);
    assert!(stderr(&out).contains("15 generators"));

    let literal = run(&["generators", "--n", "3", "--degree", "6", "--variant", "paper-literal"]);
    assert_eq!(code(&literal), 0);
    assert!(stderr(&literal).contains("singular block 4+2"));
}

#[test]
fn fingerprint_input_errors() {
    let dir = TempDir::new().unwrap();
    let odd = write(&dir, "odd.txt", "vars: 3\ndegree: 5\n1 3 1 1\n");
    let out = run(&["fingerprint", p(&odd)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("even degree required"));

    let garbage = write(&dir, "bad.txt", "vars: 3\ndegree: 4\n1 2 2\n");
    let out = run(&["fingerprint", p(&garbage)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"));

    let two = write(&dir, "two.txt", "vars: 2\ndegree: 4\n1 2 2\n");
    assert_eq!(code(&run(&["fingerprint", p(&two)])), 3);
    assert_eq!(code(&run(&["fingerprint", p(&dir.path().join("missing.txt"))])), 2);
    assert_eq!(code(&run(&["fingerprint"])), 2);
    assert_eq!(code(&run(&["--mode", "fuzzy", "fingerprint", p(&odd)])), 2);
}

#[test]
fn fingerprint_routes() {
    let dir = TempDir::new().unwrap();
    let s = slice_form(1);
    let exact = write(&dir, "s.txt", &write_form(&s, &[]));
    let out = run(&["fingerprint", p(&exact)]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["mode"], "exact");
    assert_eq!(doc["q"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["fingerprint", p(&exact)]).stdout, out.stdout);

    let q = OrthogonalMatrix::random(3, &mut trial_rng(1, 1));
    let rotated = write(&dir, "r.txt", &write_form(&s.to_float().apply_orthogonal(&q).unwrap(), &[]));
    let out = run(&["fingerprint", p(&rotated)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["mode"], "float");
    assert!(json(&out)["eigenvalues"].is_array());
    assert_eq!(code(&run(&["--mode", "exact", "fingerprint", p(&rotated)])), 2);
}

#[test]
fn equivalence_verdicts() {
    let dir = TempDir::new().unwrap();
    let s = slice_form(2);
    let a = write(&dir, "a.txt", &write_form(&s, &[]));
    let q = OrthogonalMatrix::random(3, &mut trial_rng(2, 1));
    let b = write(&dir, "b.txt", &write_form(&s.to_float().apply_orthogonal(&q).unwrap(), &[]));
    let doubled = write(&dir, "c.txt", &write_form(&s.scale(&Rational::from_i64(2)), &[]));

    let out = run(&["equivalent", p(&a), p(&b)]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["verdict"], "equivalent (generic)");
    assert!(doc["max_rel_discrepancy"].as_f64().unwrap() < 1e-6);
    assert_eq!(json(&run(&["equivalent", p(&a), p(&doubled)]))["verdict"], "distinct");

    // quadratic part with a double eigenvalue
    let repeated = write(&dir, "d.txt", "vars: 3\ndegree: 4\n6 2 2 0\n-1 4 0 0\n-1 0 4 0\n12 2 1 1\n-2 0 3 1\n-2 0 1 3\n");
    let out = run(&["equivalent", p(&repeated), p(&a)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdict"], "inconclusive (non-generic)");
    assert!(stderr(&out).contains("repeated eigenvalues"));

    let sextic = write(&dir, "e.txt", "vars: 3\ndegree: 6\n1 2 2 2\n");
    assert_eq!(code(&run(&["equivalent", p(&a), p(&sextic)])), 2);
}

#[test]
fn tolerances_from_environment() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", &write_form(&slice_form(3), &[]));
    let out = Command::new(env!("CARGO_BIN_EXE_orthoinv"))
        .args(["equivalent", p(&a), p(&a)])
        .env("ORTHOINV_ATOL", "0.001")
        .env("ORTHOINV_RTOL", "0.01")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((doc["atol"].as_f64(), doc["rtol"].as_f64()), (Some(0.001), Some(0.01)));
    assert_eq!(code(&run(&["--rtol", "0", "equivalent", p(&a), p(&a)])), 2);
}

#[test]
fn oracle_runs() {
    let args = ["oracle", "--n", "3", "--degree", "4", "--trials", "100", "--seed", "42"];
    let out = run(&args);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["violations"], 0);
    assert_eq!(doc["invariance"]["pairs_checked"], 4800);
    assert_eq!(doc["separation"]["failures"].as_array().unwrap().len(), 0);
    assert_eq!(run(&args).stdout, out.stdout);

    let literal = run(&["oracle", "--n", "3", "--degree", "6", "--trials", "10", "--variant", "paper-literal"]);
    assert_eq!(code(&literal), 0);
    assert!(json(&literal)["separation"]["singular_blocks"].as_array().unwrap().iter().any(|b| b == "4+2"));

    assert_eq!(code(&run(&["oracle", "--n", "6", "--degree", "4"])), 3);
    assert_eq!(code(&run(&["oracle", "--n", "3"])), 2);
}

#[test]
fn graph_demo_only() {
    let out = run(&["oracle", "--graph-demo"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["graph_demo"]["isomorphic"], false);
    assert_eq!(doc["graph_demo"]["w1_values_equal"], true);
    assert!(doc.get("invariance").is_none());
}
