use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use polyseq::json::{self, TableJson, TensorJson};
use tempfile::TempDir;

fn polyseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyseq"))
        .args(args)
        .env_remove("POLYSEQ_MAX_T")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

/// Re-serializing a parsed output file must reproduce it byte for byte.
fn assert_round_trip(path: &Path) {
    let text = fs::read_to_string(path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json::to_canonical_string(&value), text);
}

const CHEB: &str = r#"{"type": "chebyshev", "a": "1", "b": "0"}"#;
const HERM: &str = r#"{"type": "hermite", "a": "1", "b": "0"}"#;

fn x_rows(size: usize) -> String {
    let rows: Vec<String> = (0..size)
        .map(|i| format!("[{}]", vec!["\"0\""; i + 1].join(",")))
        .collect();
    format!(r#"{{"type": "rows", "rows": [{}]}}"#, rows.join(","))
}

#[test]
fn linearize_all_methods_agree_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "cheb.json", CHEB);
    let out = dir.path().join("t.json");
    let run = polyseq(&["linearize", "--h-spec", s(&spec), "--n-max", "4", "--method", "all", "--out", s(&out)]);
    assert_exit(&run, 0);
    assert!(run.stdout.is_empty());
    assert_round_trip(&out);
    let text = fs::read_to_string(&out).unwrap();
    let tensor: TensorJson = json::from_str(&text).unwrap();
    assert_eq!(json::to_canonical_string(&tensor), text);
    assert_eq!(tensor.n_max, 4);
    assert_eq!(tensor.slices.len(), 9);
}

#[test]
fn zero_alpha_with_validation_exits_3() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "bad.json",
        r#"{"type": "tridiagonal", "beta": ["0","0","0","0","0","0"], "alpha": ["1","0","1","1","1"]}"#,
    );
    let out = dir.path().join("t.json");
    let args = ["linearize", "--h-spec", s(&spec), "--n-max", "2", "--out", s(&out)];
    assert_exit(&polyseq(&args), 0);
    let mut with_flag = args.to_vec();
    with_flag.push("--validate-tridiagonal");
    let run = polyseq(&with_flag);
    assert_exit(&run, 3);
    assert!(String::from_utf8_lossy(&run.stderr).contains("alpha_2 is zero"));
}

#[test]
fn monomial_basis_slices_are_deltas() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "x.json", &x_rows(6));
    let out = dir.path().join("t.json");
    assert_exit(&polyseq(&["linearize", "--h-spec", s(&spec), "--n-max", "2", "--out", s(&out)]), 0);
    let tensor: TensorJson = json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    for slice in &tensor.slices {
        for (n, row) in slice.matrix.iter().enumerate() {
            for (m, v) in row.iter().enumerate() {
                let want = if n + m == slice.k { "1" } else { "0" };
                assert_eq!(polyseq::rational::format(v), want, "k={} n={n} m={m}", slice.k);
            }
        }
    }
}

#[test]
fn single_slice_and_csv_output() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "herm.json", HERM);
    let out = dir.path().join("slice.json");
    let run = polyseq(&["linearize", "--h-spec", s(&spec), "--n-max", "2", "--k", "0", "--out", s(&out)]);
    assert_exit(&run, 0);
    assert_round_trip(&out);
    let slice: polyseq::json::SliceJson = json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(slice.k, 0);
    // d(n,n,0) = n! for Hermite with a = 1
    assert_eq!(polyseq::rational::format(&slice.matrix[2][2]), "2");

    let csv_dir = dir.path().join("csv");
    let run = polyseq(&[
        "linearize", "--h-spec", s(&spec), "--n-max", "1", "--format", "csv", "--out", s(&csv_dir),
    ]);
    assert_exit(&run, 0);
    let k1 = fs::read_to_string(csv_dir.join("slice_k1.csv")).unwrap();
    assert_eq!(k1, "n,m,value\n0,0,0\n0,1,1\n1,0,1\n1,1,0\n");
    assert!(csv_dir.join("slice_k2.csv").exists());
}

#[test]
fn connect_same_spec_is_identity() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "cheb.json", CHEB);
    let out = dir.path().join("c.json");
    let run = polyseq(&["connect", "--h-spec", s(&spec), s(&spec), "--m-max", "4", "--verify", "--out", s(&out)]);
    assert_exit(&run, 0);
    assert_round_trip(&out);
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let table: TableJson = serde_json::from_value(value["connection"].clone()).unwrap();
    for (i, row) in table.matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            assert_eq!(polyseq::rational::format(v), if i == j { "1" } else { "0" });
        }
    }
}

#[test]
fn connect_to_monomials_gives_p() {
    let dir = TempDir::new().unwrap();
    let herm = write(&dir, "herm.json", HERM);
    let x = write(&dir, "x.json", &x_rows(8));
    let out = dir.path().join("c.json");
    let run = polyseq(&["connect", "--h-spec", s(&herm), s(&x), "--m-max", "4", "--out", s(&out)]);
    assert_exit(&run, 0);
    let build_out = dir.path().join("b.json");
    assert_exit(&polyseq(&["build", "--h-spec", s(&herm), "--n-max", "4", "--out", s(&build_out)]), 0);
    assert_round_trip(&build_out);
    let conn: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let built: serde_json::Value = serde_json::from_str(&fs::read_to_string(&build_out).unwrap()).unwrap();
    assert_eq!(conn["connection"]["matrix"], built["p"]["rows"]);
}

#[test]
fn chebyshev_hermite_round_trip_verifies() {
    let dir = TempDir::new().unwrap();
    let cheb = write(&dir, "cheb.json", CHEB);
    let herm = write(&dir, "herm.json", HERM);
    let out = dir.path().join("c.json");
    let run = polyseq(&[
        "connect", "--h-spec", s(&cheb), s(&herm), "--m-max", "10", "--verify", "--mixed", "--n-max", "3",
        "--method", "all", "--out", s(&out),
    ]);
    assert_exit(&run, 0);
    assert_round_trip(&out);
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let mixed: TensorJson = serde_json::from_value(value["mixed"].clone()).unwrap();
    assert_eq!(mixed.n_max, 3);
}

#[test]
fn family_output_round_trips() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        ("cheb.json", CHEB),
        ("herm.json", HERM),
        ("charlier.json", r#"{"type": "charlier", "a": "1/3"}"#),
    ] {
        let spec = write(&dir, name, text);
        let out = dir.path().join(format!("family_{name}"));
        let run = polyseq(&["family", "--h-spec", s(&spec), "--n-max", "3", "--k", "2", "--out", s(&out)]);
        assert_exit(&run, 0);
        assert_round_trip(&out);
    }
    let x = write(&dir, "x.json", &x_rows(4));
    let run = polyseq(&["family", "--h-spec", s(&x), "--out", s(&dir.path().join("f.json"))]);
    assert_exit(&run, 3);
}

#[test]
fn verify_passes_on_dense_rows() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "dense.json",
        r#"{"type": "rows", "rows": [["1"], ["2","-1/2"], ["3","0","1/3"], ["-1","1","2","5"],
            ["1/7","1","1","-2","3"], ["0","1","0","2","1","1"], ["1","1","1","1","1","1","1"],
            ["2","0","1","0","-1","0","1","1"], ["1","2","3","4","5","6","7","8","9"],
            ["1","0","0","0","0","0","0","0","0","1"]]}"#,
    );
    let run = polyseq(&["verify", "--h-spec", s(&spec), "--n-max", "4"]);
    assert_exit(&run, 0);
    assert!(run.stdout.is_empty());
    let run = polyseq(&["verify", "--h-spec", s(&spec), "--n-max", "4", "--verbose"]);
    assert_exit(&run, 0);
    assert!(String::from_utf8_lossy(&run.stdout).contains("direct equals oracle"));
}

#[test]
fn window_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "cheb.json", CHEB);
    let out = dir.path().join("t.json");
    let run = polyseq(&["linearize", "--h-spec", s(&spec), "--n-max", "4", "--size", "9", "--out", s(&out)]);
    assert_exit(&run, 3);
    assert!(!out.exists());

    let run = Command::new(env!("CARGO_BIN_EXE_polyseq"))
        .args(["linearize", "--h-spec", s(&spec), "--n-max", "4", "--out", s(&out)])
        .env("POLYSEQ_MAX_T", "9")
        .output()
        .unwrap();
    assert_exit(&run, 3);

    // A rows spec shorter than the window it is asked to fill.
    let short = write(&dir, "short.json", &x_rows(5));
    assert_exit(&polyseq(&["linearize", "--h-spec", s(&short), "--n-max", "4", "--out", s(&out)]), 3);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t.json");
    let missing = dir.path().join("missing.json");
    assert_exit(&polyseq(&["linearize", "--h-spec", s(&missing), "--out", s(&out)]), 2);
    let garbage = write(&dir, "garbage.json", "{not json");
    assert_exit(&polyseq(&["linearize", "--h-spec", s(&garbage), "--out", s(&out)]), 2);
    let unknown = write(&dir, "unknown.json", r#"{"type": "chebyshev", "a": "1", "c": "2"}"#);
    assert_exit(&polyseq(&["linearize", "--h-spec", s(&unknown), "--out", s(&out)]), 2);
    let bad_rational = write(&dir, "bad.json", r#"{"type": "chebyshev", "a": "1/0"}"#);
    assert_exit(&polyseq(&["linearize", "--h-spec", s(&bad_rational), "--out", s(&out)]), 2);
}
