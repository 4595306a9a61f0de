//! CLI acceptance: determinism of file outputs (criterion 10) and the
//! exit-code contract.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_summability"))
}

fn read_dir_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        let name = entry.file_name().to_string_lossy().into_owned();
        out.insert(name, std::fs::read(entry.path()).unwrap());
    }
    out
}

/// Criterion 10: identical config + seed + --threads 1 produce byte-identical
/// CSV/JSON (and SVG) outputs for every subcommand.
#[test]
fn criterion_10_determinism() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        (
            "classify-witness",
            vec!["classify", "--witness", "mrbvs-not-rbvs", "--len", "8", "--seed", "11"],
        ),
        (
            "classify-rows",
            vec!["classify", "--matrix", "lal", "--p-weights", "harmonic", "--n", "32", "--class", "mrbvs"],
        ),
        (
            "kernel-lemma2",
            vec!["kernel", "--lemma", "2", "--matrix", "fejer", "--n", "16..64", "--grid", "256"],
        ),
        (
            "rates-norm",
            vec!["rates", "--function", "absx:0.5", "--n", "16..64"],
        ),
        (
            "conditions",
            vec!["conditions", "--function", "absx:0.5", "--x", "1.0", "--n", "8..32", "--conditions", "2.7,Q", "--membership", "--t-grid", "64", "--x-quad", "64", "--delta-grid", "8"],
        ),
    ];
    let mut pass = true;
    for (label, args) in &cases {
        let tmp = tempfile::tempdir().unwrap();
        let dirs = [tmp.path().join("run1"), tmp.path().join("run2")];
        for dir in &dirs {
            let status = bin()
                .args(args.iter())
                .args(["--threads", "1", "--out", dir.to_str().unwrap()])
                .status()
                .unwrap();
            assert!(
                status.code() == Some(0) || status.code() == Some(1),
                "{label}: unexpected exit {status:?}"
            );
        }
        let a = read_dir_bytes(&dirs[0]);
        let b = read_dir_bytes(&dirs[1]);
        let identical = a == b;
        pass &= identical;
        assert!(!a.is_empty(), "{label}: no output files written");
        assert!(identical, "{label}: reruns differ");
    }
    println!(
        "criterion 10 (CLI determinism at --threads 1): {} — {} subcommand runs byte-identical",
        if pass { "PASS" } else { "FAIL" },
        cases.len()
    );
    assert!(pass);
}

#[test]
fn exit_code_contract() {
    // Usage/config errors exit 2.
    let tmp = tempfile::tempdir().unwrap();
    let bad_config = tmp.path().join("bad.json");
    std::fs::write(&bad_config, "{\"matrx\": \"fejer\"}").unwrap();
    let status = bin()
        .args(["classify", "--class", "mrbvs"])
        .arg("--config")
        .arg(&bad_config)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2), "malformed config");

    let status = bin()
        .args(["conditions", "--function", "absx:0.5", "--x", "1.0", "--beta", "0.0", "--gamma", "0.9", "--conditions", "Q"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2), "gamma out of range");

    let status = bin().args(["classify", "--witness", "rbvs-not-mrbvs"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2), "inverted witness pair");

    let status = bin().args(["nonsense"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2), "unknown subcommand");

    // Membership failures exit 1.
    let gap = tmp.path().join("gap.csv");
    std::fs::write(&gap, "n,k,a\n0,0,1\n1,0,0.5\n1,1,0.5\n2,0,0.5\n2,1,0\n2,2,0.5\n").unwrap();
    let matrix_arg = format!("csv:{}", gap.display());
    let status = bin()
        .args(["classify", "--matrix", &matrix_arg, "--n", "2", "--class", "rbvs"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1), "rows outside the class");

    let status = bin()
        .args(["kernel", "--lemma", "2", "--matrix", &matrix_arg, "--n", "2", "--grid", "64"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1), "kernel sweep on non-class rows");

    // Clean passes exit 0.
    let status = bin()
        .args(["classify", "--matrix", "fejer", "--n", "16", "--class", "mrbvs"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0), "constant rows classify clean");
}

#[test]
fn rates_emits_all_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let status = bin()
        .args(["rates", "--function", "cos", "--omega", "power:1.0", "--n", "16..64"])
        .args(["--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    for name in ["report.json", "table.csv", "plot.svg"] {
        let path = out.join(name);
        assert!(path.exists(), "{name} missing");
    }
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert!(json["verifies"].as_str().unwrap().contains("theorem-3"));
    let table = std::fs::read_to_string(out.join("table.csv")).unwrap();
    assert!(table.starts_with("# verifies:"));
    assert!(table.lines().nth(1).unwrap().starts_with("n,error,bound,ratio"));
}
