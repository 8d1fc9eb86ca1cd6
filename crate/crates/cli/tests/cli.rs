use std::fs;
use std::process::{Command, Output};

use artin1_core::certify::{Certificate, Verdict};

fn artin1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin1"))
        .args(args)
        .env_remove("ARTIN1_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn certify_json_parses_back() {
    let o = artin1(&["certify", "--prime", "5", "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let cert: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!((cert.counts.n1, cert.counts.n2), (126, 1176));
    assert_eq!(cert.verdict, Verdict::Certified21);
    assert_eq!(serde_json::to_string_pretty(&cert).unwrap() + "\n", text);
    assert!(text.contains("\"artin_invariant\": \"1 (cited)\""));
}

#[test]
fn json_keys_in_schema_order() {
    let text = stdout(&artin1(&["certify", "--prime", "7", "--format", "json"]));
    let keys = [
        "\"p\"",
        "\"model\"",
        "\"curve\"",
        "\"params\"",
        "\"B_sign\"",
        "\"a4_coeffs\"",
        "\"a6_coeffs\"",
        "\"fibers\"",
        "\"counts\"",
        "\"N1\"",
        "\"traces\"",
        "\"eigen\"",
        "\"plus_p\"",
        "\"rho_fp\"",
        "\"rho_fp2\"",
        "\"artin_invariant\"",
        "\"verdict\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
}

#[test]
fn csv_has_fixed_header() {
    let o = artin1(&["sweep", "--min", "5", "--max", "13", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,curve_a,curve_b,curve_j,B_sign,c,twist_d,a4_coeffs,a6_coeffs,fibers,N1,N2,t1,t2,\
         plus_p,minus_p,rho_fp,rho_fp2,artin_invariant,verdict"
    );
    assert_eq!(lines.count(), 4);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| artin1(args).status.code().unwrap();
    assert_eq!(code(&["certify", "--prime", "7"]), 0);
    assert_eq!(code(&["certify", "--prime", "2"]), 3);
    let o = artin1(&["certify", "--prime", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("characteristic 2 and 3"));
    assert_eq!(code(&["certify", "--prime", "15"]), 2);
    assert_eq!(code(&["certify", "--prime", "211"]), 2);
    assert_eq!(code(&["sweep", "--min", "5", "--max", "300"]), 2);
    assert_eq!(code(&["certify"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--format", "xml", "selftest"]), 2);
    assert_eq!(code(&["inert", "--disc", "-7", "--max", "50"]), 2);
    assert_eq!(code(&["sweep", "--min", "2", "--max", "10"]), 0);
    assert_eq!(code(&["selftest"]), 0);
}

#[test]
fn sweep_reports_small_characteristics() {
    let o = artin1(&["sweep", "--min", "2", "--max", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["unsupported"], serde_json::json!([2, 3]));
    let ps: Vec<u64> = v["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["p"].as_u64().unwrap())
        .collect();
    assert_eq!(ps, [5, 7]);
    assert_eq!(v["aggregate"], "ALL_CERTIFIED");
}

#[test]
fn cache_hit_returns_stored_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_artin1"))
            .args(["certify", "--prime", "13", "--format", "json"])
            .env("ARTIN1_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let files: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len(), 1);
    let stored: Certificate = serde_json::from_slice(&fs::read(&files[0]).unwrap()).unwrap();
    let printed: Certificate = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(stored, printed);
    assert_eq!(run().stdout, first.stdout);

    // A hit is served from the file, not recounted.
    let mut marked = stored.clone();
    marked.artin_invariant = "marked".into();
    fs::write(&files[0], serde_json::to_vec(&marked).unwrap()).unwrap();
    let again: Certificate = serde_json::from_slice(&run().stdout).unwrap();
    assert_eq!(again, marked);
}

#[test]
fn all_candidates_lists_the_family() {
    let o = artin1(&[
        "certify",
        "--prime",
        "7",
        "--all-candidates",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let certs: Vec<Certificate> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(certs.len(), 4);
    assert!(certs.iter().any(|c| c.verdict == Verdict::Certified21));
    assert_eq!(
        artin1(&["certify", "--prime", "5", "--generic-j"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn kummer_and_inert_formats() {
    let o = artin1(&["kummer", "--prime", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (v["N1"].as_i64(), v["N2"].as_i64()),
        (Some(176), Some(3480))
    );
    let o = artin1(&["inert", "--disc", "-3", "--max", "20", "--format", "csv"]);
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "p,trace,splitting,agree"
    );
}
