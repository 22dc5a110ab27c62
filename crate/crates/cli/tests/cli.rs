use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_silting")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn modules_rows() {
    for (name, rows) in [("one", 1), ("a2", 3), ("a3", 6)] {
        let (out, _, code) = run(&["modules", &path(name)]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), rows + 1, "{out}");
        assert!(!out.contains("warning"));
    }
}

#[test]
fn modules_warns_at_the_bound() {
    let (out, _, code) = run(&["modules", &path("a3"), "--max-dim", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("warning"), "{out}");
}

#[test]
fn a2_listings_have_five_rows() {
    for cmd in ["sttilt", "silting", "torsion"] {
        let (out, _, code) = run(&[cmd, &path("a2")]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5, "{cmd}: {out}");
    }
    let (out, _, _) = run(&["silting", &path("a2")]);
    assert!(out.lines().any(|l| l == "P2->P1 + P2->0"));
}

#[test]
fn verify_counts_and_exit() {
    for (name, n) in [("one", 2), ("a2", 5), ("dual", 2)] {
        let (out, _, code) = run(&["verify", &path(name)]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["algebra"], name);
        for key in ["support_tau_tilting_pairs", "two_term_silting", "torsion_classes"] {
            assert_eq!(v["counts"][key], n);
        }
        assert_eq!(v["checks"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn csv_rows_match_json_arrays() {
    let (json, _, _) = run(&["verify", &path("a3")]);
    let (csv, _, code) = run(&["verify", &path("a3"), "--format", "csv"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for name in ["pairs", "silting", "torsion"] {
        let rows = csv.lines().filter(|l| l.starts_with(&format!("object,{name},"))).count();
        assert_eq!(rows, v["objects"][name].as_array().unwrap().len(), "{name}");
    }
    assert_eq!(csv.lines().filter(|l| l.starts_with("check,")).count(), 7);
    assert_eq!(csv.lines().filter(|l| l.starts_with("count,")).count(), v["counts"].as_object().unwrap().len());
}

#[test]
fn bongartz_examples() {
    let a2 = path("a2");
    assert_eq!(run(&["bongartz", &a2, "P2->0"]).0, "P2->P1 + P2->0\n");
    assert_eq!(run(&["bongartz", &a2, "P1->0 + P2->0"]).0, "P1->0 + P2->0\n");
    // the input already lies in degree 0, so it is completed by the remaining projective
    assert_eq!(run(&["bongartz", &a2, "0->P1"]).0, "0->P1 + 0->P2\n");
}

#[test]
fn input_errors_exit_2() {
    let (_, err, code) = run(&["bongartz", &path("a2"), "P1->0 + 0->P1"]);
    assert_eq!(code, 2);
    assert!(err.contains("not presilting") && err.contains("dimension 1"), "{err}");
    let (_, err, code) = run(&["verify", "/nonexistent/x.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("x.json"));
    let (_, _, code) = run(&["bongartz", &path("a2"), "P9->0"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["verify", &path("a2"), "--format", "yaml"]);
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_carry_line_context() {
    let dir = std::env::temp_dir().join(format!("silting-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"field_char\": 2,\n  \"vertices\": [\"1\"],\n  \"colour\": 1\n}\n").unwrap();
    let (_, err, code) = run(&["modules", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
    let infinite = dir.join("loop.json");
    std::fs::write(
        &infinite,
        r#"{"field_char": 3, "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}], "relations": []}"#,
    )
    .unwrap();
    let (_, err, code) = run(&["modules", infinite.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("not finite dimensional"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}
