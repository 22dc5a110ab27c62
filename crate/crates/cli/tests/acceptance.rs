//! One line per acceptance criterion; the test fails if any line is FAIL.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use silting::bijections::{verify_all, Classification, VerifyOptions};
use silting::{fixtures, Algebra};

const FIXTURES: [&str; 4] = ["one", "a2", "a3", "dual"];

fn algebra(name: &str) -> Arc<Algebra> {
    match name {
        "one" => fixtures::one(),
        "a2" => fixtures::a2(),
        "a3" => fixtures::a3(),
        "dual" => fixtures::dual(),
        _ => unreachable!(),
    }
}

fn fixture_path(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"));
    p.to_string_lossy().into_owned()
}

fn verify_bin(name: &str, format: &str) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_silting"))
        .args(["verify", &fixture_path(name), "--format", format])
        .output()
        .unwrap();
    (out.stdout, out.status.code().unwrap_or(-1))
}

/// Runs a per-fixture check and joins the failures.
fn over_fixtures(
    classifications: &[(&str, Classification)],
    check: impl Fn(&Classification) -> Result<(), String>,
) -> Result<String, String> {
    let errs: Vec<String> =
        classifications.iter().filter_map(|(n, c)| check(c).err().map(|e| format!("{n}: {e}"))).collect();
    if errs.is_empty() {
        Ok(format!("{} fixtures", classifications.len()))
    } else {
        Err(errs.join("; "))
    }
}

fn counts() -> Result<String, String> {
    let want = [("one", 2), ("a2", 5), ("a3", 14), ("dual", 2)];
    let mut notes = Vec::new();
    for (name, n) in want {
        let start = Instant::now();
        let (out, code) = verify_bin(name, "json");
        let elapsed = start.elapsed();
        let v: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
        let c = &v["counts"];
        let got =
            (c["support_tau_tilting_pairs"].as_u64(), c["two_term_silting"].as_u64(), c["torsion_classes"].as_u64());
        let ok = got == (Some(n), Some(n), Some(n)) && code == 0 && elapsed < Duration::from_secs(10);
        let note = format!(
            "{name} {:?}/{:?}/{:?} in {:.2}s",
            got.0.unwrap_or(0),
            got.1.unwrap_or(0),
            got.2.unwrap_or(0),
            elapsed.as_secs_f64()
        );
        if !ok {
            return Err(format!("{note}, exit {code}, expected {n}/{n}/{n}"));
        }
        notes.push(note);
    }
    Ok(notes.join(", "))
}

fn determinism() -> Result<String, String> {
    for name in FIXTURES {
        for format in ["json", "csv", "text"] {
            if verify_bin(name, format) != verify_bin(name, format) {
                return Err(format!("{name} --format {format} differs between runs"));
            }
        }
        let a = verify_all(&algebra(name), name, VerifyOptions { mu: 2, seed: 0 }).map_err(|e| e.to_string())?;
        let b = verify_all(&algebra(name), name, VerifyOptions { mu: 2, seed: 7 }).map_err(|e| e.to_string())?;
        if serde_json::to_string(&a).unwrap() != serde_json::to_string(&b).unwrap() {
            return Err(format!("{name}: report depends on the search seed"));
        }
    }
    Ok("byte-identical across runs, formats and seeds".into())
}

#[test]
fn acceptance() {
    let classifications: Vec<(&str, Classification)> =
        FIXTURES.iter().map(|&n| (n, Classification::new(&algebra(n)).unwrap())).collect();
    let pool_sizes: Vec<String> = classifications.iter().map(|(n, c)| format!("{n} {}", c.sweep.len())).collect();

    let results: Vec<(&str, Result<String, String>)> = vec![
        ("1 counts agree across classifications", counts()),
        (
            "2 bijection round-trips",
            over_fixtures(&classifications, |c| {
                c.check_silting_pairs()?;
                c.check_pairs_torsion(2)
            }),
        ),
        ("3 presilting iff Property (S)", over_fixtures(&classifications, Classification::check_property_s_bridge)),
        (
            "4 three tau-rigidity criteria agree",
            over_fixtures(&classifications, Classification::check_tau_rigid_criteria),
        ),
        (
            "5 Ext-projectives recover generators",
            over_fixtures(&classifications, Classification::check_ext_projectives),
        ),
        (
            "6 count and maximality criteria agree",
            over_fixtures(&classifications, Classification::check_count_vs_maximal),
        ),
        (
            "7 Bongartz completions are silting",
            over_fixtures(&classifications, Classification::check_bongartz)
                .and_then(|_| {
                    let frozen = [("one", 2), ("a2", 5), ("a3", 9), ("dual", 2)];
                    for ((n, c), (_, want)) in classifications.iter().zip(frozen) {
                        if c.sweep.len() != want {
                            return Err(format!("{n}: {} presilting indecomposables, frozen {want}", c.sweep.len()));
                        }
                    }
                    Ok(())
                })
                .map(|_| format!("presilting indecomposables: {}", pool_sizes.join(", "))),
        ),
        (
            "8 approximation triangles stay in add(u)",
            over_fixtures(&classifications, Classification::check_two_term_shift),
        ),
        ("9 determinism", determinism()),
    ];

    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(note) => println!("PASS  {name}  ({note})"),
            Err(w) => {
                failed += 1;
                println!("FAIL  {name}  {w}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
