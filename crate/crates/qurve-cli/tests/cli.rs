use std::path::PathBuf;
use std::process::{Command, Output};

use qurve::compactification::SDeltaSpec;
use qurve::presets::preset_tree;
use qurve::quiver::QuiverDocument;
use qurve::zariski_quiver;

fn qurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qurve")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qurve(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Compares against `tests/golden/<name>.txt`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let text = stdout(args);
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", &format!("{name}.txt")].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(text, want, "{name} drifted from its golden file");
    assert_eq!(stdout(args), text, "{name} is not deterministic");
}

#[test]
fn golden_outputs() {
    golden("zariski_sl2z_dot", &["zariski", "--preset", "sl2z", "--format", "dot"]);
    golden("generators_sl2z", &["generators", "--preset", "sl2z"]);
    golden("generators_gl2z", &["generators", "--preset", "gl2z"]);
    golden("etale_sl2z", &["etale", "--preset", "sl2z"]);
    golden("etale_gl2z_dot", &["etale", "--preset", "gl2z", "--format", "dot"]);
    golden("sigma_gl2z", &["sigma", "--preset", "gl2z", "--edge", "D2"]);
    golden("decompose_sl2z", &["decompose", "--preset", "sl2z", "--alpha", "2,1,1,0,1,1,1,0,1,0"]);
    golden("local_sl2z", &["local", "--preset", "sl2z", "--xi", "1,0,0,0,0,0,0,1,0,0,0,0:2;0,0,1,0,0,0,1,0,0,0,0,0:1"]);
    golden("bracket_psl2_st", &["bracket", "--preset", "psl2z-double", "--n", "S", "--m", "T"]);
    golden("moment_cm", &["moment", "--preset", "calogero-moser"]);
    golden("flow_gl2_kx1", &["flow", "--preset", "gl2z-double", "--necklace", "Kp_x1", "--element", "y1"]);
    golden("sdelta_gl2z", &["sdelta", "--preset", "gl2z"]);
    golden("sdelta_gl2z_etale", &["sdelta", "--preset", "gl2z", "--etale"]);
    golden("rep_eval_random", &["rep-eval", "--preset", "calogero-moser", "--random", "1,3", "--element", "b.b*", "--seed", "11"]);
    golden("semi_invariant_gl2z", &[
        "semi-invariant", "--preset", "gl2z", "--edge", "D2", "--random", "1,1,1,1,1,1,1,0,0,1,1", "--checks", "4", "--seed", "5",
    ]);
}

#[test]
fn calogero_moser_flow_line() {
    let out = stdout(&["flow", "--preset", "calogero-moser", "--necklace", "b.b", "--rho", "1/2", "--element", "b*"]);
    assert_eq!(out, "b* + 1/2·b\n");
}

#[test]
fn zariski_dot_counts() {
    let out = stdout(&["zariski", "--preset", "sl2z", "--format", "dot"]);
    assert_eq!(out.lines().filter(|l| l.contains("[ label") && !l.contains("->")).count(), 10);
    assert_eq!(out.matches("->").count(), 12);
}

#[test]
fn generator_table_rows() {
    let out = stdout(&["generators", "--preset", "gl2z"]);
    assert_eq!(out.lines().filter(|l| l.starts_with('g')).count(), 10);
}

#[test]
fn exit_codes() {
    assert_eq!(qurve(&["validate", "--preset", "sl2z"]).status.code(), Some(0));
    assert_eq!(qurve(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qurve(&["zariski", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(qurve(&["zariski", "--tree", "/nonexistent/tree.json"]).status.code(), Some(2));
    assert_eq!(qurve(&["generators", "--preset", "gl2z", "--format", "dot"]).status.code(), Some(2));
    // Domain errors: a vector that is not full, a necklace that is not one-way.
    let not_full = qurve(&["decompose", "--preset", "sl2z", "--alpha", "1,0,0,0,0,0,0,0,0,0"]);
    assert_eq!(not_full.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&not_full.stderr).starts_with("error:"));
    let two_way = qurve(&["flow", "--preset", "calogero-moser", "--necklace", "b.b*", "--element", "b"]);
    assert_eq!(two_way.status.code(), Some(1));
}

#[test]
fn invalid_tree_file_is_a_domain_error() {
    let dir = std::env::temp_dir().join(format!("qurve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"vertices":[{"id":"v","blocks":[1]},{"id":"w","blocks":[2]}],
           "edges":[{"id":"e","from":"v","to":"w","blocks":[1],
                     "restriction_from":[[1]],"restriction_to":[[1]]}]}"#,
    )
    .unwrap();
    let out = qurve(&["validate", "--tree", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("violation"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn structured_round_trips() {
    let doc: QuiverDocument = serde_json::from_str(&stdout(&["zariski", "--preset", "gl2z", "--format", "structured"])).unwrap();
    let t = preset_tree("gl2z").unwrap();
    let z = zariski_quiver(&t).unwrap();
    assert_eq!(doc.to_quiver().unwrap(), z.quiver);

    let text = stdout(&["sigma", "--preset", "sl2z", "--edge", "Z2", "--format", "structured"]);
    let t = preset_tree("sl2z").unwrap();
    let z = zariski_quiver(&t).unwrap();
    assert_eq!(SDeltaSpec::from_json(&t, &z, &text).unwrap(), SDeltaSpec::canonical(&t, &z).unwrap());

    let gens: serde_json::Value = serde_json::from_str(&stdout(&["generators", "--preset", "sl2z", "--format", "structured"])).unwrap();
    assert_eq!(gens["generators"].as_array().unwrap().len(), 12);
}
