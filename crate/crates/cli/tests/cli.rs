use std::path::{Path, PathBuf};
use std::process::Command;

use ainfext_cli::{EXIT_INPUT, EXIT_OK, EXIT_TRUNCATION};

fn presentation(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/presentations").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ainfext(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ainfext")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit status"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ext_table_of_the_plane_cusp() {
    let p = presentation("plane_cusp.pres");
    let r = ainfext(&["ext-table", path_str(&p), "--cutoff-adams", "12"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("Ext^0 = k\n"));
    for n in 1..=4 {
        let line = format!("Ext^{n} = k(-{}) ⊕ k(-{})\n", 3 * n - 1, 3 * n);
        assert!(r.stdout.contains(&line), "missing {line:?} in\n{}", r.stdout);
    }

    let r = ainfext(&["ext-table", path_str(&p), "--cutoff-adams", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["characteristic"], 0);
    assert_eq!(v["dims"][3][8], 1);
    assert_eq!(v["dims"][3][9], 1);
    assert_eq!(v["dims"][3][7], 0);
}

#[test]
fn verify_a1_passes() {
    let r = ainfext(&["verify", path_str(&presentation("a1.pres"))]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.ends_with("all identities hold\n"));
    assert!(r.stdout.contains("SI(3)"));
    assert!(r.stdout.contains("MI(4)"));
}

#[test]
fn massey_cube_on_truncated_polynomial() {
    let p = presentation("truncated_p3_gf5.pres");
    let r = ainfext(&["massey", path_str(&p), "x", "x", "x"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("equals the representative"));

    let r = ainfext(&["massey", path_str(&p), "--format", "json", "x#", "x#", "x#"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["agrees"], true);
    assert_eq!((v["hom"].as_u64(), v["adams"].as_u64()), (Some(2), Some(6)));
    assert_eq!(v["representative"], v["m_value"]);
}

#[test]
fn output_is_deterministic() {
    let p = presentation("plane_cusp.pres");
    let a = ainfext(&["model", path_str(&p), "--format", "json"]);
    let b = ainfext(&["model", path_str(&p), "--format", "json"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn saved_model_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("a1.json");
    let p = presentation("a1.pres");
    let r = ainfext(&["model", path_str(&p), "--format", "json", "--out", path_str(&saved)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.is_empty());

    let again = ainfext(&["model", path_str(&saved), "--format", "json"]);
    assert_eq!(again.stdout, std::fs::read_to_string(&saved).unwrap());

    let fresh = ainfext(&["verify", path_str(&p)]);
    let loaded = ainfext(&["verify", path_str(&saved)]);
    assert_eq!(loaded.code, EXIT_OK);
    assert_eq!(fresh.stdout, loaded.stdout);

    let fresh = ainfext(&["ext-table", path_str(&p)]);
    let loaded = ainfext(&["ext-table", path_str(&saved)]);
    assert_eq!(fresh.stdout, loaded.stdout);
}

#[test]
fn damaged_model_files_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("m.json");
    let p = presentation("dual_numbers.pres");
    ainfext(&["model", path_str(&p), "--format", "json", "--out", path_str(&saved)]);
    let json = std::fs::read_to_string(&saved).unwrap();

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &json[..json.len() / 2]).unwrap();
    let r = ainfext(&["verify", path_str(&truncated)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.starts_with("error:"));

    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["schema_version"] = 99.into();
    let future = dir.path().join("future.json");
    std::fs::write(&future, serde_json::to_string(&v).unwrap()).unwrap();
    let r = ainfext(&["verify", path_str(&future)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.contains("schema"), "{}", r.stderr);

    let r = ainfext(&["verify", path_str(&saved), "--cutoff-hom", "2"]);
    assert_eq!(r.code, EXIT_INPUT);
}

#[test]
fn bad_input_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pres");
    std::fs::write(&bad, "field = 4\ngen x\n").unwrap();
    assert_eq!(ainfext(&["ext-table", path_str(&bad)]).code, EXIT_INPUT);
    assert_eq!(ainfext(&["ext-table", path_str(&dir.path().join("missing.pres"))]).code, EXIT_INPUT);
    let p = presentation("plane_cusp.pres");
    assert_eq!(ainfext(&["massey", path_str(&p), "x2", "nope"]).code, EXIT_INPUT);
}

#[test]
fn massey_beyond_the_cutoffs_is_a_truncation() {
    let p = presentation("truncated_p3_gf5.pres");
    let r = ainfext(&["massey", path_str(&p), "--cutoff-adams", "5", "x", "x", "x"]);
    assert_eq!(r.code, EXIT_TRUNCATION, "{}", r.stderr);
}

#[test]
fn recover_reads_back_the_relations() {
    let r = ainfext(&["recover", path_str(&presentation("redundant_cube.pres")), "--format", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["characteristic"], 5);
    let relations = v["relations"].as_array().unwrap();
    assert_eq!(relations.len(), 1);
    assert_eq!(relations[0]["degree"], 3);

    let r = ainfext(&["recover", path_str(&presentation("a1.pres"))]);
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("rel ")).count(), 2);
}

#[test]
fn library_entry_point_matches_the_binary() {
    use clap::Parser;
    let p = presentation("dual_numbers.pres");
    let config = ainfext_cli::RunConfig::try_parse_from(["ainfext", "ext-table", path_str(&p)]).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = ainfext_cli::run(&config, &mut out, &mut err);
    assert_eq!(code, EXIT_OK);
    assert_eq!(String::from_utf8(out).unwrap(), ainfext(&["ext-table", path_str(&p)]).stdout);
}
