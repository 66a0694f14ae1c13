mod common;

use std::fs;
use std::process::Command;

use common::*;

#[test]
fn computation_goldens_are_byte_exact() {
    let context = tests_dir().join("golden/context.jt");
    let cases = files_with_ext(&tests_dir().join("golden/compute"), "term");
    assert!(cases.len() >= 12);
    for case in cases {
        let term = fs::read_to_string(&case).unwrap();
        let expected = fs::read_to_string(case.with_extension("out")).unwrap();
        let out = joinlang(&["normalize", context.to_str().unwrap(), term.trim_end()]);
        assert!(out.status.success(), "{}: {}", stem(&case), stderr(&out));
        assert_eq!(stdout(&out), expected, "{}", stem(&case));
    }
}

#[test]
fn negative_files_fail_with_their_rule() {
    for case in files_with_ext(&tests_dir().join("negative"), "jt") {
        let out = joinlang(&["check", case.to_str().unwrap()]);
        let rule = expected_rule(&case);
        let expected_code = if rule == "parse-error" { 2 } else { 1 };
        assert_eq!(out.status.code(), Some(expected_code), "{}", stem(&case));
        assert_eq!(reported_rules(&stderr(&out)), [rule], "{}", stem(&case));
    }
}

#[test]
fn tsv_diagnostics_have_five_fields_and_escaped_newlines() {
    let case = tests_dir().join("negative/refl_endpoint.jt");
    let out = joinlang(&["check", case.to_str().unwrap()]);
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    let fields: Vec<&str> = err.trim_end().split('\t').collect();
    assert_eq!(fields.len(), 5);
    assert_eq!(fields[0], "error");
    assert!(fields[1].ends_with("refl_endpoint.jt"));
    assert!(fields[4].contains("\\n  expected: zero"));
}

#[test]
fn human_format_names_the_rule() {
    let case = tests_dir().join("negative/type_in_type.jt");
    let out = joinlang(&["--format", "human", "check", case.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains("[universe-too-big]"), "{err}");
}

#[test]
fn single_stdlib_file_checks() {
    let out = joinlang(&["check", "stdlib/prelude.jt"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("ok\t"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = joinlang(&["check", "no/such/file.jt"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(reported_rules(&stderr(&out)), ["io-error"]);
}

#[test]
fn normalize_reports_type_and_parse_errors() {
    let context = tests_dir().join("golden/context.jt");
    let context = context.to_str().unwrap();
    let out = joinlang(&["normalize", context, "succ true"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(reported_rules(&stderr(&out)), ["type-mismatch"]);
    let out = joinlang(&["normalize", context, "(succ"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(reported_rules(&stderr(&out)), ["parse-error"]);
}

#[test]
fn assumptions_of_declarations() {
    let out = joinlang(&["assumptions", "idfn"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");

    let out = joinlang(&["assumptions", "i_f_embed"]);
    assert!(stdout(&out).lines().any(|l| l == "i_f_embed"));

    let out = joinlang(&["assumptions", "funext"]);
    assert_eq!(stdout(&out), "funext00\n");

    let out = joinlang(&["assumptions", "truncat"]);
    let names: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names
        .iter()
        .all(|n| ["funext00", "funext01", "ua0"].contains(&n.as_str())));

    let out = joinlang(&["assumptions", "no_such_declaration"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn image_uses_only_trusted_assumptions() {
    let trusted = [
        "funext00",
        "funext01",
        "funext11",
        "ua0",
        "ua1",
        "gind_edg00",
        "gind_edg01",
        "gind_edg10",
        "gind_edg11",
    ];
    for name in [
        "im", "q_f", "i_f", "Q_f", "modim", "setquot", "truncat", "tproj",
    ] {
        let out = joinlang(&["assumptions", name]);
        assert!(out.status.success(), "{name}");
        for dep in stdout(&out).lines() {
            assert!(trusted.contains(&dep), "{name} depends on {dep}");
        }
    }
}

#[test]
fn declared_levels() {
    let out = joinlang(&["check", "--dump", "stdlib"]);
    let rows = dump_rows(&stdout(&out));
    let ty = |name: &str| {
        rows.iter()
            .find(|r| r.len() > 4 && r[1] == name)
            .map(|r| r[4].clone())
            .unwrap_or_else(|| panic!("{name} missing from dump"))
    };
    assert!(ty("isConnType").ends_with("U1"));
    assert!(ty("isLocallySmall").ends_with("U1"));
    assert!(ty("modim").ends_with("U0"));
    assert!(ty("setquot").ends_with("U0"));
    assert!(ty("mpb").ends_with("U0"));
    assert_eq!(ty("truncat"), "Nat → U0 → U0");
}

#[test]
fn every_stdlib_declaration_is_in_the_manifest() {
    let out = joinlang(&["check", "--dump", "stdlib"]);
    let rows = dump_rows(&stdout(&out));
    let manifest = manifest_rows();
    let declared: Vec<&String> = rows
        .iter()
        .filter(|r| r.len() == 7 && r[0] != "primitive")
        .map(|r| &r[1])
        .collect();
    assert_eq!(declared.len(), manifest.len());
    for name in declared {
        assert!(manifest.iter().any(|m| &m.1 == name), "{name} unlisted");
    }
}

#[test]
fn manifest_audit_passes_on_stdlib() {
    let out = joinlang(&["manifest-audit", "stdlib"]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn manifest_audit_catches_tier_drift() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("lib.jt"),
        "{-# TIER A #-}\ndefine one : Nat := succ zero\n\n\
         {-# TIER B #-}\npostulate claim : Id Nat one one\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("MANIFEST"),
        "lib.jt\tone\tA\tfirst\nlib.jt\tclaim\tA\tsecond\n",
    )
    .unwrap();
    let out = joinlang(&["manifest-audit", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));

    fs::write(dir.path().join("MANIFEST"), "lib.jt\tone\tA\tfirst\n").unwrap();
    let out = joinlang(&["manifest-audit", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "unlisted postulate accepted");

    fs::write(
        dir.path().join("MANIFEST"),
        "lib.jt\tone\tA\tfirst\nlib.jt\tclaim\tB\tsecond\n",
    )
    .unwrap();
    let out = joinlang(&["manifest-audit", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn tier_a_audit_rejects_leaked_postulates() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("lib.jt"),
        "{-# TIER B #-}\npostulate claim : Nat\n\n\
         {-# TIER A #-}\ndefine leak : Nat := succ claim\n",
    )
    .unwrap();
    let out = joinlang(&[
        "assumptions",
        "--audit-tier-a",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
}

#[test]
fn stdlib_location_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("uses_prelude.jt");
    fs::write(
        &file,
        "import \"prelude\"\n\ndefine me : Nat → Nat := idfn Nat\n",
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_joinlang"))
        .current_dir(dir.path())
        .env("JOINLANG_STDLIB", stdlib())
        .args(["check", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn checking_is_order_independent() {
    let a = tests_dir().join("negative/hole.jt");
    let b = tests_dir().join("negative/refl_endpoint.jt");
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    let ab = reported_rules(&stderr(&joinlang(&["check", a, b])));
    let mut ba = reported_rules(&stderr(&joinlang(&["check", b, a])));
    ba.reverse();
    assert_eq!(ab, ba);
}
