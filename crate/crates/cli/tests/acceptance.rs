//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;
#[path = "../../core/tests/support/nat_terms.rs"]
mod nat_terms;
#[path = "../../core/tests/support/surface_terms.rs"]
mod surface_terms;

use std::collections::BTreeSet;
use std::fs;
use std::time::{Duration, Instant};

use common::*;
use nat_terms::{Agreement, Ty};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

const STATEMENTS: [&str; 7] = [
    "joinfib",
    "im_univ",
    "join_embed",
    "join_extension",
    "join_connectivity",
    "qn_connectivity",
    "truncat_univ",
];

fn full_check() -> Verdict {
    let start = Instant::now();
    let out = joinlang(&["check", "stdlib"]);
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), stderr(&out)));
    }
    let files: BTreeSet<String> = manifest_rows().into_iter().map(|r| r.0).collect();
    let missing: Vec<&String> = files
        .iter()
        .filter(|f| !stdlib().join(f).is_file())
        .collect();
    if !missing.is_empty() {
        return Err(format!("manifest files missing: {missing:?}"));
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} files checked in {:.2?}", files.len(), elapsed))
}

fn tier_audit() -> Verdict {
    let out = joinlang(&["assumptions", "--audit-tier-a", "stdlib"]);
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), stderr(&out)));
    }
    let emitted: BTreeSet<String> = stdout(&out).lines().map(str::to_string).collect();
    let manifest: BTreeSet<String> = manifest_rows()
        .into_iter()
        .filter(|r| r.2 == "B")
        .map(|r| r.1)
        .collect();
    if emitted != manifest {
        let extra: Vec<_> = emitted.difference(&manifest).collect();
        let absent: Vec<_> = manifest.difference(&emitted).collect();
        return Err(format!(
            "Tier-B mismatch: extra {extra:?}, absent {absent:?}"
        ));
    }
    Ok(format!(
        "{} Tier-B statements, matching the manifest",
        emitted.len()
    ))
}

fn computation_goldens() -> Verdict {
    let dir = tests_dir().join("golden/compute");
    let context = tests_dir().join("golden/context.jt");
    let context = context.to_str().unwrap();
    let cases = files_with_ext(&dir, "term");
    let mut failures = Vec::new();
    for case in &cases {
        let term = fs::read_to_string(case).unwrap();
        let expected = fs::read_to_string(case.with_extension("out")).unwrap();
        let out = joinlang(&["normalize", context, term.trim_end()]);
        if !out.status.success() || out.stdout != expected.as_bytes() {
            failures.push(stem(case));
        }
    }
    if cases.len() < 12 {
        return Err(format!("only {} cases", cases.len()));
    }
    if !failures.is_empty() {
        return Err(format!("mismatches: {failures:?}"));
    }
    Ok(format!("{} cases byte-exact", cases.len()))
}

fn statement_goldens() -> Verdict {
    let out = joinlang(&["check", "--dump", "stdlib"]);
    if !out.status.success() {
        return Err(stderr(&out));
    }
    let rows = dump_rows(&stdout(&out));
    let mut failures = Vec::new();
    for name in STATEMENTS {
        let path = tests_dir().join(format!("golden/statements/{name}.txt"));
        let expected = squash_ws(&fs::read_to_string(path).unwrap());
        let printed = rows
            .iter()
            .find(|r| r.len() > 4 && r[1] == name)
            .map(|r| squash_ws(&r[4]));
        if printed.as_deref() != Some(expected.as_str()) {
            failures.push(name);
        }
    }
    if !failures.is_empty() {
        return Err(format!("mismatches: {failures:?}"));
    }
    Ok(format!("{} statements match", STATEMENTS.len()))
}

fn negative_corpus() -> Verdict {
    let cases = files_with_ext(&tests_dir().join("negative"), "jt");
    let mut failures = Vec::new();
    for case in &cases {
        let rule = expected_rule(case);
        let out = joinlang(&["check", case.to_str().unwrap()]);
        let rules = reported_rules(&stderr(&out));
        if out.status.success() || rules.first() != Some(&rule) {
            failures.push(format!("{}: wanted {rule}, got {rules:?}", stem(case)));
        }
    }
    if cases.len() < 10 {
        return Err(format!("only {} files", cases.len()));
    }
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    Ok(format!("{} files rejected with their rule", cases.len()))
}

/// Choice sequences from a fixed-seed runner, so the run is reproducible.
fn choice_sequences(count: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut runner = TestRunner::deterministic();
    let strategy = proptest::collection::vec(proptest::num::u8::ANY, 0..max_len);
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

fn nbe_oracle() -> Verdict {
    let (mut agreed, mut skipped) = (0, 0);
    for (i, choices) in choice_sequences(1500, 96).iter().enumerate() {
        let ty = if i % 3 == 2 {
            Ty::arr(Ty::Nat, Ty::Nat)
        } else {
            Ty::Nat
        };
        match nat_terms::compare(choices, &ty)? {
            Agreement::Agreed => agreed += 1,
            Agreement::OutOfFuel => skipped += 1,
        }
    }
    if agreed < 1000 {
        return Err(format!("only {agreed} terms compared"));
    }
    Ok(format!(
        "{agreed} terms agree ({skipped} beyond oracle fuel)"
    ))
}

fn parser_round_trip() -> Verdict {
    let sequences = choice_sequences(1200, 128);
    for choices in &sequences {
        surface_terms::surface_round_trip(choices)?;
        surface_terms::core_round_trip(choices)?;
    }
    Ok(format!(
        "{} surface and core terms round-trip",
        sequences.len()
    ))
}

fn determinism() -> Verdict {
    let first = joinlang(&["check", "--dump", "stdlib"]);
    let second = joinlang(&["check", "--dump", "stdlib"]);
    if first.stdout != second.stdout || first.stderr != second.stderr {
        return Err("declaration dumps differ".into());
    }
    let dump_len = first.stdout.len();
    let negative = files_with_ext(&tests_dir().join("negative"), "jt");
    let mut args = vec!["check"];
    args.extend(negative.iter().map(|p| p.to_str().unwrap()));
    let first = joinlang(&args);
    let second = joinlang(&args);
    if first.stderr != second.stderr || first.status.code() != second.status.code() {
        return Err("diagnostics differ".into());
    }
    let diagnostics = reported_rules(&stderr(&first)).len();
    Ok(format!(
        "{dump_len} dump bytes and {diagnostics} diagnostics identical across runs"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("full stdlib check", full_check),
        ("tier audit", tier_audit),
        ("computation goldens", computation_goldens),
        ("statement fidelity", statement_goldens),
        ("negative corpus", negative_corpus),
        ("NbE oracle equivalence", nbe_oracle),
        ("parser round trip", parser_round_trip),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
