//! End-to-end tests of the binary: flags, exit codes, and the
//! byte-identical JSON round-trip.

use std::process::{Command, Output};

fn alcove(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alcove"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = alcove(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

/// Parsing the emitted JSON and re-serializing reproduces it exactly.
fn assert_round_trips(args: &[&str]) {
    let text = stdout_of(args);
    let value: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    let reserialized = serde_json::to_string_pretty(&value).expect("serializable");
    assert_eq!(text.trim_end(), reserialized, "round trip for {args:?}");
}

#[test]
fn json_outputs_round_trip() {
    assert_round_trips(&["roots", "--family", "C", "--rank", "4", "--json"]);
    assert_round_trips(&["marks", "--family", "E", "--rank", "8", "--json"]);
    assert_round_trips(&["alcove", "--family", "C", "--rank", "2", "--json"]);
    assert_round_trips(&["orbits", "--family", "B", "--rank", "3", "--json"]);
    assert_round_trips(&[
        "bound", "--family", "C", "--rank", "6", "--assume-conjecture", "--json",
    ]);
    assert_round_trips(&[
        "realize", "--family", "B", "--rank", "3", "--k", "2", "--model", "clifford", "--json",
    ]);
    assert_round_trips(&[
        "verify", "--family", "A", "--rank", "1", "--seed", "7", "--samples", "50", "--json",
    ]);
}

#[test]
fn bound_values_from_the_table() {
    let text = stdout_of(&["bound", "--family", "A", "--rank", "5"]);
    assert!(text.contains("upper bound: cat <= 5"), "{text}");

    let text = stdout_of(&[
        "bound", "--family", "C", "--rank", "4", "--assume-conjecture",
    ]);
    assert!(text.contains("upper bound: cat <= 8"), "{text}");

    let text = stdout_of(&["bound", "--family", "B", "--rank", "3"]);
    assert!(text.contains("upper bound: unknown"), "{text}");
    assert_eq!(text.matches("center point").count(), 2, "{text}");
}

#[test]
fn bound_with_overrides() {
    let text = stdout_of(&[
        "bound", "--family", "B", "--rank", "3", "--override", "2=4", "--override", "3=3",
    ]);
    assert!(text.contains("upper bound: cat <= 10"), "{text}");
    assert!(text.contains("override: orbit 2 set to 4"), "{text}");
}

#[test]
fn marks_output() {
    let text = stdout_of(&["marks", "--family", "E", "--rank", "8"]);
    assert_eq!(text.trim(), "E8: (2, 3, 4, 6, 5, 4, 3, 2)");
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = alcove(&[
        "verify", "--family", "C", "--rank", "2", "--checks", "lemma33,prop34d", "--seed", "7",
        "--samples", "50",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("lemma33"), "{text}");
    assert!(text.contains("pass"), "{text}");
}

#[test]
fn bad_flags_exit_two() {
    // Unknown flag (clap error).
    let out = alcove(&["roots", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    // Invalid rank for the family.
    let out = alcove(&["roots", "--family", "D", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown check name.
    let out = alcove(&["verify", "--family", "C", "--rank", "2", "--checks", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // Unsupported check for the family.
    let out = alcove(&[
        "verify", "--family", "B", "--rank", "3", "--checks", "grass_cover",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Wrong model for the family.
    let out = alcove(&[
        "realize", "--family", "C", "--rank", "3", "--k", "1", "--model", "clifford",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Rank guard without --force.
    let out = alcove(&["alcove", "--family", "C", "--rank", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rank_guard_can_be_forced() {
    let out = alcove(&["alcove", "--family", "A", "--rank", "9", "--force"]);
    assert!(out.status.success());
}

#[test]
fn realize_models() {
    let text = stdout_of(&[
        "realize", "--family", "B", "--rank", "2", "--k", "2", "--model", "clifford",
    ]);
    assert!(text.contains("e1e2e3e4"), "{text}");
    let text = stdout_of(&[
        "realize", "--family", "C", "--rank", "2", "--k", "1", "--model", "quat",
    ]);
    assert!(text.contains("[-1, 0]"), "{text}");
    let text = stdout_of(&[
        "realize", "--family", "D", "--rank", "3", "--k", "2", "--model", "so",
    ]);
    assert!(text.contains("SO(6)"), "{text}");
}

#[test]
fn verify_reports_are_deterministic() {
    let args = [
        "verify", "--family", "C", "--rank", "2", "--seed", "123", "--samples", "60", "--json",
    ];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
}
