//! End-to-end checks of the command-line interface against the sample
//! documents.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_torsade")
}

fn sample(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("samples")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn torsade")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

/// Record lines only: the `#` header carries absolute paths and digests.
fn records(out: &Output) -> Vec<String> {
    stdout(out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.to_string())
        .collect()
}

#[test]
fn h1_of_s3_with_trivial_z2_action() {
    let out = run(&["h1", "--gamma", &sample("z2.grp"), "--group", &sample("s3.grp")]);
    assert!(out.status.success());
    assert_eq!(
        records(&out),
        vec![
            "classes 2",
            "class 1 size=1 trivial=true rep=[0 0]",
            "class 2 size=3 trivial=false rep=[0 1]",
        ]
    );
}

#[test]
fn h1_machine_format() {
    let out = run(&[
        "h1",
        "--gamma",
        &sample("z2.grp"),
        "--group",
        &sample("s3.grp"),
        "--format",
        "machine",
    ]);
    assert!(out.status.success());
    assert_eq!(
        records(&out),
        vec![
            "classes 2",
            "class index=1 size=1 trivial=true rep=0:0",
            "class index=2 size=3 trivial=false rep=0:1",
        ]
    );
}

#[test]
fn h1_with_inversion_action_file() {
    let out = run(&[
        "h1",
        "--gamma",
        &sample("z2.grp"),
        "--group",
        &sample("z3.grp"),
        "--action",
        &sample("inv3.act"),
    ]);
    assert!(out.status.success());
    assert_eq!(records(&out), vec!["classes 1", "class 1 size=3 trivial=true rep=[0 0]"]);
}

#[test]
fn h1_accepts_the_permutation_dialect() {
    let out = run(&["h1", "--gamma", &sample("z2.grp"), "--group", &sample("s3perm.grp")]);
    assert!(out.status.success());
    let recs = records(&out);
    assert_eq!(recs[0], "classes 2");
}

#[test]
fn selftwist_of_s3() {
    let out = run(&["selftwist", "--gamma", &sample("s3.grp"), "--group", &sample("s3.grp")]);
    assert!(out.status.success());
    assert_eq!(
        records(&out),
        vec![
            "components 3",
            "component rep=0 size=1 stabilizer=6",
            "component rep=1 size=3 stabilizer=2",
            "component rep=4 size=2 stabilizer=3",
            "fixed 1",
        ]
    );
}

#[test]
fn specialize_exit_codes() {
    let found = run(&[
        "specialize",
        "--cover",
        &sample("s3cover.cov"),
        "--target",
        &sample("psi_t.coc"),
    ]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).contains("exists true"));

    let missing = run(&[
        "specialize",
        "--cover",
        &sample("s3cover.cov"),
        "--target",
        &sample("psi_triv.coc"),
    ]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(stdout(&missing).contains("exists false"));

    let invalid = run(&[
        "specialize",
        "--cover",
        &sample("s3cover.cov"),
        "--target",
        &sample("bad.coc"),
    ]);
    assert_eq!(invalid.status.code(), Some(2));
}

#[test]
fn isom_decides_twisted_conjugacy() {
    let yes = run(&["isom", "--p", &sample("psi_t.coc"), "--q", &sample("psi_t2.coc")]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("isomorphic true"));

    let no = run(&["isom", "--p", &sample("psi_t.coc"), "--q", &sample("psi_triv.coc")]);
    assert_eq!(no.status.code(), Some(3));
    assert!(stdout(&no).contains("isomorphic false"));
}

#[test]
fn twist_reports_the_isom_torsor() {
    let out = run(&["twist", "--p", &sample("psi_t.coc"), "--q", &sample("psi_triv.coc")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("points 6"));
    assert!(text.contains("fixed 0"));
    assert!(text.contains("isomorphic false"));

    let same = run(&["twist", "--p", &sample("psi_t.coc"), "--q", &sample("psi_t2.coc")]);
    assert!(stdout(&same).contains("isomorphic true"));
}

#[test]
fn parse_errors_exit_2_with_line_numbers() {
    let dir = std::env::temp_dir().join("torsade-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.grp");
    std::fs::write(&path, "group bad order 2\ntable\n0 1\n1 1\n").unwrap();
    let out = run(&["h1", "--gamma", path.to_str().unwrap(), "--group", &sample("s3.grp")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row not a permutation, row 1"), "{err}");
}

#[test]
fn unknown_suite_exits_2() {
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_var_overrides_the_cap() {
    let out = Command::new(bin())
        .env("TORSOR_MAX_ORDER", "4")
        .args(["h1", "--gamma", &sample("z2.grp"), "--group", &sample("s3.grp")])
        .output()
        .expect("spawn torsade");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn order_cap_is_respected() {
    let out = run(&[
        "h1",
        "--gamma",
        &sample("z2.grp"),
        "--group",
        &sample("s3.grp"),
        "--maxorder",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn verify_reports_are_stable_across_runs_and_jobs() {
    let first = run(&["verify", "--suite", "h1", "--jobs", "1"]);
    let second = run(&["verify", "--suite", "h1", "--jobs", "4"]);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("CLAIM h1.counts PASS"));
}

#[test]
fn verify_theorem3_lists_the_four_points() {
    let out = run(&["verify", "--suite", "theorem3", "--maxorder", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for id in ["thm3.1.1", "thm3.1.2", "thm3.1.3", "thm3.1.4"] {
        assert!(text.contains(&format!("CLAIM {id} PASS")), "{text}");
    }
}
