use std::process::Command as Process;

use gkm_cli::{execute, parse_args, Command, Format, GraphSpec, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> gkm_cli::Outcome {
    execute(&parse_args(args.iter().copied()).expect("arguments parse"))
}

fn golden(name: &str) -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden/").to_string() + name;
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn parses_flag_and_hessenberg_targets() {
    let plan = parse_args(["graph", "--type", "A2", "--format", "dot"]).unwrap();
    assert_eq!(plan.command, Command::Graph);
    assert_eq!(plan.graph, GraphSpec::Flag("A2".parse().unwrap()));
    assert_eq!(plan.format, Format::Dot);

    let plan = parse_args(["graph", "--hess", "2,3,3"]).unwrap();
    assert!(matches!(plan.graph, GraphSpec::Hessenberg(_)));
}

#[test]
fn rejects_bad_arguments() {
    for args in [
        vec!["graph", "--hess", "2,2,9"],
        vec!["graph", "--type", "Q7"],
        vec!["graph", "--type", "A2", "--hess", "2,3,3"],
        vec!["ddo", "--type", "A2", "--op", "delta", "--i", "3", "--u", "s1"],
        vec!["act", "--type", "A2", "--action", "dot", "--perm", "[1,1,3]", "--u", "s1"],
        vec!["mult", "--type", "A2", "--u", "s1", "--v", "s1", "--format", "dot"],
        vec!["act", "--hess", "2,3,3", "--action", "star", "--perm", "s1", "--u", "s1"],
    ] {
        let err = parse_args(args.iter().copied()).unwrap_err();
        assert!(err.to_string().ends_with('\n'), "{args:?}");
    }
}

#[test]
fn graph_export_matches_golden() {
    let out = run(&["graph", "--type", "A2", "--format", "dot"]);
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.output, golden("a2_flag.dot"));
}

#[test]
fn multiplication_rows() {
    let out = run(&["mult", "--type", "A2", "--u", "s1", "--v", "s1"]);
    assert_eq!(out.status, EXIT_OK);
    let lines: Vec<&str> = out.output.lines().collect();
    assert_eq!(lines[0], "u\tv\tw\tequivariant\tordinary");
    assert!(lines.contains(&"[2,1,3]\t[2,1,3]\t[2,1,3]\tt1 - t2\t0"));
    assert!(lines.contains(&"[2,1,3]\t[2,1,3]\t[3,1,2]\t1\t1"));
}

#[test]
fn monk_rule_reports_agreement() {
    let out = run(&["monk", "--type", "A3", "--i", "2", "--perm", "s1 s3"]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.output.ends_with("# product agrees with the rule: true\n"));
}

#[test]
fn divided_difference_of_s1() {
    let out = run(&["ddo", "--type", "A2", "--op", "delta", "--i", "1", "--u", "s1", "--format", "tsv"]);
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.output.lines().skip(1).filter(|l| l.ends_with("\t1")).count(), 6);
}

#[test]
fn star_character_decomposes() {
    let out = run(&["char", "--type", "A2", "--action", "star"]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.output.contains("# standard\t2"), "{}", out.output);
}

#[test]
fn verify_suite_passes_on_a2() {
    let out = run(&["verify", "--type", "A2"]);
    assert_eq!(out.status, EXIT_OK, "{}{}", out.output, out.diagnostic);
    assert!(!out.output.contains("FAIL"));
}

#[test]
fn resource_limit_is_a_usage_failure() {
    let out = run(&["graph", "--type", "A9"]);
    assert_eq!(out.status, EXIT_USAGE);
    assert!(out.output.is_empty());
    assert!(!out.diagnostic.is_empty());
}

#[test]
fn hessenberg_delta_that_does_not_divide_is_a_failure() {
    let out = run(&["ddo", "--hess", "2,2,3", "--op", "delta", "--i", "2", "--u", "s2"]);
    assert_eq!(out.status, EXIT_FAILURE, "{}", out.diagnostic);
}

#[test]
fn output_is_deterministic() {
    let args = ["basis", "--type", "B2", "--format", "json"];
    assert_eq!(run(&args).output, run(&args).output);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gkm");
    let ok = Process::new(bin).args(["graph", "--type", "A1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(!ok.stdout.is_empty());
    let usage = Process::new(bin).args(["graph", "--hess", "2,2,9"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    assert!(usage.stdout.is_empty());
    assert!(!usage.stderr.is_empty());

    let dir = std::env::temp_dir().join(format!("gkm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("a2.dot");
    let written =
        Process::new(bin).args(["graph", "--type", "A2", "--format", "dot", "--output"]).arg(&file).output().unwrap();
    assert_eq!(written.status.code(), Some(EXIT_OK));
    assert_eq!(std::fs::read_to_string(&file).unwrap(), golden("a2_flag.dot"));
    std::fs::remove_dir_all(&dir).unwrap();
}
