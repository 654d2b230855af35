mod common;

use std::path::Path;

use mtcut::cli::{run, EXIT_FEASIBLE, EXIT_INFEASIBLE, EXIT_USAGE};
use mtcut::io::{parse_instance, parse_solution};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("mtcut").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EXAMPLE: &str = "c path with a third terminal on both inner vertices\n\
    p mtcut 5 5 3 2\n\
    t 1\nt 4\nt 5\n\
    e 1 2 1\ne 2 3 1\ne 3 4 1\ne 5 2 1\ne 5 3 1\n";

#[test]
fn solves_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ex.mtc");
    std::fs::write(&file, EXAMPLE).unwrap();
    let (code, out, _) = call(&["solve", path_str(&file)]);
    assert_eq!(code, EXIT_FEASIBLE);
    assert_eq!(out, "s SIZE 2\na 1 1\na 2 3\na 3 3\na 4 2\na 5 3\n");

    let (code, out, _) = call(&["solve", path_str(&file), "--k", "1"]);
    assert_eq!((code, out.as_str()), (EXIT_INFEASIBLE, "s INFEASIBLE\n"));

    for alg in ["oracle", "approx"] {
        let (code, out, _) = call(&["solve", path_str(&file), "--alg", alg]);
        assert_eq!(code, EXIT_FEASIBLE);
        assert!(out.starts_with("s SIZE 2\n"));
    }
}

#[test]
fn generated_instances_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..20 {
        let seed = seed.to_string();
        let args = ["gen", "--n", "9", "--m", "16", "--p", "3", "--wmax", "3", "--seed", &seed];
        let (code, text, _) = call(&args);
        assert_eq!(code, EXIT_FEASIBLE);
        assert_eq!(call(&args).1, text, "gen is deterministic");
        let parsed = parse_instance(&text).unwrap();
        assert_eq!(mtcut::io::write_instance(&parsed.instance), text);

        let inst = dir.path().join(format!("g{seed}.mtc"));
        std::fs::write(&inst, &text).unwrap();
        let (code, first, _) = call(&["solve", path_str(&inst), "--stats"]);
        assert_eq!(code, EXIT_FEASIBLE);
        assert_eq!(call(&["solve", path_str(&inst), "--stats"]).1, first, "solve is deterministic");

        let sol_path = dir.path().join(format!("g{seed}.sol"));
        std::fs::write(&sol_path, &first).unwrap();
        let sol = parse_solution(&first).unwrap();
        let opt = mtcut::baseline::brute_force(&parsed.instance.graph).unwrap().size;
        assert_eq!(sol.size, Some(opt));
        let (code, out, _) = call(&["check", path_str(&inst), path_str(&sol_path)]);
        assert_eq!((code, out), (EXIT_FEASIBLE, format!("c VALID size {opt}\n")));
    }
}

#[test]
fn check_reports_mismatch_and_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("ex.mtc");
    std::fs::write(&inst, EXAMPLE).unwrap();
    let sol = dir.path().join("bad.sol");

    std::fs::write(&sol, "s SIZE 1\na 1 1\na 2 3\na 3 3\na 4 2\na 5 3\n").unwrap();
    let (code, out, _) = call(&["check", path_str(&inst), path_str(&sol)]);
    assert_eq!((code, out.as_str()), (EXIT_INFEASIBLE, "c MISMATCH claimed 1 actual 2\n"));

    std::fs::write(&sol, "s SIZE 2\na 1 1\na 2 3\na 3 3\na 4 3\na 5 3\n").unwrap();
    let (code, out, _) = call(&["check", path_str(&inst), path_str(&sol)]);
    assert_eq!(code, EXIT_INFEASIBLE);
    assert!(out.starts_with("c INVALID"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["solve"]).0, EXIT_USAGE);
    assert_eq!(call(&["solve", "/nonexistent/instance"]).0, EXIT_USAGE);
    assert_eq!(call(&["gen", "--n", "3", "--m", "9", "--p", "2", "--wmax", "1", "--seed", "0"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_FEASIBLE);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mtc");
    std::fs::write(&bad, "p mtcut 2 1 1\nt 1\ne 1 1 3\n").unwrap();
    let (code, _, err) = call(&["solve", path_str(&bad)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn trace_file_lists_every_node() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.mtc");
    let text = call(&["gen", "--n", "12", "--m", "26", "--p", "4", "--wmax", "2", "--seed", "5"]).1;
    std::fs::write(&inst, text).unwrap();
    let trace = dir.path().join("g.trace");
    let (code, out, _) = call(&["solve", path_str(&inst), "--k", "6", "--stats", "--trace", path_str(&trace)]);
    assert!(code == EXIT_FEASIBLE || code == EXIT_INFEASIBLE);
    let nodes: usize = out.lines().find_map(|l| l.strip_prefix("c nodes ")).unwrap().parse().unwrap();
    let lines: Vec<String> = std::fs::read_to_string(&trace).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), nodes);
    assert!(lines[0].starts_with("0 - root - 6 "));
    assert!(lines.iter().all(|l| l.split_whitespace().count() == 7));
}

#[test]
fn binary_agrees_with_in_process_run() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("ex.mtc");
    std::fs::write(&inst, EXAMPLE).unwrap();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_mtcut"))
        .args(["solve", path_str(&inst)])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_FEASIBLE));
    assert_eq!(String::from_utf8(output.stdout).unwrap(), call(&["solve", path_str(&inst)]).1);
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_mtcut")).arg("bogus").output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_USAGE));
}
