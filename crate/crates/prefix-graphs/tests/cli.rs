use std::process::Command;

use serde_json::Value;

use prefix_graphs::cli::{run, Outcome, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use prefix_graphs::operads::{Operad, OperadSelector};
use prefix_graphs::tree::enumerate_trees;
use prefix_graphs::with_operad;

fn cli(args: &str) -> Outcome {
    run(std::iter::once("prefix-graphs").chain(args.split_whitespace()))
}

fn stdout_ok(args: &str) -> String {
    let out = cli(args);
    assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
    out.stdout.trim_end().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(
        stdout_ok("paths-series --alphabet a:2 --graph u --max 7"),
        "1,1,2,6,24,120,720,5040"
    );
    assert_eq!(
        cli("check-duality --alphabet a:2,c:3 --max 4").code,
        EXIT_OK
    );
    assert_eq!(
        stdout_ok("poset interval-series --alphabet a:2 --max 5 --q 1"),
        "1,2,6,21,80,322"
    );
}

#[test]
fn verification_failures_name_a_witness() {
    let out = cli("check-duality --alphabet a:2,b:2 --pair uu --max 3");
    assert_eq!(out.code, EXIT_FAILURE);
    assert!(out.stdout.contains("a[*,*]"), "{}", out.stdout);

    let out = cli("check-duality --operad dias --pair uv --max 3 --json");
    assert_eq!(out.code, EXIT_FAILURE);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["witness"], "1,0");
    assert_eq!(v["diagonal"], false);

    assert_eq!(
        cli("check-duality --operad dias --pair uu --max 4").code,
        EXIT_OK
    );
    assert_eq!(cli("check-duality --operad fcat:2 --max 4").code, EXIT_OK);
    assert_eq!(
        cli("check-duality --operad motz --max 4 --discover-phi").code,
        EXIT_OK
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "",
        "frobnicate",
        "trees --alphabet a:0 --degree 2",
        "trees --degree 2",
        "check-duality --max 3",
        "check-duality --alphabet a:2 --operad comp --max 3",
        "operad fcat:x up 0",
        "operad dias up 0,0",
        "operad comp up 1,0",
        "poset join --alphabet a:2 a[*,*] a[*,",
        "poset interval --alphabet a:2 a[*,*] *",
        "export-dot --alphabet a:2 --graph w --max 2",
    ] {
        let out = cli(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(cli("--help").code, EXIT_OK);
}

#[test]
fn trees_and_hooks() {
    assert_eq!(stdout_ok("trees --alphabet a:2 --degree 4"), "14");
    assert_eq!(
        stdout_ok("trees --alphabet a:2 --degree 2 --list"),
        "a[*,a[*,*]]\na[a[*,*],*]"
    );
    let hooks = stdout_ok("hook --alphabet a:2 --degree 3");
    assert!(hooks.lines().any(|l| l == "2*a[a[*,*],a[*,*]]"), "{hooks}");
    let twisted = stdout_ok("twisted-hook --alphabet a:2 --degree 3");
    assert!(twisted.lines().all(|l| l.starts_with("1*")), "{twisted}");
}

#[test]
fn poset_queries() {
    assert_eq!(
        stdout_ok("poset meet --alphabet e:1,a:2,c:3 c[a[*,*],*,a[e[*],*]] c[e[*],a[*,*],a[*,*]]"),
        "c[*,*,a[*,*]]"
    );
    assert_eq!(
        stdout_ok("poset join --alphabet a:2,c:3 a[*,a[*,*]] a[c[*,*,a[*,*]],*]"),
        "a[c[*,*,a[*,*]],a[*,*]]"
    );
    assert_eq!(
        cli("poset join --alphabet a:2,b:2 a[*,*] b[*,*]").code,
        EXIT_USAGE
    );
    let out = stdout_ok("poset interval --alphabet a:2 * a[a[*,*],*] --list");
    assert!(out.starts_with("cardinality: 3\n"), "{out}");
    assert_eq!(
        stdout_ok("poset stringy --alphabet a:2,c:3 --max 4"),
        "1,2,10,50,250"
    );
    assert_eq!(
        stdout_ok("poset interval-series --alphabet a:2 --max 2"),
        "1 + (1+q)t + 2(1+q+q^2)t^2"
    );
}

#[test]
fn operad_queries() {
    assert_eq!(stdout_ok("operad dias up 10"), "1*1,0,1 + 3*1,1,0");
    assert_eq!(
        stdout_ok("operad comp v 0,1"),
        stdout_ok("operad comp v-oracle 0,1")
    );
    assert_eq!(stdout_ok("operad motz generators"), "0,0\n0,1,0");
    assert_eq!(stdout_ok("operad comp elements --degree 1"), "0,0\n0,1");
    let hook: Value = serde_json::from_str(&stdout_ok("operad comp hook --max 2 --json")).unwrap();
    assert_eq!(hook.as_array().unwrap().len(), 7);
}

fn dot_vertices_per_rank(dot: &str) -> Vec<usize> {
    dot.lines()
        .filter(|l| l.trim_start().starts_with("{ rank=same;"))
        .map(|l| l.matches('"').count() / 2)
        .collect()
}

#[test]
fn dot_export_has_one_vertex_per_element() {
    for (spec, graph) in [("a:2,c:3", "u"), ("e:1,a:2", "v")] {
        let dot = stdout_ok(&format!(
            "export-dot --alphabet {spec} --graph {graph} --max 3"
        ));
        let a = spec.parse().unwrap();
        let expected: Vec<usize> = (0..=3).map(|d| enumerate_trees(&a, d).len()).collect();
        assert_eq!(dot_vertices_per_rank(&dot), expected, "{spec}");
    }
    for name in ["dias", "comp", "motz", "fcat:1", "as"] {
        let sel: OperadSelector = name.parse().unwrap();
        let expected: Vec<usize> =
            with_operad!(sel, op => (0..=3).map(|d| op.elements_of_degree(d).len()).collect());
        let dot = stdout_ok(&format!("export-dot --operad {name} --graph u --max 3"));
        assert_eq!(dot_vertices_per_rank(&dot), expected, "{name}");
        let json: Value = serde_json::from_str(&stdout_ok(&format!(
            "export-dot --operad {name} --graph v --max 3 --json"
        )))
        .unwrap();
        assert_eq!(
            json["nodes"].as_array().unwrap().len(),
            expected.iter().sum::<usize>()
        );
        for e in json["edges"].as_array().unwrap() {
            assert!(e["src"].is_string() && e["dst"].is_string() && e["w"].is_number());
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        "export-dot --alphabet a:2,c:3 --graph v --max 3",
        "operad motz hook --max 4",
        "check-duality --operad comp --max 3 --discover-phi --json",
        "verify-fixtures hook",
    ] {
        let first = cli(args);
        for _ in 0..3 {
            assert_eq!(cli(args), first, "{args}");
        }
    }
}

#[test]
fn fixtures_filter_selects_by_id() {
    let out = cli("verify-fixtures dias-hook");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert_eq!(out.stdout.lines().next(), Some("PASS dias-hook"));
    assert!(cli("verify-fixtures twisted-ac")
        .stdout
        .starts_with("PASS twisted-ac"));
    let display = cli("verify-fixtures intervals-display");
    assert_eq!(display.code, EXIT_FAILURE);
    assert!(display.stdout.contains("q-reversal"), "{}", display.stdout);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_prefix-graphs");
    let ok = Command::new(bin)
        .args(["trees", "--alphabet", "a:2", "--degree", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "5\n");
    let bad = Command::new(bin)
        .args(["trees", "--alphabet", "a:2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let fail = Command::new(bin)
        .args(["check-duality", "--operad", "dias", "--max", "2"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_FAILURE));
}
