use std::fs;
use std::path::PathBuf;

use latspec::Poset;
use latspec_cli::{run, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn latspec(args: &[&str]) -> (i32, String) {
    run(std::iter::once("latspec").chain(args.iter().copied()))
}

/// The `poset ...` block of a report.
fn poset_in(report: &str) -> Poset {
    let start = report.find("poset ").expect("report contains a poset");
    let block: String =
        report[start..].lines().take_while(|l| l.starts_with("poset ") || l.starts_with("le ")).map(|l| format!("{l}\n")).collect();
    Poset::parse(&block).unwrap()
}

#[test]
fn spec_of_free_algebra_on_two_generators_is_the_square() {
    let (code, out) = latspec(&["spec", "--base", &data("2.lat"), "--pres", &data("free2.pres")]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.starts_with("spectrum: 4 points"));
    // The square is the product of two 2-chains.
    let two = Poset::chain(2);
    assert!(poset_in(&out).is_isomorphic(&two.product(&two)));
}

#[test]
fn limit_check_passes_at_depth_four() {
    let (code, out) = latspec(&["limit-check", "--base", &data("2.lat"), "--depth", "4"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.ends_with("PASS\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("stage ")).count(), 4);
}

#[test]
fn dot_of_the_square_has_four_nodes() {
    let (code, out) = latspec(&["dot", "--poset", &data("square.pos")]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("digraph"));
    let nodes = out.lines().filter(|l| l.trim().starts_with('n') && !l.contains("->")).count();
    let edges = out.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (4, 4), "{out}");
}

#[test]
fn present_cross_checks_against_the_free_quotient() {
    let (code, out) = latspec(&["present", "--pres", &data("ordered-pair.pres")]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.contains("size 4"));
}

#[test]
fn verification_failures_exit_with_one() {
    let (code, out) = latspec(&["sheaf-check", "--presheaf", "constant:2", "--coverage", "NT"]);
    assert_eq!(code, EXIT_FAIL, "{out}");
    assert!(out.ends_with("FAIL\n"));
    let (code, _) = latspec(&["qc-check", "--pres", &data("ordered-pair.pres")]);
    assert_eq!(code, EXIT_FAIL);
    let (code, out) = latspec(&["colimit-check", "--depth", "3"]);
    assert_eq!(code, EXIT_FAIL, "{out}");
    assert!(out.contains("inclusion formula: Some(RepeatLast)"));
}

#[test]
fn sheaf_check_reads_coverage_files() {
    let (code, out) = latspec(&["sheaf-check", "--presheaf", "generic", "--coverage", &data("horn.cov")]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.starts_with("presheaf generic on coverage horn"));
    let (code, out) =
        latspec(&["sheaf-check", "--presheaf", &format!("representable:{}", data("square.pos")), "--coverage", "OneCS"]);
    assert_eq!(code, EXIT_PASS, "{out}");
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    assert_eq!(latspec(&["frobnicate"]).0, EXIT_ERROR);
    assert_eq!(latspec(&["suite", "nonsense"]).0, EXIT_ERROR);
    assert_eq!(latspec(&["limit-check", "--depth", "0"]).0, EXIT_ERROR);
    assert_eq!(latspec(&["sheaf-check", "--presheaf", "weird", "--coverage", "NT"]).0, EXIT_ERROR);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lat");
    fs::write(&bad, "lattice 2\nmeet\n0 0\n0 7\n").unwrap();
    let (code, out) = latspec(&["free", "--base", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(out.contains("bad.lat") && out.contains("line 4"), "{out}");

    let pres = dir.path().join("p.pres");
    fs::write(&pres, "base 2\ngens a\nrel (meet a = a\n").unwrap();
    let (code, out) = latspec(&["present", "--pres", pres.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(out.contains("line 3"), "{out}");
}

#[test]
fn budget_errors_exit_with_two() {
    let (code, out) = latspec(&["--budget", "10", "free", "-n", "3"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(out.contains("budget exceeded"), "{out}");
}

#[test]
fn out_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let (code, out) = latspec(&["opens", "-n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("wrote "));
    let report = fs::read_to_string(&path).unwrap();
    // Observations of a 2-element set over 2 are the subsets.
    assert!(report.contains("size 4"), "{report}");
}

#[test]
fn normalize_reports_both_coefficients() {
    let (code, out) = latspec(&["normalize", "--pres", &data("free2.pres"), "--vars", "t", "--term", "(join y (meet t x))"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.contains("a0 = y"));
    assert!(out.contains("a1 = (join y x)") || out.contains("a1 = (join x y)"), "{out}");
    let (code, _) = latspec(&["normalize", "--pres", &data("free2.pres"), "--term", "x"]);
    assert_eq!(code, EXIT_ERROR);
}

#[test]
fn lift_of_simplices_and_algebras() {
    let (code, out) = latspec(&["lift", "--simplex", "2", "--side", "colift"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    let (code, out) = latspec(&["lift", "--base", "2"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    // Lifting the two-point spectrum of 2 adds a bottom: a 2-chain.
    assert!(poset_in(&out).is_isomorphic(&Poset::chain(2)), "{out}");
}

#[test]
fn omega_lists_sequences() {
    let (code, out) = latspec(&["omega", "--base", "2", "--depth", "3", "--kind", "omegabar"]);
    assert_eq!(code, EXIT_PASS);
    // Nonincreasing sequences over 2 with a prefix of length <= 3: the
    // constant ones and 1^k 0 for k = 1..3.
    assert_eq!(out.lines().count(), 1 + 5, "{out}");
}

#[test]
fn suite_is_deterministic_and_locality_passes() {
    let (code, out) = latspec(&["suite", "locality"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    let first = latspec(&["suite", "site"]);
    let second = latspec(&["suite", "site"]);
    assert_eq!(first, second);
}
