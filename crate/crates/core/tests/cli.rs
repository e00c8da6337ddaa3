use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn corpus(name: &str) -> PathBuf {
    root().join("corpus").join(name)
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(name)
}

fn chulogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chulogic")).args(args).env_remove("CHULOGIC_FORMAT").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn parse_dumps_one_ast_per_line() {
    let o = chulogic(&["parse", p(&fixture("formulas.llf"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.starts_with("(limp (tensor (atom p) (atom q)) (tensor (atom q) (atom p)))\n"));
}

#[test]
fn parse_reports_the_column_of_a_mixed_connective() {
    let o = chulogic(&["parse", "-e", "p * q + r"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains(":1:7:"), "{}", stderr(&o));
}

#[test]
fn parse_of_a_missing_file_is_an_io_error() {
    assert_eq!(code(&chulogic(&["parse", "no/such/file.llf"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&chulogic(&["laws", "--suite", "nonsense"])), 2);
    assert_eq!(code(&chulogic(&["laws", "--model", "chu0:chain99x"])), 2);
    assert_eq!(code(&chulogic(&["frobnicate"])), 2);
    assert_eq!(code(&chulogic(&["--format", "yaml", "models"])), 2);
}

#[test]
fn chu_special_on_chain3_is_seven_holds_rows() {
    let o = chulogic(&["laws", "--suite", "chu-special", "--model", "chu0:chain3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| l.contains("chu0:chain3")).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.ends_with("HOLDS")));
}

#[test]
fn documented_failures_do_not_fail_the_run() {
    let o = chulogic(&["laws", "--suite", "chu-special", "--model", "luk:grid5", "--samples", "200"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let row = out.lines().find(|l| l.starts_with("bang-squaring")).unwrap();
    assert!(row.contains("FAILED at P=3/4"), "{row}");
    assert!(out.starts_with("seed "));
}

#[test]
fn mix_units_hold_on_chu1() {
    let o = chulogic(&["laws", "--suite", "core", "--model", "chu1:chain2"]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("mix-units") && l.ends_with("HOLDS")), "{out}");
}

#[test]
fn unexpected_law_failures_exit_one() {
    // Chu(H,1) is not a model of the exponential suite on every algebra.
    let o = chulogic(&["laws", "--model", "chu1:bool2"]);
    let bad = stdout(&o).lines().filter(|l| l.contains("(unexpected)")).count();
    assert_eq!(code(&o), if bad > 0 { 1 } else { 0 });
}

#[test]
fn laws_json_is_deterministic_and_versioned() {
    let args =
        ["--format", "json", "--seed", "7", "laws", "--suite", "core", "--model", "luk:grid5", "--model", "int:3pt", "--samples", "300"];
    let a = chulogic(&args);
    let b = chulogic(&["--jobs", "1"].iter().chain(&args).copied().collect::<Vec<_>>());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "chulogic.laws/v1");
    assert_eq!(v["seed"], 7);
}

#[test]
fn format_defaults_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_chulogic")).arg("models").env("CHULOGIC_FORMAT", "json").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "chulogic.models/v1");
    assert_eq!(v["models"][0]["id"], "chu0:chain2");
    assert_eq!(v["models"][0]["elements"], 3);
}

#[test]
fn translate_matches_goldens() {
    for name in ["group", "partial-order", "set-equality"] {
        let o = chulogic(&["translate", p(&corpus(&format!("{name}.llt"))), "--diff", p(&corpus(&format!("{name}.iseq")))]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn translate_reports_a_mismatch() {
    let o = chulogic(&["translate", p(&corpus("strong-set.llt")), "--diff", p(&corpus("set-equality.iseq"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).lines().any(|l| l.starts_with("+ strans.strong1")), "{}", stdout(&o));
    let o = chulogic(&["--format", "json", "translate", p(&corpus("strong-set.llt")), "--diff", p(&corpus("set-equality.iseq"))]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["match"], false);
}

#[test]
fn translate_writes_an_output_file() {
    let out = std::env::temp_dir().join(format!("chulogic-cli-{}.iseq", std::process::id()));
    let o = chulogic(&["translate", p(&corpus("subgroup.llt")), "-o", p(&out)]);
    assert_eq!(code(&o), 0);
    let o = chulogic(&["translate", p(&corpus("subgroup.llt")), "--diff", p(&out)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    std::fs::remove_file(out).unwrap();
}

#[test]
fn translate_rejects_an_undeclared_dual() {
    let o = chulogic(&["translate", p(&fixture("no-dual.llt"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("`lt` is neither affirmative nor given a dual name"), "{}", stderr(&o));
}

#[test]
fn a_triangle_metric_is_a_set() {
    let o = chulogic(&["check", p(&corpus("set-equality.llt")), p(&fixture("line-metric.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with("HOLDS")).count(), 3);
}

#[test]
fn a_non_ultrametric_is_not_a_strong_set() {
    let o = chulogic(&["check", p(&corpus("strong-set.llt")), p(&fixture("non-ultrametric.json"))]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("strans           FAILS at x=a0 y=a1 z=a2 (hypotheses 1/2, conclusion 1/4)"), "{out}");
    let o = chulogic(&["check", p(&corpus("strong-set.llt")), p(&fixture("ultrametric.json"))]);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_json_carries_the_valuation() {
    let o =
        chulogic(&["--format", "json", "check", p(&corpus("strong-set.llt")), p(&fixture("non-ultrametric.json")), "--model", "luk:grid9"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "chulogic.check/v1");
    let strans = &v["axioms"][3];
    assert_eq!(strans["holds"], false);
    assert_eq!(strans["witness"]["valuation"][2], serde_json::json!(["z", "a2"]));
}

#[test]
fn search_finds_the_middle_value_for_excluded_middle() {
    let o = chulogic(&["search", "--goal", "|- p + ~p", "--model", "chu0:chain2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "p = (0,0)"), "{}", stdout(&o));
    let o = chulogic(&["search", "--goal", "|- p @ ~p", "--model", "chu0:chain2"]);
    assert!(stdout(&o).starts_with("none up to bound"));
}

#[test]
fn a_found_countermodel_round_trips_through_check() {
    let out = std::env::temp_dir().join(format!("chulogic-cm-{}.json", std::process::id()));
    let o = chulogic(&[
        "search",
        p(&corpus("strong-set.llt")),
        "--axiom",
        "strans",
        "--model",
        "luk:grid3",
        "--max-domain",
        "3",
        "-o",
        p(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("countermodel"), "{}", stdout(&o));
    let o = chulogic(&["check", p(&corpus("strong-set.llt")), p(&out)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("FAILS")).count(), 1, "{}", stdout(&o));
    std::fs::remove_file(out).unwrap();
}

#[test]
fn eval_reads_atom_values() {
    let o = chulogic(&["eval", "p + ~p", "--model", "chu0:chain2", "--set", "p=(0,0)"]);
    assert_eq!(stdout(&o), "(0,0)\n");
    let o = chulogic(&["eval", "!p", "--model", "luk:grid5", "--set", "p=3/4"]);
    assert_eq!(stdout(&o), "0\n");
    assert_eq!(code(&chulogic(&["eval", "p * q", "--model", "luk:grid5", "--set", "p=1"])), 2);
}

#[test]
fn eval_over_a_structure() {
    let o = chulogic(&[
        "eval",
        "/\\x:A. /\\y:A. eq(x,y)",
        "--model",
        "luk:grid5",
        "--theory",
        p(&corpus("set-equality.llt")),
        "--structure",
        p(&fixture("non-ultrametric.json")),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "1/4\n");
}
