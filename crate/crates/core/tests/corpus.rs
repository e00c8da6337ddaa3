use std::path::{Path, PathBuf};

use chulogic::syntax::{parse_theory, Theory};
use chulogic::translate::{check_against, parse_iseq, render_iseq, translate_theory};
use rayon::prelude::*;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn load(name: &str) -> (Theory, String) {
    let th = parse_theory(&std::fs::read_to_string(corpus().join(format!("{name}.llt"))).unwrap()).unwrap();
    (th, std::fs::read_to_string(corpus().join(format!("{name}.iseq"))).unwrap())
}

fn theory_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "llt").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

#[test]
fn every_theory_matches_its_golden_file() {
    let names = theory_names();
    assert!(names.len() >= 25, "{names:?}");
    let failures: Vec<String> = names
        .par_iter()
        .filter_map(|n| {
            let (th, golden) = load(n);
            let d = check_against(&th, &golden).unwrap();
            (!d.is_match()).then(|| format!("{n}:\n{}", d.render()))
        })
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_theory_has_a_golden_file() {
    for n in theory_names() {
        assert!(corpus().join(format!("{n}.iseq")).exists(), "{n}");
    }
}

#[test]
fn set_equality_is_the_seven_row_display() {
    let (th, golden) = load("set-equality");
    assert_eq!(parse_iseq(&golden, Some(&th)).unwrap().len(), 7);
    assert_eq!(translate_theory(&th).unwrap().len(), 7);
}

#[test]
fn a_dropped_golden_line_shows_up_as_unexpected() {
    let (th, golden) = load("subgroup");
    let cut: String = golden.lines().filter(|l| !l.starts_with("h_mul.contra2")).map(|l| format!("{l}\n")).collect();
    let d = check_against(&th, &cut).unwrap();
    assert!(d.missing.is_empty());
    assert_eq!(d.unexpected, vec!["h_mul.contra2: nH(m(x,y)), H(x) |- nH(y)"]);
}

#[test]
fn a_wrong_golden_line_shows_up_on_both_sides() {
    let (th, golden) = load("strong-set");
    let bad = golden.replace("neq(x,y) \\/ neq(y,z)", "neq(x,y) /\\ neq(y,z)");
    let d = check_against(&th, &bad).unwrap();
    assert_eq!(d.missing.len(), 1);
    assert_eq!(d.unexpected.len(), 1);
    assert!(d.render().starts_with("- strans.strong1"));
}

#[test]
fn goldens_are_compared_modulo_renaming_and_order() {
    let (th, _) = load("partial-order");
    let renamed = "\
eq_le.contra1: nle(b,a) |- neq(a,b)
eq_le.proof: eq(p,q) |- le(q,p)
antisym.strong1: neq(u,v) |- nle(v,u) \\/ nle(u,v)
antisym.proof: le(b,a), le(a,b) |- eq(a,b)
trans.contra2: nle(a,c), le(a,b) |- nle(b,c)
trans.contra1: nle(a,c), le(b,c) |- nle(a,b)
trans.proof: le(a,b), le(b,c) |- le(a,c)
refl.proof: |- le(t,t)
le.disjoint: |- ~(nle(a,b) /\\ le(a,b))
eq.disjoint: |- ~(eq(a,b) /\\ neq(a,b))
";
    assert!(check_against(&th, renamed).unwrap().is_match(), "{}", check_against(&th, renamed).unwrap().render());
}

#[test]
fn rendered_translation_reparses_to_a_match() {
    for n in theory_names() {
        let (th, _) = load(&n);
        let text = render_iseq(&translate_theory(&th).unwrap());
        assert!(check_against(&th, &text).unwrap().is_match(), "{n}");
    }
}
