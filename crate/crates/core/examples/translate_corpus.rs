//! Translates the shipped corpus theories and diffs each against its golden
//! `.iseq` file. Pass `.llt` paths to print their expansion instead.
//!
//!     cargo run --example translate_corpus [theory.llt ...]

use std::path::{Path, PathBuf};

use chulogic::syntax::parse_theory;
use chulogic::translate::{check_against, render_iseq, translate_theory};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if !args.is_empty() {
        for path in args {
            let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
            let th = parse_theory(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
            print!("{}", render_iseq(&translate_theory(&th).unwrap_or_else(|e| panic!("{path}: {e}"))));
        }
        return;
    }
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "llt"))
        .collect();
    paths.sort();
    let mut failed = 0;
    for p in &paths {
        let th = parse_theory(&std::fs::read_to_string(p).unwrap()).unwrap();
        let golden = std::fs::read_to_string(p.with_extension("iseq")).unwrap_or_default();
        let diff = check_against(&th, &golden).unwrap();
        let n = translate_theory(&th).unwrap().len();
        let name = p.file_stem().unwrap().to_string_lossy();
        if diff.is_match() {
            println!("ok    {name:<24} {n} sequents");
        } else {
            failed += 1;
            println!("DIFF  {name}\n{}", diff.render());
        }
    }
    println!("{} theories, {failed} differ", paths.len());
}
