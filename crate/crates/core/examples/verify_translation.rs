//! Splits a linear formula into intuitionistic proof and refutation parts
//! and checks that evaluating the parts in H gives the same Chu(H,0) value
//! as evaluating the formula directly, over random structures for every
//! algebra in the zoo.
//!
//!     cargo run --release --example verify_translation -- '!(p & q) -o !p * !q'

use chulogic::chu::{ChuModel, ChuVariant};
use chulogic::lattice::{resolve_lattice, ZOO};
use chulogic::semantics::RandomSpec;
use chulogic::syntax::{parse_linear_with, print_int};
use chulogic::translate::{chu_split, random_signature, verify_exhaustive, verify_random};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "/\\x:D. (r(x) @ ~r(x)) -o p + ~p".into());
    let th = random_signature(&RandomSpec::default());
    let f = parse_linear_with(&text, Some(&th)).unwrap_or_else(|e| panic!("{e}")).desugar();
    let split = chu_split(&f, &th).unwrap_or_else(|e| panic!("{e}"));
    println!("formula     {text}");
    println!("proof       {}", print_int(&split.pf));
    println!("refutation  {}", print_int(&split.rf));
    let c3 = ChuModel::new(resolve_lattice("chain3").unwrap(), ChuVariant::Strict0).unwrap();
    let r = verify_exhaustive(&f, &th, &c3, 2).unwrap();
    println!("\nevery structure over Chu(chain3, 0): {}/{} agree", r.agreements, r.trials);
    println!("\n1000 random formulas per algebra:");
    for id in ZOO {
        let m = ChuModel::new(resolve_lattice(id).unwrap(), ChuVariant::Strict0).unwrap();
        let r = verify_random(&m, 1000, 6, 2024).unwrap();
        println!("  {id:<18} {}/{}", r.agreements, r.trials);
    }
}
