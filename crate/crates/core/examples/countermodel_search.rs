//! Finite countermodel search. Excluded middle with `+` fails in
//! Chu(chain2, 0) at the middle value, while its multiplicative form has no
//! countermodel anywhere in the Chu(H,0) zoo. Then a metric space that is
//! a set but not a strong set is found over the Łukasiewicz grid.
//!
//!     cargo run --release --example countermodel_search

use chulogic::cli::structure_text;
use chulogic::lattice::ZOO;
use chulogic::models::{resolve_model, AffineModel};
use chulogic::semantics::{implicit_signature, search_countermodel, SearchOptions, SearchOutcome, SearchProblem};
use chulogic::syntax::{parse_linear_sequent, parse_theory};
use chulogic::with_model;

fn problem(goal: &str) -> SearchProblem {
    let goal = parse_linear_sequent(goal, None).expect("sequent");
    SearchProblem { signature: implicit_signature(&goal).expect("signature"), background: vec![], goal }
}

fn report<M: AffineModel>(m: &M, p: &SearchProblem, opts: SearchOptions) -> String {
    match search_countermodel(m, p, opts).expect("search") {
        SearchOutcome::Found { structure, witness, explored } => {
            format!(
                "found after {explored} nodes (hypotheses {}, conclusion {})\n{}",
                witness.hypotheses,
                witness.conclusion,
                structure_text(&structure.to_json(m))
            )
        }
        SearchOutcome::NoneUpToBound { max_domain, explored } => format!("none up to domain {max_domain} ({explored} nodes)\n"),
        SearchOutcome::CapExceeded { explored } => format!("gave up after {explored} nodes\n"),
    }
}

fn main() {
    let opts = SearchOptions::default();
    for goal in ["|- p + ~p", "|- p @ ~p"] {
        println!("== {goal}");
        for h in ZOO.iter().take(3) {
            let any = resolve_model(&format!("chu0:{h}")).unwrap();
            print!("chu0:{h:<10} {}", with_model!(&any, m => report(m, &problem(goal), opts)));
        }
        let any = resolve_model("chu1:chain2").unwrap();
        print!("chu1:chain2     {}", with_model!(&any, m => report(m, &problem(goal), opts)));
    }
    let th = parse_theory(include_str!("../corpus/strong-set.llt")).unwrap();
    let strans = th.axiom("strans").unwrap().sequent.clone();
    let background = th.axioms.iter().filter(|a| a.name != "strans").map(|a| a.sequent.clone()).collect();
    let p = SearchProblem { signature: th.clone(), background, goal: strans };
    let luk = resolve_model("luk:grid3").unwrap();
    println!("\n== a set that is not a strong set, values in {{0, 1/2, 1}}");
    print!("{}", with_model!(&luk, m => report(m, &p, SearchOptions { max_domain: 3, ..opts })));
}
