//! The interior model on a three-point space with opens {}, {a}, {c},
//! {a,c} and the whole space: `!` is interior and `?` is closure. Shows
//! both operators on every subset and replays the exponential laws that
//! fail here but hold in every Chu(H,0).
//!
//!     cargo run --example interior_model [space-id]

use chulogic::models::{resolve_model, AffineModel, AnyModel};
use chulogic::semantics::{check_law, law, replay_witness, LawOptions, LawStatus, LawWitness};

fn main() {
    let id = format!("int:{}", std::env::args().nth(1).unwrap_or_else(|| "3pt".into()));
    let AnyModel::Interior(m) = resolve_model(&id).unwrap_or_else(|e| panic!("{e}")) else { unreachable!() };
    println!("{:>10} {:>10} {:>10} {:>10} {:>10}", "P", "!P", "?P", "?!P", "!?P");
    for p in m.elements() {
        let f = |e| m.format_elem(e);
        println!("{:>10} {:>10} {:>10} {:>10} {:>10}", f(p), f(m.bang(p)), f(m.whynot(p)), f(m.whynot(m.bang(p))), f(m.bang(m.whynot(p))));
    }
    println!();
    for name in ["exp-dist", "exact-exp", "cont-exp", "seely", "bang-squaring"] {
        let row = check_law(law(name).unwrap(), &m, LawOptions::default());
        match &row.status {
            LawStatus::Fails { witness } => {
                let at: Vec<String> = witness.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let again = replay_witness(law(name).unwrap(), &m, witness).unwrap();
                println!("{name:<14} fails at {} (lhs {}, rhs {}), replay {}", at.join(" "), witness.lhs, witness.rhs, again);
            }
            s => println!("{name:<14} {s:?}"),
        }
    }
    let given =
        LawWitness { assignment: vec![("P".into(), "{a,b}".into()), ("Q".into(), "{b,c}".into())], lhs: String::new(), rhs: String::new() };
    if id == "int:3pt" {
        println!(
            "\n!(P + Q) vs !P + !Q at P={{a,b}} Q={{b,c}}: fails = {}",
            replay_witness(law("exact-exp").unwrap(), &m, &given).unwrap()
        );
    }
}
