//! Connective tables of Chu(H,0) over a small algebra. Over the two-element
//! chain this is three-valued Łukasiewicz logic, which the last block
//! checks cell by cell.
//!
//!     cargo run --example chu_tables [lattice-id]

use chulogic::chu::{BinOp, ChuModel, ChuProp, ChuVariant, UnOp};
use chulogic::lattice::resolve_lattice;
use chulogic::models::restrict_chu3_check;

fn binary(m: &ChuModel, name: &str, op: impl Fn(ChuProp, ChuProp) -> ChuProp) {
    let els = m.enumerate();
    let w = els.iter().map(|&e| m.format(e).len()).max().unwrap_or(5);
    print!("{name:>w$} |");
    for &b in els {
        print!(" {:>w$}", m.format(b));
    }
    println!();
    for &a in els {
        print!("{:>w$} |", m.format(a));
        for &b in els {
            print!(" {:>w$}", m.format(op(a, b)));
        }
        println!();
    }
    println!();
}

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "chain2".into());
    let m = ChuModel::new(resolve_lattice(&id).unwrap_or_else(|e| panic!("{id}: {e}")), ChuVariant::Strict0).expect("small algebra");
    println!("Chu({id}, 0): {} elements, top {} bottom {}\n", m.enumerate().len(), m.format(m.top()), m.format(m.bot()));
    binary(&m, "*", |a, b| m.binop(BinOp::Tensor, a, b));
    binary(&m, "@", |a, b| m.binop(BinOp::Par, a, b));
    binary(&m, "-o", |a, b| m.binop(BinOp::Limp, a, b));
    println!("{:>10} {:>10} {:>10} {:>10}", "P", "~P", "!P", "?P");
    for &a in m.enumerate() {
        let un = |op| m.format(m.unop(op, a));
        println!("{:>10} {:>10} {:>10} {:>10}", m.format(a), un(UnOp::Neg), un(UnOp::Bang), un(UnOp::WhyNot));
    }
    println!("\nChu(chain2, 0) against Lukasiewicz on {{0, 1/2, 1}}:");
    for c in restrict_chu3_check() {
        println!("  {:<7} {:>2} cells, {} mismatches", c.connective, c.entries, c.mismatches.len());
    }
}
