//! Tours the finite Heyting algebras the Chu models are built over: size,
//! whether the algebra is Boolean, and where excluded middle and double
//! negation fail. Prints the implication table of one algebra in full.
//!
//!     cargo run --example heyting_zoo [lattice-id]

use chulogic::lattice::{resolve_lattice, FiniteHeyting, ZOO};

fn table(h: &FiniteHeyting) {
    let w = h.labels().iter().map(|l| l.len()).max().unwrap_or(1).max(3);
    print!("{:>w$} |", "->");
    for b in h.elements() {
        print!(" {:>w$}", h.label(b));
    }
    println!();
    for a in h.elements() {
        print!("{:>w$} |", h.label(a));
        for b in h.elements() {
            print!(" {:>w$}", h.label(h.imp(a, b)));
        }
        println!();
    }
}

fn main() {
    println!("{:<18} {:>4} {:>8} {:>10} {:>10}", "algebra", "size", "boolean", "a or ~a", "~~a = a");
    for id in ZOO {
        let h = resolve_lattice(id).expect("zoo id");
        let lem = h.elements().filter(|&a| h.join(a, h.neg(a)) == h.top()).count();
        let dne = h.elements().filter(|&a| h.neg(h.neg(a)) == a).count();
        println!("{id:<18} {:>4} {:>8} {:>7}/{:<2} {:>7}/{:<2}", h.size(), h.is_boolean(), lem, h.size(), dne, h.size());
    }
    let id = std::env::args().nth(1).unwrap_or_else(|| "opens:3pt".into());
    let h = resolve_lattice(&id).unwrap_or_else(|e| panic!("{id}: {e}"));
    println!("\nimplication in {id}:");
    table(&h);
}
