//! Distances as Łukasiewicz equality, `eq(x,y) = 1 - d(x,y)`. Transitivity
//! with `*` is the triangle inequality; transitivity with `&` is the
//! ultrametric inequality. Each matrix is checked both ways.
//!
//!     cargo run --example lukasiewicz_metric

use chulogic::models::Rational;
use chulogic::semantics::metric_verdict;

fn matrix(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|s| s.parse().expect("rational")).collect()).collect()
}

fn main() {
    let cases = [
        ("points 0, 1/4, 1 on a line", matrix(&[&["0", "1/4", "1"], &["1/4", "0", "3/4"], &["1", "3/4", "0"]])),
        ("d(x,y) = d(y,z) = 1/2, d(x,z) = 3/4", matrix(&[&["0", "1/2", "3/4"], &["1/2", "0", "1/2"], &["3/4", "1/2", "0"]])),
        ("two clusters at height 1/2", matrix(&[&["0", "1/4", "1/2"], &["1/4", "0", "1/2"], &["1/2", "1/2", "0"]])),
        ("a shortcut that breaks the triangle", matrix(&[&["0", "1/4", "3/4"], &["1/4", "0", "1/4"], &["3/4", "1/4", "0"]])),
    ];
    for (name, d) in cases {
        let v = metric_verdict(&d).expect("valid matrix");
        println!("{name}");
        println!("  eq(x,y) * eq(y,z) |- eq(x,z)   {}", if v.tensor_transitive { "holds" } else { "fails" });
        match &v.with_witness {
            None => println!("  eq(x,y) & eq(y,z) |- eq(x,z)   holds"),
            Some(w) => {
                let at: Vec<String> = w.valuation.iter().map(|(x, e)| format!("{x}={e}")).collect();
                println!("  eq(x,y) & eq(y,z) |- eq(x,z)   fails at {} ({} > {})", at.join(" "), w.hypotheses, w.conclusion);
            }
        }
    }
}
