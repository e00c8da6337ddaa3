//! Parses linear formulas, dumps their trees, and prints them back with
//! minimal parentheses. Formulas come from the command line or a short
//! built-in list.
//!
//!     cargo run --example parse_print -- '!(p & q) o-o !p * !q'

use chulogic::cli::sexp;
use chulogic::syntax::{parse_linear, print_linear};

const DEFAULTS: &[&str] = &["p * q -o q * p", "!(p & q) o-o !p * !q", "~(p @ ~q) + ?r", "/\\x:D. A(x) -o \\/x:D. A(x)", "p * q + r"];

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs: Vec<&str> = if args.is_empty() { DEFAULTS.to_vec() } else { args.iter().map(String::as_str).collect() };
    for text in inputs {
        println!("input    {text}");
        match parse_linear(text) {
            Ok(f) => {
                println!("tree     {}", sexp(&f));
                println!("printed  {}", print_linear(&f));
                if f.contains_liff() {
                    println!("desugar  {}", print_linear(&f.desugar()));
                }
            }
            Err(e) => println!("error    {e}"),
        }
        println!();
    }
}
