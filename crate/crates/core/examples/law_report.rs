//! Runs every law suite over the Chu zoo plus the Łukasiewicz and interior
//! models and prints the holds/fails matrix.
//!
//!     cargo run --release --example law_report [model ...]

use chulogic::lattice::ZOO;
use chulogic::models::resolve_model;
use chulogic::semantics::{law_suite, LawOptions, Suite};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ids: Vec<String> = if args.is_empty() {
        let mut ids: Vec<String> = ZOO.iter().flat_map(|h| [format!("chu0:{h}"), format!("chu1:{h}")]).collect();
        ids.extend(["luk:grid5".to_string(), "int:3pt".to_string()]);
        ids
    } else {
        args
    };
    let models: Vec<_> = ids.iter().map(|id| resolve_model(id).unwrap_or_else(|e| panic!("{id}: {e}"))).collect();
    let report = law_suite(&Suite::ALL, &models, LawOptions::default());
    print!("{}", report.render_text());
    let bad = report.unexpected_failures();
    println!("\n{} rows, {} unexpected failures", report.rows.len(), bad.len());
    for r in bad {
        println!("  {} on {}", r.law, r.model);
    }
}
