//! Classifies all relations of a given order and prints the bimorphism classes.
//!
//! cargo run --release --example census -- 5

use std::time::Instant;

use tukey::census::{build_catalog, enumerate_skeletal, probe_self_dual_question, CensusOptions};

fn main() -> tukey::Result<()> {
    let order: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());

    let start = Instant::now();
    let forms = enumerate_skeletal(&CensusOptions::new(order).jobs(jobs))?;
    println!("order <= {order}: {} skeletal relations ({:.1?})", forms.len(), start.elapsed());

    let start = Instant::now();
    let cat = build_catalog(forms, jobs)?;
    println!("{} bimorphism classes, {} covers ({:.1?})", cat.classes.len(), cat.hasse_edges.len(), start.elapsed());
    for members in cat.classes.iter().filter(|c| c.len() > 1) {
        let labels: Vec<String> = members.iter().map(|&id| cat.entry(id).label()).collect();
        println!("  class {{{}}}", labels.join(", "));
    }
    let unmatched: Vec<String> = cat.skeletons.iter().filter(|e| e.reference.is_none() && e.relation().order() <= 5).map(|e| format!("{} {}", e.id, e.form)).collect();
    if !unmatched.is_empty() {
        println!("order <= 5 skeletons outside the reference list: {unmatched:?}");
    }
    println!("self-dual question counterexamples: {:?}", probe_self_dual_question(&cat));
    Ok(())
}
