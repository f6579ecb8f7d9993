//! Prints the dual, the dominating numbers, a minimum dominating family and
//! ladder recognition for a relation file (default: the 6x6 grid fixture).
//!
//! cargo run --example invariants -- [file.rel]

use std::path::PathBuf;

use tukey::canon::is_isomorphic;
use tukey::invariants::{dominating_number, dual_dominating_number, is_ladder, min_dominating_family};

fn main() -> tukey::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/three_three.rel"));
    let r = tukey::cli::read_relation(&path)?;
    println!("relation\n{r}");
    println!("dual\n{}", r.dual());
    println!("delta={} delta_dual={}", dominating_number(&r), dual_dominating_number(&r));
    match min_dominating_family(&r) {
        Some(f) => println!("minimum dominating family: columns {:?}", f.columns()),
        None => println!("minimum dominating family: none (some row is empty)"),
    }
    match is_ladder(&r) {
        Some(n) => println!("ladder of side {n}"),
        None => println!("not a ladder"),
    }
    println!("isomorphic to its dual: {}", is_isomorphic(&r, &r.dual())?);
    Ok(())
}
