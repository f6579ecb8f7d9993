//! Decides morphism existence in both directions between two relation files,
//! prints the witnesses, and times the solver with and without shortcuts.
//!
//! cargo run --release --example morphism_search -- [a.rel b.rel]

use std::path::PathBuf;
use std::time::Instant;

use tukey::morphism::{check_morphism, find_morphism, SolverConfig};
use tukey::Relation;

fn direction(a: &Relation, b: &Relation, label: &str) -> tukey::Result<()> {
    for (name, cfg) in [("shortcuts", SolverConfig::default()), ("plain", SolverConfig::no_shortcuts())] {
        let start = Instant::now();
        let found = find_morphism(a, b, &cfg)?;
        let took = start.elapsed();
        match found {
            Some(w) => {
                println!("{label} [{name}, {took:.1?}] yes, witness checks: {}", check_morphism(a, b, &w)?);
                println!("{w}");
            }
            None => println!("{label} [{name}, {took:.1?}] no"),
        }
    }
    Ok(())
}

fn main() -> tukey::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let args: Vec<PathBuf> = std::env::args_os().skip(1).map(PathBuf::from).collect();
    let (pa, pb) = match args.as_slice() {
        [a, b] => (a.clone(), b.clone()),
        _ => (dir.join("order5/15.rel"), dir.join("order5/20.rel")),
    };
    let a = tukey::cli::read_relation(&pa)?;
    let b = tukey::cli::read_relation(&pb)?;
    direction(&a, &b, "a -> b")?;
    direction(&b, &a, "b -> a")?;
    Ok(())
}
