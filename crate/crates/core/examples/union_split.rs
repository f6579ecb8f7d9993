//! Maps a relation into the disjoint union of a 2-ladder and a 3-ladder and
//! splits the map into two morphisms, one into each part.
//!
//! cargo run --example union_split

use std::path::PathBuf;

use tukey::construct::ladder;
use tukey::morphism::{decompose_against_union, find_morphism, SolverConfig};

fn main() -> tukey::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/union_cover.rel");
    let c = tukey::cli::read_relation(&path)?;
    let (b, b2) = (ladder(2)?, ladder(3)?);
    let union = b.disjoint_union(&b2)?;
    println!("source\n{c}\n\ntarget\n{union}\n");
    let Some(w) = find_morphism(&c, &union, &SolverConfig::default())? else {
        println!("no morphism into the union");
        return Ok(());
    };
    println!("witness\n{w}\n");
    let split = decompose_against_union(&c, &b, &b2, &w)?;
    println!("first part: rows {:?} columns {:?}", split.first_minus, split.first_plus);
    println!("{}\n{}\n", split.first, split.first_witness);
    println!("second part: rows {:?} columns {:?}", split.second_minus, split.second_plus);
    println!("{}\n{}", split.second, split.second_witness);
    Ok(())
}
