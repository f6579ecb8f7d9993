//! Reduces a relation to its skeleton round by round, replays the trace, and
//! compares against randomized one-point deletion orders.
//!
//! cargo run --example skeleton_walkthrough -- [file.rel] [seed]

use std::path::PathBuf;

use tukey::skeleton::{classify_points, skeleton, skeleton_randomized};

fn main() -> tukey::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/walkthrough.rel"));
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let r = tukey::cli::read_relation(&path)?;
    println!("input\n{r}\n");
    let c = classify_points(&r);
    println!("non-minimal rows {:?}, non-maximal columns {:?}", c.non_minimal_minus, c.non_maximal_plus);
    println!("row twins {:?}, column twins {:?}\n", c.twin_classes_minus, c.twin_classes_plus);

    let (s, trace) = skeleton(&r);
    if trace.rounds.is_empty() {
        println!("already skeletal");
    } else {
        println!("{trace}");
    }
    println!("skeleton\n{s}");
    println!("replay matches: {}\n", trace.replay(&r)? == s);
    println!("{}", skeleton_randomized(&r, seed, 200)?);
    Ok(())
}
