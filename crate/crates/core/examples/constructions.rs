//! Builds every in-range ladder and block construction and recomputes its
//! dominating numbers with the exact solver.
//!
//! cargo run --release --example constructions

use std::time::Instant;

use tukey::canon::is_isomorphic;
use tukey::construct::{c_n, Construction};
use tukey::relation::MAX_SIDE;

fn main() -> tukey::Result<()> {
    let mut all: Vec<Construction> = (1..=MAX_SIDE).map(Construction::Ladder).collect();
    all.extend((2..=4).map(Construction::Cn));
    for n in 2..=MAX_SIDE {
        for k in 2..=n {
            if n.checked_pow(k as u32 - 1).is_some_and(|s| s <= MAX_SIDE) {
                all.push(Construction::Cnk(n, k));
            }
        }
    }
    let mut failures = 0;
    for c in all {
        let start = Instant::now();
        let v = c.verify()?;
        let ok = v.matches_expected();
        failures += usize::from(!ok);
        if !matches!(c, Construction::Ladder(_)) || !ok {
            println!(
                "{c:<10} {}x{} delta={} delta_dual={} {} ({:.1?})",
                v.relation.n_minus(),
                v.relation.n_plus(),
                v.delta,
                v.delta_dual,
                if ok { "ok" } else { "MISMATCH" },
                start.elapsed()
            );
        }
    }
    println!("ladders 1..={MAX_SIDE} checked");
    for n in 2..=4 {
        let c = c_n(n)?;
        let start = Instant::now();
        let self_dual = is_isomorphic(&c, &c.dual())?;
        failures += usize::from(!self_dual);
        println!("c_n({n}) is isomorphic to its dual: {self_dual} ({:.1?})", start.elapsed());
    }
    println!("failures={failures}");
    Ok(())
}
