//! Generators for ladders and the two recursive block families with prescribed
//! dominating numbers.

use std::fmt;

use crate::error::{Error, Result};
use crate::invariants::{dominating_number, dual_dominating_number, Delta};
use crate::relation::{Relation, MAX_SIDE};

/// Largest `n` accepted by [`c_n`]: `5! = 120` exceeds the side limit.
pub const MAX_CN: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// All ones.
    J,
    /// All zeros.
    O,
    /// A copy of the recursive sub-relation.
    R,
}

/// A square grid of block tags, each block the size of the sub-relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub grid: Vec<Vec<Block>>,
}

impl BlockSpec {
    /// `size × size` grid with `J` on the diagonal, `O` just right of it
    /// (wrapping to column 0 on the last row) and `R` everywhere else.
    pub fn wrapped(size: usize) -> Self {
        let grid = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if j == i {
                            Block::J
                        } else if j == (i + 1) % size {
                            Block::O
                        } else {
                            Block::R
                        }
                    })
                    .collect()
            })
            .collect();
        BlockSpec { grid }
    }

    /// Substitutes `inner` for every `R` block.
    pub fn expand(&self, inner: &Relation) -> Result<Relation> {
        let (h, w) = (inner.n_minus(), inner.n_plus());
        let grid_rows = self.grid.len();
        let grid_cols = self.grid.first().map_or(0, Vec::len);
        if self.grid.iter().any(|r| r.len() != grid_cols) {
            return Err(Error::ShapeMismatch("block grid rows differ in length".into()));
        }
        let (n_minus, n_plus) = (grid_rows * h, grid_cols * w);
        for (what, actual) in [("block grid rows", n_minus), ("block grid columns", n_plus)] {
            if actual > MAX_SIDE {
                return Err(Error::Capacity {
                    what,
                    actual,
                    limit: MAX_SIDE,
                });
            }
        }
        let mut out = Relation::zeros(n_minus, n_plus)?;
        for (bi, tags) in self.grid.iter().enumerate() {
            for (bj, tag) in tags.iter().enumerate() {
                for i in 0..h {
                    for j in 0..w {
                        let v = match tag {
                            Block::J => true,
                            Block::O => false,
                            Block::R => inner.get(i, j),
                        };
                        if v {
                            out.set(bi * h + i, bj * w + j, true);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The `n × n` identity relation.
pub fn ladder(n: usize) -> Result<Relation> {
    if n == 0 {
        return Err(Error::EmptySide);
    }
    if n > MAX_SIDE {
        return Err(Error::Capacity {
            what: "ladder size",
            actual: n,
            limit: MAX_SIDE,
        });
    }
    Relation::new(n, n, (0..n).map(|i| 1u64 << i).collect())
}

/// Self-dual relation on `n!` points per side with both dominating numbers `n`.
/// Starts from the 2-ladder; each step places `m + 1` block rows of the
/// previous stage in a wrapped grid.
pub fn c_n(n: usize) -> Result<Relation> {
    if n < 2 {
        return Err(Error::ShapeMismatch(format!("c_n needs n >= 2, got {n}")));
    }
    if n > MAX_CN {
        return Err(Error::Capacity {
            what: "c_n stage",
            actual: n,
            limit: MAX_CN,
        });
    }
    let mut r = ladder(2)?;
    for m in 2..n {
        r = BlockSpec::wrapped(m + 1).expand(&r)?;
    }
    Ok(r)
}

/// Relation on `n^(k-1)` points per side with dominating number `n` and dual
/// dominating number `k`. Starts from the `n`-ladder; each step places copies
/// of the previous stage in a wrapped `n × n` grid.
pub fn c_nk(n: usize, k: usize) -> Result<Relation> {
    if k < 2 || k > n {
        return Err(Error::ShapeMismatch(format!("c_nk needs 2 <= k <= n, got n={n} k={k}")));
    }
    let side = (1..k).try_fold(1usize, |acc, _| acc.checked_mul(n).filter(|&s| s <= MAX_SIDE));
    if side.is_none() {
        return Err(Error::Capacity {
            what: "c_nk side n^(k-1)",
            actual: n.saturating_pow(k as u32 - 1),
            limit: MAX_SIDE,
        });
    }
    let mut r = ladder(n)?;
    for _ in 2..k {
        r = BlockSpec::wrapped(n).expand(&r)?;
    }
    Ok(r)
}

/// One of the named families, with the dominating numbers it is built to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Ladder(usize),
    Cn(usize),
    Cnk(usize, usize),
}

impl Construction {
    pub fn build(self) -> Result<Relation> {
        match self {
            Construction::Ladder(n) => ladder(n),
            Construction::Cn(n) => c_n(n),
            Construction::Cnk(n, k) => c_nk(n, k),
        }
    }

    /// `(δ, δ⊥)` the construction promises.
    pub fn expected(self) -> (Delta, Delta) {
        match self {
            Construction::Ladder(1) => (Delta::Finite(1), Delta::Infinite),
            Construction::Ladder(n) => (Delta::Finite(n), Delta::Finite(2)),
            Construction::Cn(n) => (Delta::Finite(n), Delta::Finite(n)),
            Construction::Cnk(n, k) => (Delta::Finite(n), Delta::Finite(k)),
        }
    }

    /// Builds the relation and recomputes both dominating numbers exactly.
    pub fn verify(self) -> Result<Verified> {
        let relation = self.build()?;
        let delta = dominating_number(&relation);
        let delta_dual = dual_dominating_number(&relation);
        Ok(Verified {
            construction: self,
            relation,
            delta,
            delta_dual,
        })
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Ladder(n) => write!(f, "ladder {n}"),
            Construction::Cn(n) => write!(f, "cn {n}"),
            Construction::Cnk(n, k) => write!(f, "cnk {n} {k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verified {
    pub construction: Construction,
    pub relation: Relation,
    pub delta: Delta,
    pub delta_dual: Delta,
}

impl Verified {
    pub fn matches_expected(&self) -> bool {
        (self.delta, self.delta_dual) == self.construction.expected()
    }
}
