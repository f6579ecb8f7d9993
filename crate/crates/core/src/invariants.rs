//! Dominating number, dual dominating number and ladder recognition.
//!
//! A family `Y ⊆ A+` dominates when every point of `A-` is related to some
//! member of `Y`. The dominating number is the least size of such a family and
//! is infinite exactly when some row is empty. Computing it is minimum set
//! cover: column `j` covers the rows in its neighborhood. The solver below is an
//! exact branch and bound over `u64` row sets.

use std::fmt;

use crate::bits::{self, mask};
use crate::error::{Error, Result};
use crate::relation::Relation;

/// A dominating number: finite and positive, or infinite.
///
/// `Finite(n) < Infinite` for every `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Delta {
    Finite(usize),
    Infinite,
}

impl Delta {
    pub fn finite(self) -> Option<usize> {
        match self {
            Delta::Finite(n) => Some(n),
            Delta::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Delta::Infinite
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Delta::Finite(n) => write!(f, "{n}"),
            Delta::Infinite => f.write_str("inf"),
        }
    }
}

/// A set of plus-side indices, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominatingFamily(Vec<usize>);

impl DominatingFamily {
    /// Wraps column indices after checking they dominate `r`.
    pub fn new(r: &Relation, mut columns: Vec<usize>) -> Result<Self> {
        for &j in &columns {
            r.check_index(crate::relation::Side::Plus, j)?;
        }
        columns.sort_unstable();
        columns.dedup();
        if let Some(i) = first_undominated(r, &columns) {
            return Err(Error::NotDominating(i));
        }
        Ok(DominatingFamily(columns))
    }

    pub fn columns(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// First row not related to any listed column.
pub fn first_undominated(r: &Relation, columns: &[usize]) -> Option<usize> {
    let set = bits::from_indices(columns.iter().copied());
    r.rows().iter().position(|&row| row & set == 0)
}

pub fn dominates(r: &Relation, columns: &[usize]) -> bool {
    columns.iter().all(|&j| j < r.n_plus()) && first_undominated(r, columns).is_none()
}

pub fn dominating_number(r: &Relation) -> Delta {
    match CoverProblem::new(r) {
        Some(p) => Delta::Finite(p.min_cover_size()),
        None => Delta::Infinite,
    }
}

pub fn dual_dominating_number(r: &Relation) -> Delta {
    dominating_number(&r.dual())
}

/// Lexicographically least dominating family of minimum size, if any exists.
pub fn min_dominating_family(r: &Relation) -> Option<DominatingFamily> {
    let p = CoverProblem::new(r)?;
    let k = p.min_cover_size();
    let cols = p.lex_least_cover(k);
    Some(DominatingFamily(cols))
}

/// `Some(n)` when `r` is the graph of a bijection between two `n`-point sides.
pub fn is_ladder(r: &Relation) -> Option<usize> {
    let n = r.n_minus();
    if n != r.n_plus() {
        return None;
    }
    let mut seen = 0u64;
    for &row in r.rows() {
        if row.count_ones() != 1 || seen & row != 0 {
            return None;
        }
        seen |= row;
    }
    (seen == mask(n)).then_some(n)
}

/// Set cover instance: cover all rows using columns.
struct CoverProblem {
    universe: u64,
    /// Rows covered by each column.
    cols: Vec<u64>,
    /// Columns covering each row.
    covering: Vec<u64>,
}

impl CoverProblem {
    fn new(r: &Relation) -> Option<Self> {
        if r.rows().contains(&0) {
            return None;
        }
        Some(CoverProblem {
            universe: mask(r.n_minus()),
            cols: r.columns(),
            covering: r.rows().to_vec(),
        })
    }

    fn min_cover_size(&self) -> usize {
        // Columns dominated by another column never help a minimum cover.
        let mut useful: Vec<u64> = Vec::new();
        let mut sorted = self.cols.clone();
        sorted.sort_unstable_by_key(|c| std::cmp::Reverse(c.count_ones()));
        for c in sorted {
            if c != 0 && !useful.iter().any(|&u| c & !u == 0) {
                useful.push(c);
            }
        }
        let mut covering = vec![0u64; self.covering.len()];
        for (k, &c) in useful.iter().enumerate() {
            for i in bits::ones(c) {
                covering[i] |= 1 << k;
            }
        }
        let mut search = MinCover {
            cols: &useful,
            covering: &covering,
            best: greedy_size(&useful, self.universe),
        };
        search.run(self.universe, 0);
        search.best
    }

    /// Least sorted column list of size `k` that covers everything, given that
    /// `k` is the minimum.
    fn lex_least_cover(&self, k: usize) -> Vec<usize> {
        let mut chosen = Vec::with_capacity(k);
        let found = self.lex_dfs(self.universe, 0, k, &mut chosen);
        debug_assert!(found, "minimum cover size must be attainable");
        chosen
    }

    fn lex_dfs(&self, uncovered: u64, start: usize, budget: usize, chosen: &mut Vec<usize>) -> bool {
        if uncovered == 0 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let avail = !mask(start) & mask(self.cols.len());
        // Every uncovered row needs a column at or after `start`.
        if bits::ones(uncovered).any(|i| self.covering[i] & avail == 0) {
            return false;
        }
        if packing_bound(uncovered, &self.covering, avail) > budget {
            return false;
        }
        for j in start..self.cols.len() {
            if self.cols[j] & uncovered == 0 {
                continue;
            }
            chosen.push(j);
            if self.lex_dfs(uncovered & !self.cols[j], j + 1, budget - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

struct MinCover<'a> {
    cols: &'a [u64],
    covering: &'a [u64],
    best: usize,
}

impl MinCover<'_> {
    fn run(&mut self, uncovered: u64, depth: usize) {
        if uncovered == 0 {
            self.best = self.best.min(depth);
            return;
        }
        if depth + 1 >= self.best {
            return;
        }
        let all = mask(self.cols.len());
        let max_gain = self
            .cols
            .iter()
            .map(|c| (c & uncovered).count_ones() as usize)
            .max()
            .unwrap_or(0);
        let need = (uncovered.count_ones() as usize).div_ceil(max_gain.max(1));
        if depth + need >= self.best {
            return;
        }
        if depth + packing_bound(uncovered, self.covering, all) >= self.best {
            return;
        }
        // Branch on the uncovered row with the fewest covering columns.
        let row = bits::ones(uncovered)
            .min_by_key(|&i| self.covering[i].count_ones())
            .expect("uncovered is nonempty");
        let mut options: Vec<usize> = bits::ones(self.covering[row]).collect();
        options.sort_by_key(|&j| std::cmp::Reverse((self.cols[j] & uncovered).count_ones()));
        for j in options {
            self.run(uncovered & !self.cols[j], depth + 1);
            if depth + 1 >= self.best {
                return;
            }
        }
    }
}

/// Number of uncovered rows with pairwise disjoint covering sets, found greedily.
/// Each such row needs its own column, so this is a lower bound.
fn packing_bound(uncovered: u64, covering: &[u64], avail: u64) -> usize {
    let mut rows: Vec<(u32, u64)> = bits::ones(uncovered)
        .map(|i| {
            let c = covering[i] & avail;
            (c.count_ones(), c)
        })
        .collect();
    rows.sort_unstable_by_key(|&(n, _)| n);
    let mut used = 0u64;
    let mut count = 0;
    for (_, c) in rows {
        if c & used == 0 {
            used |= c;
            count += 1;
        }
    }
    count
}

fn greedy_size(cols: &[u64], universe: u64) -> usize {
    let mut uncovered = universe;
    let mut n = 0;
    while uncovered != 0 {
        let best = cols
            .iter()
            .max_by_key(|&&c| (c & uncovered).count_ones())
            .copied()
            .unwrap_or(0);
        if best & uncovered == 0 {
            // Unreachable for instances without empty rows.
            return usize::MAX;
        }
        uncovered &= !best;
        n += 1;
    }
    n
}
