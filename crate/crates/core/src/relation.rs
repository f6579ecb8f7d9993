//! Finite binary relations stored as bit matrices.
//!
//! A [`Relation`] is a triple `(A-, A+, A)` with `A ⊆ A- × A+`. Rows index the
//! minus side and columns index the plus side; row `i` is a `u64` whose bit `j`
//! is set iff `x_i A y_j`. Both sides hold between 1 and 64 points so that every
//! neighborhood fits in one machine word.
//!
//! The text format read by [`Relation::parse`] and written by `Display` is
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 2 3
//! 101
//! 010
//! ```

use std::fmt;
use std::str::FromStr;

use crate::bits::{self, mask};
use crate::error::{Error, Result};

/// Largest supported side size.
pub const MAX_SIDE: usize = 64;

/// One side of a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Minus => f.write_str("minus"),
            Side::Plus => f.write_str("plus"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    n_minus: usize,
    n_plus: usize,
    rows: Vec<u64>,
}

impl Relation {
    /// Builds a relation from row bitsets. Bits at or above `n_plus` must be clear.
    pub fn new(n_minus: usize, n_plus: usize, rows: Vec<u64>) -> Result<Self> {
        check_side("minus side", n_minus)?;
        check_side("plus side", n_plus)?;
        if rows.len() != n_minus {
            return Err(Error::ShapeMismatch(format!(
                "expected {n_minus} rows, got {}",
                rows.len()
            )));
        }
        if let Some(i) = rows.iter().position(|r| r & !mask(n_plus) != 0) {
            return Err(Error::ShapeMismatch(format!(
                "row {i} has bits beyond column {n_plus}"
            )));
        }
        Ok(Relation {
            n_minus,
            n_plus,
            rows,
        })
    }

    /// Internal constructor for callers that already hold the invariants.
    pub(crate) fn from_parts(n_minus: usize, n_plus: usize, rows: Vec<u64>) -> Self {
        debug_assert!((1..=MAX_SIDE).contains(&n_minus));
        debug_assert!((1..=MAX_SIDE).contains(&n_plus));
        debug_assert_eq!(rows.len(), n_minus);
        debug_assert!(rows.iter().all(|r| r & !mask(n_plus) == 0));
        Relation {
            n_minus,
            n_plus,
            rows,
        }
    }

    pub fn zeros(n_minus: usize, n_plus: usize) -> Result<Self> {
        Relation::new(n_minus, n_plus, vec![0; n_minus])
    }

    pub fn ones(n_minus: usize, n_plus: usize) -> Result<Self> {
        check_side("plus side", n_plus)?;
        Relation::new(n_minus, n_plus, vec![mask(n_plus); n_minus])
    }

    /// Builds a relation from `0`/`1` row strings, e.g. `["110", "011"]`.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n_plus = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut text = format!("{} {}\n", rows.len(), n_plus);
        for r in rows {
            text.push_str(r.as_ref());
            text.push('\n');
        }
        Relation::parse(&text)
    }

    /// Builds a relation from the pair list `(minus index, plus index)`.
    pub fn from_pairs(n_minus: usize, n_plus: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Relation::zeros(n_minus, n_plus)?;
        for &(i, j) in pairs {
            r.check_index(Side::Minus, i)?;
            r.check_index(Side::Plus, j)?;
            r.rows[i] |= 1 << j;
        }
        Ok(r)
    }

    /// Parses the relation text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut rows = Vec::new();
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((n_minus, n_plus)) = header else {
                header = Some(parse_header(line, line_no)?);
                continue;
            };
            if rows.len() == n_minus {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("row count mismatch: header declares {n_minus} rows"),
                ));
            }
            let mut word = 0u64;
            let mut width = 0;
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' if col < n_plus => word |= 1 << col,
                    '1' => {}
                    other => {
                        return Err(Error::parse(
                            line_no,
                            col + 1,
                            format!("expected '0' or '1', found {other:?}"),
                        ))
                    }
                }
                width += 1;
            }
            if width != n_plus {
                return Err(Error::parse(
                    line_no,
                    width.min(n_plus) + 1,
                    format!("ragged row: expected {n_plus} entries, found {width}"),
                ));
            }
            rows.push(word);
        }

        let Some((n_minus, n_plus)) = header else {
            return Err(Error::parse(last_line.max(1), 1, "missing header line"));
        };
        if rows.len() != n_minus {
            return Err(Error::parse(
                last_line + 1,
                1,
                format!(
                    "row count mismatch: header declares {n_minus} rows, found {}",
                    rows.len()
                ),
            ));
        }
        Ok(Relation::from_parts(n_minus, n_plus, rows))
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    /// `max(|A-|, |A+|)`.
    pub fn order(&self) -> usize {
        self.n_minus.max(self.n_plus)
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Column `j` as a bitset over the minus side.
    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    pub fn columns(&self) -> Vec<u64> {
        columns_of(&self.rows, self.n_plus)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n_minus && j < self.n_plus, "index out of range");
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::Minus => self.n_minus,
            Side::Plus => self.n_plus,
        }
    }

    pub(crate) fn check_index(&self, side: Side, index: usize) -> Result<()> {
        let len = self.side_len(side);
        if index < len {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { side, index, len })
        }
    }

    /// Neighborhood of a point, as a bitset over the opposite side.
    pub fn neighborhood(&self, side: Side, index: usize) -> Result<u64> {
        self.check_index(side, index)?;
        Ok(match side {
            Side::Minus => self.rows[index],
            Side::Plus => self.column(index),
        })
    }

    /// The dual relation: sides swapped and the matrix complemented and transposed.
    pub fn dual(&self) -> Relation {
        let full = mask(self.n_minus);
        let rows = self.columns().into_iter().map(|c| !c & full).collect();
        Relation::from_parts(self.n_plus, self.n_minus, rows)
    }

    /// Block-diagonal sum: `self` occupies the first block, `other` the second.
    pub fn disjoint_union(&self, other: &Relation) -> Result<Relation> {
        let n_minus = self.n_minus + other.n_minus;
        let n_plus = self.n_plus + other.n_plus;
        check_side("minus side of union", n_minus)?;
        check_side("plus side of union", n_plus)?;
        let rows = self
            .rows
            .iter()
            .copied()
            .chain(other.rows.iter().map(|r| r << self.n_plus))
            .collect();
        Ok(Relation::from_parts(n_minus, n_plus, rows))
    }

    /// Restriction to the listed points, kept in their original relative order.
    /// Indices may be given in any order; duplicates are ignored.
    pub fn induced_subrelation(&self, keep_minus: &[usize], keep_plus: &[usize]) -> Result<Relation> {
        for &i in keep_minus {
            self.check_index(Side::Minus, i)?;
        }
        for &j in keep_plus {
            self.check_index(Side::Plus, j)?;
        }
        let minus_set = bits::from_indices(keep_minus.iter().copied());
        let plus_set = bits::from_indices(keep_plus.iter().copied());
        if minus_set == 0 || plus_set == 0 {
            return Err(Error::EmptySide);
        }
        Ok(self.restrict(minus_set, plus_set))
    }

    /// Restriction to bitset-selected points; both sets nonempty.
    pub(crate) fn restrict(&self, keep_minus: u64, keep_plus: u64) -> Relation {
        let rows: Vec<u64> = bits::ones(keep_minus)
            .map(|i| bits::compress(self.rows[i], keep_plus))
            .collect();
        Relation::from_parts(rows.len(), keep_plus.count_ones() as usize, rows)
    }

    /// Relabels points: new row `k` is old row `row_order[k]`, new column `k` is
    /// old column `col_order[k]`. Both must be permutations.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Result<Relation> {
        check_permutation(row_order, self.n_minus, "row order")?;
        check_permutation(col_order, self.n_plus, "column order")?;
        let rows = row_order
            .iter()
            .map(|&i| {
                let r = self.rows[i];
                col_order
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &j)| acc | (((r >> j) & 1) << k))
            })
            .collect();
        Ok(Relation::from_parts(self.n_minus, self.n_plus, rows))
    }

    /// Sorted row degrees.
    pub fn row_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.rows.iter().map(|r| r.count_ones()).collect();
        d.sort_unstable();
        d
    }

    /// Sorted column degrees.
    pub fn column_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.columns().iter().map(|c| c.count_ones()).collect();
        d.sort_unstable();
        d
    }
}

pub(crate) fn columns_of(rows: &[u64], n_plus: usize) -> Vec<u64> {
    let mut cols = vec![0u64; n_plus];
    for (i, &r) in rows.iter().enumerate() {
        for j in bits::ones(r) {
            cols[j] |= 1 << i;
        }
    }
    cols
}

fn check_side(what: &'static str, n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptySide)
    } else if n > MAX_SIDE {
        Err(Error::Capacity {
            what,
            actual: n,
            limit: MAX_SIDE,
        })
    } else {
        Ok(())
    }
}

fn check_permutation(order: &[usize], n: usize, what: &str) -> Result<()> {
    if order.len() != n || bits::from_indices(order.iter().copied().filter(|&i| i < n)) != mask(n) {
        return Err(Error::ShapeMismatch(format!("{what} is not a permutation of 0..{n}")));
    }
    Ok(())
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut parts = line.split(' ');
    let mut field = |name: &str, column: usize| -> Result<(usize, usize)> {
        let tok = parts
            .next()
            .ok_or_else(|| Error::parse(line_no, column, format!("malformed header: missing {name}")))?;
        let n = tok.parse::<usize>().map_err(|_| {
            Error::parse(line_no, column, format!("malformed header: {name} {tok:?} is not a decimal integer"))
        })?;
        Ok((n, column + tok.len() + 1))
    };
    let (n_minus, next) = field("minus-side size", 1)?;
    let (n_plus, next) = field("plus-side size", next)?;
    if parts.next().is_some() {
        return Err(Error::parse(line_no, next, "malformed header: expected exactly two integers"));
    }
    for (n, column) in [(n_minus, 1), (n_plus, next - 1)] {
        if n == 0 || n > MAX_SIDE {
            return Err(Error::parse(
                line_no,
                column.max(1),
                format!("side size {n} outside 1..={MAX_SIDE}"),
            ));
        }
    }
    Ok((n_minus, n_plus))
}

impl fmt::Display for Relation {
    /// Writes the relation text format without a trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.n_minus, self.n_plus)?;
        for &r in &self.rows {
            f.write_str("\n")?;
            for j in 0..self.n_plus {
                f.write_str(if (r >> j) & 1 == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Relation::parse(s)
    }
}
