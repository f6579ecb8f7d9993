//! Canonical forms and isomorphism of relations.
//!
//! Two relations are isomorphic when some row permutation and some column
//! permutation turn one matrix into the other. The canonical representative is
//! the lexicographically least matrix over all column permutations, where each
//! candidate has its rows sorted ascending and rows are read as big-endian words
//! (column 0 is the most significant bit). Exhaustive over column orders, so the
//! plus side is limited to [`MAX_CANON_COLUMNS`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::bits;
use crate::error::{Error, Result};
use crate::relation::Relation;

/// Largest plus side accepted by exact canonicalization.
pub const MAX_CANON_COLUMNS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    relation: Relation,
    hash: u64,
}

impl CanonicalForm {
    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn into_relation(self) -> Relation {
        self.relation
    }

    /// FNV-1a over the side sizes and row words; stable across runs and platforms.
    pub fn stable_hash(&self) -> u64 {
        self.hash
    }

    /// Rows as big-endian words (column 0 most significant), ascending.
    pub fn row_words(&self) -> Vec<u64> {
        let n = self.relation.n_plus();
        self.relation
            .rows()
            .iter()
            .map(|&r| bits::reverse_low(r, n))
            .collect()
    }

    /// Row words in lowercase hex joined by `:`.
    pub fn rows_hex(&self) -> String {
        self.row_words()
            .iter()
            .map(|w| format!("{w:x}"))
            .collect::<Vec<_>>()
            .join(":")
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = &self.relation;
        let b = &other.relation;
        (a.order(), a.n_minus(), a.n_plus())
            .cmp(&(b.order(), b.n_minus(), b.n_plus()))
            .then_with(|| self.row_words().cmp(&other.row_words()))
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[{}]", self.relation.n_minus(), self.relation.n_plus(), self.rows_hex())
    }
}

pub fn canonical_form(r: &Relation) -> Result<CanonicalForm> {
    let n_plus = r.n_plus();
    if n_plus > MAX_CANON_COLUMNS {
        return Err(Error::Capacity {
            what: "plus side for canonical form",
            actual: n_plus,
            limit: MAX_CANON_COLUMNS,
        });
    }
    let words = min_words(r.rows(), n_plus);
    let rows = words
        .iter()
        .map(|&w| bits::reverse_low(w as u64, n_plus))
        .collect();
    let relation = Relation::from_parts(r.n_minus(), n_plus, rows);
    let hash = fnv1a(&relation);
    Ok(CanonicalForm { relation, hash })
}

/// Exact isomorphism test. Uses canonical forms up to [`MAX_CANON_COLUMNS`]
/// plus points and [`find_isomorphism`] beyond.
pub fn is_isomorphic(a: &Relation, b: &Relation) -> Result<bool> {
    if a.n_minus() != b.n_minus()
        || a.n_plus() != b.n_plus()
        || a.pair_count() != b.pair_count()
        || a.row_degrees() != b.row_degrees()
        || a.column_degrees() != b.column_degrees()
    {
        return Ok(false);
    }
    if a.n_plus() <= MAX_CANON_COLUMNS {
        Ok(canonical_form(a)? == canonical_form(b)?)
    } else {
        Ok(find_isomorphism(a, b).is_some())
    }
}

/// An isomorphism from `a` to `b` as `(row_map, column_map)`: row `i` of `a`
/// corresponds to row `row_map[i]` of `b`, and likewise for columns.
///
/// Rows of `a` are matched one at a time. After each step the columns of both
/// relations, read on the matched rows only, must have equal multisets of
/// patterns; once every row is matched this yields the column bijection.
pub fn find_isomorphism(a: &Relation, b: &Relation) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.n_minus() != b.n_minus() || a.n_plus() != b.n_plus() {
        return None;
    }
    let m = a.n_minus();
    let mut row_map = vec![usize::MAX; m];
    let mut sig_a = vec![0u64; a.n_plus()];
    let mut sig_b = vec![0u64; b.n_plus()];
    if !iso_dfs(a, b, 0, 0, &mut row_map, &mut sig_a, &mut sig_b) {
        return None;
    }
    // Final signatures agree as multisets; pair columns with equal patterns.
    let mut used = 0u64;
    let col_map = sig_a
        .iter()
        .map(|&s| {
            let j = (0..sig_b.len())
                .find(|&j| used >> j & 1 == 0 && sig_b[j] == s)
                .expect("signature multisets agree");
            used |= 1 << j;
            j
        })
        .collect();
    Some((row_map, col_map))
}

fn iso_dfs(
    a: &Relation,
    b: &Relation,
    depth: usize,
    used: u64,
    row_map: &mut [usize],
    sig_a: &mut [u64],
    sig_b: &mut [u64],
) -> bool {
    if depth == a.n_minus() {
        return true;
    }
    let ra = a.row(depth);
    for t in 0..b.n_minus() {
        let rb = b.row(t);
        if used >> t & 1 == 1 || ra.count_ones() != rb.count_ones() {
            continue;
        }
        let (save_a, save_b) = (sig_a.to_vec(), sig_b.to_vec());
        for j in bits::ones(ra) {
            sig_a[j] |= 1 << depth;
        }
        for j in bits::ones(rb) {
            sig_b[j] |= 1 << depth;
        }
        let mut sa = sig_a.to_vec();
        let mut sb = sig_b.to_vec();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa == sb {
            row_map[depth] = t;
            if iso_dfs(a, b, depth + 1, used | 1 << t, row_map, sig_a, sig_b) {
                return true;
            }
        }
        sig_a.copy_from_slice(&save_a);
        sig_b.copy_from_slice(&save_b);
    }
    false
}

/// Least sorted big-endian word list over all column permutations.
/// `rows` use the internal layout (bit j = column j); `n_plus <= 8`.
pub(crate) fn min_words(rows: &[u64], n_plus: usize) -> Vec<u8> {
    let tables = perm_tables(n_plus);
    let mut best: Vec<u8> = Vec::new();
    let mut buf: Vec<u8> = vec![0; rows.len()];
    for t in tables {
        for (slot, &r) in buf.iter_mut().zip(rows) {
            *slot = t[(r & 0xf) as usize] | t[16 + ((r >> 4) & 0xf) as usize];
        }
        buf.sort_unstable();
        if best.is_empty() || buf < best {
            best.clone_from(&buf);
        }
    }
    best
}

/// Per column permutation, two 16-entry nibble tables mapping an internal-layout
/// row to its big-endian word under that permutation.
fn perm_tables(n: usize) -> &'static [[u8; 32]] {
    static TABLES: [OnceLock<Vec<[u8; 32]>>; MAX_CANON_COLUMNS + 1] = [const { OnceLock::new() }; MAX_CANON_COLUMNS + 1];
    TABLES[n].get_or_init(|| {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            // New column k is old column perm[k]; old column j lands on big-endian bit n-1-k.
            let mut dest = [0u8; 8];
            for (k, &j) in perm.iter().enumerate() {
                dest[j] = 1 << (n - 1 - k);
            }
            let mut t = [0u8; 32];
            for nib in 0..16usize {
                for bit in 0..4 {
                    if nib >> bit & 1 == 1 {
                        t[nib] |= dest[bit];
                        t[16 + nib] |= dest[4 + bit];
                    }
                }
            }
            out.push(t);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    })
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn fnv1a(r: &Relation) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(&(r.n_minus() as u64).to_le_bytes());
    feed(&(r.n_plus() as u64).to_le_bytes());
    for &w in r.rows() {
        feed(&w.to_le_bytes());
    }
    h
}
