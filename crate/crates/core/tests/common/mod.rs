//! Independent reference implementations used as test oracles, and random
//! relation generators. Nothing here calls the solver or the set-cover code.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tukey::canon::canonical_form;
use tukey::{CanonicalForm, Relation};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> Relation {
    Relation::parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn reference(k: usize) -> Relation {
    load(&format!("order5/{k:02}.rel"))
}

pub fn ladder(n: usize) -> Relation {
    Relation::new(n, n, (0..n).map(|i| 1u64 << i).collect()).unwrap()
}

fn cell(r: &Relation, i: usize, j: usize) -> bool {
    r.rows()[i] >> j & 1 == 1
}

/// Least number of columns covering every row, by trying column subsets in
/// order of size. `None` when some row is empty.
pub fn brute_delta(r: &Relation) -> Option<usize> {
    let n = r.n_plus();
    assert!(n <= 24, "brute force is for small relations");
    (0..=n).find(|&k| {
        (0u64..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .any(|s| (0..r.n_minus()).all(|i| (0..n).any(|j| s >> j & 1 == 1 && cell(r, i, j))))
    })
}

pub fn brute_delta_dual(r: &Relation) -> Option<usize> {
    brute_delta(&transpose_complement(r))
}

/// Dual computed cell by cell from the definition.
pub fn transpose_complement(r: &Relation) -> Relation {
    let mut rows = vec![0u64; r.n_plus()];
    for (j, row) in rows.iter_mut().enumerate() {
        for i in 0..r.n_minus() {
            if !cell(r, i, j) {
                *row |= 1 << i;
            }
        }
    }
    Relation::new(r.n_plus(), r.n_minus(), rows).unwrap()
}

/// Morphism existence by enumerating every `φ-` and then choosing `φ+`
/// pointwise: for fixed `φ-` the constraints on different `a ∈ A+` are
/// independent.
pub fn brute_morphism(a: &Relation, b: &Relation) -> bool {
    let (am, ap, bm, bp) = (a.n_minus(), a.n_plus(), b.n_minus(), b.n_plus());
    let mut phi_minus = vec![0usize; bm];
    loop {
        let ok = (0..ap).all(|x| {
            (0..bp).any(|y| (0..bm).all(|t| !cell(a, phi_minus[t], x) || cell(b, t, y)))
        });
        if ok {
            return true;
        }
        if !odometer(&mut phi_minus, am) {
            return false;
        }
    }
}

/// Morphism existence by enumerating every pair of maps and testing the
/// defining implication on every pair of points.
pub fn literal_brute_morphism(a: &Relation, b: &Relation) -> bool {
    let (am, ap, bm, bp) = (a.n_minus(), a.n_plus(), b.n_minus(), b.n_plus());
    let mut phi_minus = vec![0usize; bm];
    loop {
        let mut phi_plus = vec![0usize; ap];
        loop {
            let good = (0..bm).all(|t| (0..ap).all(|x| !cell(a, phi_minus[t], x) || cell(b, t, phi_plus[x])));
            if good {
                return true;
            }
            if !odometer(&mut phi_plus, bp) {
                break;
            }
        }
        if !odometer(&mut phi_minus, am) {
            return false;
        }
    }
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying every pair of row and column permutations.
pub fn brute_isomorphic(a: &Relation, b: &Relation) -> bool {
    if a.n_minus() != b.n_minus() || a.n_plus() != b.n_plus() {
        return false;
    }
    let rows = permutations(a.n_minus());
    let cols = permutations(a.n_plus());
    rows.iter().any(|p| {
        cols.iter()
            .any(|q| (0..a.n_minus()).all(|i| (0..a.n_plus()).all(|j| cell(a, i, j) == cell(b, p[i], q[j]))))
    })
}

/// Skeleton by deleting a single point at a time: the first row whose
/// neighborhood strictly contains or equals an earlier-listed row's, or the
/// first column strictly inside or equal to a later-listed column, until none remains.
pub fn naive_skeleton(r: &Relation) -> Relation {
    let mut rows: Vec<Vec<bool>> = (0..r.n_minus()).map(|i| (0..r.n_plus()).map(|j| cell(r, i, j)).collect()).collect();
    let mut n_plus = r.n_plus();
    loop {
        let subset = |x: &[bool], y: &[bool]| x.iter().zip(y).all(|(&p, &q)| !p || q);
        let del_row = (0..rows.len()).find(|&i| {
            (0..rows.len()).any(|k| k != i && subset(&rows[k], &rows[i]) && (rows[k] != rows[i] || k < i))
        });
        if let Some(i) = del_row {
            rows.remove(i);
            continue;
        }
        let col = |j: usize| rows.iter().map(|row| row[j]).collect::<Vec<bool>>();
        let del_col = (0..n_plus).find(|&j| {
            (0..n_plus).any(|k| {
                let (cj, ck) = (col(j), col(k));
                k != j && subset(&cj, &ck) && (cj != ck || k < j)
            })
        });
        if let Some(j) = del_col {
            for row in rows.iter_mut() {
                row.remove(j);
            }
            n_plus -= 1;
            continue;
        }
        break;
    }
    let words = rows
        .iter()
        .map(|row| row.iter().enumerate().fold(0u64, |acc, (j, &v)| acc | (v as u64) << j))
        .collect();
    Relation::new(rows.len(), n_plus, words).unwrap()
}

pub fn random_relation(rng: &mut ChaCha8Rng, max_minus: usize, max_plus: usize) -> Relation {
    let m = rng.gen_range(1..=max_minus);
    let n = rng.gen_range(1..=max_plus);
    random_shaped(rng, m, n)
}

pub fn random_shaped(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Relation {
    let density: f64 = [0.2, 0.35, 0.5, 0.65, 0.8][rng.gen_range(0..5)];
    let rows = (0..m)
        .map(|_| (0..n).fold(0u64, |acc, j| acc | (rng.gen_bool(density) as u64) << j))
        .collect();
    Relation::new(m, n, rows).unwrap()
}

/// Every `m × n` relation with `1 <= m, n <= max_side`.
pub fn all_relations(max_side: usize) -> impl Iterator<Item = Relation> {
    (1..=max_side).flat_map(move |m| {
        (1..=max_side).flat_map(move |n| {
            (0u64..1 << (m * n)).map(move |bits| {
                let rows = (0..m).map(|i| bits >> (i * n) & ((1 << n) - 1)).collect();
                Relation::new(m, n, rows).unwrap()
            })
        })
    })
}

/// One relation per isomorphism class among all relations with sides at most `max_side`.
pub fn class_representatives(max_side: usize) -> Vec<Relation> {
    let set: BTreeSet<CanonicalForm> = all_relations(max_side).map(|r| canonical_form(&r).unwrap()).collect();
    set.into_iter().map(CanonicalForm::into_relation).collect()
}
