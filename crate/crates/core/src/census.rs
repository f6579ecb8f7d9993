//! Exhaustive classification of small relations up to bimorphism.
//!
//! Every relation of order at most `N` is bimorphic to its skeleton, so the
//! census enumerates relations, reduces each to its skeleton, and keeps one
//! canonical form per isomorphism class. It then fills the morphism matrix
//! between the survivors and derives the bimorphism classes and their cover
//! relation.
//!
//! Only `N`-column relations whose rows are distinct and listed in increasing
//! order are generated. A narrower relation is covered by padding it with
//! isolated columns (which the skeleton deletes) and a relation with repeated
//! rows by dropping the repeats (which are twins). Relations with fewer than
//! `N` rows arise directly from the shorter row lists.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm, MAX_CANON_COLUMNS};
use crate::error::{Error, Result};
use crate::invariants::Delta;
use crate::morphism::{find_morphism_profiled, Profiled, SolverConfig};
use crate::relation::Relation;
use crate::skeleton::reduce_in_place;

/// Largest order accepted without [`CensusOptions::allow_large`].
pub const DEFAULT_MAX_ORDER: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub max_order: usize,
    /// Worker threads; `0` lets the thread pool decide.
    pub jobs: usize,
    /// Permit orders above [`DEFAULT_MAX_ORDER`], up to the canonical-form limit.
    pub allow_large: bool,
}

impl CensusOptions {
    pub fn new(max_order: usize) -> Self {
        CensusOptions {
            max_order,
            jobs: 1,
            allow_large: false,
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_order == 0 {
            return Err(Error::EmptySide);
        }
        let limit = if self.allow_large { MAX_CANON_COLUMNS } else { DEFAULT_MAX_ORDER };
        if self.max_order > limit {
            return Err(Error::Capacity {
                what: "census order",
                actual: self.max_order,
                limit,
            });
        }
        Ok(())
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?)
}

/// Canonical forms of the skeletons of all relations of order at most
/// `max_order`, sorted by their stable order.
pub fn enumerate_skeletal(opts: &CensusOptions) -> Result<Vec<CanonicalForm>> {
    opts.validate()?;
    let n = opts.max_order;
    let words = 1u64 << n;
    // Shards: every singleton list, and every list by its first two rows.
    let mut shards: Vec<(u64, Option<u64>)> = (0..words).map(|v| (v, None)).collect();
    shards.extend((1..words).flat_map(|a| (a + 1..words).map(move |b| (a, Some(b)))));

    let raw: HashSet<u128> = pool(opts.jobs)?.install(|| {
        shards
            .par_iter()
            .fold(HashSet::new, |mut set, &(first, second)| {
                let mut rows = [0u64; 8];
                rows[0] = first;
                match second {
                    None => record(&rows[..1], n, &mut set),
                    Some(second) => {
                        rows[1] = second;
                        extend(&mut rows, 2, n, words, &mut set);
                    }
                }
                set
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    });

    let mut keys: Vec<u128> = raw.into_iter().collect();
    keys.sort_unstable();
    let forms: HashSet<CanonicalForm> = keys
        .par_iter()
        .map(|&k| canonical_form(&unpack(k)).expect("census sizes are within the canonical limit"))
        .collect();
    let mut forms: Vec<CanonicalForm> = forms.into_iter().collect();
    forms.sort();
    Ok(forms)
}

/// Records the list `rows[..len]`, then every increasing extension of it.
fn extend(rows: &mut [u64; 8], len: usize, n: usize, words: u64, set: &mut HashSet<u128>) {
    record(&rows[..len], n, set);
    if len == n {
        return;
    }
    for next in rows[len - 1] + 1..words {
        rows[len] = next;
        extend(rows, len + 1, n, words, set);
    }
}

fn record(rows: &[u64], n: usize, set: &mut HashSet<u128>) {
    if rows[0] == 0 {
        // An empty row collapses everything to the single isolated point.
        set.insert(pack(&[0], 1));
        return;
    }
    let mut buf = [0u64; 64];
    buf[..rows.len()].copy_from_slice(rows);
    let mut m = rows.len();
    let mut k = n;
    reduce_in_place(&mut buf, &mut m, &mut k);
    buf[..m].sort_unstable();
    set.insert(pack(&buf[..m], k));
}

/// Side sizes in the low 16 bits, then one byte per row.
fn pack(rows: &[u64], n_plus: usize) -> u128 {
    let mut key = rows.len() as u128 | (n_plus as u128) << 8;
    for (i, &r) in rows.iter().enumerate() {
        key |= (r as u128) << (16 + 8 * i);
    }
    key
}

fn unpack(key: u128) -> Relation {
    let m = (key & 0xff) as usize;
    let n = (key >> 8 & 0xff) as usize;
    let rows = (0..m).map(|i| (key >> (16 + 8 * i) & 0xff) as u64).collect();
    Relation::from_parts(m, n, rows)
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// 1-based position in the stable order.
    pub id: usize,
    pub form: CanonicalForm,
    pub delta: Delta,
    pub delta_dual: Delta,
    /// Number in the order-5 reference list, when the skeleton appears there.
    pub reference: Option<usize>,
    /// 1-based bimorphism class.
    pub class_id: usize,
}

impl CatalogEntry {
    pub fn relation(&self) -> &Relation {
        self.form.relation()
    }

    /// `#k` for reference skeletons, `s<id>` otherwise.
    pub fn label(&self) -> String {
        match self.reference {
            Some(k) => format!("#{k}"),
            None => format!("s{}", self.id),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusCatalog {
    pub skeletons: Vec<CatalogEntry>,
    /// `morphism_matrix[i][j]` is whether skeleton `i` maps to skeleton `j`
    /// (zero-based positions; ids are positions plus one).
    pub morphism_matrix: Vec<Vec<bool>>,
    /// Member ids of each class, classes ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Covers between classes as `(upper, lower)` class ids: the upper class
    /// maps to the lower one.
    pub hasse_edges: Vec<(usize, usize)>,
}

impl CensusCatalog {
    pub fn entry(&self, id: usize) -> &CatalogEntry {
        &self.skeletons[id - 1]
    }

    /// Catalog id of the skeleton with the given reference number.
    pub fn id_of_reference(&self, reference: usize) -> Option<usize> {
        self.skeletons.iter().find(|e| e.reference == Some(reference)).map(|e| e.id)
    }

    pub fn maps(&self, from_id: usize, to_id: usize) -> bool {
        self.morphism_matrix[from_id - 1][to_id - 1]
    }
}

pub fn build_catalog(skeletons: Vec<CanonicalForm>, jobs: usize) -> Result<CensusCatalog> {
    build_catalog_with(skeletons, jobs, &SolverConfig::default())
}

pub fn build_catalog_with(skeletons: Vec<CanonicalForm>, jobs: usize, cfg: &SolverConfig) -> Result<CensusCatalog> {
    let profiles: Vec<Profiled> = skeletons.iter().map(|f| Profiled::new(f.relation().clone())).collect();
    let n = profiles.len();
    let matrix: Vec<Vec<bool>> = pool(jobs)?.install(|| {
        profiles
            .par_iter()
            .map(|a| {
                profiles
                    .iter()
                    .map(|b| find_morphism_profiled(a, b, cfg).map(|w| w.is_some()))
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| matrix[i][j] && matrix[j][i]).collect();
        for &j in &members {
            class_of[j] = classes.len();
        }
        classes.push(members.iter().map(|&j| j + 1).collect());
    }

    let reps: Vec<usize> = classes.iter().map(|c| c[0] - 1).collect();
    let above = |x: usize, y: usize| x != y && matrix[reps[x]][reps[y]];
    let c = classes.len();
    let mut hasse_edges = Vec::new();
    for x in 0..c {
        for y in 0..c {
            if above(x, y) && !(0..c).any(|z| above(x, z) && above(z, y)) {
                hasse_edges.push((x + 1, y + 1));
            }
        }
    }

    let references = reference_index();
    let skeletons = skeletons
        .into_iter()
        .zip(&profiles)
        .enumerate()
        .map(|(i, (form, p))| CatalogEntry {
            id: i + 1,
            reference: references.get(&form).copied(),
            delta: p.delta(),
            delta_dual: p.delta_dual(),
            class_id: class_of[i] + 1,
            form,
        })
        .collect();
    Ok(CensusCatalog {
        skeletons,
        morphism_matrix: matrix,
        classes,
        hasse_edges,
    })
}

pub fn catalog_csv(cat: &CensusCatalog) -> String {
    let mut out = String::from("id,n_minus,n_plus,delta,delta_dual,class_id,rows_hex\n");
    for e in &cat.skeletons {
        let r = e.relation();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            e.id,
            r.n_minus(),
            r.n_plus(),
            e.delta,
            e.delta_dual,
            e.class_id,
            e.form.rows_hex()
        );
    }
    out
}

pub fn hasse_dot(cat: &CensusCatalog) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=TB;\n  node [shape=box];\n");
    for (k, members) in cat.classes.iter().enumerate() {
        let head = cat.entry(members[0]);
        let names: Vec<String> = members.iter().map(|&id| cat.entry(id).label()).collect();
        let _ = writeln!(
            out,
            "  c{} [label=\"{}\\nδ={}, δ⊥={}\"];",
            k + 1,
            names.join(" "),
            head.delta,
            head.delta_dual
        );
    }
    for (x, y) in &cat.hasse_edges {
        let _ = writeln!(out, "  c{x} -> c{y};");
    }
    out.push_str("}\n");
    out
}

pub fn emit_catalog_csv(cat: &CensusCatalog, path: &Path) -> Result<()> {
    fs::write(path, catalog_csv(cat)).map_err(|e| Error::io(path, e))
}

pub fn emit_hasse_dot(cat: &CensusCatalog, path: &Path) -> Result<()> {
    fs::write(path, hasse_dot(cat)).map_err(|e| Error::io(path, e))
}

/// Writes `catalog.csv`, `hasse.dot` and `skeletons/<id>.rel` under `dir`.
pub fn write_catalog(cat: &CensusCatalog, dir: &Path) -> Result<()> {
    let skel_dir = dir.join("skeletons");
    fs::create_dir_all(&skel_dir).map_err(|e| Error::io(&skel_dir, e))?;
    emit_catalog_csv(cat, &dir.join("catalog.csv"))?;
    emit_hasse_dot(cat, &dir.join("hasse.dot"))?;
    for e in &cat.skeletons {
        let path = skel_dir.join(format!("{}.rel", e.id));
        fs::write(&path, format!("{}\n", e.relation())).map_err(|err| Error::io(&path, err))?;
    }
    Ok(())
}

/// Ids of skeletons with `δ(A) ≥ δ(A⊥)` that admit no morphism to their dual.
pub fn probe_self_dual_question(cat: &CensusCatalog) -> Vec<usize> {
    cat.skeletons
        .iter()
        .filter(|e| e.delta >= e.delta_dual)
        .filter(|e| {
            let a = Profiled::new(e.relation().clone());
            let d = Profiled::new(e.relation().dual());
            find_morphism_profiled(&a, &d, &SolverConfig::default())
                .expect("unlimited search")
                .is_none()
        })
        .map(|e| e.id)
        .collect()
}

macro_rules! order5 {
    ($($k:literal),*) => {
        [$(include_str!(concat!("../fixtures/order5/", $k, ".rel"))),*]
    };
}

static ORDER5: [&str; 32] = order5!(
    "01", "02", "03", "04", "05", "06", "07", "08", "09", "10", "11", "12", "13", "14", "15", "16", "17", "18", "19",
    "20", "21", "22", "23", "24", "25", "26", "27", "28", "29", "30", "31", "32"
);

/// The 32 skeletal relations of order at most 5 in their reference numbering,
/// as `(number, relation)`.
pub fn reference_skeletons() -> Vec<(usize, Relation)> {
    ORDER5
        .iter()
        .enumerate()
        .map(|(i, text)| (i + 1, Relation::parse(text).expect("bundled fixture parses")))
        .collect()
}

fn reference_index() -> HashMap<CanonicalForm, usize> {
    reference_skeletons()
        .into_iter()
        .map(|(k, r)| (canonical_form(&r).expect("order-5 fixture"), k))
        .collect()
}
