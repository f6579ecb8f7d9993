//! Point classification and the skeleton reduction.
//!
//! A minus-side point is *non-minimal* when another minus-side point has a
//! strictly smaller neighborhood; a plus-side point is *non-maximal* when
//! another plus-side point has a strictly larger one. Two points on the same side
//! with equal neighborhoods are *twins*. Deleting any of these yields a bimorphic
//! relation.
//!
//! [`skeleton`] deletes all non-minimal minus points and all non-maximal plus
//! points in one batch, repeats until none remain, and then keeps only the
//! lowest-index point of each twin class. The result is a fixpoint.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::{self, is_strict_subset, mask};
use crate::canon::{canonical_form, CanonicalForm};
use crate::error::Result;
use crate::relation::{columns_of, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClassification {
    pub non_minimal_minus: Vec<usize>,
    pub non_maximal_plus: Vec<usize>,
    pub twin_classes_minus: Vec<Vec<usize>>,
    pub twin_classes_plus: Vec<Vec<usize>>,
}

pub fn classify_points(r: &Relation) -> PointClassification {
    let cols = r.columns();
    PointClassification {
        non_minimal_minus: bits::ones(non_minimal(r.rows())).collect(),
        non_maximal_plus: bits::ones(non_maximal(&cols)).collect(),
        twin_classes_minus: twin_classes(r.rows()),
        twin_classes_plus: twin_classes(&cols),
    }
}

/// Points `i` with some `k` such that `nbhd[k] ⊊ nbhd[i]`.
pub(crate) fn non_minimal(nbhd: &[u64]) -> u64 {
    let mut out = 0;
    for (i, &a) in nbhd.iter().enumerate() {
        if nbhd.iter().any(|&b| is_strict_subset(b, a)) {
            out |= 1 << i;
        }
    }
    out
}

/// Points `i` with some `k` such that `nbhd[i] ⊊ nbhd[k]`.
pub(crate) fn non_maximal(nbhd: &[u64]) -> u64 {
    let mut out = 0;
    for (i, &a) in nbhd.iter().enumerate() {
        if nbhd.iter().any(|&b| is_strict_subset(a, b)) {
            out |= 1 << i;
        }
    }
    out
}

/// Points with an equal neighborhood at a lower index.
pub(crate) fn twin_surplus(nbhd: &[u64]) -> u64 {
    let mut out = 0;
    for (i, &a) in nbhd.iter().enumerate() {
        if nbhd[..i].contains(&a) {
            out |= 1 << i;
        }
    }
    out
}

/// Points that have at least one twin.
fn has_twin(nbhd: &[u64]) -> u64 {
    let mut out = 0;
    for (i, &a) in nbhd.iter().enumerate() {
        if nbhd.iter().enumerate().any(|(k, &b)| k != i && a == b) {
            out |= 1 << i;
        }
    }
    out
}

fn twin_classes(nbhd: &[u64]) -> Vec<Vec<usize>> {
    let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
    for (i, &a) in nbhd.iter().enumerate() {
        match classes.iter_mut().find(|(n, _)| *n == a) {
            Some((_, members)) => members.push(i),
            None => classes.push((a, vec![i])),
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

/// Why a round deleted points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundKind {
    /// Batch deletion of non-minimal minus points and non-maximal plus points.
    Domination,
    /// Twin collapse, keeping the lowest index of each class.
    Twins,
}

/// One deletion round. Indices refer to the input relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub kind: RoundKind,
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

impl Round {
    pub fn reason(&self) -> &'static str {
        match (self.kind, self.minus.is_empty(), self.plus.is_empty()) {
            (RoundKind::Twins, _, _) => "twins",
            (RoundKind::Domination, false, true) => "non-minimal",
            (RoundKind::Domination, true, false) => "non-maximal",
            (RoundKind::Domination, _, _) => "non-minimal,non-maximal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonTrace {
    pub rounds: Vec<Round>,
    pub result: Relation,
}

impl SkeletonTrace {
    /// Replays the recorded deletions on `input`.
    pub fn replay(&self, input: &Relation) -> Result<Relation> {
        let mut keep_minus = mask(input.n_minus());
        let mut keep_plus = mask(input.n_plus());
        for round in &self.rounds {
            keep_minus &= !bits::from_indices(round.minus.iter().copied());
            keep_plus &= !bits::from_indices(round.plus.iter().copied());
        }
        let minus: Vec<usize> = bits::ones(keep_minus).collect();
        let plus: Vec<usize> = bits::ones(keep_plus).collect();
        input.induced_subrelation(&minus, &plus)
    }
}

impl fmt::Display for SkeletonTrace {
    /// One line per round: `round <k>: deleted minus={..} plus={..} reason=<..>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, round) in self.rounds.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(
                f,
                "round {}: deleted minus={{{}}} plus={{{}}} reason={}",
                k + 1,
                join(&round.minus),
                join(&round.plus),
                round.reason()
            )?;
        }
        Ok(())
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Skeleton of `r` with a log of every deletion round.
pub fn skeleton(r: &Relation) -> (Relation, SkeletonTrace) {
    let mut rows = r.rows().to_vec();
    let mut n_plus = r.n_plus();
    let mut orig_minus: Vec<usize> = (0..r.n_minus()).collect();
    let mut orig_plus: Vec<usize> = (0..n_plus).collect();
    let mut rounds = Vec::new();

    let mut apply = |kind: RoundKind,
                     del_minus: u64,
                     del_plus: u64,
                     rows: &mut Vec<u64>,
                     n_plus: &mut usize,
                     orig_minus: &mut Vec<usize>,
                     orig_plus: &mut Vec<usize>| {
        rounds.push(Round {
            kind,
            minus: bits::ones(del_minus).map(|i| orig_minus[i]).collect(),
            plus: bits::ones(del_plus).map(|j| orig_plus[j]).collect(),
        });
        let keep_plus = !del_plus & mask(*n_plus);
        let mut k = 0;
        for i in 0..rows.len() {
            if del_minus >> i & 1 == 0 {
                rows[k] = bits::compress(rows[i], keep_plus);
                orig_minus[k] = orig_minus[i];
                k += 1;
            }
        }
        rows.truncate(k);
        orig_minus.truncate(k);
        let kept: Vec<usize> = bits::ones(keep_plus).map(|j| orig_plus[j]).collect();
        *orig_plus = kept;
        *n_plus = orig_plus.len();
    };

    loop {
        let cols = columns_of(&rows, n_plus);
        let del_minus = non_minimal(&rows);
        let del_plus = non_maximal(&cols);
        if del_minus == 0 && del_plus == 0 {
            break;
        }
        apply(
            RoundKind::Domination,
            del_minus,
            del_plus,
            &mut rows,
            &mut n_plus,
            &mut orig_minus,
            &mut orig_plus,
        );
    }

    let cols = columns_of(&rows, n_plus);
    let del_minus = twin_surplus(&rows);
    let del_plus = twin_surplus(&cols);
    if del_minus != 0 || del_plus != 0 {
        apply(
            RoundKind::Twins,
            del_minus,
            del_plus,
            &mut rows,
            &mut n_plus,
            &mut orig_minus,
            &mut orig_plus,
        );
    }

    let result = Relation::from_parts(rows.len(), n_plus, rows);
    let trace = SkeletonTrace {
        rounds,
        result: result.clone(),
    };
    (result, trace)
}

pub fn is_skeletal(r: &Relation) -> bool {
    let cols = r.columns();
    non_minimal(r.rows()) == 0
        && non_maximal(&cols) == 0
        && twin_surplus(r.rows()) == 0
        && twin_surplus(&cols) == 0
}

/// Allocation-free skeleton used by the census. `rows[..*n_minus]` holds the
/// input (at most 64 rows) and is overwritten with the skeleton.
pub(crate) fn reduce_in_place(rows: &mut [u64], n_minus: &mut usize, n_plus: &mut usize) {
    let mut cols = [0u64; 64];
    loop {
        let m = *n_minus;
        let n = *n_plus;
        fill_columns(&rows[..m], &mut cols[..n]);
        let del_minus = non_minimal(&rows[..m]);
        let del_plus = non_maximal(&cols[..n]);
        if del_minus == 0 && del_plus == 0 {
            break;
        }
        compact(rows, n_minus, n_plus, del_minus, del_plus);
    }
    let m = *n_minus;
    let n = *n_plus;
    fill_columns(&rows[..m], &mut cols[..n]);
    let del_minus = twin_surplus(&rows[..m]);
    let del_plus = twin_surplus(&cols[..n]);
    if del_minus != 0 || del_plus != 0 {
        compact(rows, n_minus, n_plus, del_minus, del_plus);
    }
}

#[inline]
fn fill_columns(rows: &[u64], cols: &mut [u64]) {
    cols.fill(0);
    for (i, &r) in rows.iter().enumerate() {
        for j in bits::ones(r) {
            cols[j] |= 1 << i;
        }
    }
}

#[inline]
fn compact(rows: &mut [u64], n_minus: &mut usize, n_plus: &mut usize, del_minus: u64, del_plus: u64) {
    let keep_plus = !del_plus & mask(*n_plus);
    let mut k = 0;
    for i in 0..*n_minus {
        if del_minus >> i & 1 == 0 {
            rows[k] = bits::compress(rows[i], keep_plus);
            k += 1;
        }
    }
    *n_minus = k;
    *n_plus = keep_plus.count_ones() as usize;
}

/// Outcome counts of randomized single-point deletion runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomizedReport {
    pub trials: usize,
    pub deterministic: CanonicalForm,
    /// Distinct outcomes with their counts, ordered by canonical form.
    pub outcomes: Vec<(CanonicalForm, usize)>,
}

impl RandomizedReport {
    /// True when every trial ended isomorphic to the batch skeleton.
    pub fn agrees(&self) -> bool {
        self.outcomes.iter().all(|(c, _)| *c == self.deterministic)
    }
}

impl fmt::Display for RandomizedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials={} distinct={}", self.trials, self.outcomes.len())?;
        writeln!(f, "deterministic {}", self.deterministic)?;
        for (c, count) in &self.outcomes {
            let mark = if *c == self.deterministic { "same" } else { "different" };
            writeln!(f, "outcome {c} count={count} {mark}")?;
        }
        write!(f, "agreement={}", if self.agrees() { "yes" } else { "no" })
    }
}

/// Runs `trials` deletion sequences, each removing one uniformly chosen point
/// that is deletable or has a twin, until the relation is skeletal.
///
/// Fails only when an outcome has more plus points than canonicalization allows.
pub fn skeleton_randomized(r: &Relation, seed: u64, trials: usize) -> Result<RandomizedReport> {
    let deterministic = canonical_form(&skeleton(r).0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<CanonicalForm, usize> = BTreeMap::new();
    for _ in 0..trials {
        let mut rows = r.rows().to_vec();
        let mut n_minus = r.n_minus();
        let mut n_plus = r.n_plus();
        loop {
            let cols = columns_of(&rows[..n_minus], n_plus);
            let minus = non_minimal(&rows[..n_minus]) | has_twin(&rows[..n_minus]);
            let plus = non_maximal(&cols) | has_twin(&cols);
            let mut candidates: Vec<(bool, usize)> = bits::ones(minus)
                .map(|i| (true, i))
                .chain(bits::ones(plus).map(|j| (false, j)))
                .collect();
            candidates.sort_unstable();
            let Some(&(is_minus, idx)) = candidates.choose(&mut rng) else {
                break;
            };
            let (dm, dp) = if is_minus { (1 << idx, 0) } else { (0, 1 << idx) };
            compact(&mut rows, &mut n_minus, &mut n_plus, dm, dp);
        }
        rows.truncate(n_minus);
        let outcome = canonical_form(&Relation::from_parts(n_minus, n_plus, rows))?;
        *counts.entry(outcome).or_default() += 1;
    }
    Ok(RandomizedReport {
        trials,
        deterministic,
        outcomes: counts.into_iter().collect(),
    })
}
