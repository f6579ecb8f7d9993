//! Tukey morphisms between finite relations.
//!
//! A morphism `A → B` is a pair of maps `φ- : B- → A-` and `φ+ : A+ → B+` such
//! that `φ-(b) A a` implies `b B φ+(a)` for all `b ∈ B-`, `a ∈ A+`.
//!
//! Once `φ+` is fixed the choice of `φ-(b)` is independent for every `b`: any
//! `c ∈ A-` whose neighborhood lies inside `{a : b B φ+(a)}` works. The solver
//! therefore searches over `φ+` only, keeping for each `b` the bitset of minus
//! points of `A` that are still feasible and backtracking when one empties.

use std::fmt;
use std::str::FromStr;

use crate::bits::{self, is_strict_subset, mask};
use crate::error::{Error, Result};
use crate::invariants::{dominating_number, dual_dominating_number, is_ladder, min_dominating_family, Delta, DominatingFamily};
use crate::relation::Relation;

/// `phi_minus[b]` is the image in `A-` of `b ∈ B-`; `phi_plus[a]` is the image
/// in `B+` of `a ∈ A+`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismWitness {
    pub phi_minus: Vec<usize>,
    pub phi_plus: Vec<usize>,
}

impl MorphismWitness {
    pub fn identity(r: &Relation) -> Self {
        MorphismWitness {
            phi_minus: (0..r.n_minus()).collect(),
            phi_plus: (0..r.n_plus()).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut minus = None;
        let mut plus = None;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let tag = toks.next().unwrap_or_default();
            let values = toks
                .enumerate()
                .map(|(k, t)| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(line_no, k + 2, format!("not an index: {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let slot = match tag {
                "PHI-" => &mut minus,
                "PHI+" => &mut plus,
                other => return Err(Error::parse(line_no, 1, format!("unknown tag {other:?}"))),
            };
            if slot.replace(values).is_some() {
                return Err(Error::parse(line_no, 1, format!("duplicate {tag} line")));
            }
        }
        match (minus, plus) {
            (Some(phi_minus), Some(phi_plus)) => Ok(MorphismWitness { phi_minus, phi_plus }),
            _ => Err(Error::parse(1, 1, "witness needs a PHI- line and a PHI+ line")),
        }
    }
}

impl fmt::Display for MorphismWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PHI-")?;
        for i in &self.phi_minus {
            write!(f, " {i}")?;
        }
        f.write_str("\nPHI+")?;
        for j in &self.phi_plus {
            write!(f, " {j}")?;
        }
        Ok(())
    }
}

impl FromStr for MorphismWitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MorphismWitness::parse(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Apply the dominating-number and ladder shortcuts before searching.
    pub shortcuts_enabled: bool,
    /// Give up after this many search nodes.
    pub node_limit: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            shortcuts_enabled: true,
            node_limit: None,
        }
    }
}

impl SolverConfig {
    pub fn no_shortcuts() -> Self {
        SolverConfig {
            shortcuts_enabled: false,
            ..Self::default()
        }
    }
}

fn validate(a: &Relation, b: &Relation, w: &MorphismWitness) -> Result<()> {
    if w.phi_minus.len() != b.n_minus() {
        return Err(Error::InvalidWitness(format!(
            "phi_minus has {} entries, target minus side has {}",
            w.phi_minus.len(),
            b.n_minus()
        )));
    }
    if w.phi_plus.len() != a.n_plus() {
        return Err(Error::InvalidWitness(format!(
            "phi_plus has {} entries, source plus side has {}",
            w.phi_plus.len(),
            a.n_plus()
        )));
    }
    if let Some((k, &v)) = w.phi_minus.iter().enumerate().find(|(_, &v)| v >= a.n_minus()) {
        return Err(Error::InvalidWitness(format!("phi_minus[{k}] = {v} is outside the source minus side")));
    }
    if let Some((k, &v)) = w.phi_plus.iter().enumerate().find(|(_, &v)| v >= b.n_plus()) {
        return Err(Error::InvalidWitness(format!("phi_plus[{k}] = {v} is outside the target plus side")));
    }
    Ok(())
}

/// Whether `w` is a morphism from `a` to `b`.
pub fn check_morphism(a: &Relation, b: &Relation, w: &MorphismWitness) -> Result<bool> {
    validate(a, b, w)?;
    for (bi, &c) in w.phi_minus.iter().enumerate() {
        let brow = b.row(bi);
        if bits::ones(a.row(c)).any(|col| brow >> w.phi_plus[col] & 1 == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A relation with the invariants the shortcuts consult, computed once.
#[derive(Clone, Debug)]
pub struct Profiled {
    relation: Relation,
    delta: Delta,
    delta_dual: Delta,
    ladder: Option<usize>,
}

impl Profiled {
    pub fn new(relation: Relation) -> Self {
        let delta = dominating_number(&relation);
        let delta_dual = dual_dominating_number(&relation);
        let ladder = is_ladder(&relation);
        Profiled {
            relation,
            delta,
            delta_dual,
            ladder,
        }
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }

    pub fn delta_dual(&self) -> Delta {
        self.delta_dual
    }
}

/// Searches for a morphism from `a` to `b`. `Ok(None)` means none exists;
/// exceeding the node limit is [`Error::Inconclusive`].
pub fn find_morphism(a: &Relation, b: &Relation, cfg: &SolverConfig) -> Result<Option<MorphismWitness>> {
    if cfg.shortcuts_enabled {
        find_morphism_profiled(&Profiled::new(a.clone()), &Profiled::new(b.clone()), cfg)
    } else {
        search(a, b, cfg.node_limit)
    }
}

pub fn find_morphism_profiled(a: &Profiled, b: &Profiled, cfg: &SolverConfig) -> Result<Option<MorphismWitness>> {
    if cfg.shortcuts_enabled {
        if let Some(shortcut) = shortcut(a, b) {
            debug_assert!(shortcut
                .as_ref()
                .is_none_or(|w| check_morphism(&a.relation, &b.relation, w).unwrap_or(false)));
            return Ok(shortcut);
        }
    }
    search(&a.relation, &b.relation, cfg.node_limit)
}

pub fn exists_morphism(a: &Relation, b: &Relation) -> bool {
    find_morphism(a, b, &SolverConfig::default())
        .expect("unlimited search is always conclusive")
        .is_some()
}

/// Decides `a → b` when a shortcut applies: `Some(Some(w))` exists,
/// `Some(None)` impossible, `None` undecided.
fn shortcut(a: &Profiled, b: &Profiled) -> Option<Option<MorphismWitness>> {
    let (ra, rb) = (&a.relation, &b.relation);
    if b.delta == Delta::Finite(1) {
        let y0 = rb.columns().iter().position(|&c| c == mask(rb.n_minus()))?;
        return Some(Some(MorphismWitness {
            phi_minus: vec![0; rb.n_minus()],
            phi_plus: vec![y0; ra.n_plus()],
        }));
    }
    if a.delta.is_infinite() {
        let c0 = ra.rows().iter().position(|&r| r == 0)?;
        return Some(Some(MorphismWitness {
            phi_minus: vec![c0; rb.n_minus()],
            phi_plus: vec![0; ra.n_plus()],
        }));
    }
    if a.delta < b.delta || b.delta_dual < a.delta_dual {
        return Some(None);
    }
    if let (Some(n), Delta::Finite(k)) = (a.ladder, b.delta) {
        if k <= n {
            return Some(Some(ladder_witness(ra, rb)));
        }
    }
    None
}

/// A ladder maps onto any relation whose dominating number is at most its size:
/// spread the ladder's columns over a minimum dominating family of the target.
fn ladder_witness(ladder: &Relation, b: &Relation) -> MorphismWitness {
    let family = min_dominating_family(b).expect("finite dominating number");
    let fam = family.columns();
    let n = ladder.n_plus();
    let phi_plus: Vec<usize> = (0..n).map(|t| if t < fam.len() { fam[t] } else { fam[0] }).collect();
    let owner: Vec<usize> = (0..n)
        .map(|col| ladder.rows().iter().position(|&r| r >> col & 1 == 1).expect("ladder column"))
        .collect();
    let phi_minus = (0..b.n_minus())
        .map(|d| {
            let t = fam.iter().position(|&f| b.get(d, f)).expect("family dominates");
            owner[t]
        })
        .collect();
    MorphismWitness { phi_minus, phi_plus }
}

/// Complete backtracking search over `φ+`.
fn search(a: &Relation, b: &Relation, node_limit: Option<u64>) -> Result<Option<MorphismWitness>> {
    let a_cols = a.columns();
    let b_cols = b.columns();

    // Giving φ+(x) a value with a larger target column only removes constraints,
    // so only maximal target columns (one per twin class) are tried.
    let mut values: Vec<usize> = (0..b.n_plus())
        .filter(|&j| {
            let c = b_cols[j];
            !b_cols.iter().any(|&d| is_strict_subset(c, d)) && !b_cols[..j].contains(&c)
        })
        .collect();
    values.sort_by_key(|&j| std::cmp::Reverse(b_cols[j].count_ones()));

    // Likewise a source column whose neighborhood sits inside another's can copy
    // that column's value, so only maximal source columns are searched.
    let mut vars: Vec<usize> = (0..a.n_plus())
        .filter(|&j| {
            let c = a_cols[j];
            c != 0 && !a_cols.iter().any(|&d| is_strict_subset(c, d)) && !a_cols[..j].contains(&c)
        })
        .collect();
    vars.sort_by_key(|&j| std::cmp::Reverse(a_cols[j].count_ones()));

    let nb = b.n_minus();
    let mut search = Search {
        a_cols: &a_cols,
        b_cols: &b_cols,
        vars: &vars,
        values: &values,
        frames: vec![mask(a.n_minus()); nb * (vars.len() + 1)],
        nb,
        assignment: vec![usize::MAX; vars.len()],
        nodes: 0,
        node_limit,
    };
    if !search.run(0)? {
        return Ok(None);
    }

    let mut phi_plus = vec![values[0]; a.n_plus()];
    for (k, &v) in vars.iter().enumerate() {
        phi_plus[v] = search.assignment[k];
    }
    for j in 0..a.n_plus() {
        if a_cols[j] == 0 || vars.contains(&j) {
            continue;
        }
        let rep = vars
            .iter()
            .position(|&v| a_cols[j] & !a_cols[v] == 0)
            .expect("every column sits inside a maximal one");
        phi_plus[j] = search.assignment[rep];
    }
    let last = &search.frames[nb * vars.len()..];
    let phi_minus = last.iter().map(|&f| f.trailing_zeros() as usize).collect();
    let w = MorphismWitness { phi_minus, phi_plus };
    debug_assert!(check_morphism(a, b, &w).unwrap());
    Ok(Some(w))
}

struct Search<'a> {
    a_cols: &'a [u64],
    b_cols: &'a [u64],
    vars: &'a [usize],
    values: &'a [usize],
    /// Feasible source minus points per target minus point, one frame per depth.
    frames: Vec<u64>,
    nb: usize,
    assignment: Vec<usize>,
    nodes: u64,
    node_limit: Option<u64>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<bool> {
        if depth == self.vars.len() {
            return Ok(true);
        }
        let forbid = self.a_cols[self.vars[depth]];
        for &v in self.values {
            self.nodes += 1;
            if self.node_limit.is_some_and(|limit| self.nodes > limit) {
                return Err(Error::Inconclusive { nodes: self.nodes });
            }
            let related = self.b_cols[v];
            let (cur, next) = self.frames.split_at_mut(self.nb * (depth + 1));
            let cur = &cur[self.nb * depth..];
            let mut ok = true;
            for (bi, slot) in next[..self.nb].iter_mut().enumerate() {
                let f = if related >> bi & 1 == 1 { cur[bi] } else { cur[bi] & !forbid };
                if f == 0 {
                    ok = false;
                    break;
                }
                *slot = f;
            }
            if !ok {
                continue;
            }
            self.assignment[depth] = v;
            if self.run(depth + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Witness for `a → c` from witnesses `a → b` and `b → c`.
pub fn compose(w1: &MorphismWitness, w2: &MorphismWitness) -> Result<MorphismWitness> {
    // w1: a → b has |phi_minus| = |B-|; w2: b → c has |phi_plus| = |B+|.
    if let Some(&v) = w1.phi_plus.iter().find(|&&v| v >= w2.phi_plus.len()) {
        return Err(Error::ShapeMismatch(format!(
            "first witness sends a plus point to {v}, second witness covers {} plus points",
            w2.phi_plus.len()
        )));
    }
    if let Some(&v) = w2.phi_minus.iter().find(|&&v| v >= w1.phi_minus.len()) {
        return Err(Error::ShapeMismatch(format!(
            "second witness sends a minus point to {v}, first witness covers {} minus points",
            w1.phi_minus.len()
        )));
    }
    Ok(MorphismWitness {
        phi_minus: w2.phi_minus.iter().map(|&m| w1.phi_minus[m]).collect(),
        phi_plus: w1.phi_plus.iter().map(|&p| w2.phi_plus[p]).collect(),
    })
}

/// A morphism `a → b` read backwards is a morphism `dual(b) → dual(a)`.
pub fn transpose_witness(w: &MorphismWitness) -> MorphismWitness {
    MorphismWitness {
        phi_minus: w.phi_plus.clone(),
        phi_plus: w.phi_minus.clone(),
    }
}

/// Image of a dominating family of `a` under `φ+`; it dominates `b`.
pub fn dominating_family_pushforward(
    a: &Relation,
    b: &Relation,
    w: &MorphismWitness,
    family: &[usize],
) -> Result<DominatingFamily> {
    validate(a, b, w)?;
    let family = DominatingFamily::new(a, family.to_vec())?;
    let image = family.columns().iter().map(|&j| w.phi_plus[j]).collect();
    DominatingFamily::new(b, image)
}

/// Looks for a map of points, minus to minus and plus to plus, that both
/// preserves and reflects related pairs and is onto `B-`. When one exists the
/// returned witness is a right inverse on the minus side with the plus map.
/// `None` only means the shortcut does not apply.
pub fn homomorphism_shortcut(a: &Relation, b: &Relation) -> Option<MorphismWitness> {
    let mut psi_plus = vec![0usize; a.n_plus()];
    if !hom_dfs(a, b, 0, &mut psi_plus) {
        return None;
    }
    let pulled = pullback_rows(b, &psi_plus);
    let mut g = vec![usize::MAX; b.n_minus()];
    for r in 0..b.n_minus() {
        // The k-th target row with a given pattern takes the k-th source row with it.
        let rank = pulled[..r].iter().filter(|&&p| p == pulled[r]).count();
        g[r] = a
            .rows()
            .iter()
            .enumerate()
            .filter(|(_, &row)| row == pulled[r])
            .nth(rank)?
            .0;
    }
    let w = MorphismWitness {
        phi_minus: g,
        phi_plus: psi_plus,
    };
    debug_assert!(check_morphism(a, b, &w).unwrap());
    Some(w)
}

/// Row `r` of `b` read through `psi_plus`, as a bitset over the columns of the source.
fn pullback_rows(b: &Relation, psi_plus: &[usize]) -> Vec<u64> {
    b.rows()
        .iter()
        .map(|&row| {
            psi_plus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (y, &t)| acc | ((row >> t) & 1) << y)
        })
        .collect()
}

fn hom_dfs(a: &Relation, b: &Relation, depth: usize, psi_plus: &mut [usize]) -> bool {
    let assigned = mask(depth);
    let pulled = pullback_rows(b, psi_plus);
    // Every source row must match some target row on the assigned columns.
    let consistent = a
        .rows()
        .iter()
        .all(|&row| pulled.iter().any(|&p| (p ^ row) & assigned == 0));
    if !consistent {
        return false;
    }
    if depth == a.n_plus() {
        // Onto: each target pattern needs at least as many source rows carrying it.
        return pulled.iter().all(|&p| {
            let need = pulled.iter().filter(|&&q| q == p).count();
            a.rows().iter().filter(|&&row| row == p).count() >= need
        });
    }
    for t in 0..b.n_plus() {
        psi_plus[depth] = t;
        if hom_dfs(a, b, depth + 1, psi_plus) {
            return true;
        }
    }
    psi_plus[depth] = 0;
    false
}

/// A split of `C` into two induced pieces mapping onto the two summands of a
/// disjoint union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionSplit {
    pub first_minus: Vec<usize>,
    pub first_plus: Vec<usize>,
    pub second_minus: Vec<usize>,
    pub second_plus: Vec<usize>,
    pub first: Relation,
    pub second: Relation,
    /// Morphism from `first` to the first summand.
    pub first_witness: MorphismWitness,
    /// Morphism from `second` to the second summand.
    pub second_witness: MorphismWitness,
}

/// Given `w : c → b ⊕ b2`, splits `c` into induced pieces `A → b` and `A' → b2`.
///
/// `A-` is the image of `b`'s minus side, `A+` the plus points adjacent to it,
/// and `A'` takes the rest. Fails with [`Error::DegenerateSplit`] when a piece
/// would have an empty side, or when a minus point of `b2` lands on `A-` and no
/// isolated minus point of `A'` can stand in for it.
pub fn decompose_against_union(c: &Relation, b: &Relation, b2: &Relation, w: &MorphismWitness) -> Result<UnionSplit> {
    let union = b.disjoint_union(b2)?;
    if !check_morphism(c, &union, w)? {
        return Err(Error::InvalidWitness("not a morphism into the disjoint union".into()));
    }
    let nb = b.n_minus();
    let nbp = b.n_plus();
    let full_minus = mask(c.n_minus());
    let full_plus = mask(c.n_plus());

    let first_minus = bits::from_indices(w.phi_minus[..nb].iter().copied());
    let second_minus = full_minus & !first_minus;
    let first_plus = (0..c.n_plus())
        .filter(|&a| c.column(a) & first_minus != 0)
        .fold(0u64, |acc, a| acc | 1 << a);
    let second_plus = full_plus & !first_plus;
    for (what, set) in [
        ("first minus side", first_minus),
        ("first plus side", first_plus),
        ("second minus side", second_minus),
        ("second plus side", second_plus),
    ] {
        if set == 0 {
            return Err(Error::DegenerateSplit(format!("{what} is empty")));
        }
    }

    let fm: Vec<usize> = bits::ones(first_minus).collect();
    let fp: Vec<usize> = bits::ones(first_plus).collect();
    let sm: Vec<usize> = bits::ones(second_minus).collect();
    let sp: Vec<usize> = bits::ones(second_plus).collect();
    let pos = |list: &[usize], x: usize| list.iter().position(|&y| y == x).expect("member");

    let first_witness = MorphismWitness {
        phi_minus: w.phi_minus[..nb].iter().map(|&x| pos(&fm, x)).collect(),
        phi_plus: fp.iter().map(|&a| w.phi_plus[a]).collect(),
    };

    let isolated_second = sm.iter().copied().find(|&x| c.row(x) == 0);
    let mut second_image = 0u64;
    let mut psi_minus = Vec::with_capacity(b2.n_minus());
    for &x in &w.phi_minus[nb..] {
        let x = if first_minus >> x & 1 == 1 {
            // Shared points relate to nothing, so any isolated point substitutes.
            isolated_second.ok_or_else(|| {
                Error::DegenerateSplit(format!("minus point {x} serves both summands"))
            })?
        } else {
            x
        };
        second_image |= 1 << x;
        psi_minus.push(pos(&sm, x));
    }
    let psi_plus = sp
        .iter()
        .map(|&a| {
            if c.column(a) & second_image != 0 {
                w.phi_plus[a] - nbp
            } else {
                0
            }
        })
        .collect();
    let second_witness = MorphismWitness {
        phi_minus: psi_minus,
        phi_plus: psi_plus,
    };

    let first = c.restrict(first_minus, first_plus);
    let second = c.restrict(second_minus, second_plus);
    if !check_morphism(&first, b, &first_witness)? || !check_morphism(&second, b2, &second_witness)? {
        return Err(Error::InvalidWitness("split witnesses failed verification".into()));
    }
    Ok(UnionSplit {
        first_minus: fm,
        first_plus: fp,
        second_minus: sm,
        second_plus: sp,
        first,
        second,
        first_witness,
        second_witness,
    })
}
