//! Cycles in domino tableaux and the moving-through map.
//!
//! A choice of fixed squares (all squares `s_ij` with `i + j` of a given
//! parity) puts exactly one fixed square in every domino. Moving a domino
//! `D(k)` keeps its fixed square `F = s_ij` and swings the other square to a
//! neighbour of `F`, according to the label `T(x)` at a diagonal neighbour
//! (`0` for core squares and for row or column 0, `∞` outside the diagram):
//!
//! | `D(k)`            | condition            | `D'(k)`              |
//! |-------------------|----------------------|----------------------|
//! | `{F, s_i+1,j}`    | `k > T(s_i-1,j+1)`   | `{F, s_i,j+1}`       |
//! |                   | otherwise            | `{s_i-1,j, F}`       |
//! | `{F, s_i,j+1}`    | `k > T(s_i+1,j-1)`   | `{F, s_i+1,j}`       |
//! |                   | otherwise            | `{s_i,j-1, F}`       |
//! | `{s_i-1,j, F}`    | `k < T(s_i+1,j-1)`   | `{s_i,j-1, F}`       |
//! |                   | otherwise            | `{F, s_i+1,j}`       |
//! | `{s_i,j-1, F}`    | `k < T(s_i-1,j+1)`   | `{s_i-1,j, F}`       |
//! |                   | otherwise            | `{F, s_i,j+1}`       |
//!
//! Labels whose old and new dominos meet are joined into one cycle. Moving
//! through a set of cycles replaces each `D(k)` by `D'(k)` simultaneously;
//! core squares that get covered become part of a domino, and vacated squares
//! enclosed by the rest of the diagram join the core.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{diagonal, Domino, Shape, Square};
use crate::tableaux::{DominoTableau, TableauPair};

/// Which parity of `i + j` marks the fixed squares, relative to the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Fixed squares have `i + j` of parity opposite to `r`.
    Regular,
    /// Fixed squares have `i + j` of the same parity as `r`.
    Opposite,
}

impl Convention {
    /// Squares with `(i + j) % 2` equal to the returned value are fixed.
    pub fn fixed_parity(self, rank: usize) -> usize {
        match self {
            Convention::Regular => (rank + 1) % 2,
            Convention::Opposite => rank % 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleKind {
    Closed,
    CoreOpen,
    NoncoreOpen,
}

/// A cycle: a set of labels and its effect on the shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    pub labels: Vec<u32>,
    pub kind: CycleKind,
    /// Squares gained by the diagram when moving through this cycle alone.
    #[serde(skip)]
    added: Vec<Square>,
    /// Squares lost by the diagram when moving through this cycle alone.
    #[serde(skip)]
    removed: Vec<Square>,
}

impl Cycle {
    pub fn is_open(&self) -> bool {
        self.kind != CycleKind::Closed
    }

    pub fn is_core(&self) -> bool {
        self.kind == CycleKind::CoreOpen
    }

    pub fn is_noncore(&self) -> bool {
        self.kind == CycleKind::NoncoreOpen
    }
}

/// The label ordering used by the moving rule.
fn weight(t: &DominoTableau, row: usize, col: usize) -> u64 {
    if row == 0 || col == 0 {
        return 0;
    }
    t.get(Square::new(row, col)).map_or(u64::MAX, u64::from)
}

fn is_fixed(s: Square, parity: usize) -> bool {
    (s.row + s.col) % 2 == parity
}

/// `D'(k, T)` for the domino `d` labeled `k`.
fn moved_domino(t: &DominoTableau, k: u32, d: Domino, parity: usize) -> Domino {
    let k = u64::from(k);
    let [a, b] = d.squares();
    let (f, v) = if is_fixed(a, parity) { (a, b) } else { (b, a) };
    let (i, j) = (f.row, f.col);
    let up = |i: usize| i.saturating_sub(1);
    if v.row == i + 1 {
        if k > weight(t, up(i), j + 1) {
            Domino::horizontal(i, j)
        } else {
            Domino::vertical(i - 1, j)
        }
    } else if v.col == j + 1 {
        if k > weight(t, i + 1, up(j)) {
            Domino::vertical(i, j)
        } else {
            Domino::horizontal(i, j - 1)
        }
    } else if v.row + 1 == i {
        if k < weight(t, i + 1, up(j)) {
            Domino::horizontal(i, j - 1)
        } else {
            Domino::vertical(i, j)
        }
    } else if k < weight(t, up(i), j + 1) {
        Domino::vertical(i - 1, j)
    } else {
        Domino::horizontal(i, j)
    }
}

fn occupied(t: &DominoTableau) -> BTreeSet<Square> {
    t.cells().into_keys().collect()
}

/// Squares of the boundary diagonal that no domino reaches behave like
/// empty core cycles: once every other core cycle has been moved, they are
/// added to (raising the rank) or dropped from (lowering it) the core.
fn complete_core(cells: &mut BTreeMap<Square, u32>, rank: usize, parity: usize) {
    let core: BTreeSet<Square> = cells.iter().filter(|&(_, &x)| x == 0).map(|(&s, _)| s).collect();
    if parity == (rank + 1) % 2 {
        let missing: Vec<Square> = diagonal(rank + 1).into_iter().filter(|s| !cells.contains_key(s)).collect();
        let mut grown = core;
        grown.extend(missing.iter().copied());
        if !missing.is_empty() && grown == Shape::staircase(rank + 1).squares().collect() {
            cells.extend(missing.into_iter().map(|s| (s, 0)));
        }
    } else if rank > 0 {
        let loose: Vec<Square> = diagonal(rank)
            .into_iter()
            .filter(|s| {
                cells.get(s) == Some(&0)
                    && !cells.contains_key(&Square::new(s.row, s.col + 1))
                    && !cells.contains_key(&Square::new(s.row + 1, s.col))
            })
            .collect();
        let mut shrunk = core;
        for s in &loose {
            shrunk.remove(s);
        }
        if !loose.is_empty() && shrunk == Shape::staircase(rank - 1).squares().collect() {
            for s in loose {
                cells.remove(&s);
            }
        }
    }
}

/// Moves through the labels in `labels`, which must be a union of cycles
/// for the given fixed-square parity.
pub fn move_through_parity(t: &DominoTableau, labels: &BTreeSet<u32>, parity: usize) -> Result<DominoTableau> {
    if labels.is_empty() {
        return Ok(t.clone());
    }
    let ds = t.dominos()?;
    let mut cells = t.cells();
    let not_union = || Error::NotUnionOfCycles(labels.iter().copied().collect());
    let mut vacated = BTreeSet::new();
    for k in labels {
        let d = ds.get(k).ok_or_else(not_union)?;
        for s in d.squares() {
            cells.remove(&s);
            vacated.insert(s);
        }
    }
    for &k in labels {
        let d = moved_domino(t, k, ds[&k], parity);
        for s in d.squares() {
            match cells.get(&s) {
                None | Some(0) => {
                    cells.insert(s, k);
                    vacated.remove(&s);
                }
                Some(_) => return Err(not_union()),
            }
        }
    }
    let enclosed: Vec<Square> = vacated
        .into_iter()
        .filter(|v| cells.keys().any(|s| s.row >= v.row && s.col >= v.col))
        .collect();
    for v in enclosed {
        cells.insert(v, 0);
    }
    complete_core(&mut cells, t.rank(), parity);
    let core: BTreeSet<Square> = cells.iter().filter(|&(_, &x)| x == 0).map(|(&s, _)| s).collect();
    let core = Shape::from_squares(&core).ok_or_else(not_union)?;
    let rank = core.staircase_rank().unwrap_or(t.rank());
    // label order is not policed here: the rule is defined for any filling
    let out = DominoTableau::from_cells(rank, &cells).map_err(|_| not_union())?;
    Ok(out)
}

/// The cycle partition for a fixed-square parity, sorted by smallest label.
pub fn cycles_parity(t: &DominoTableau, parity: usize) -> Result<Vec<Cycle>> {
    let ds = t.dominos()?;
    let labels: Vec<u32> = ds.keys().copied().collect();
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (&k, &d) in &ds {
        for s in moved_domino(t, k, d, parity).squares() {
            if let Some(m) = t.get(s).filter(|&m| m != 0 && m != k) {
                let (a, b) = (find(&mut parent, index[&k]), find(&mut parent, index[&m]));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (i, &k) in labels.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(k);
    }
    let before = occupied(t);
    let mut out: Vec<Cycle> = groups
        .into_values()
        .map(|labels| {
            let set: BTreeSet<u32> = labels.iter().copied().collect();
            let after = occupied(&move_through_parity(t, &set, parity)?);
            let added: Vec<Square> = after.difference(&before).copied().collect();
            let removed: Vec<Square> = before.difference(&after).copied().collect();
            let kind = if added.is_empty() && removed.is_empty() {
                CycleKind::Closed
            } else if added.len() != removed.len() {
                CycleKind::CoreOpen
            } else {
                CycleKind::NoncoreOpen
            };
            Ok(Cycle { labels, kind, added, removed })
        })
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Regular or opposite cycles of `T`, each classified as closed, core open or
/// non-core open.
pub fn cycle_partition(t: &DominoTableau, conv: Convention) -> Result<Vec<Cycle>> {
    cycles_parity(t, conv.fixed_parity(t.rank()))
}

/// `MT(T, U)` (or `MT^op`) for a union `U` of cycles given by its labels.
pub fn move_through(t: &DominoTableau, labels: &BTreeSet<u32>, conv: Convention) -> Result<DominoTableau> {
    move_through_parity(t, labels, conv.fixed_parity(t.rank()))
}

/// Moves through a list of cycles.
pub fn move_through_cycles<'a>(
    t: &DominoTableau,
    cycles: impl IntoIterator<Item = &'a Cycle>,
    conv: Convention,
) -> Result<DominoTableau> {
    let labels = cycles.into_iter().flat_map(|c| c.labels.iter().copied()).collect();
    move_through(t, &labels, conv)
}

pub fn core_cycles(t: &DominoTableau, conv: Convention) -> Result<Vec<Cycle>> {
    Ok(cycle_partition(t, conv)?.into_iter().filter(Cycle::is_core).collect())
}

pub fn noncore_cycles(t: &DominoTableau, conv: Convention) -> Result<Vec<Cycle>> {
    Ok(cycle_partition(t, conv)?.into_iter().filter(Cycle::is_noncore).collect())
}

/// `γ(S,T)` and `γ(T,S)` (or the opposite `υ` variants).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedCyclePair {
    pub in_left: Vec<Cycle>,
    pub in_right: Vec<Cycle>,
}

impl ExtendedCyclePair {
    pub fn left_labels(&self) -> BTreeSet<u32> {
        self.in_left.iter().flat_map(|c| c.labels.iter().copied()).collect()
    }

    pub fn right_labels(&self) -> BTreeSet<u32> {
        self.in_right.iter().flat_map(|c| c.labels.iter().copied()).collect()
    }
}

fn shape_after(t: &DominoTableau, cycles: &[Cycle], chosen: &BTreeSet<usize>, conv: Convention) -> Result<BTreeSet<Square>> {
    let moved = move_through_cycles(t, chosen.iter().map(|&i| &cycles[i]), conv)?;
    Ok(occupied(&moved))
}

/// Extended open cycles through the core cycles of a same-shape pair.
///
/// Starts from the core open cycles on both sides and, while the moved shapes
/// differ, adjoins the non-core open cycle responsible for the first
/// mismatched square.
pub fn extended_cycles(s: &DominoTableau, t: &DominoTableau, conv: Convention) -> Result<ExtendedCyclePair> {
    if s.shape() != t.shape() || s.rank() != t.rank() {
        return Err(Error::InvalidPair("extended cycles need a same-shape pair".into()));
    }
    let cs = cycle_partition(s, conv)?;
    let ct = cycle_partition(t, conv)?;
    let mut us: BTreeSet<usize> = (0..cs.len()).filter(|&i| cs[i].is_core()).collect();
    let mut ut: BTreeSet<usize> = (0..ct.len()).filter(|&i| ct[i].is_core()).collect();
    loop {
        let a = shape_after(s, &cs, &us, conv)?;
        let b = shape_after(t, &ct, &ut, conv)?;
        let Some(&x) = a.symmetric_difference(&b).next() else {
            break;
        };
        // a square present on one side only is either gained there, to be
        // matched by a gain on the other side, or kept there while lost on
        // the other side
        let (gain_side, lose_side, gain_used, lose_used) = if a.contains(&x) {
            (&ct, &cs, &mut ut, &mut us)
        } else {
            (&cs, &ct, &mut us, &mut ut)
        };
        let pick_gain = (0..gain_side.len())
            .find(|i| !gain_used.contains(i) && gain_side[*i].is_noncore() && gain_side[*i].added.contains(&x));
        let pick_lose = (0..lose_side.len())
            .find(|i| !lose_used.contains(i) && lose_side[*i].is_noncore() && lose_side[*i].removed.contains(&x));
        match (pick_gain, pick_lose) {
            (Some(i), _) => {
                gain_used.insert(i);
            }
            (None, Some(i)) => {
                lose_used.insert(i);
            }
            (None, None) => {
                return Err(Error::InvalidPair(format!("no non-core cycle resolves square {x}")));
            }
        }
    }
    Ok(ExtendedCyclePair {
        in_left: us.into_iter().map(|i| cs[i].clone()).collect(),
        in_right: ut.into_iter().map(|i| ct[i].clone()).collect(),
    })
}

/// `Γ_r`: moves a rank-`r` pair through its extended cycles, giving rank `r+1`.
pub fn gamma(pair: &TableauPair) -> Result<TableauPair> {
    let ext = extended_cycles(&pair.left, &pair.right, Convention::Regular)?;
    TableauPair::new(
        move_through(&pair.left, &ext.left_labels(), Convention::Regular)?,
        move_through(&pair.right, &ext.right_labels(), Convention::Regular)?,
    )
}

/// `Υ_r`: the inverse of `Γ_r`, taking a rank-`(r+1)` pair to rank `r`
/// through opposite extended cycles.
pub fn upsilon(pair: &TableauPair) -> Result<TableauPair> {
    if pair.rank() == 0 {
        return Err(Error::InvalidPair("Υ needs a pair of rank at least 1".into()));
    }
    let ext = extended_cycles(&pair.left, &pair.right, Convention::Opposite)?;
    TableauPair::new(
        move_through(&pair.left, &ext.left_labels(), Convention::Opposite)?,
        move_through(&pair.right, &ext.right_labels(), Convention::Opposite)?,
    )
}

/// Every subset of `cycles`, as label sets.
pub fn subsets(cycles: &[Cycle]) -> Vec<BTreeSet<u32>> {
    (0u32..1 << cycles.len())
        .map(|mask| {
            cycles
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, c)| c.labels.iter().copied())
                .collect()
        })
        .collect()
}
