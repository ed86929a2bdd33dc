//! The domino insertion maps `G_r : W_n → SSDT_r(n)`.
//!
//! Insertion of a signed entry `x` into a rank-`r` tableau `P`:
//!
//! 1. keep the core and every domino labeled below `|x|`;
//! 2. add a horizontal domino labeled `|x|` at the end of the first row when
//!    `x > 0`, or a vertical one at the bottom of the first column when
//!    `x < 0`;
//! 3. visit the remaining dominos in increasing order. A domino that misses
//!    the squares occupied so far stays put. One that lies entirely inside
//!    them is bumped: a horizontal domino to the end of the next row, a
//!    vertical one to the bottom of the next column. One that overlaps in a
//!    single square pivots about its free square into the other orientation.
//!
//! The recording tableau `Q` receives the two new squares with the step
//! number as label.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{Domino, Shape, Square};
use crate::tableaux::{DominoTableau, TableauPair};
use crate::wgroup::SignedPermutation;

/// The partial pair `G_r^k(w)` after `k` insertion steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionState {
    pub step: usize,
    pub pair: TableauPair,
}

/// Core plus labeled dominos; the working form of a tableau.
#[derive(Clone, Debug)]
struct Filling {
    core: Vec<Square>,
    dominos: BTreeMap<u32, Domino>,
}

impl Filling {
    fn new(rank: usize) -> Self {
        Self { core: Shape::staircase(rank).squares().collect(), dominos: BTreeMap::new() }
    }

    fn from_tableau(t: &DominoTableau) -> Result<Self> {
        Ok(Self { core: t.core_squares().into_iter().collect(), dominos: t.dominos()? })
    }

    fn occupied_below(&self, label: u32) -> BTreeSet<Square> {
        self.core
            .iter()
            .copied()
            .chain(self.dominos.range(..label).flat_map(|(_, d)| d.squares()))
            .collect()
    }

    fn to_tableau(&self, rank: usize) -> DominoTableau {
        DominoTableau::from_parts(rank, self.core.iter().copied(), &self.dominos)
            .expect("insertion keeps a Young diagram")
    }
}

fn row_len(occ: &BTreeSet<Square>, row: usize) -> usize {
    (1..).take_while(|&j| occ.contains(&Square::new(row, j))).count()
}

fn col_len(occ: &BTreeSet<Square>, col: usize) -> usize {
    (1..).take_while(|&i| occ.contains(&Square::new(i, col))).count()
}

/// Inserts `x` into `p`, returning the two squares added to the shape.
fn insert_entry(p: &mut Filling, x: i32) -> [Square; 2] {
    let a = x.unsigned_abs();
    let before: BTreeSet<Square> = p.occupied_below(u32::MAX);
    let mut occ = p.occupied_below(a);
    let new = if x > 0 {
        Domino::horizontal(1, row_len(&occ, 1) + 1)
    } else {
        Domino::vertical(col_len(&occ, 1) + 1, 1)
    };
    let larger: Vec<(u32, Domino)> = p.dominos.range(a + 1..).map(|(&k, &d)| (k, d)).collect();
    p.dominos.insert(a, new);
    occ.extend(new.squares());
    for (k, d) in larger {
        let [s1, s2] = d.squares();
        let moved = match (occ.contains(&s1), occ.contains(&s2)) {
            (false, false) => d,
            (true, true) if d.is_horizontal() => {
                let row = s1.row + 1;
                Domino::horizontal(row, row_len(&occ, row) + 1)
            }
            (true, true) => {
                let col = s1.col + 1;
                Domino::vertical(col_len(&occ, col) + 1, col)
            }
            (true, false) if d.is_horizontal() => Domino::vertical(s2.row, s2.col),
            (true, false) => Domino::horizontal(s2.row, s2.col),
            (false, true) => unreachable!("occupied squares form a diagram"),
        };
        p.dominos.insert(k, moved);
        occ.extend(moved.squares());
    }
    let after = p.occupied_below(u32::MAX);
    let added: Vec<Square> = after.difference(&before).copied().collect();
    [added[0], added[1]]
}

/// `G_r^k(w)` for `k = 0, …, n`.
pub fn insert_steps(w: &SignedPermutation, rank: usize) -> Vec<InsertionState> {
    let mut p = Filling::new(rank);
    let mut q = Filling::new(rank);
    let mut states = Vec::with_capacity(w.rank() + 1);
    let snapshot = |step: usize, p: &Filling, q: &Filling| InsertionState {
        step,
        pair: TableauPair { left: p.to_tableau(rank), right: q.to_tableau(rank) },
    };
    states.push(snapshot(0, &p, &q));
    for (k, &x) in w.entries().iter().enumerate() {
        let [a, b] = insert_entry(&mut p, x);
        q.dominos.insert(k as u32 + 1, Domino::new(a, b).expect("new squares form a domino"));
        states.push(snapshot(k + 1, &p, &q));
    }
    states
}

/// `G_r(w) = (P_r(w), Q_r(w))`.
pub fn insert(w: &SignedPermutation, rank: usize) -> TableauPair {
    let mut p = Filling::new(rank);
    let mut q = Filling::new(rank);
    for (k, &x) in w.entries().iter().enumerate() {
        let [a, b] = insert_entry(&mut p, x);
        q.dominos.insert(k as u32 + 1, Domino::new(a, b).expect("new squares form a domino"));
    }
    TableauPair { left: p.to_tableau(rank), right: q.to_tableau(rank) }
}

/// Undoes one insertion: removes the squares `hole` from the shape of `p`
/// and returns the signed entry that was inserted.
fn extract_entry(p: &mut Filling, hole: Domino) -> Result<i32> {
    let mut hole: BTreeSet<Square> = hole.squares().into();
    let labels: Vec<u32> = p.dominos.keys().rev().copied().collect();
    let bad = |msg: &str| Error::InvalidPair(msg.to_string());
    for l in labels {
        let moved = p.dominos[&l];
        let inter: Vec<Square> = moved.squares().into_iter().filter(|s| hole.contains(s)).collect();
        match inter.len() {
            0 => {}
            2 => {
                let [s1, _] = moved.squares();
                if moved.is_horizontal() && s1.row == 1 {
                    p.dominos.remove(&l);
                    return Ok(l as i32);
                }
                if moved.is_vertical() && s1.col == 1 {
                    p.dominos.remove(&l);
                    return Ok(-(l as i32));
                }
                let occ = p.occupied_below(l);
                let old = if moved.is_horizontal() {
                    let len = row_len(&occ, s1.row - 1);
                    if len < 2 {
                        return Err(bad("reverse bump leaves the diagram"));
                    }
                    Domino::horizontal(s1.row - 1, len - 1)
                } else {
                    let len = col_len(&occ, s1.col - 1);
                    if len < 2 {
                        return Err(bad("reverse bump leaves the diagram"));
                    }
                    Domino::vertical(len - 1, s1.col - 1)
                };
                hole = old.squares().into();
                p.dominos.insert(l, old);
            }
            _ => {
                let new_sq = inter[0];
                let [s1, s2] = moved.squares();
                let (old, pivot) = if moved.is_vertical() {
                    if new_sq != s2 || s1.col < 2 {
                        return Err(bad("inconsistent pivot"));
                    }
                    let pivot = Square::new(s1.row, s1.col - 1);
                    (Domino::horizontal(s1.row, s1.col - 1), pivot)
                } else {
                    if new_sq != s2 || s1.row < 2 {
                        return Err(bad("inconsistent pivot"));
                    }
                    let pivot = Square::new(s1.row - 1, s1.col);
                    (Domino::vertical(s1.row - 1, s1.col), pivot)
                };
                hole.remove(&new_sq);
                hole.insert(pivot);
                p.dominos.insert(l, old);
            }
        }
    }
    Err(bad("no inserted domino found"))
}

/// Inverse of [`insert`].
pub fn uninsert(pair: &TableauPair) -> Result<SignedPermutation> {
    pair.validate()?;
    let rank = pair.rank();
    let mut p = Filling::from_tableau(&pair.left)?;
    let mut q = Filling::from_tableau(&pair.right)?;
    let n = q.dominos.len();
    let mut entries = vec![0; n];
    for k in (1..=n as u32).rev() {
        let hole = q.dominos.remove(&k).expect("labels are 1..n");
        entries[k as usize - 1] = extract_entry(&mut p, hole)?;
    }
    let w = SignedPermutation::new(entries)?;
    if insert(&w, rank) != *pair {
        return Err(Error::InvalidPair("reverse insertion does not reproduce the pair".into()));
    }
    Ok(w)
}

/// Robinson–Schensted row insertion of `(key, record)` pairs; returns the
/// insertion and recording tableaux as rows.
fn robinson_schensted(seq: &[(u32, u32)]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut p: Vec<Vec<u32>> = Vec::new();
    let mut q: Vec<Vec<u32>> = Vec::new();
    for &(key, rec) in seq {
        let mut x = key;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![rec]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(pos) => {
                    std::mem::swap(&mut p[row][pos], &mut x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(rec);
                    break;
                }
            }
        }
    }
    (p, q)
}

/// The bitableaux model of `G_r` for `r ≥ n - 1`: ordinary Robinson–Schensted
/// on the positive entries, drawn as horizontal dominos against the top rows
/// of the core, and on the absolute values of the negative entries, drawn as
/// vertical dominos against its left columns (conjugated).
///
/// `rank` must be at least `n - 1`.
pub fn asymptotic_bitableaux(w: &SignedPermutation, rank: usize) -> Result<TableauPair> {
    let n = w.rank();
    if rank + 1 < n {
        return Err(Error::RankTooSmall { rank, ratio: n as u32 });
    }
    let steps = w.entries().iter().enumerate().map(|(k, &x)| (x, k as u32 + 1));
    let pos: Vec<(u32, u32)> = steps.clone().filter(|&(x, _)| x > 0).map(|(x, k)| (x as u32, k)).collect();
    let neg: Vec<(u32, u32)> = steps.filter(|&(x, _)| x < 0).map(|(x, k)| (x.unsigned_abs(), k)).collect();
    let (pp, pq) = robinson_schensted(&pos);
    let (np, nq) = robinson_schensted(&neg);
    let embed = |top: &[Vec<u32>], left: &[Vec<u32>]| -> Result<DominoTableau> {
        let mut ds = BTreeMap::new();
        for (i, row) in top.iter().enumerate() {
            let r = i + 1;
            let start = rank + 1 - r.min(rank + 1);
            for (j, &k) in row.iter().enumerate() {
                ds.insert(k, Domino::horizontal(r, start + 2 * j + 1));
            }
        }
        for (j, col) in left.iter().enumerate() {
            let c = j + 1;
            let start = rank + 1 - c.min(rank + 1);
            for (i, &k) in col.iter().enumerate() {
                ds.insert(k, Domino::vertical(start + 2 * i + 1, c));
            }
        }
        DominoTableau::from_parts(rank, Shape::staircase(rank).squares(), &ds)
    };
    TableauPair::new(embed(&pp, &np)?, embed(&pq, &nq)?)
}

/// The smallest `r` for which `G_r(w)` is split.
pub fn split_rank(w: &SignedPermutation) -> usize {
    (0..)
        .find(|&r| insert(w, r).is_split())
        .expect("G_r(w) is split for r ≥ n - 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgroup::enumerate;
    use std::collections::HashSet;

    fn w() -> SignedPermutation {
        "4 1 -3 -2".parse().unwrap()
    }

    fn pair(rank: usize, p: Vec<Vec<u32>>, q: Vec<Vec<u32>>) -> TableauPair {
        TableauPair::new(DominoTableau::from_rows(rank, p), DominoTableau::from_rows(rank, q)).unwrap()
    }

    pub(crate) fn printed(rank: usize) -> TableauPair {
        match rank {
            0 => pair(0, vec![vec![1, 1, 4], vec![2, 3, 4], vec![2, 3]], vec![vec![1, 1, 4], vec![2, 2, 4], vec![3, 3]]),
            1 => pair(
                1,
                vec![vec![0, 1, 1], vec![2, 3, 4], vec![2, 3, 4]],
                vec![vec![0, 1, 1], vec![2, 2, 4], vec![3, 3, 4]],
            ),
            2 => pair(
                2,
                vec![vec![0, 0, 1, 1], vec![0, 3, 4], vec![2, 3, 4], vec![2]],
                vec![vec![0, 0, 1, 1], vec![0, 2, 2], vec![3, 4, 4], vec![3]],
            ),
            3 => pair(
                3,
                vec![vec![0, 0, 0, 1, 1], vec![0, 0, 4, 4], vec![0, 3], vec![2, 3], vec![2]],
                vec![vec![0, 0, 0, 1, 1], vec![0, 0, 2, 2], vec![0, 4], vec![3, 4], vec![3]],
            ),
            _ => unreachable!(),
        }
    }

    #[test]
    fn printed_pairs() {
        for r in 0..=3 {
            assert_eq!(insert(&w(), r), printed(r), "rank {r}");
        }
    }

    #[test]
    fn uninsert_examples() {
        assert_eq!(uninsert(&printed(2)).unwrap(), w());
        let empty = SignedPermutation::new(vec![]).unwrap();
        assert_eq!(uninsert(&insert(&empty, 2)).unwrap(), empty);
        for x in enumerate(4) {
            assert_eq!(uninsert(&insert(&x, 0)).unwrap(), x);
        }
    }

    #[test]
    fn uninsert_rejects_mismatched_pairs() {
        let p = printed(2);
        let bad = TableauPair { left: p.left.clone(), right: printed(3).right };
        assert!(uninsert(&bad).is_err());
    }

    #[test]
    fn steps_end_in_full_insertion() {
        let states = insert_steps(&w(), 2);
        assert_eq!(states.len(), 5);
        assert_eq!(states[4].pair, insert(&w(), 2));
        assert_eq!(states[0].pair.n(), 0);
        for s in &states {
            s.pair.left.validate_filling().unwrap();
            s.pair.right.validate().unwrap();
        }
    }

    #[test]
    fn bitableaux_agree_with_insertion() {
        for n in 1..=4 {
            for x in enumerate(n) {
                for r in n.saturating_sub(1)..=n + 1 {
                    assert_eq!(asymptotic_bitableaux(&x, r).unwrap(), insert(&x, r), "{x:?} r={r}");
                }
            }
        }
        let id = SignedPermutation::identity(3);
        let g = asymptotic_bitableaux(&id, 2).unwrap();
        assert_eq!(g.left.rows()[0], vec![0, 0, 1, 1, 2, 2, 3, 3]);
        assert_eq!(g.right.rows()[0], vec![0, 0, 1, 1, 2, 2, 3, 3]);
        let neg: SignedPermutation = "-1".parse().unwrap();
        assert_eq!(asymptotic_bitableaux(&neg, 0).unwrap().right.rows(), &[vec![1], vec![1]]);
    }

    #[test]
    fn split_rank_examples() {
        assert_eq!(split_rank(&w()), 3);
        for n in 2..=5 {
            assert_eq!(split_rank(&SignedPermutation::identity(n)), 0);
        }
        for x in enumerate(5) {
            let s = split_rank(&x);
            assert!(s < 5);
            assert_eq!(s == 4, x.is_nonsplit(), "{x:?}");
        }
    }

    #[test]
    fn insertion_is_injective_and_valid() {
        for n in 0..=4 {
            for r in 0..=n {
                let mut seen = HashSet::new();
                for x in enumerate(n) {
                    let g = insert(&x, r);
                    g.validate().unwrap();
                    assert!(seen.insert(g));
                }
            }
        }
    }

    #[test]
    fn tau_descent_lemma_on_partial_states() {
        // D(|w(j)|, P^k) horizontal ⇔ D(j, Q^k) horizontal ⇔ w(j) > 0, for j ≤ k ≤ r+1
        for n in 1..=4 {
            for x in enumerate(n) {
                for r in 0..n {
                    for st in insert_steps(&x, r).iter().take(r + 2).skip(1) {
                        let pd = st.pair.left.dominos().unwrap();
                        let qd = st.pair.right.dominos().unwrap();
                        for j in 1..=st.step {
                            let a = pd[&x.at(j).unsigned_abs()].is_horizontal();
                            let b = qd[&(j as u32)].is_horizontal();
                            assert_eq!(a, b);
                            assert_eq!(b, x.at(j) > 0);
                        }
                    }
                }
            }
        }
    }
}
