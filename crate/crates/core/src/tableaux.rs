//! Standard domino tableaux of rank `r`.
//!
//! A tableau is stored as a row-major grid of labels. Core squares carry the
//! label `0`; every other label occupies exactly two adjacent squares.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{diagonal, Domino, Shape, Square};
use crate::wgroup::{DescentSet, Generator};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominoTableau {
    rank: usize,
    rows: Vec<Vec<u32>>,
}

impl DominoTableau {
    /// Wraps a grid without checking the tableau conditions; see
    /// [`DominoTableau::validate`].
    pub fn from_rows(rank: usize, rows: Vec<Vec<u32>>) -> Self {
        Self { rank, rows }
    }

    /// The tableau consisting of the core `λ_r` only.
    pub fn core_only(rank: usize) -> Self {
        let rows = Shape::staircase(rank).rows().iter().map(|&l| vec![0; l]).collect();
        Self { rank, rows }
    }

    /// Builds a tableau from its core squares and labeled dominos. Fails if the
    /// occupied squares do not form a Young diagram or overlap.
    pub fn from_parts(
        rank: usize,
        core: impl IntoIterator<Item = Square>,
        dominos: &BTreeMap<u32, Domino>,
    ) -> Result<Self> {
        let mut cells: BTreeMap<Square, u32> = core.into_iter().map(|s| (s, 0)).collect();
        for (&k, d) in dominos {
            for s in d.squares() {
                if cells.insert(s, k).is_some() {
                    return Err(Error::InvalidTableau { at: s, reason: "overlapping dominos".into() });
                }
            }
        }
        Self::from_cells(rank, &cells)
    }

    pub(crate) fn from_cells(rank: usize, cells: &BTreeMap<Square, u32>) -> Result<Self> {
        let set: BTreeSet<Square> = cells.keys().copied().collect();
        let shape = Shape::from_squares(&set)
            .ok_or_else(|| Error::MalformedTableau("occupied squares are not a Young diagram".into()))?;
        let rows = shape
            .rows()
            .iter()
            .enumerate()
            .map(|(i, &l)| (1..=l).map(|j| cells[&Square::new(i + 1, j)]).collect())
            .collect();
        Ok(Self { rank, rows })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.rows.iter().map(Vec::len).collect()).expect("rows weakly decrease")
    }

    /// Number of dominos.
    pub fn n(&self) -> usize {
        self.rows.iter().flatten().filter(|&&x| x != 0).count() / 2
    }

    /// Label at a square, `None` outside the diagram.
    pub fn get(&self, s: Square) -> Option<u32> {
        if s.row == 0 || s.col == 0 {
            return None;
        }
        self.rows.get(s.row - 1)?.get(s.col - 1).copied()
    }

    pub(crate) fn cells(&self) -> BTreeMap<Square, u32> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &x)| (Square::new(i + 1, j + 1), x)))
            .collect()
    }

    pub fn core_squares(&self) -> BTreeSet<Square> {
        self.cells().into_iter().filter(|&(_, x)| x == 0).map(|(s, _)| s).collect()
    }

    /// Whether the 0-labeled squares form the staircase of this tableau's rank.
    pub fn has_staircase_core(&self) -> bool {
        let core = self.core_squares();
        Shape::from_squares(&core).is_some_and(|c| c == Shape::staircase(self.rank))
    }

    /// `D(k, T)` for every label, pairing equal adjacent labels.
    pub fn dominos(&self) -> Result<BTreeMap<u32, Domino>> {
        let mut seen: BTreeMap<u32, Vec<Square>> = BTreeMap::new();
        for (s, k) in self.cells() {
            if k != 0 {
                seen.entry(k).or_default().push(s);
            }
        }
        seen.into_iter()
            .map(|(k, sq)| match sq.as_slice() {
                [a, b] => Domino::new(*a, *b).map(|d| (k, d)).ok_or(Error::InvalidTableau {
                    at: *a,
                    reason: format!("label {k} is not on adjacent squares"),
                }),
                _ => Err(Error::InvalidTableau {
                    at: sq[0],
                    reason: format!("label {k} occurs {} times", sq.len()),
                }),
            })
            .collect()
    }

    /// `D(k, T)`.
    pub fn domino(&self, k: u32) -> Option<Domino> {
        let mut it = self.cells().into_iter().filter(|&(_, x)| x == k).map(|(s, _)| s);
        let (a, b) = (it.next()?, it.next()?);
        Domino::new(a, b)
    }

    /// Checks every condition of a standard domino tableau of rank `r`,
    /// reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        self.validate_filling()?;
        if !self.has_staircase_core() {
            return Err(Error::MalformedTableau(format!(
                "0-labeled squares do not form the staircase of rank {}",
                self.rank
            )));
        }
        let labels: Vec<u32> = self.dominos()?.into_keys().collect();
        if labels != (1..=labels.len() as u32).collect::<Vec<_>>() {
            return Err(Error::MalformedTableau(format!("labels {labels:?} are not 1..n")));
        }
        Ok(())
    }

    /// The filling conditions only: a Young diagram, 0-squares forming a
    /// diagram, labels on dominos, and labels increasing along rows and
    /// columns. Any set of distinct positive labels is allowed.
    pub fn validate_filling(&self) -> Result<()> {
        if self.rows.windows(2).any(|w| w[0].len() < w[1].len()) || self.rows.iter().any(Vec::is_empty) {
            return Err(Error::MalformedTableau("row lengths must weakly decrease".into()));
        }
        let core = self.core_squares();
        if Shape::from_squares(&core).is_none() {
            return Err(Error::MalformedTableau("0-labeled squares do not form a diagram".into()));
        }
        self.dominos()?;
        for (s, k) in self.cells() {
            for next in [Square::new(s.row, s.col + 1), Square::new(s.row + 1, s.col)] {
                match self.get(next) {
                    Some(m) if m < k => {
                        return Err(Error::InvalidTableau {
                            at: next,
                            reason: format!("label {m} follows {k}"),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Some square of `δ_{r+2}` lies outside the diagram.
    pub fn is_split(&self) -> bool {
        let shape = self.shape();
        diagonal(self.rank + 2).into_iter().any(|s| !shape.contains(s))
    }

    /// τ read from domino positions: `s_i` when `D(i)` lies strictly above
    /// `D(i+1)`, `t` when `D(1)` is vertical.
    pub fn tau(&self) -> DescentSet {
        let Ok(ds) = self.dominos() else {
            return DescentSet::default();
        };
        let mut gens = Vec::new();
        if ds.get(&1).is_some_and(|d| d.is_vertical()) {
            gens.push(Generator::t());
        }
        for i in 1..ds.len() as u32 {
            if let (Some(a), Some(b)) = (ds.get(&i), ds.get(&(i + 1))) {
                if a.second().row < b.first().row {
                    gens.push(Generator::S(i as usize));
                }
            }
        }
        DescentSet::from_generators(gens)
    }

    /// Enhanced τ-invariant for parameter ratio `b/a`; requires
    /// `rank ≥ ratio - 1`.
    pub fn xi(&self, ratio: u32) -> Result<DescentSet> {
        if (self.rank as u32) + 1 < ratio {
            return Err(Error::RankTooSmall { rank: self.rank, ratio });
        }
        let mut d = self.tau();
        let ds = self.dominos()?;
        for j in 2..=(self.rank + 1).min(ds.len()) {
            if ((j - 1) as u32) < ratio && ds[&(j as u32)].is_vertical() {
                d.extended.insert(Generator::T(j));
            }
        }
        Ok(d)
    }

    /// The subtableau of the core and the dominos labeled at most `k`.
    pub fn restrict(&self, k: u32) -> Self {
        let cells: BTreeMap<Square, u32> = self.cells().into_iter().filter(|&(_, x)| x <= k).collect();
        Self::from_cells(self.rank, &cells).expect("restriction of a standard filling is a diagram")
    }

    /// Box-drawn rendering; core squares are shown as `·`.
    pub fn pretty(&self) -> String {
        let h = self.rows.len();
        let w = self.rows.first().map_or(0, Vec::len);
        if h == 0 {
            return String::from("∅\n");
        }
        let id = |i: usize, j: usize| -> Option<u32> {
            if i == 0 || j == 0 {
                None
            } else {
                self.get(Square::new(i, j))
            }
        };
        let hedge = |i: usize, j: usize| id(i, j) != id(i + 1, j); // below (i,j)
        let vedge = |i: usize, j: usize| id(i, j) != id(i, j + 1); // right of (i,j)
        let mut canvas = vec![vec![' '; 4 * w + 1]; 2 * h + 1];
        for i in 0..=h {
            for j in 1..=w {
                if hedge(i, j) {
                    for c in 1..4 {
                        canvas[2 * i][4 * (j - 1) + c] = '─';
                    }
                }
            }
        }
        for i in 1..=h {
            for j in 0..=w {
                if vedge(i, j) {
                    canvas[2 * i - 1][4 * j] = '│';
                }
            }
            for j in 1..=w {
                if let Some(k) = id(i, j) {
                    let label = if k == 0 { "·".to_string() } else { k.to_string() };
                    for (c, ch) in format!("{label:^3}").chars().take(3).enumerate() {
                        canvas[2 * i - 1][4 * (j - 1) + 1 + c] = ch;
                    }
                }
            }
        }
        for i in 0..=h {
            for j in 0..=w {
                let up = i > 0 && vedge(i, j);
                let down = i < h && vedge(i + 1, j);
                let left = j > 0 && hedge(i, j);
                let right = j < w && hedge(i, j + 1);
                canvas[2 * i][4 * j] = match (up, down, left, right) {
                    (false, false, false, false) => ' ',
                    (true, true, true, true) => '┼',
                    (true, true, true, false) => '┤',
                    (true, true, false, true) => '├',
                    (false, true, true, true) => '┬',
                    (true, false, true, true) => '┴',
                    (false, true, false, true) => '┌',
                    (false, true, true, false) => '┐',
                    (true, false, false, true) => '└',
                    (true, false, true, false) => '┘',
                    (true, true, false, false) | (true, false, false, false) | (false, true, false, false) => '│',
                    (false, false, _, _) => '─',
                };
            }
        }
        let mut out = String::new();
        for line in canvas {
            out.push_str(line.into_iter().collect::<String>().trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DominoTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

/// A same-shape pair `(P, Q)` of rank-`r` tableaux.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableauPair {
    pub left: DominoTableau,
    pub right: DominoTableau,
}

impl TableauPair {
    pub fn new(left: DominoTableau, right: DominoTableau) -> Result<Self> {
        if left.rank() != right.rank() || left.shape() != right.shape() || left.n() != right.n() {
            return Err(Error::InvalidPair(format!(
                "ranks {}/{}, shapes {}/{}",
                left.rank(),
                right.rank(),
                left.shape(),
                right.shape()
            )));
        }
        Ok(Self { left, right })
    }

    pub fn rank(&self) -> usize {
        self.left.rank()
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn validate(&self) -> Result<()> {
        self.left.validate()?;
        self.right.validate()?;
        if self.left.shape() != self.right.shape() || self.left.rank() != self.right.rank() {
            return Err(Error::InvalidPair("shapes or ranks differ".into()));
        }
        Ok(())
    }

    pub fn is_split(&self) -> bool {
        self.left.is_split() && self.right.is_split()
    }
}

/// Every standard domino tableau of rank `r` with `n` dominos, built by
/// adding dominos labeled `1, …, n` one at a time to the core.
pub fn enumerate_standard(rank: usize, n: usize) -> Vec<DominoTableau> {
    fn go(
        rank: usize,
        n: usize,
        shape: &Shape,
        placed: &mut BTreeMap<u32, Domino>,
        out: &mut Vec<DominoTableau>,
    ) {
        let k = placed.len() as u32 + 1;
        if k as usize > n {
            let core = Shape::staircase(rank).squares().collect::<Vec<_>>();
            out.push(DominoTableau::from_parts(rank, core, placed).expect("valid by construction"));
            return;
        }
        for d in shape.addable_dominos() {
            let next = shape.with(d).expect("addable");
            placed.insert(k, d);
            go(rank, n, &next, placed, out);
            placed.remove(&k);
        }
    }
    let mut out = Vec::new();
    go(rank, n, &Shape::staircase(rank), &mut BTreeMap::new(), &mut out);
    out
}

/// `|SDT_r(λ)|` for every shape `λ` reachable with `n` dominos.
pub fn count_by_shape(rank: usize, n: usize) -> BTreeMap<Shape, u64> {
    let mut layer: BTreeMap<Shape, u64> = [(Shape::staircase(rank), 1)].into();
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (s, c) in layer {
            for d in s.addable_dominos() {
                *next.entry(s.with(d).expect("addable")).or_insert(0) += c;
            }
        }
        layer = next;
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn q2() -> DominoTableau {
        DominoTableau::from_rows(2, vec![vec![0, 0, 1, 1], vec![0, 2, 2], vec![3, 4, 4], vec![3]])
    }

    pub(crate) fn q3() -> DominoTableau {
        DominoTableau::from_rows(
            3,
            vec![vec![0, 0, 0, 1, 1], vec![0, 0, 2, 2], vec![0, 4], vec![3, 4], vec![3]],
        )
    }

    #[test]
    fn validate_examples() {
        q2().validate().unwrap();
        q3().validate().unwrap();
        let apart = DominoTableau::from_rows(0, vec![vec![1, 2, 2, 1]]);
        assert!(apart.validate().is_err());
        let bad_core = DominoTableau::from_rows(2, vec![vec![0, 1, 1], vec![0, 2, 2], vec![3, 4, 4], vec![3]]);
        assert!(bad_core.validate().is_err());
        let decreasing = DominoTableau::from_rows(0, vec![vec![2, 2], vec![1, 1]]);
        assert!(decreasing.validate().is_err());
        let err = decreasing.validate().unwrap_err().to_string();
        assert!(err.contains("(2,1)"), "{err}");
    }

    #[test]
    fn split_examples() {
        assert!(!q2().is_split());
        assert!(q3().is_split());
        for r in 0..5 {
            assert!(DominoTableau::core_only(r).is_split());
        }
    }

    #[test]
    fn tau_examples() {
        let q = q2();
        assert_eq!(q.tau(), DescentSet::from_generators([Generator::S(1), Generator::S(2)]));
        assert_eq!(DominoTableau::from_rows(0, vec![vec![1, 1]]).tau(), DescentSet::default());
        assert_eq!(
            DominoTableau::from_rows(0, vec![vec![1], vec![1]]).tau(),
            DescentSet::from_generators([Generator::t()])
        );
        assert_eq!(
            q.xi(3).unwrap(),
            DescentSet::from_generators([Generator::S(1), Generator::S(2), Generator::T(3)])
        );
        assert_eq!(q.xi(1).unwrap(), q.tau());
        assert!(q.xi(4).is_err());
    }

    #[test]
    fn standard_enumeration_counts() {
        let counts = count_by_shape(0, 2);
        let total: u64 = counts.values().map(|c| c * c).sum();
        assert_eq!(total, 8);
        for r in 0..4 {
            for n in 0..5 {
                let all = enumerate_standard(r, n);
                assert!(all.iter().all(|t| t.validate().is_ok()));
                assert_eq!(all.len() as u64, count_by_shape(r, n).values().sum::<u64>());
            }
        }
    }

    #[test]
    fn pretty_draws_boxes() {
        let s = DominoTableau::from_rows(0, vec![vec![1, 1], vec![2, 2]]).pretty();
        assert_eq!(s, "┌───────┐\n│ 1   1 │\n├───────┤\n│ 2   2 │\n└───────┘\n");
    }

    #[test]
    fn json_form() {
        let json = serde_json::to_string(&q2()).unwrap();
        assert_eq!(json, r#"{"rank":2,"rows":[[0,0,1,1],[0,2,2],[3,4,4],[3]]}"#);
    }
}
