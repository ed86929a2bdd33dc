//! Partitions, Young diagrams, dominos and 2-cores.
//!
//! Squares are 1-indexed: `Square { row: 1, col: 1 }` is the top-left corner.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Square {
    pub row: usize,
    pub col: usize,
}

impl Square {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Index `k` of the diagonal `δ_k` containing this square.
    pub fn diagonal(self) -> usize {
        self.row + self.col - 1
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Two adjacent squares, stored top-left first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Domino {
    first: Square,
    second: Square,
}

impl Domino {
    /// Returns `None` unless the squares are horizontally or vertically adjacent.
    pub fn new(a: Square, b: Square) -> Option<Self> {
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        let horizontal = first.row == second.row && first.col + 1 == second.col;
        let vertical = first.col == second.col && first.row + 1 == second.row;
        (horizontal || vertical).then_some(Self { first, second })
    }

    pub fn horizontal(row: usize, col: usize) -> Self {
        Self { first: Square::new(row, col), second: Square::new(row, col + 1) }
    }

    pub fn vertical(row: usize, col: usize) -> Self {
        Self { first: Square::new(row, col), second: Square::new(row + 1, col) }
    }

    pub fn first(self) -> Square {
        self.first
    }

    pub fn second(self) -> Square {
        self.second
    }

    pub fn squares(self) -> [Square; 2] {
        [self.first, self.second]
    }

    pub fn is_horizontal(self) -> bool {
        self.first.row == self.second.row
    }

    pub fn is_vertical(self) -> bool {
        !self.is_horizontal()
    }

    pub fn contains(self, s: Square) -> bool {
        self.first == s || self.second == s
    }
}

impl fmt::Display for Domino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.first, self.second)
    }
}

/// A partition given by its weakly decreasing row lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    rows: Vec<usize>,
}

impl Shape {
    /// Trailing zero rows are dropped. Returns `None` if rows increase.
    pub fn new(mut rows: Vec<usize>) -> Option<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        rows.windows(2).all(|w| w[0] >= w[1]).then_some(Self { rows })
    }

    /// The staircase `λ_r = [r, r-1, …, 1]`.
    pub fn staircase(r: usize) -> Self {
        Self { rows: (1..=r).rev().collect() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn row_len(&self, row: usize) -> usize {
        self.rows.get(row.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn col_len(&self, col: usize) -> usize {
        self.rows.iter().take_while(|&&l| l >= col).count()
    }

    pub fn contains(&self, s: Square) -> bool {
        s.row >= 1 && s.col >= 1 && self.row_len(s.row) >= s.col
    }

    pub fn squares(&self) -> impl Iterator<Item = Square> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (1..=l).map(move |j| Square::new(i + 1, j)))
    }

    /// Builds a shape from a set of squares, if the set is a Young diagram.
    pub fn from_squares(squares: &BTreeSet<Square>) -> Option<Self> {
        let rows_n = squares.iter().map(|s| s.row).max().unwrap_or(0);
        let mut rows = vec![0; rows_n];
        for s in squares {
            rows[s.row - 1] += 1;
        }
        let shape = Shape::new(rows)?;
        (shape.squares().all(|s| squares.contains(&s)) && shape.size() == squares.len())
            .then_some(shape)
    }

    fn without(&self, d: Domino) -> Option<Shape> {
        let set: BTreeSet<Square> = self.squares().filter(|s| !d.contains(*s)).collect();
        Shape::from_squares(&set)
    }

    /// Dominos whose deletion leaves a Young diagram.
    pub fn removable_dominos(&self) -> Vec<Domino> {
        let mut out = Vec::new();
        for (i, &l) in self.rows.iter().enumerate() {
            let row = i + 1;
            if l >= 2 && self.row_len(row + 1) <= l - 2 {
                out.push(Domino::horizontal(row, l - 1));
            }
            if l >= 1 && self.row_len(row + 1) == l && self.row_len(row + 2) < l {
                out.push(Domino::vertical(row, l));
            }
        }
        out
    }

    /// Dominos whose addition leaves a Young diagram.
    pub fn addable_dominos(&self) -> Vec<Domino> {
        let mut out = Vec::new();
        for row in 1..=self.rows.len() + 2 {
            let l = self.row_len(row);
            let above = if row == 1 { usize::MAX } else { self.row_len(row - 1) };
            if above >= l + 2 {
                out.push(Domino::horizontal(row, l + 1));
            }
            if above > l && self.row_len(row + 1) == l {
                out.push(Domino::vertical(row, l + 1));
            }
        }
        out
    }

    pub fn with(&self, d: Domino) -> Option<Shape> {
        let mut set: BTreeSet<Square> = self.squares().collect();
        for s in d.squares() {
            if !set.insert(s) {
                return None;
            }
        }
        Shape::from_squares(&set)
    }

    /// If this shape is a staircase `λ_r`, returns `r`.
    pub fn staircase_rank(&self) -> Option<usize> {
        let r = self.rows.len();
        (*self == Shape::staircase(r)).then_some(r)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// The 2-core of `λ` and its rank, by repeatedly deleting the first
/// removable domino.
pub fn two_core(shape: &Shape) -> (Shape, usize) {
    let mut cur = shape.clone();
    while let Some(d) = cur.removable_dominos().first().copied() {
        cur = cur.without(d).expect("removable domino leaves a diagram");
    }
    let r = cur.staircase_rank().expect("2-cores are staircases");
    (cur, r)
}

/// Deletes removable dominos in the order chosen by `pick` (given the
/// number of candidates). Used to check order independence.
pub fn two_core_with(shape: &Shape, mut pick: impl FnMut(usize) -> usize) -> (Shape, usize) {
    let mut cur = shape.clone();
    loop {
        let ds = cur.removable_dominos();
        if ds.is_empty() {
            break;
        }
        let d = ds[pick(ds.len()) % ds.len()];
        cur = cur.without(d).expect("removable domino leaves a diagram");
    }
    let r = cur.staircase_rank().expect("2-cores are staircases");
    (cur, r)
}

/// The squares `s_ij` with `i + j = k + 1`.
pub fn diagonal(k: usize) -> Vec<Square> {
    (1..=k).map(|i| Square::new(i, k + 1 - i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(v: &[usize]) -> Shape {
        Shape::new(v.to_vec()).unwrap()
    }

    /// Every domino position inside the shape whose deletion leaves a diagram.
    fn brute_removable(s: &Shape) -> BTreeSet<Domino> {
        let mut out = BTreeSet::new();
        for sq in s.squares() {
            for d in [Domino::horizontal(sq.row, sq.col), Domino::vertical(sq.row, sq.col)] {
                if d.squares().iter().all(|x| s.contains(*x)) && s.without(d).is_some() {
                    out.insert(d);
                }
            }
        }
        out
    }

    #[test]
    fn core_examples() {
        assert_eq!(two_core(&shape(&[7, 6, 1, 1, 1])), (Shape::staircase(3), 3));
        for r in 0..6 {
            assert_eq!(two_core(&Shape::staircase(r)), (Shape::staircase(r), r));
        }
        assert_eq!(two_core(&shape(&[2])), (Shape::default(), 0));
    }

    #[test]
    fn removable_examples() {
        assert_eq!(shape(&[2]).removable_dominos(), vec![Domino::horizontal(1, 1)]);
        for r in 0..6 {
            assert!(Shape::staircase(r).removable_dominos().is_empty());
        }
        let got: BTreeSet<_> = shape(&[2, 2]).removable_dominos().into_iter().collect();
        // brute force: the bottom horizontal and the right vertical
        let want: BTreeSet<_> = [Domino::horizontal(2, 1), Domino::vertical(1, 2)].into();
        assert_eq!(got, want);
        assert_eq!(brute_removable(&shape(&[2, 2])), want);
    }

    #[test]
    fn diagonals() {
        assert_eq!(diagonal(1), vec![Square::new(1, 1)]);
        assert_eq!(
            diagonal(4),
            vec![Square::new(1, 4), Square::new(2, 3), Square::new(3, 2), Square::new(4, 1)]
        );
        assert_eq!(diagonal(5).len(), 5);
        assert!(diagonal(5).iter().all(|s| s.diagonal() == 5));
    }

    fn arb_shape() -> impl Strategy<Value = Shape> {
        prop::collection::vec(1usize..8, 0..6).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Shape::new(v).unwrap()
        })
    }

    const SEED: u64 = 0x5eed_0001;

    proptest! {
        #![proptest_config(ProptestConfig { cases: 300, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, rng_seed: prop::test_runner::RngSeed::Fixed(SEED), ..ProptestConfig::default() })]

        #[test]
        fn core_is_order_independent(s in arb_shape(), picks in prop::collection::vec(0usize..16, 32)) {
            let mut it = picks.into_iter().cycle();
            let (core, r) = two_core_with(&s, |_| it.next().unwrap());
            prop_assert_eq!((core.clone(), r), two_core(&s));
            prop_assert_eq!((s.size() - core.size()) % 2, 0);
        }

        #[test]
        fn removable_matches_brute_force(s in arb_shape()) {
            let got: BTreeSet<_> = s.removable_dominos().into_iter().collect();
            prop_assert_eq!(got, brute_removable(&s));
        }

        #[test]
        fn addable_dominos_are_exactly_inverse_of_removable(s in arb_shape()) {
            let got: BTreeSet<_> = s.addable_dominos().into_iter().collect();
            let mut want = BTreeSet::new();
            for row in 1..=s.rows().len() + 3 {
                for col in 1..=s.row_len(1) + 3 {
                    for d in [Domino::horizontal(row, col), Domino::vertical(row, col)] {
                        if let Some(t) = s.with(d) {
                            if t.removable_dominos().contains(&d) { want.insert(d); }
                        }
                    }
                }
            }
            prop_assert_eq!(got, want);
        }
    }
}
