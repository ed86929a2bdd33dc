//! Tableau classes and combinatorial cells, plus the partition type shared
//! with the Kazhdan–Lusztig oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::cycles::{move_through, noncore_cycles, subsets, Convention};
use crate::error::{Error, Result};
use crate::insertion::{insert, uninsert};
use crate::tableaux::{enumerate_standard, DominoTableau, TableauPair};
use crate::wgroup::{enumerate, SignedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
    LR,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::L, Side::R, Side::LR];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
            Side::LR => "LR",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "L" | "LEFT" => Ok(Side::L),
            "R" | "RIGHT" => Ok(Side::R),
            "LR" | "TWO-SIDED" => Ok(Side::LR),
            _ => Err(Error::MalformedTableau(format!("unknown side {s:?}"))),
        }
    }
}

/// What a partition describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PartitionLabel {
    Combinatorial { rank: usize, side: Side },
    Asymptotic { side: Side },
    Kl { a: u32, b: u32, side: Side },
}

impl PartitionLabel {
    pub fn side(self) -> Side {
        match self {
            PartitionLabel::Combinatorial { side, .. }
            | PartitionLabel::Asymptotic { side }
            | PartitionLabel::Kl { side, .. } => side,
        }
    }
}

impl fmt::Display for PartitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionLabel::Combinatorial { rank, side } => write!(f, "C_{rank}^{side}"),
            PartitionLabel::Asymptotic { side } => write!(f, "C_a^{side}"),
            PartitionLabel::Kl { a, b, side } => write!(f, "K({a},{b})^{side}"),
        }
    }
}

/// A partition of `W_n` into blocks. Members and blocks are kept sorted, so
/// two partitions of the same set are equal iff their blocks are.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPartition {
    pub n: usize,
    pub label: PartitionLabel,
    blocks: Vec<Vec<SignedPermutation>>,
}

impl CellPartition {
    pub fn new(n: usize, label: PartitionLabel, blocks: Vec<Vec<SignedPermutation>>) -> Self {
        let mut blocks: Vec<Vec<SignedPermutation>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        blocks.sort();
        Self { n, label, blocks }
    }

    /// Groups elements by a key.
    pub fn from_key<K: Ord>(
        n: usize,
        label: PartitionLabel,
        elems: impl IntoIterator<Item = (SignedPermutation, K)>,
    ) -> Self {
        let mut groups: BTreeMap<K, Vec<SignedPermutation>> = BTreeMap::new();
        for (w, k) in elems {
            groups.entry(k).or_default().push(w);
        }
        Self::new(n, label, groups.into_values().collect())
    }

    pub fn blocks(&self) -> &[Vec<SignedPermutation>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, w: &SignedPermutation) -> Option<&[SignedPermutation]> {
        self.blocks.iter().find(|b| b.binary_search(w).is_ok()).map(Vec::as_slice)
    }

    /// Block index of every element.
    pub fn index(&self) -> HashMap<&SignedPermutation, usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |w| (w, i)))
            .collect()
    }

    /// Same blocks, regardless of label.
    pub fn same_blocks(&self, other: &CellPartition) -> bool {
        self.blocks == other.blocks
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &CellPartition) -> bool {
        let idx = other.index();
        self.blocks.iter().all(|b| {
            let first = idx.get(&b[0]);
            first.is_some() && b.iter().all(|w| idx.get(w) == first)
        })
    }

    /// The coarsest partition refining both.
    pub fn common_refinement(&self, other: &CellPartition) -> Vec<Vec<SignedPermutation>> {
        let idx = other.index();
        let mut out = Vec::new();
        for b in &self.blocks {
            let mut parts: BTreeMap<Option<usize>, Vec<SignedPermutation>> = BTreeMap::new();
            for w in b {
                parts.entry(idx.get(w).copied()).or_default().push(w.clone());
            }
            out.extend(parts.into_values());
        }
        out.sort();
        out
    }

    /// Every block is a union of blocks of `finer`.
    pub fn is_union_of(&self, finer: &CellPartition) -> bool {
        finer.refines(self)
    }

    /// `{"n":…, "label":…, "blocks":[[perm,…],…]}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Dump {
            n: usize,
            label: String,
            blocks: Vec<Vec<String>>,
        }
        let dump = Dump {
            n: self.n,
            label: self.label.to_string(),
            blocks: self.blocks.iter().map(|b| b.iter().map(ToString::to_string).collect()).collect(),
        };
        serde_json::to_string(&dump).expect("plain data serializes")
    }
}

/// `C(T)`: the elements whose recording tableau at the rank of `T` is `T`.
///
/// Found by reversing insertion against every insertion tableau of the same
/// shape.
pub fn class_of_tableau(t: &DominoTableau) -> Result<BTreeSet<SignedPermutation>> {
    t.validate()?;
    let shape = t.shape();
    let mut out = BTreeSet::new();
    for p in enumerate_standard(t.rank(), t.n()) {
        if p.shape() == shape {
            out.insert(uninsert(&TableauPair::new(p, t.clone())?)?);
        }
    }
    Ok(out)
}

/// Classes of `∼_r` among the given tableaux: `S ∼ T` when `S = MT(T, U)`
/// for a set `U` of non-core open cycles of `T`.
fn tableau_classes(tabs: &BTreeSet<DominoTableau>) -> Result<HashMap<DominoTableau, usize>> {
    let index: HashMap<&DominoTableau, usize> = tabs.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut uf = UnionFind::<usize>::new(tabs.len());
    for (i, t) in tabs.iter().enumerate() {
        for u in subsets(&noncore_cycles(t, Convention::Regular)?).into_iter().skip(1) {
            let moved = move_through(t, &u, Convention::Regular)?;
            let j = index
                .get(&moved)
                .ok_or_else(|| Error::MalformedTableau(format!("moved tableau outside the family: {moved:?}")))?;
            uf.union(i, *j);
        }
    }
    Ok(tabs.iter().enumerate().map(|(i, t)| (t.clone(), uf.find(i))).collect())
}

/// Combinatorial left, right or two-sided `r`-cells of `W_n`.
pub fn combinatorial_cells(n: usize, r: usize, side: Side) -> Result<CellPartition> {
    let label = PartitionLabel::Combinatorial { rank: r, side };
    combinatorial_with_label(n, r, side, label)
}

fn combinatorial_with_label(n: usize, r: usize, side: Side, label: PartitionLabel) -> Result<CellPartition> {
    let elems: Vec<SignedPermutation> = enumerate(n).collect();
    let pairs: Vec<TableauPair> = elems.iter().map(|w| insert(w, r)).collect();
    // the left (recording) tableaux of a rank form the same family as the
    // right ones, so one class map serves both sides
    let tabs: BTreeSet<DominoTableau> = pairs.iter().map(|p| p.right.clone()).collect();
    let class = tableau_classes(&tabs)?;
    let left = |i: usize| class[&pairs[i].right];
    let right = |i: usize| class[&pairs[i].left];
    match side {
        Side::L => Ok(CellPartition::from_key(n, label, elems.into_iter().enumerate().map(|(i, w)| (w, left(i))))),
        Side::R => Ok(CellPartition::from_key(n, label, elems.into_iter().enumerate().map(|(i, w)| (w, right(i))))),
        Side::LR => {
            let m = tabs.len();
            let mut uf = UnionFind::<usize>::new(m);
            for i in 0..elems.len() {
                uf.union(left(i), right(i));
            }
            Ok(CellPartition::from_key(n, label, elems.into_iter().enumerate().map(|(i, w)| (w, uf.find(left(i))))))
        }
    }
}

/// Asymptotic cells: combinatorial cells at rank `n - 1`.
pub fn asymptotic_cells(n: usize, side: Side) -> Result<CellPartition> {
    combinatorial_with_label(n, n.saturating_sub(1), side, PartitionLabel::Asymptotic { side })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn class_examples() {
        let w = p("4 1 -3 -2");
        let t = insert(&w, 2).right;
        let c = class_of_tableau(&t).unwrap();
        assert!(c.contains(&w));
        assert!(c.iter().all(|y| insert(y, 2).right == t));
        let v = DominoTableau::from_rows(0, vec![vec![1], vec![1]]);
        assert_eq!(class_of_tableau(&v).unwrap(), [p("-1")].into());
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for r in 0..=3 {
            for n in 1..=4 {
                let total: usize = enumerate_standard(r, n).iter().map(|t| class_of_tableau(t).unwrap().len()).sum();
                assert_eq!(total, crate::wgroup::order(n));
                for t in enumerate_standard(r, n) {
                    let same_shape = enumerate_standard(r, n).iter().filter(|s| s.shape() == t.shape()).count();
                    assert_eq!(class_of_tableau(&t).unwrap().len(), same_shape);
                }
            }
        }
    }

    #[test]
    fn block_of_example_is_two_classes() {
        let w = p("4 1 -3 -2");
        let t = insert(&w, 2).right;
        let tbar = move_through(&t, &[4].into(), Convention::Regular).unwrap();
        let want: BTreeSet<_> = class_of_tableau(&t).unwrap().union(&class_of_tableau(&tbar).unwrap()).cloned().collect();
        let cells = combinatorial_cells(4, 2, Side::L).unwrap();
        let got: BTreeSet<_> = cells.block_of(&w).unwrap().iter().cloned().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn small_partitions() {
        let a = asymptotic_cells(1, Side::L).unwrap();
        assert_eq!(a.blocks(), &[vec![p("-1")], vec![p("1")]]);
        assert_eq!(asymptotic_cells(2, Side::L).unwrap().len(), 6);
    }

    #[test]
    fn right_cells_are_inverted_left_cells() {
        for n in 1..=4 {
            for r in 0..=n {
                let l = combinatorial_cells(n, r, Side::L).unwrap();
                let inv = CellPartition::new(
                    n,
                    l.label,
                    l.blocks().iter().map(|b| b.iter().map(SignedPermutation::inverse).collect()).collect(),
                );
                assert!(inv.same_blocks(&combinatorial_cells(n, r, Side::R).unwrap()), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn asymptotic_cells_are_stable() {
        for n in 1..=4 {
            for side in Side::ALL {
                let a = asymptotic_cells(n, side).unwrap();
                for r in n - 1..=n + 1 {
                    assert!(a.same_blocks(&combinatorial_cells(n, r, side).unwrap()), "n={n} r={r} {side}");
                }
            }
        }
    }

    #[test]
    fn left_and_right_refine_two_sided() {
        for r in 0..=4 {
            let lr = combinatorial_cells(4, r, Side::LR).unwrap();
            assert!(combinatorial_cells(4, r, Side::L).unwrap().refines(&lr));
            assert!(combinatorial_cells(4, r, Side::R).unwrap().refines(&lr));
        }
    }

    #[test]
    fn partition_comparisons() {
        let a = CellPartition::new(1, PartitionLabel::Asymptotic { side: Side::L }, vec![vec![p("1")], vec![p("-1")]]);
        let b = CellPartition::new(1, PartitionLabel::Asymptotic { side: Side::L }, vec![vec![p("1"), p("-1")]]);
        assert!(a.refines(&b) && !b.refines(&a));
        assert!(b.is_union_of(&a));
        assert_eq!(a.common_refinement(&b), a.blocks().to_vec());
        assert_eq!(b.to_json(), r#"{"n":1,"label":"C_a^L","blocks":[["-1","1"]]}"#);
    }
}
