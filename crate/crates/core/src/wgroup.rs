//! The hyperoctahedral group `W_n` realized as signed permutations.
//!
//! Elements are stored in one-line notation `w(1) … w(n)`. Composition acts
//! on values from the left and on positions from the right, so `w·s_i` swaps
//! positions `i, i+1` and `w·t_j` negates position `j`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `W_n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPermutation {
    entries: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            let a = e.unsigned_abs() as usize;
            if e == 0 || a > n || seen[a] {
                return Err(Error::InvalidPermutation(format!("{entries:?}")));
            }
            seen[a] = true;
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self { entries: (1..=n as i32).collect() }
    }

    /// The longest element `(-1 -2 … -n)`.
    pub fn longest(n: usize) -> Self {
        Self { entries: (1..=n as i32).map(|i| -i).collect() }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// `w(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> i32 {
        self.entries[i - 1]
    }

    /// Evaluates `w` on any nonzero integer in `±[n]`.
    fn apply(&self, x: i32) -> i32 {
        let v = self.entries[x.unsigned_abs() as usize - 1];
        if x < 0 {
            -v
        } else {
            v
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(Self {
            entries: other.entries.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.rank()];
        for (i, &e) in self.entries.iter().enumerate() {
            let pos = e.unsigned_abs() as usize - 1;
            inv[pos] = if e < 0 { -(i as i32 + 1) } else { i as i32 + 1 };
        }
        Self { entries: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &e)| e == i as i32 + 1)
    }

    /// Number of pairs `i < j` with `w(i) > w(j)`.
    pub fn inversions(&self) -> usize {
        self.entries
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| a > b)
            .count()
    }

    /// Coxeter length with respect to `{t, s_1, …, s_{n-1}}`.
    pub fn length(&self) -> usize {
        let neg: i32 = self.entries.iter().filter(|&&e| e < 0).map(|e| -e).sum();
        self.inversions() + neg as usize
    }

    /// Whether `ℓ(w·g) < ℓ(w)`, read off from the one-line notation.
    pub fn right_descends(&self, g: Generator) -> Result<bool> {
        g.check(self.rank())?;
        Ok(match g {
            Generator::S(i) => self.at(i + 1) < self.at(i),
            Generator::T(j) => self.at(j) < 0,
        })
    }

    /// The right descent set in `S = {t, s_1, …, s_{n-1}}`.
    pub fn tau(&self) -> DescentSet {
        let n = self.rank();
        let mut simple = BTreeSet::new();
        if n >= 1 && self.at(1) < 0 {
            simple.insert(Generator::T(1));
        }
        for i in 1..n {
            if self.at(i + 1) < self.at(i) {
                simple.insert(Generator::S(i));
            }
        }
        DescentSet { simple, extended: BTreeSet::new() }
    }

    /// The enhanced τ-invariant for the integer parameter ratio `b/a`:
    /// `t_j` is admitted when `j - 1 < ratio` and `w(j) < 0`.
    pub fn xi(&self, ratio: u32) -> DescentSet {
        let mut d = self.tau();
        for j in 2..=self.rank() {
            if ((j - 1) as u32) < ratio && self.at(j) < 0 {
                d.extended.insert(Generator::T(j));
            }
        }
        d
    }

    /// Positive entries decrease and absolute values of negative entries
    /// decrease.
    pub fn is_nonsplit(&self) -> bool {
        let decreasing = |v: Vec<i32>| v.windows(2).all(|p| p[0] > p[1]);
        let pos = self.entries.iter().copied().filter(|&e| e > 0).collect();
        let neg = self.entries.iter().filter(|&&e| e < 0).map(|e| -e).collect();
        decreasing(pos) && decreasing(neg)
    }

    /// JSON array form, e.g. `[4,1,-3,-2]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.entries).expect("serializable")
    }
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SignedPermutation> for Vec<i32> {
    fn from(w: SignedPermutation) -> Self {
        w.entries
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(" "))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Accepts both `"4 1 -3 -2"` and `"[4,1,-3,-2]"`.
impl FromStr for SignedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let v: Vec<i32> = serde_json::from_str(s)
                .map_err(|e| Error::InvalidPermutation(format!("{s}: {e}")))?;
            return Self::new(v);
        }
        let v = s
            .split_whitespace()
            .map(|t| t.parse::<i32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidPermutation(format!("{s}: {e}")))?;
        Self::new(v)
    }
}

/// The reflections `s_i` and `t_k`; `T(1)` is the simple generator `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    T(usize),
    S(usize),
}

impl Generator {
    pub const fn t() -> Self {
        Generator::T(1)
    }

    fn check(self, n: usize) -> Result<()> {
        let ok = match self {
            Generator::S(i) => i >= 1 && i < n,
            Generator::T(k) => k >= 1 && k <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange(self.to_string(), n))
        }
    }

    pub fn is_simple(self) -> bool {
        matches!(self, Generator::S(_) | Generator::T(1))
    }

    /// The generator as an element of `W_n`.
    pub fn to_perm(self, n: usize) -> Result<SignedPermutation> {
        self.check(n)?;
        let mut e: Vec<i32> = (1..=n as i32).collect();
        match self {
            Generator::S(i) => e.swap(i - 1, i),
            Generator::T(k) => e[k - 1] = -e[k - 1],
        }
        Ok(SignedPermutation { entries: e })
    }

    /// The simple generators `t, s_1, …, s_{n-1}` in that order.
    pub fn simple(n: usize) -> Vec<Generator> {
        std::iter::once(Generator::T(1))
            .chain((1..n).map(Generator::S))
            .collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T(1) => write!(f, "t"),
            Generator::T(k) => write!(f, "t{k}"),
            Generator::S(i) => write!(f, "s{i}"),
        }
    }
}

/// A descent set: a part in `S` and a part in `{t_2, …, t_n}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DescentSet {
    pub simple: BTreeSet<Generator>,
    pub extended: BTreeSet<Generator>,
}

impl DescentSet {
    pub fn from_generators(gens: impl IntoIterator<Item = Generator>) -> Self {
        let mut d = DescentSet::default();
        for g in gens {
            if g.is_simple() {
                d.simple.insert(g);
            } else {
                d.extended.insert(g);
            }
        }
        d
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.simple.contains(&g) || self.extended.contains(&g)
    }

    /// The part lying in `S`.
    pub fn simple_part(&self) -> DescentSet {
        DescentSet { simple: self.simple.clone(), extended: BTreeSet::new() }
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.simple.iter().chain(&self.extended).join(", "))
    }
}

/// All `2^n · n!` elements of `W_n`, permutations outermost and sign masks
/// innermost.
pub fn enumerate(n: usize) -> impl Iterator<Item = SignedPermutation> {
    (1..=n as i32).permutations(n).flat_map(move |p| {
        (0u32..1 << n).map(move |mask| SignedPermutation {
            entries: p
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                .collect(),
        })
    })
}

/// `|W_n| = 2^n · n!`.
pub fn order(n: usize) -> usize {
    (1..=n).product::<usize>() << n
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet, VecDeque};

    fn p(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    /// Word length by breadth-first search over the Cayley graph.
    fn bfs_lengths(n: usize) -> HashMap<SignedPermutation, usize> {
        let gens: Vec<_> = Generator::simple(n).into_iter().map(|g| g.to_perm(n).unwrap()).collect();
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(SignedPermutation::identity(n), 0);
        queue.push_back(SignedPermutation::identity(n));
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for g in &gens {
                let x = w.compose(g).unwrap();
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("1 2").compose(&p("2 1")).unwrap(), p("2 1"));
        let t = Generator::t().to_perm(3).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
        let s1 = Generator::S(1).to_perm(3).unwrap();
        let w = s1.compose(&t).unwrap().compose(&s1).unwrap();
        assert_eq!(w, p("1 -2 3"));
        assert_eq!(w, Generator::T(2).to_perm(3).unwrap());
        assert!(p("1 2").compose(&p("1")).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(SignedPermutation::identity(4).length(), 0);
        assert_eq!(Generator::t().to_perm(4).unwrap().length(), 1);
        assert_eq!(Generator::S(2).to_perm(4).unwrap().length(), 1);
        // frozen from bfs_lengths(4)
        assert_eq!(p("4 1 -3 -2").length(), 10);
        assert_eq!(bfs_lengths(4)[&p("4 1 -3 -2")], 10);
    }

    #[test]
    fn length_matches_cayley_bfs() {
        for n in 1..=3 {
            let bfs = bfs_lengths(n);
            assert_eq!(bfs.len(), order(n));
            for (w, d) in bfs {
                assert_eq!(w.length(), d, "{w:?}");
            }
        }
    }

    #[test]
    fn descent_criteria_agree_with_length() {
        for n in 1..=4 {
            for w in enumerate(n) {
                for g in Generator::simple(n).into_iter().chain((2..=n).map(Generator::T)) {
                    let wg = w.compose(&g.to_perm(n).unwrap()).unwrap();
                    assert_eq!(w.right_descends(g).unwrap(), wg.length() < w.length(), "{w:?} {g}");
                }
            }
        }
    }

    #[test]
    fn descent_examples() {
        let w = p("4 1 -3 -2");
        assert!(w.right_descends(Generator::S(1)).unwrap());
        assert!(w.right_descends(Generator::T(3)).unwrap());
        assert!(w.right_descends(Generator::S(4)).is_err());
        let e = SignedPermutation::identity(4);
        assert!(Generator::simple(4).into_iter().all(|g| !e.right_descends(g).unwrap()));
    }

    #[test]
    fn tau_and_xi_examples() {
        let w = p("4 1 -3 -2");
        assert_eq!(w.tau(), DescentSet::from_generators([Generator::S(1), Generator::S(2)]));
        assert_eq!(SignedPermutation::identity(3).tau(), DescentSet::default());
        for n in 1..=5 {
            let all = DescentSet::from_generators(Generator::simple(n));
            assert_eq!(SignedPermutation::longest(n).tau(), all);
        }
        assert_eq!(
            w.xi(3),
            DescentSet::from_generators([Generator::S(1), Generator::S(2), Generator::T(3)])
        );
        assert_eq!(w.xi(1), w.tau());
        for ratio in 1..5 {
            assert!(p("-1 2 3").xi(ratio).contains(Generator::t()));
        }
    }

    #[test]
    fn xi_at_ratio_one_is_tau() {
        for n in 1..=5 {
            for w in enumerate(n) {
                assert_eq!(w.xi(1), w.tau());
            }
        }
    }

    #[test]
    fn nonsplit_examples() {
        assert!(p("4 1 -3 -2").is_nonsplit());
        assert!(!SignedPermutation::identity(3).is_nonsplit());
        assert!(!p("-1 -2").is_nonsplit());
    }

    #[test]
    fn enumeration_counts_and_inverses() {
        assert_eq!(enumerate(2).count(), 8);
        assert_eq!(enumerate(4).count(), 384);
        for n in 1..=5 {
            let all: HashSet<_> = enumerate(n).collect();
            assert_eq!(all.len(), order(n));
            for w in &all {
                assert!(w.compose(&w.inverse()).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(p("[4,1,-3,-2]"), p("4 1 -3 -2"));
        assert!("1 1".parse::<SignedPermutation>().is_err());
        assert!("0 1".parse::<SignedPermutation>().is_err());
        assert_eq!(p("4 1 -3 -2").to_string(), "4 1 -3 -2");
        let json = serde_json::to_string(&p("2 -1")).unwrap();
        assert_eq!(json, "[2,-1]");
        assert!(serde_json::from_str::<SignedPermutation>("[2,2]").is_err());
    }
}
