//! Exhaustive verification suites with machine-readable reports.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cells::{combinatorial_cells, CellPartition, Side};
use crate::cycles::{
    core_cycles, cycle_partition, gamma, move_through, move_through_cycles, noncore_cycles, subsets, upsilon,
    Convention,
};
use crate::error::Result;
use crate::hecke::{KlOracle, WeightFunction};
use crate::insertion::{asymptotic_bitableaux, insert, insert_steps, split_rank, uninsert};
use crate::tableaux::{count_by_shape, enumerate_standard, DominoTableau, TableauPair};
use crate::wgroup::{enumerate, order, DescentSet, SignedPermutation};

/// Counterexamples kept in a report unless verbose.
pub const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one suite. A failing report always lists a counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    pub counterexamples: Vec<String>,
    pub ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{status} {} {} [{}] {} ms", self.check, self.params, counts.join(" "), self.ms)?;
        for c in &self.counterexamples {
            write!(f, "\n  ✗ {c}")?;
        }
        Ok(())
    }
}

/// Accumulates checks and counterexamples for one report.
struct Checker {
    check: &'static str,
    params: Value,
    counts: BTreeMap<String, u64>,
    failures: Vec<String>,
    failed: u64,
    verbose: bool,
    start: Instant,
}

impl Checker {
    fn new(check: &'static str, params: Value, verbose: bool) -> Self {
        Self {
            check,
            params,
            counts: BTreeMap::new(),
            failures: Vec::new(),
            failed: 0,
            verbose,
            start: Instant::now(),
        }
    }

    fn count(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_default() += by;
    }

    fn set(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.count("checks", 1);
        if !ok {
            self.failed += 1;
            if self.verbose || self.failures.len() < MAX_COUNTEREXAMPLES {
                self.failures.push(describe());
            }
        }
    }

    /// Records an `Err` as a failure.
    fn ok<T>(&mut self, r: Result<T>, describe: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.check(false, || format!("{}: {e}", describe()));
                None
            }
        }
    }

    fn finish(mut self) -> Report {
        self.set("failures", self.failed);
        Report {
            check: self.check.to_string(),
            params: self.params,
            status: if self.failed == 0 { Status::Pass } else { Status::Fail },
            counts: self.counts,
            counterexamples: self.failures,
            ms: self.start.elapsed().as_millis(),
        }
    }
}

fn show(t: &DominoTableau) -> String {
    format!("{:?}@{}", t.rows(), t.rank())
}

fn show_pair(p: &TableauPair) -> String {
    format!("({}, {})", show(&p.left), show(&p.right))
}

/// Insertion: validity, reversal, injectivity, the counting identity,
/// bitableaux agreement for `r ≥ n - 1`, and `Γ_r(G_r(w)) = G_{r+1}(w)`
/// with `Υ_r` undoing it, for all `w ∈ W_n` and `r ≤ rmax`.
pub fn verify_insertion(n: usize, rmax: usize, verbose: bool) -> Report {
    verify_insertion_with(n, rmax, verbose, gamma)
}

/// [`verify_insertion`] with a substitute for `Γ_r`, for fault injection.
pub fn verify_insertion_with(
    n: usize,
    rmax: usize,
    verbose: bool,
    gamma_r: impl Fn(&TableauPair) -> Result<TableauPair>,
) -> Report {
    let mut ck = Checker::new("insertion", json!({ "n": n, "rmax": rmax }), verbose);
    let elems: Vec<SignedPermutation> = enumerate(n).collect();
    ck.set("elements", elems.len() as u64);
    let mut next: Vec<TableauPair> = elems.iter().map(|w| insert(w, 0)).collect();
    for r in 0..=rmax {
        let cur = std::mem::replace(&mut next, elems.iter().map(|w| insert(w, r + 1)).collect());
        let distinct: HashSet<&TableauPair> = cur.iter().collect();
        ck.check(distinct.len() == elems.len(), || format!("r={r}: G_r is not injective"));
        let squares: u64 = count_by_shape(r, n).values().map(|c| c * c).sum();
        ck.check(squares == order(n) as u64, || format!("r={r}: Σ|SDT_r(λ)|² = {squares}"));
        for (w, pair) in elems.iter().zip(&cur) {
            ck.count("pairs", 1);
            ck.check(pair.validate().is_ok() && pair.rank() == r, || format!("w={w} r={r}: invalid pair {}", show_pair(pair)));
            let back = uninsert(pair);
            ck.check(back.as_ref().is_ok_and(|b| b == w), || format!("w={w} r={r}: reversal gave {back:?}"));
            if r + 1 >= n {
                let bi = asymptotic_bitableaux(w, r);
                ck.check(bi.as_ref().is_ok_and(|b| b == pair), || format!("w={w} r={r}: bitableaux disagree"));
            }
        }
        for (i, w) in elems.iter().enumerate() {
            let want = &next[i];
            let Some(got) = ck.ok(gamma_r(&cur[i]), || format!("w={w} r={r}: Γ_r failed")) else { continue };
            ck.count("gamma", 1);
            ck.check(&got == want, || {
                format!("w={w} r={r}: Γ_r(G_r(w)) = {} but G_(r+1)(w) = {}", show_pair(&got), show_pair(want))
            });
            let down = upsilon(want);
            ck.check(down.as_ref().is_ok_and(|d| d == &cur[i]), || format!("w={w} r={r}: Υ_r(G_(r+1)(w)) ≠ G_r(w)"));
        }
    }
    ck.finish()
}

/// τ and ξ read from tableaux agree with the signed permutation; the cycle
/// lemma; and the step-wise horizontal-domino lemma.
pub fn verify_tau(n: usize, verbose: bool) -> Report {
    let mut ck = Checker::new("tau", json!({ "n": n }), verbose);
    let elems: Vec<SignedPermutation> = enumerate(n).collect();
    for r in 0..=n {
        for w in &elems {
            let q = insert(w, r).right;
            ck.count("tau", 1);
            ck.check(q.tau() == w.tau(), || format!("w={w} r={r}: τ(w) = {} but τ(Q) = {}", w.tau(), q.tau()));
            for ratio in 1..=(r as u32 + 1) {
                ck.count("xi", 1);
                let xq = q.xi(ratio);
                ck.check(xq.as_ref().is_ok_and(|x| *x == w.xi(ratio)), || {
                    format!("w={w} r={r} ratio={ratio}: ξ(w) = {} but ξ(Q) = {xq:?}", w.xi(ratio))
                });
            }
            if r < n {
                for st in insert_steps(w, r).iter().skip(1).take(r + 1) {
                    let (Ok(pd), Ok(qd)) = (st.pair.left.dominos(), st.pair.right.dominos()) else {
                        ck.check(false, || format!("w={w} r={r}: malformed partial state"));
                        continue;
                    };
                    for j in 1..=st.step {
                        let a = pd[&w.at(j).unsigned_abs()].is_horizontal();
                        let b = qd[&(j as u32)].is_horizontal();
                        ck.count("steps", 1);
                        ck.check(a == b && b == (w.at(j) > 0), || format!("w={w} r={r} k={} j={j}: step lemma", st.step));
                    }
                }
            }
        }
        for t in enumerate_standard(r, n) {
            let convs: &[Convention] = if r == 0 { &[Convention::Regular] } else { &[Convention::Regular, Convention::Opposite] };
            for &conv in convs {
                let Some(cs) = ck.ok(cycle_partition(&t, conv), || format!("{}: cycles", show(&t))) else { continue };
                for c in &cs {
                    let adjacent = c.labels.len() == 2 && c.labels[1] == c.labels[0] + 1;
                    if !c.is_open() && adjacent {
                        continue;
                    }
                    ck.count("cycle_moves", 1);
                    let moved = move_through_cycles(&t, [c], conv);
                    ck.check(moved.as_ref().is_ok_and(|m| m.tau() == t.tau()), || {
                        format!("{} {conv:?} cycle {:?}: τ changes", show(&t), c.labels)
                    });
                }
            }
        }
    }
    ck.finish()
}

fn classes_at(n: usize, r: usize) -> HashMap<DominoTableau, BTreeSet<SignedPermutation>> {
    let mut out: HashMap<DominoTableau, BTreeSet<SignedPermutation>> = HashMap::new();
    for w in enumerate(n) {
        out.entry(insert(&w, r).right).or_default().insert(w);
    }
    out
}

/// `⊔_U C(MT(T,U)) = ⊔_U C(MT^op(T',U))` over `U ⊆ ncc(T)`, where
/// `T' = MT(T, cc(T))`, for every `T ∈ SDT_r(n)`.
pub fn verify_class_decomposition(n: usize, r: usize, verbose: bool) -> Report {
    let mut ck = Checker::new("classes", json!({ "n": n, "r": r }), verbose);
    let lower = classes_at(n, r);
    let upper = classes_at(n, r + 1);
    let union = |ck: &mut Checker, map: &HashMap<DominoTableau, BTreeSet<SignedPermutation>>, ts: &[DominoTableau]| {
        let mut all = BTreeSet::new();
        let mut total = 0;
        for t in ts {
            let c = map.get(t).cloned().unwrap_or_default();
            total += c.len();
            all.extend(c);
        }
        ck.check(total == all.len(), || "classes overlap".into());
        all
    };
    for t in enumerate_standard(r, n) {
        ck.count("tableaux", 1);
        let Some(ncc) = ck.ok(noncore_cycles(&t, Convention::Regular), || show(&t)) else { continue };
        let Some(cc) = ck.ok(core_cycles(&t, Convention::Regular), || show(&t)) else { continue };
        let Some(tp) = ck.ok(move_through_cycles(&t, &cc, Convention::Regular), || show(&t)) else { continue };
        ck.check(tp.rank() == r + 1 && tp.is_valid(), || format!("{}: T' = {} is not a rank r+1 tableau", show(&t), show(&tp)));
        if ncc.is_empty() {
            ck.count("no_noncore", 1);
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for u in subsets(&ncc) {
            let a = move_through(&t, &u, Convention::Regular);
            let b = move_through(&tp, &u, Convention::Opposite);
            let (Some(a), Some(b)) = (
                ck.ok(a, || format!("{}: MT(T,{u:?})", show(&t))),
                ck.ok(b, || format!("{}: MT^op(T',{u:?})", show(&t))),
            ) else {
                continue;
            };
            ck.check(b.is_valid() && b.rank() == r + 1, || format!("{}: {u:?} is not an opposite cycle set of T'", show(&t)));
            left.push(a);
            right.push(b);
        }
        let lhs = union(&mut ck, &lower, &left);
        let rhs = union(&mut ck, &upper, &right);
        ck.count("elements", lhs.len() as u64);
        ck.check(lhs == rhs, || format!("T={}: decomposition differs ({} vs {} elements)", show(&t), lhs.len(), rhs.len()));
    }
    ck.finish()
}

fn oracle(n: usize, l: WeightFunction, cache: Option<&Path>) -> Result<KlOracle> {
    match cache {
        Some(dir) => KlOracle::compute_cached(n, l, dir),
        None => KlOracle::compute(n, l),
    }
}

fn first_difference(a: &CellPartition, b: &CellPartition) -> String {
    let ib = b.index();
    for block in a.blocks() {
        let other = ib.get(&block[0]).map(|&i| &b.blocks()[i]);
        if other != Some(block) {
            let show = |v: &[SignedPermutation]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            return format!("{{{}}} vs {{{}}}", show(block), other.map(|o| show(o)).unwrap_or_default());
        }
    }
    "partitions differ".into()
}

/// Combinatorial `r`-cells against Kazhdan–Lusztig cells for `L(1, ratio)`,
/// `r = ratio - 1`, on all three sides.
pub fn verify_conjecture(n: usize, ratio: u32, cache: Option<&Path>, verbose: bool) -> Report {
    let mut ck = Checker::new("conjecture", json!({ "n": n, "ratio": ratio, "r": ratio.saturating_sub(1) }), verbose);
    let Some(l) = ck.ok(WeightFunction::with_ratio(ratio), || format!("ratio {ratio}")) else { return ck.finish() };
    let Some(o) = ck.ok(oracle(n, l, cache), || "Kazhdan–Lusztig oracle".into()) else { return ck.finish() };
    for side in Side::ALL {
        let kl = o.cells(side);
        let Some(comb) = ck.ok(combinatorial_cells(n, ratio as usize - 1, side), || format!("{side} cells")) else {
            continue;
        };
        ck.set(&format!("blocks_{side}"), kl.len() as u64);
        ck.check(kl.same_blocks(&comb), || format!("{side}: {}", first_difference(&comb, &kl)));
    }
    ck.set("elements", o.elements().len() as u64);
    ck.finish()
}

/// `s(w) = n - 1` exactly when the positive entries of `w` and the absolute
/// values of its negative entries both decrease.
pub fn verify_split(n: usize, verbose: bool) -> Report {
    let mut ck = Checker::new("split", json!({ "n": n }), verbose);
    for w in enumerate(n) {
        let s = split_rank(&w);
        let nonsplit = w.is_nonsplit();
        ck.count(if nonsplit { "nonsplit" } else { "split" }, 1);
        ck.check((s + 1 == n) == nonsplit, || format!("w={w}: s(w)={s} but nonsplit={nonsplit}"));
    }
    ck.finish()
}

/// The structure of left cells at ratio `n - 1` (rank `n - 2`).
pub fn verify_intermediate_structure(n: usize, cache: Option<&Path>, verbose: bool) -> Report {
    let mut ck = Checker::new("intermediate", json!({ "n": n, "ratio": n - 1 }), verbose);
    let r = n - 2;
    let (Some(mid), Some(asym)) = (
        ck.ok(WeightFunction::with_ratio(n as u32 - 1).and_then(|l| oracle(n, l, cache)), || "oracle".into()),
        ck.ok(WeightFunction::with_ratio(n as u32).and_then(|l| oracle(n, l, cache)), || "oracle".into()),
    ) else {
        return ck.finish();
    };
    let cells = mid.cells(Side::L);
    let asym = asym.cells(Side::L);
    let aidx = asym.index();
    let nonsplit = |w: &SignedPermutation| w.is_nonsplit();

    // (i) split and non-split elements are unions of cells
    for b in cells.blocks() {
        let kinds: BTreeSet<bool> = b.iter().map(nonsplit).collect();
        ck.check(kinds.len() == 1, || format!("cell of {} mixes split and non-split elements", b[0]));
    }
    let mut tau_classes: BTreeMap<DescentSet, BTreeSet<SignedPermutation>> = BTreeMap::new();
    for w in enumerate(n).filter(nonsplit) {
        tau_classes.entry(w.tau()).or_default().insert(w);
    }
    let mut split_cells = 0;
    for b in cells.blocks() {
        let pieces: BTreeSet<usize> = b.iter().map(|w| aidx[w]).collect();
        let whole = pieces.iter().map(|&i| asym.blocks()[i].len()).sum::<usize>() == b.len();
        if nonsplit(&b[0]) {
            // (iii) a τ-class of non-split elements, made of two asymptotic cells
            let class = &tau_classes[&b[0].tau()];
            ck.check(b.iter().cloned().collect::<BTreeSet<_>>() == *class, || format!("cell of {} is not its τ-class", b[0]));
            ck.check(whole && pieces.len() == 2, || format!("cell of {} is a union of {} asymptotic cells", b[0], pieces.len()));
        } else {
            // (ii) an asymptotic cell
            split_cells += 1;
            ck.check(whole && pieces.len() == 1, || format!("split cell of {} is not an asymptotic cell", b[0]));
        }
    }
    let asym_split = asym.blocks().iter().filter(|b| !nonsplit(&b[0])).count();
    ck.set("cells", cells.len() as u64);
    ck.set("split_cells", split_cells);
    ck.set("split_asymptotic_cells", asym_split as u64);
    ck.set("nonsplit_tau_classes", tau_classes.len() as u64);
    ck.check(cells.len() == asym_split + tau_classes.len(), || {
        format!("{} cells but {asym_split} + {} expected", cells.len(), tau_classes.len())
    });

    // (iv) rank n-1 recording tableaux of non-split elements with equal τ
    let top: Vec<(SignedPermutation, DominoTableau)> =
        enumerate(n).filter(nonsplit).map(|w| { let q = insert(&w, n - 1).right; (w, q) }).collect();
    let last: BTreeSet<u32> = [n as u32].into();
    for (w, s) in &top {
        let Some(flipped) = ck.ok(move_through(s, &last, Convention::Opposite), || format!("w={w}: MT^op(S,{{n}})")) else {
            continue;
        };
        for (y, t) in &top {
            if s.tau() == t.tau() {
                ck.count("tau_pairs", 1);
                ck.check(t == s || *t == flipped, || format!("w={w} y={y}: T is neither S nor MT^op(S,{{n}})"));
            }
        }
    }

    // (v) w ≈ y iff Q_r(y) = MT(Q_r(w), U) for some U ⊆ ncc(Q_r(w))
    let elems: Vec<SignedPermutation> = mid.elements().to_vec();
    let q: Vec<DominoTableau> = elems.iter().map(|w| insert(w, r).right).collect();
    let cidx = cells.index();
    for (i, w) in elems.iter().enumerate() {
        let Some(ncc) = ck.ok(noncore_cycles(&q[i], Convention::Regular), || format!("w={w}")) else { continue };
        let reach: HashSet<DominoTableau> =
            subsets(&ncc).iter().filter_map(|u| move_through(&q[i], u, Convention::Regular).ok()).collect();
        for (j, y) in elems.iter().enumerate() {
            ck.count("theorem_pairs", 1);
            let same = cidx[w] == cidx[y];
            ck.check(same == reach.contains(&q[j]), || format!("w={w} y={y}: same cell {same}, tableau relation {}", !same));
        }
    }
    ck.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_of_the_example() {
        let w: SignedPermutation = "4 1 -3 -2".parse().unwrap();
        let q = insert(&w, 2).right;
        assert_eq!(w.xi(3).to_string(), "{s1, s2, t3}");
        assert_eq!(q.xi(3).unwrap(), w.xi(3));
    }

    #[test]
    fn small_suites_pass() {
        let r = verify_insertion(1, 1, false);
        assert!(r.passed(), "{r}");
        assert_eq!(r.counts["elements"], 2);
        for rep in [verify_tau(3, false), verify_class_decomposition(3, 1, false), verify_conjecture(2, 1, None, false), verify_intermediate_structure(3, None, false), verify_split(4, false)] {
            assert!(rep.passed(), "{rep}");
        }
        assert_eq!(verify_conjecture(2, 1, None, false).counts["blocks_L"], 4);
    }

    #[test]
    fn mutation_is_caught() {
        // moving through the core cycles alone ignores the non-core part of Γ
        let broken = |p: &TableauPair| {
            let l = move_through_cycles(&p.left, &core_cycles(&p.left, Convention::Regular)?, Convention::Regular)?;
            let r = move_through_cycles(&p.right, &core_cycles(&p.right, Convention::Regular)?, Convention::Regular)?;
            TableauPair::new(l, r)
        };
        let rep = verify_insertion_with(3, 2, false, broken);
        assert!(!rep.passed());
        assert!(!rep.counterexamples.is_empty() && rep.counterexamples.len() <= MAX_COUNTEREXAMPLES);
        assert!(rep.to_json().contains(r#""status":"fail""#));
    }

    #[test]
    fn reports_are_stable() {
        let mut a = verify_tau(3, false);
        let mut b = verify_tau(3, false);
        a.ms = 0;
        b.ms = 0;
        assert_eq!(a.to_json(), b.to_json());
    }
}
