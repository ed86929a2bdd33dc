//! Bruhat order on `W_n`.
//!
//! `W_n` embeds in the symmetric group on `{-n, …, -1, 1, …, n}`, and the
//! Bruhat order of `W_n` is the one induced from there, which the rank-matrix
//! criterion decides: `u ≤ w` iff `#{a ≤ i : u(a) ≥ j} ≤ #{a ≤ i : w(a) ≥ j}`
//! for all `i, j`.

use crate::wgroup::SignedPermutation;

/// The image in `S_{2n}`, as a 0-based permutation of `0..2n`.
fn unfold(w: &SignedPermutation) -> Vec<usize> {
    let n = w.rank() as i32;
    let pos = |x: i32| if x > 0 { (n + x - 1) as usize } else { (n + x) as usize };
    let mut out = vec![0; 2 * n as usize];
    for i in 1..=n {
        let x = w.at(i as usize);
        out[pos(i)] = pos(x);
        out[pos(-i)] = pos(-x);
    }
    out
}

/// `y ≤ w` in the Bruhat order.
pub fn bruhat_le(y: &SignedPermutation, w: &SignedPermutation) -> bool {
    if y.rank() != w.rank() {
        return false;
    }
    let (u, v) = (unfold(y), unfold(w));
    let m = u.len();
    // running counts of values ≥ j among the first i+1 positions
    let mut cu = vec![0i32; m + 1];
    let mut cv = vec![0i32; m + 1];
    for i in 0..m {
        cu[..=u[i]].iter_mut().for_each(|c| *c += 1);
        cv[..=v[i]].iter_mut().for_each(|c| *c += 1);
        if (0..m).any(|j| cu[j] > cv[j]) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgroup::{enumerate, Generator};
    use std::collections::{BTreeSet, HashSet};

    /// All reflections of `W_n`: conjugates of the simple generators.
    fn reflections(n: usize) -> BTreeSet<SignedPermutation> {
        let mut out = BTreeSet::new();
        for w in enumerate(n) {
            for g in Generator::simple(n) {
                let s = g.to_perm(n).unwrap();
                out.insert(w.compose(&s).unwrap().compose(&w.inverse()).unwrap());
            }
        }
        out
    }

    /// Elements reachable from `w` by repeatedly multiplying by a reflection
    /// and dropping in length.
    fn down_set(w: &SignedPermutation, refl: &BTreeSet<SignedPermutation>) -> HashSet<SignedPermutation> {
        let mut seen: HashSet<SignedPermutation> = [w.clone()].into();
        let mut stack = vec![w.clone()];
        while let Some(x) = stack.pop() {
            for r in refl {
                let y = x.compose(r).unwrap();
                if y.length() < x.length() && seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn matches_reflection_order() {
        for n in 1..=3 {
            let refl = reflections(n);
            assert_eq!(refl.len(), n * n);
            for w in enumerate(n) {
                let below = down_set(&w, &refl);
                for y in enumerate(n) {
                    assert_eq!(bruhat_le(&y, &w), below.contains(&y), "{y} ≤ {w}");
                }
            }
        }
    }

    #[test]
    fn extremes() {
        let e = SignedPermutation::identity(3);
        let w0 = SignedPermutation::longest(3);
        for w in enumerate(3) {
            assert!(bruhat_le(&e, &w));
            assert!(bruhat_le(&w, &w0));
        }
    }
}
