//! τ and the enhanced ξ read from a signed permutation and from its tableaux.

use typeb_cells::insertion::insert;
use typeb_cells::SignedPermutation;

fn main() -> typeb_cells::Result<()> {
    let w: SignedPermutation = "4 1 -3 -2".parse()?;
    println!("w = {w}, length {}, nonsplit = {}", w.length(), w.is_nonsplit());
    println!("τ(w) = {}", w.tau());
    for r in 0..=w.rank() {
        let q = insert(&w, r).right;
        // ξ at ratio b/a is read off the rank b/a - 1 tableau
        println!("r = {r}: τ(Q) = {}, ξ(w) = {}, ξ(Q) = {}", q.tau(), w.xi(r as u32 + 1), q.xi(r as u32 + 1)?);
    }
    Ok(())
}
