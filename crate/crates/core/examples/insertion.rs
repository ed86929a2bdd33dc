//! Domino insertion at every rank, step by step, and its inverse.

use typeb_cells::insertion::{insert, insert_steps, split_rank, uninsert};
use typeb_cells::SignedPermutation;

fn main() -> typeb_cells::Result<()> {
    let w: SignedPermutation = "4 1 -3 -2".parse()?;
    for r in 0..=w.rank() {
        let pair = insert(&w, r);
        println!("rank {r}: shape {:?}, split = {}", pair.left.shape().rows(), pair.is_split());
        println!("P\n{}Q\n{}", pair.left.pretty(), pair.right.pretty());
        assert_eq!(uninsert(&pair)?, w);
    }
    println!("s(w) = {}", split_rank(&w));

    println!("insertion steps at rank 1:");
    for st in insert_steps(&w, 1).iter().skip(1) {
        println!("after {} dominos\n{}", st.step, st.pair.left.pretty());
    }
    Ok(())
}
