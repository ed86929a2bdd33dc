//! Cycle partitions and moving through, with both choices of fixed squares.

use std::collections::BTreeSet;

use typeb_cells::cycles::{core_cycles, cycle_partition, move_through, Convention};
use typeb_cells::insertion::insert;
use typeb_cells::SignedPermutation;

fn main() -> typeb_cells::Result<()> {
    let w: SignedPermutation = "4 1 -3 -2".parse()?;
    let t = insert(&w, 2).right;
    println!("T\n{}", t.pretty());
    for conv in [Convention::Regular, Convention::Opposite] {
        for c in cycle_partition(&t, conv)? {
            println!("{conv:?} cycle {:?}: {:?}", c.labels, c.kind);
        }
    }

    let core: BTreeSet<u32> = core_cycles(&t, Convention::Regular)?.into_iter().flat_map(|c| c.labels).collect();
    let up = move_through(&t, &core, Convention::Regular)?;
    println!("MT(T, cc(T)) has rank {}\n{}", up.rank(), up.pretty());
    Ok(())
}
