//! Γ_r raises the rank of an insertion pair and Υ_r lowers it again.

use typeb_cells::cycles::{extended_cycles, gamma, upsilon, Convention};
use typeb_cells::insertion::insert;
use typeb_cells::wgroup::enumerate;
use typeb_cells::SignedPermutation;

fn main() -> typeb_cells::Result<()> {
    let w: SignedPermutation = "4 1 -3 -2".parse()?;
    let p = insert(&w, 2);
    let e = extended_cycles(&p.left, &p.right, Convention::Regular)?;
    println!("γ(S,T) = {:?}", e.left_labels());
    println!("γ(T,S) = {:?}", e.right_labels());
    let up = gamma(&p)?;
    println!("Γ_2(G_2(w)) = G_3(w): {}", up == insert(&w, 3));
    println!("Υ_2(G_3(w)) = G_2(w): {}", upsilon(&up)? == p);

    let n = 4;
    let mut agree = 0;
    for w in enumerate(n) {
        agree += (0..n).filter(|&r| gamma(&insert(&w, r)).is_ok_and(|g| g == insert(&w, r + 1))).count();
    }
    println!("Γ_r intertwines insertion in {agree} of {} cases on W_{n}", n * typeb_cells::wgroup::order(n));
    Ok(())
}
