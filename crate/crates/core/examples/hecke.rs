//! Kazhdan–Lusztig basis elements for an unequal-parameter Hecke algebra.

use typeb_cells::hecke::{bar, kl_basis, KlOracle, WeightFunction};
use typeb_cells::{Generator, SignedPermutation};

fn main() -> typeb_cells::Result<()> {
    // L(s_i) = 1 and L(t) = 2
    let l = WeightFunction::new(1, 2)?;
    let w: SignedPermutation = "-2 1".parse()?;
    let c = kl_basis(&w, l)?;
    println!("c_({w}) with L = {l:?}:");
    for (y, p) in c.terms() {
        println!("  ({y})  {p}");
    }
    println!("bar-invariant: {}", bar(&c, l)? == c);

    let o = KlOracle::compute(2, l)?;
    let s = Generator::S(1);
    println!("c_s1 · c_({w}) =");
    for (y, m) in o.c_multiply_left(s, &w)? {
        println!("  ({m}) · c_({y})");
    }
    Ok(())
}
