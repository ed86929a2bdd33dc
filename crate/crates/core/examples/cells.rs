//! Combinatorial cells against Kazhdan–Lusztig cells for each parameter ratio.

use typeb_cells::cells::{combinatorial_cells, Side};
use typeb_cells::hecke::{KlOracle, WeightFunction};

fn main() -> typeb_cells::Result<()> {
    let n = 3;
    for k in 1..=n as u32 + 1 {
        let o = KlOracle::compute(n, WeightFunction::with_ratio(k)?)?;
        for side in Side::ALL {
            let kl = o.cells(side);
            let comb = combinatorial_cells(n, k as usize - 1, side)?;
            println!("b/a = {k} {side}: {} cells, combinatorial agree = {}", kl.len(), kl.same_blocks(&comb));
        }
    }
    let left = combinatorial_cells(n, 1, Side::L)?;
    println!("{} on W_{n}:", left.label);
    for b in left.blocks() {
        let members: Vec<String> = b.iter().map(|w| format!("({w})")).collect();
        println!("  {}", members.join(" "));
    }
    Ok(())
}
