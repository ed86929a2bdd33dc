//! Run every verification suite at a small size and print the reports.

use typeb_cells::verify::*;

fn main() {
    let n = 3;
    let mut reports = vec![verify_insertion(n, n, false), verify_tau(n, false), verify_split(n, false)];
    reports.extend((0..=n).map(|r| verify_class_decomposition(n, r, false)));
    reports.extend((1..=n as u32).map(|k| verify_conjecture(n, k, None, false)));
    reports.push(verify_intermediate_structure(n, None, false));
    for r in &reports {
        println!("{r}");
    }
    println!("{}", reports[0].to_json());
    std::process::exit(if reports.iter().all(Report::passed) { 0 } else { 1 });
}
