//! Exhaustive stability scans over translation classes of subsets, on a
//! small worker pool. The reported witness is the first unstable class in
//! scan order, whatever the number of workers.
//!
//! cargo run --example stability_scan

use std::error::Error;

use sfactor::catalog::group;
use sfactor::solver::SolveBudget;
use sfactor::stability::{is_stable_group_with, translation_class_representatives, ScanOptions};

pub fn run_example() -> Result<Vec<(String, bool)>, Box<dyn Error>> {
    let opts = ScanOptions { workers: 4, chunk: 256 };
    let budget = SolveBudget::default();
    let mut out = Vec::new();
    for spec in ["cyclic:6", "cyclic:7", "dihedral:4", "dihedral:5", "quaternion8", "cyclic:2xcyclic:4", "alt4"] {
        let g = group(spec)?;
        let classes = translation_class_representatives(&g).count();
        let r = is_stable_group_with(&g, &budget, &opts)?;
        match (&r.witness_labels, r.witness_indices) {
            (Some(w), Some((lo, hi))) => println!(
                "{spec:<18} unstable: A = {{{}}} has indices {lo} < {hi} (class {} of {classes})",
                w.join(", "),
                r.subsets_examined
            ),
            _ => println!("{spec:<18} stable ({classes} classes checked)"),
        }
        out.push((spec.to_string(), r.stable));
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
