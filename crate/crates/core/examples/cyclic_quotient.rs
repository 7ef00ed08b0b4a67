//! Builds the cyclic-quotient instability witness in a few groups: an
//! independent dominating set of size ceil(n/2) next to an independent set
//! of size n-1, where n is the order of the cyclic quotient.
//!
//! cargo run --example cyclic_quotient

use std::error::Error;

use sfactor::catalog::group;
use sfactor::solver::SolveBudget;
use sfactor::stability::subset_indices;
use sfactor::witnesses::cyclic_quotient_witness;

pub fn run_example() -> Result<usize, Box<dyn Error>> {
    // (group, generators of H, g, h)
    let cases = [
        ("cyclic:4xcyclic:4", "(0,1)", "(1,0)", "(0,1)"),
        ("cyclic:15", "5", "3", "10"),
        ("dihedral:3xcyclic:4", "(a,0),(b,0)", "(e,1)", "(a,0)"),
        ("alt4xcyclic:5", "(a,0),(t,0)", "(e,1)", "(t,0)"),
    ];
    let budget = SolveBudget::default();
    for (spec, gens, g_label, h_label) in cases {
        let g = group(spec)?;
        let h_set = g.subgroup_generated(&g.parse_subset(gens)?);
        let w = cyclic_quotient_witness(&g, &h_set, g.parse_element(g_label)?, g.parse_element(h_label)?)?;
        let r = subset_indices(&g, &w.subset, &budget)?;
        println!("{spec}: |H| = {}, n = {}", h_set.len(), w.n);
        println!("  A = {}", g.format_set(&w.subset));
        println!("  dominating  {} (size {})", g.format_set(&w.dominating), w.dominating.len());
        println!("  independent {} (size {})", g.format_set(&w.independent), w.independent.len());
        println!("  exact indices {} < {}", r.lower, r.upper);
    }
    Ok(cases.len())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
