//! Lower and upper indices of the designated subset of several built-in
//! groups, plus one subset typed in by element labels.
//!
//! cargo run --example indices

use std::error::Error;

use sfactor::catalog::parse_group_spec;
use sfactor::solver::SolveBudget;
use sfactor::stability::subset_indices;

pub fn run_example() -> Result<Vec<(String, usize, usize)>, Box<dyn Error>> {
    let budget = SolveBudget::default();
    let mut rows = Vec::new();
    for spec in ["cyclic:9", "dihedral:5", "alt4", "c7_rtimes_c3", "ut3_3", "elementary:2:5", "order16_id13"] {
        let named = parse_group_spec(spec)?;
        let a = named.designated.ok_or("no designated subset")?;
        let r = subset_indices(&named.group, &a, &budget)?;
        println!(
            "{spec:<16} A = {:<36} |G:A|- = {}  |G:A|+ = {}  smallest s-factor {}",
            named.group.format_set(&a),
            r.lower,
            r.upper,
            named.group.format_set(&r.witness_small)
        );
        rows.push((spec.to_string(), r.lower, r.upper));
    }

    // labels follow each group's normal form, so words can be typed directly
    let a4 = parse_group_spec("alt4")?.group;
    let a = a4.parse_subset("e, t^2*a*b, b")?;
    let r = subset_indices(&a4, &a, &budget)?;
    println!("alt4             A = {:<36} |G:A|- = {}  |G:A|+ = {}", a4.format_set(&a), r.lower, r.upper);
    rows.push(("alt4 custom".into(), r.lower, r.upper));
    Ok(rows)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
