//! Groups that are not built in: close a set of permutations, save the
//! multiplication table, load it back and compute both right and left
//! indices.
//!
//! cargo run --example custom_table

use std::error::Error;

use sfactor::group::{close_permutation_generators, read_table, write_table};
use sfactor::solver::SolveBudget;
use sfactor::stability::{left_subset_indices, subset_indices};

pub fn run_example() -> Result<((usize, usize), (usize, usize)), Box<dyn Error>> {
    // the dicyclic group of order 12 as permutations of 12 points
    let x: Vec<usize> = vec![1, 2, 3, 4, 5, 0, 7, 8, 9, 10, 11, 6];
    let y: Vec<usize> = vec![6, 11, 10, 9, 8, 7, 3, 2, 1, 0, 5, 4];
    let g = close_permutation_generators(12, &[x, y])?.with_name("dic3");
    println!("closed {} elements, abelian: {}", g.order(), g.is_abelian());

    let text = write_table(&g);
    let path = std::env::temp_dir().join(format!("sfactor-dic3-{}.txt", std::process::id()));
    std::fs::write(&path, &text)?;
    println!("table written to {} ({} lines)", path.display(), text.lines().count());
    let loaded = read_table(&std::fs::read_to_string(&path)?)?;
    std::fs::remove_file(&path)?;
    assert_eq!(loaded.table_rows(), g.table_rows());

    let a = loaded.parse_subset("#0, #1, #6")?;
    let budget = SolveBudget::default();
    let right = subset_indices(&loaded, &a, &budget)?;
    let left = left_subset_indices(&loaded, &a, &budget)?;
    println!("A = {}", loaded.format_set(&a));
    println!("  right indices {} / {}", right.lower, right.upper);
    println!("  left indices  {} / {}", left.lower, left.upper);
    Ok(((right.lower, right.upper), (left.lower, left.upper)))
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
