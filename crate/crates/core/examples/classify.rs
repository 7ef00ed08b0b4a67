//! Certifies the fourteen stable groups by exhaustive scan and checks every
//! instability witness the classification relies on.
//!
//! cargo run --release --example classify

use std::error::Error;

use sfactor::solver::SolveBudget;
use sfactor::stability::ScanOptions;
use sfactor::witnesses::verify_classification;

pub fn run_example() -> Result<bool, Box<dyn Error>> {
    let run = verify_classification(&SolveBudget::default(), &ScanOptions::default());
    print!("{}", run.to_table());
    Ok(run.all_pass)
}

fn main() -> Result<(), Box<dyn Error>> {
    if run_example()? {
        Ok(())
    } else {
        Err("classification check failed".into())
    }
}
