//! The graph solvers on their own: independence number, independent
//! domination number, maximal-independent-set enumeration and the Berge
//! bound, on cycles and the Petersen graph.
//!
//! cargo run --example solver

use std::error::Error;
use std::ops::ControlFlow;

use sfactor::cayley::Graph;
use sfactor::solver::{
    berge_lower_bound, enumerate_maximal_independent_sets, independence_number, independent_domination_number,
    SolveBudget,
};

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges)
}

pub fn run_example() -> Result<Vec<(usize, usize)>, Box<dyn Error>> {
    let budget = SolveBudget::default();
    let mut out = Vec::new();
    let graphs: Vec<(String, Graph)> =
        (5..=9).map(|n| (format!("C{n}"), Graph::cycle(n))).chain([("Petersen".into(), petersen())]).collect();
    for (name, g) in &graphs {
        let a = independence_number(g, &budget)?;
        let i = independent_domination_number(g, &budget)?;
        let mut sizes = Vec::new();
        let summary = enumerate_maximal_independent_sets(g, &budget, |s| {
            sizes.push(s.len());
            ControlFlow::Continue(())
        })?;
        sizes.sort_unstable();
        sizes.dedup();
        println!(
            "{name:<9} alpha = {} {:?}  i = {} {:?}  Berge bound {}  {} maximal sets, sizes {sizes:?}",
            a.size,
            a.witness,
            i.size,
            i.witness,
            berge_lower_bound(g),
            summary.count
        );
        out.push((a.size, i.size));
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
