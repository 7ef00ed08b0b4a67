//! Writes the Cayley graph of A4 on the boundary of {e, b, t} as DOT, with
//! a smallest maximal independent set filled in. The graph is the
//! icosahedron: 12 vertices, 5-regular.
//!
//! cargo run --example cayley_dot > a4.dot && dot -Tsvg a4.dot > a4.svg

use std::error::Error;

use sfactor::catalog::parse_group_spec;
use sfactor::cayley::{boundary_set, cayley_graph, export_dot, graph_components};
use sfactor::solver::{independent_domination_number, SolveBudget};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let named = parse_group_spec("alt4")?;
    let g = &named.group;
    let s = boundary_set(g, &named.designated.ok_or("no designated subset")?)?;
    let graph = cayley_graph(g, &s)?;
    let small = independent_domination_number(&graph, &SolveBudget::default())?;
    eprintln!(
        "connection set {} ({} edges, {} component), highlighted {}",
        g.format_set(&s),
        graph.edge_count(),
        graph_components(g, &s)?.len(),
        g.format_set(&small.witness)
    );
    let dot = export_dot(&graph, Some(&small.witness));
    print!("{dot}");
    Ok(dot)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
