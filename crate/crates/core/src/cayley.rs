//! Difference sets, left Cayley graphs and DOT export.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::bitset::{ElementSet, MAX_ORDER};
use crate::group::{FiniteGroup, GroupError, Result, IDENTITY};

/// Simple undirected graph on at most [`MAX_ORDER`] vertices.
///
/// A graph built by [`cayley_graph`] remembers its group. The solvers use
/// that to exploit vertex-transitivity and the coset structure of the
/// components.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<ElementSet>,
    labels: Vec<String>,
    cayley: Option<Arc<FiniteGroup>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `0..n`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph with {n} vertices exceeds {MAX_ORDER}");
        Graph { n, adj: vec![ElementSet::new(); n], labels: (0..n).map(|i| i.to_string()).collect(), cayley: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            g.adj[u] = ElementSet::full(n);
            g.adj[u].remove(u);
        }
        g
    }

    /// Adds the edge `{u, v}`. Loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &ElementSet {
        &self.adj[v]
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> ElementSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(ElementSet::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(ElementSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// The group this graph is a Cayley graph of, if known.
    pub fn cayley_group(&self) -> Option<&Arc<FiniteGroup>> {
        self.cayley.as_ref()
    }

    /// Drops the group provenance, so solvers treat this as a plain graph.
    pub fn without_provenance(mut self) -> Self {
        self.cayley = None;
        self
    }

    /// Subgraph induced on `keep`, renumbered in ascending order. Returns the
    /// graph and the map from new to old vertex indices.
    pub fn induced(&self, keep: &ElementSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().filter(|&v| v < self.n).collect();
        let mut back = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| (self.adj[v] & *keep).iter().map(|w| back[w]).collect())
            .collect();
        let labels = map.iter().map(|&v| self.labels[v].clone()).collect();
        (Graph { n: map.len(), adj, labels, cayley: None }, map)
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<ElementSet> {
        let mut seen = ElementSet::new();
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen.contains(v) {
                continue;
            }
            let mut comp = ElementSet::singleton(v);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = ElementSet::new();
                for u in &frontier {
                    next |= self.adj[u];
                }
                frontier = next - comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_independent(&self, s: &ElementSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }

    /// Every vertex is in `s` or adjacent to a member of `s`.
    pub fn is_dominating(&self, s: &ElementSet) -> bool {
        let mut covered = *s;
        for v in s {
            covered |= self.adj[v];
        }
        covered == self.vertices()
    }

    /// Independent and not contained in a larger independent set.
    pub fn is_maximal_independent(&self, s: &ElementSet) -> bool {
        self.is_independent(s) && self.is_dominating(s)
    }

    pub fn check_invariants(&self) -> bool {
        (0..self.n).all(|u| {
            !self.adj[u].contains(u)
                && self.adj[u].iter().all(|v| v < self.n && self.adj[v].contains(u))
        })
    }
}

/// `∂A = A⁻¹A \ {e}`.
pub fn boundary_set(g: &FiniteGroup, a: &ElementSet) -> Result<ElementSet> {
    if a.is_empty() {
        return Err(GroupError::Domain("boundary of the empty set".into()));
    }
    let mut s = g.product_set(&g.set_inverse(a), a);
    s.remove(IDENTITY);
    Ok(s)
}

fn check_connection_set(g: &FiniteGroup, s: &ElementSet) -> Result<()> {
    if s.contains(IDENTITY) {
        return Err(GroupError::Domain("connection set contains the identity".into()));
    }
    if s.last().is_some_and(|x| x >= g.order()) {
        return Err(GroupError::UnknownElement(format!("#{}", s.last().unwrap())));
    }
    if g.set_inverse(s) != *s {
        return Err(GroupError::Domain("connection set is not closed under inverses".into()));
    }
    Ok(())
}

/// Left Cayley graph: `u ~ v` iff `v u⁻¹ ∈ S`.
pub fn cayley_graph(g: &FiniteGroup, s: &ElementSet) -> Result<Graph> {
    cayley_graph_shared(&Arc::new(g.clone()), s)
}

/// As [`cayley_graph`], sharing an existing group handle.
pub fn cayley_graph_shared(g: &Arc<FiniteGroup>, s: &ElementSet) -> Result<Graph> {
    check_connection_set(g, s)?;
    let n = g.order();
    let adj = (0..n).map(|u| s.iter().map(|x| g.mul(x, u)).collect()).collect();
    Ok(Graph { n, adj, labels: g.labels().to_vec(), cayley: Some(Arc::clone(g)) })
}

/// Components of `Cay(G, S)`: the right cosets of `⟨S⟩`, ordered by their
/// smallest element.
pub fn graph_components(g: &FiniteGroup, s: &ElementSet) -> Result<Vec<ElementSet>> {
    check_connection_set(g, s)?;
    let h = g.subgroup_generated(s);
    g.coset_partition(&h)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the graph as an undirected DOT document. Nodes appear in index
/// order and edges `u -- v` with `u < v` in lexicographic order, so equal
/// graphs give byte-identical output.
pub fn export_dot(graph: &Graph, highlight: Option<&ElementSet>) -> String {
    let mut out = String::from("graph cayley {\n  node [shape=circle];\n");
    for v in 0..graph.n {
        let label = dot_escape(graph.label(v));
        if highlight.is_some_and(|h| h.contains(v)) {
            let _ = writeln!(out, "  {v} [label=\"{label}\", style=filled, fillcolor=\"#f4a261\"];");
        } else {
            let _ = writeln!(out, "  {v} [label=\"{label}\"];");
        }
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
