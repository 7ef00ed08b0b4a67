//! Exact independence number `α` and independent domination number `i`.
//!
//! Both searches work on bit rows and break ties towards the lowest vertex
//! index, so the witness sets they return are deterministic.
//!
//! A graph that knows its group (see [`Graph::cayley_group`]) is solved on
//! one component only, with the identity forced into the set: every
//! component is a coset copy of the one through `e`, and the graph is
//! vertex-transitive. Plain graphs are solved component by component.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bitset::ElementSet;
use crate::cayley::Graph;
use crate::group::{GroupError, IDENTITY};

/// Default cap on search-tree nodes per solve.
pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

/// Largest graph [`brute_force_alpha_i`] accepts.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;

/// Limits on search effort.
///
/// A fresh budget limits each solve separately. After [`SolveBudget::started`]
/// all clones draw on one node pool and one deadline, which is how a scan or
/// a whole command is capped.
#[derive(Clone, Debug)]
pub struct SolveBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    deadline: Option<Instant>,
    pool: Option<Arc<AtomicU64>>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { node_limit: Some(DEFAULT_NODE_LIMIT), time_limit: None, deadline: None, pool: None }
    }
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget { node_limit: None, time_limit: None, deadline: None, pool: None }
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.node_limit = Some(nodes);
        self
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self.deadline = None;
        self
    }

    /// Fixes the deadline now and opens a shared node pool. Already started
    /// budgets are returned unchanged.
    pub fn started(&self) -> Self {
        let mut b = self.clone();
        if b.deadline.is_none() {
            b.deadline = b.time_limit.map(|d| Instant::now() + d);
        }
        if b.pool.is_none() && b.node_limit.is_some() {
            b.pool = Some(Arc::new(AtomicU64::new(0)));
        }
        b
    }

    /// Nodes drawn from the shared pool so far.
    pub fn nodes_used(&self) -> Option<u64> {
        self.pool.as_ref().map(|p| p.load(Ordering::Relaxed))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("time limit exceeded after {nodes} nodes")]
    TimeExceeded { nodes: u64 },
    #[error("graph has {n} vertices, oracle limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl SolveError {
    /// True for the two budget variants.
    pub fn is_budget(&self) -> bool {
        matches!(self, SolveError::BudgetExceeded { .. } | SolveError::TimeExceeded { .. })
    }
}

pub type SolveResult<T> = Result<T, SolveError>;

/// Node and clock accounting for one solve. Nodes are moved to the shared
/// pool in batches and when the meter is dropped.
#[derive(Debug)]
pub(crate) struct Meter {
    nodes: u64,
    unflushed: u64,
    base: u64,
    limit: u64,
    deadline: Option<Instant>,
    pool: Option<Arc<AtomicU64>>,
}

const FLUSH_EVERY: u64 = 256;

impl Meter {
    pub(crate) fn new(budget: &SolveBudget) -> Self {
        let deadline = budget.deadline.or_else(|| budget.time_limit.map(|d| Instant::now() + d));
        let base = budget.pool.as_ref().map_or(0, |p| p.load(Ordering::Relaxed));
        Meter {
            nodes: 0,
            unflushed: 0,
            base,
            limit: budget.node_limit.unwrap_or(u64::MAX),
            deadline,
            pool: budget.pool.clone(),
        }
    }

    fn flush(&mut self) {
        if let Some(p) = &self.pool {
            self.base = p.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
            self.unflushed = 0;
        }
    }

    #[inline]
    fn tick(&mut self) -> SolveResult<()> {
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            self.flush();
        }
        let used = if self.pool.is_some() { self.base + self.unflushed } else { self.nodes };
        if used > self.limit {
            return Err(SolveError::BudgetExceeded { nodes: self.limit });
        }
        if self.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(SolveError::TimeExceeded { nodes: self.nodes });
                }
            }
        }
        Ok(())
    }
}

impl Drop for Meter {
    fn drop(&mut self) {
        self.flush();
    }
}

/// Optimum value with one optimal set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub size: usize,
    pub witness: ElementSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Objective {
    MaxIndependent,
    MinMaximalIndependent,
}

/// Largest independent set.
pub fn independence_number(graph: &Graph, budget: &SolveBudget) -> SolveResult<Solution> {
    solve(graph, Objective::MaxIndependent, &mut Meter::new(budget))
}

/// Smallest maximal independent set (equivalently, smallest independent
/// dominating set).
pub fn independent_domination_number(graph: &Graph, budget: &SolveBudget) -> SolveResult<Solution> {
    solve(graph, Objective::MinMaximalIndependent, &mut Meter::new(budget))
}

pub(crate) fn solve(graph: &Graph, obj: Objective, meter: &mut Meter) -> SolveResult<Solution> {
    let comps = graph.components();
    if let Some(group) = graph.cayley_group() {
        if graph.vertex_count() == 0 {
            return Ok(Solution { size: 0, witness: ElementSet::new() });
        }
        let home = comps[0];
        debug_assert!(home.contains(IDENTITY));
        let (x, map) = graph.induced(&(home - graph.closed_neighbors(IDENTITY)));
        let sub = solve_plain(&x, obj, meter)?;
        let mut base: ElementSet = sub.witness.iter().map(|v| map[v]).collect();
        base.insert(IDENTITY);
        let mut witness = ElementSet::new();
        for comp in &comps {
            let t = comp.first().expect("components are non-empty");
            for w in &base {
                witness.insert(group.mul(w, t));
            }
        }
        return Ok(Solution { size: (sub.size + 1) * comps.len(), witness });
    }
    if comps.len() == 1 {
        return solve_plain(graph, obj, meter);
    }
    let mut total = Solution { size: 0, witness: ElementSet::new() };
    for comp in &comps {
        let (sub, map) = graph.induced(comp);
        let s = solve_plain(&sub, obj, meter)?;
        total.size += s.size;
        total.witness |= s.witness.iter().map(|v| map[v]).collect();
    }
    Ok(total)
}

fn solve_plain(graph: &Graph, obj: Objective, meter: &mut Meter) -> SolveResult<Solution> {
    match obj {
        Objective::MaxIndependent => max_independent(graph, meter),
        Objective::MinMaximalIndependent => min_maximal_independent(graph, meter),
    }
}

fn greedy_max_independent(graph: &Graph) -> ElementSet {
    // repeatedly take the lowest-index vertex of minimum remaining degree
    let mut free = graph.vertices();
    let mut out = ElementSet::new();
    while !free.is_empty() {
        let v = free
            .iter()
            .min_by_key(|&v| (*graph.neighbors(v) & free).len())
            .expect("free is non-empty");
        out.insert(v);
        free -= graph.closed_neighbors(v);
    }
    out
}

struct MaxSearch<'a> {
    graph: &'a Graph,
    best: usize,
    best_set: ElementSet,
}

impl MaxSearch<'_> {
    /// Branch and bound: `cand` is partitioned greedily into cliques, each of
    /// which holds at most one vertex of an independent set.
    fn expand(&mut self, cur: ElementSet, cur_len: usize, cand: ElementSet, meter: &mut Meter) -> SolveResult<()> {
        meter.tick()?;
        if cand.is_empty() {
            if cur_len > self.best {
                self.best = cur_len;
                self.best_set = cur;
            }
            return Ok(());
        }
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(cand.len());
        let mut uncovered = cand;
        let mut class = 0;
        while !uncovered.is_empty() {
            class += 1;
            let mut q = uncovered;
            while let Some(v) = q.first() {
                order.push((v, class));
                uncovered.remove(v);
                q &= *self.graph.neighbors(v);
            }
        }
        let mut rest = cand;
        for &(v, bound) in order.iter().rev() {
            if cur_len + bound <= self.best {
                return Ok(());
            }
            let mut next = cur;
            next.insert(v);
            self.expand(next, cur_len + 1, rest - self.graph.closed_neighbors(v), meter)?;
            rest.remove(v);
        }
        Ok(())
    }
}

fn max_independent(graph: &Graph, meter: &mut Meter) -> SolveResult<Solution> {
    let seed = greedy_max_independent(graph);
    let mut search = MaxSearch { graph, best: seed.len(), best_set: seed };
    search.expand(ElementSet::new(), 0, graph.vertices(), meter)?;
    Ok(Solution { size: search.best, witness: search.best_set })
}

fn greedy_independent_dominating(graph: &Graph) -> ElementSet {
    let all = graph.vertices();
    let mut dominated = ElementSet::new();
    let mut out = ElementSet::new();
    while dominated != all {
        let c = (all - dominated)
            .iter()
            .max_by_key(|&c| ((graph.closed_neighbors(c) - dominated).len(), std::cmp::Reverse(c)))
            .expect("an undominated vertex exists");
        out.insert(c);
        dominated |= graph.closed_neighbors(c);
    }
    out
}

struct DomSearch<'a> {
    graph: &'a Graph,
    all: ElementSet,
    best: usize,
    best_set: ElementSet,
    floor: usize,
}

impl DomSearch<'_> {
    /// Returns `true` once the optimum is proven (it met the lower bound).
    fn search(
        &mut self,
        chosen: ElementSet,
        k: usize,
        dominated: ElementSet,
        excluded: ElementSet,
        meter: &mut Meter,
    ) -> SolveResult<bool> {
        meter.tick()?;
        let undominated = self.all - dominated;
        if undominated.is_empty() {
            if k < self.best {
                self.best = k;
                self.best_set = chosen;
            }
            return Ok(self.best <= self.floor);
        }
        if k + 1 >= self.best {
            return Ok(false);
        }
        let allowed = self.all - dominated - excluded;
        let mut pick = None;
        let mut pick_count = usize::MAX;
        for v in &undominated {
            let c = (self.graph.closed_neighbors(v) & allowed).len();
            if c == 0 {
                return Ok(false);
            }
            if c < pick_count {
                pick_count = c;
                pick = Some(v);
            }
        }
        let max_gain = allowed
            .iter()
            .map(|c| (self.graph.closed_neighbors(c) - dominated).len())
            .max()
            .unwrap_or(0);
        if k + undominated.len().div_ceil(max_gain) >= self.best {
            return Ok(false);
        }
        let v = pick.expect("undominated is non-empty");
        let mut excl = excluded;
        for c in &(self.graph.closed_neighbors(v) & allowed) {
            let mut next = chosen;
            next.insert(c);
            if self.search(next, k + 1, dominated | self.graph.closed_neighbors(c), excl, meter)? {
                return Ok(true);
            }
            excl.insert(c);
        }
        Ok(false)
    }
}

fn min_maximal_independent(graph: &Graph, meter: &mut Meter) -> SolveResult<Solution> {
    let seed = greedy_independent_dominating(graph);
    let floor = berge_lower_bound(graph);
    let mut search = DomSearch { graph, all: graph.vertices(), best: seed.len(), best_set: seed, floor };
    if search.best > floor {
        search.search(ElementSet::new(), 0, ElementSet::new(), ElementSet::new(), meter)?;
    }
    Ok(Solution { size: search.best, witness: search.best_set })
}

/// `⌈|V| / (Δ + 1)⌉`, a lower bound on `i`.
pub fn berge_lower_bound(graph: &Graph) -> usize {
    graph.vertex_count().div_ceil(graph.max_degree() + 1)
}

/// The subgraph induced on `V \ N[v]`. For a vertex-transitive graph both
/// `α` and `i` of the input exceed those of the result by one.
pub fn vt_reduce(graph: &Graph, v: usize) -> Graph {
    graph.induced(&(graph.vertices() - graph.closed_neighbors(v))).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub count: u64,
    /// `None` only when nothing was visited.
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
    /// The visitor stopped the enumeration.
    pub aborted: bool,
}

/// Visits every maximal independent set once (Bron–Kerbosch with pivoting
/// on the complement graph). The visitor may return `Break` to stop.
pub fn enumerate_maximal_independent_sets<F>(
    graph: &Graph,
    budget: &SolveBudget,
    mut visitor: F,
) -> SolveResult<EnumerationSummary>
where
    F: FnMut(&ElementSet) -> ControlFlow<()>,
{
    let mut meter = Meter::new(budget);
    let mut summary = EnumerationSummary { count: 0, min_size: None, max_size: None, aborted: false };
    let all = graph.vertices();
    let non_adj: Vec<ElementSet> = (0..graph.vertex_count()).map(|v| all - graph.closed_neighbors(v)).collect();
    let flow = bron_kerbosch(&non_adj, ElementSet::new(), all, ElementSet::new(), &mut meter, &mut |r| {
        summary.count += 1;
        let s = r.len();
        summary.min_size = Some(summary.min_size.map_or(s, |m| m.min(s)));
        summary.max_size = Some(summary.max_size.map_or(s, |m| m.max(s)));
        visitor(r)
    })?;
    summary.aborted = flow.is_break();
    Ok(summary)
}

fn bron_kerbosch(
    non_adj: &[ElementSet],
    r: ElementSet,
    mut p: ElementSet,
    mut x: ElementSet,
    meter: &mut Meter,
    report: &mut dyn FnMut(&ElementSet) -> ControlFlow<()>,
) -> SolveResult<ControlFlow<()>> {
    meter.tick()?;
    if p.is_empty() {
        if x.is_empty() {
            return Ok(report(&r));
        }
        return Ok(ControlFlow::Continue(()));
    }
    let pivot = (p | x).iter().max_by_key(|&u| ((p & non_adj[u]).len(), std::cmp::Reverse(u))).expect("p is non-empty");
    for v in &(p - non_adj[pivot]) {
        let mut next = r;
        next.insert(v);
        if bron_kerbosch(non_adj, next, p & non_adj[v], x & non_adj[v], meter, report)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
        p.remove(v);
        x.insert(v);
    }
    Ok(ControlFlow::Continue(()))
}

/// `(α, i)` by listing every independent set. Independent of the search
/// code above; meant as a test oracle.
pub fn brute_force_alpha_i(graph: &Graph) -> SolveResult<(usize, usize)> {
    let n = graph.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(SolveError::TooLarge { n, max: BRUTE_FORCE_MAX_VERTICES });
    }
    let adj: Vec<u32> = (0..n).map(|v| graph.neighbors(v).low_mask() as u32).collect();
    let full: u32 = (1u32 << n) - 1;
    let (mut alpha, mut i) = (0usize, usize::MAX);
    for mask in 0..=full {
        let mut independent = true;
        let mut covered = mask;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if adj[v] & mask != 0 {
                independent = false;
                break;
            }
            covered |= adj[v];
        }
        if independent && covered == full {
            let s = mask.count_ones() as usize;
            alpha = alpha.max(s);
            i = i.min(s);
        }
    }
    Ok((alpha, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{boundary_set, cayley_graph};
    use crate::catalog;

    fn both(g: &Graph) -> (usize, usize) {
        let b = SolveBudget::default();
        let a = independence_number(g, &b).unwrap();
        let i = independent_domination_number(g, &b).unwrap();
        assert!(g.is_maximal_independent(&a.witness) && a.witness.len() == a.size);
        assert!(g.is_maximal_independent(&i.witness) && i.witness.len() == i.size);
        (a.size, i.size)
    }

    fn designated_graph(spec: &str) -> Graph {
        let n = catalog::parse_group_spec(spec).unwrap();
        let s = boundary_set(&n.group, &n.designated.unwrap()).unwrap();
        cayley_graph(&n.group, &s).unwrap()
    }

    #[test]
    fn small_graphs() {
        assert_eq!(both(&Graph::empty(0)), (0, 0));
        assert_eq!(both(&Graph::empty(6)), (6, 6));
        assert_eq!(both(&Graph::complete(5)), (1, 1));
        assert_eq!(both(&Graph::path(3)), (2, 1));
        assert_eq!(brute_force_alpha_i(&Graph::path(3)).unwrap(), (2, 1));
        assert_eq!(brute_force_alpha_i(&Graph::cycle(5)).unwrap(), (2, 2));
        assert!(brute_force_alpha_i(&Graph::empty(25)).is_err());
    }

    #[test]
    fn cycles() {
        for n in 3..=40 {
            let (a, i) = both(&Graph::cycle(n));
            assert_eq!((a, i), (n / 2, n.div_ceil(3)), "C_{n}");
            assert_eq!(i == a, [3, 4, 5, 7].contains(&n));
        }
    }

    #[test]
    fn enumeration() {
        let b = SolveBudget::default();
        let mut seen = Vec::new();
        let s = enumerate_maximal_independent_sets(&Graph::complete(3), &b, |r| {
            seen.push(r.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        seen.sort();
        assert_eq!(seen, vec![vec![0], vec![1], vec![2]]);
        assert_eq!((s.min_size, s.max_size), (Some(1), Some(1)));

        let s = enumerate_maximal_independent_sets(&Graph::cycle(4), &b, |_| ControlFlow::Continue(())).unwrap();
        assert_eq!((s.count, s.min_size, s.max_size), (2, Some(2), Some(2)));
        let s = enumerate_maximal_independent_sets(&Graph::cycle(6), &b, |_| ControlFlow::Continue(())).unwrap();
        assert_eq!((s.count, s.min_size, s.max_size), (5, Some(2), Some(3)));
        let s = enumerate_maximal_independent_sets(&Graph::cycle(6), &b, |_| ControlFlow::Break(())).unwrap();
        assert!(s.aborted && s.count == 1);
        let s = enumerate_maximal_independent_sets(&Graph::empty(0), &b, |_| ControlFlow::Continue(())).unwrap();
        assert_eq!((s.count, s.min_size), (1, Some(0)));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::cycle(31);
        let tiny = SolveBudget::default().with_nodes(1);
        assert!(matches!(independence_number(&g, &tiny), Err(SolveError::BudgetExceeded { .. })));
        // a started budget pools nodes across solves
        let pooled = SolveBudget::default().with_nodes(40).started();
        let mut results = (0..50).map(|_| independence_number(&Graph::cycle(31), &pooled));
        assert!(results.any(|r| r.is_err()));
        assert!(pooled.nodes_used().unwrap() >= 40);
        let past = SolveBudget::unlimited().with_time(Duration::ZERO);
        // the clock is read every 1024 nodes, so a small search may finish
        if let Err(e) = independence_number(&Graph::cycle(120), &past) {
            assert!(e.is_budget());
        }
    }

    #[test]
    fn berge_examples() {
        assert_eq!(berge_lower_bound(&Graph::empty(7)), 7);
        assert_eq!(berge_lower_bound(&designated_graph("dihedral:7")), 3);
        assert_eq!(berge_lower_bound(&designated_graph("elementary:3:3")), 3);
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(vt_reduce(&Graph::complete(6), 0).vertex_count(), 0);
        let x = vt_reduce(&designated_graph("order16_id11"), IDENTITY);
        assert_eq!(x.vertex_count(), 7);
        assert_eq!(both(&x), (3, 1));
        let x = vt_reduce(&designated_graph("c7_rtimes_c3"), IDENTITY);
        assert_eq!(x.vertex_count(), 14);
        assert_eq!(both(&x).0, 5);
    }

    #[test]
    fn designated_graphs() {
        assert_eq!(both(&designated_graph("elementary:2:5")), (4, 2));
        assert_eq!(both(&designated_graph("alt4")), (3, 2));
        assert_eq!(brute_force_alpha_i(&designated_graph("alt4")).unwrap(), (3, 2));
        for n in 3usize..=12 {
            let (a, i) = both(&designated_graph(&format!("dihedral:{n}")));
            assert_eq!((a, i), (2 * n / 3, (2 * n).div_ceil(5)), "D_{n}");
        }
    }

    #[test]
    fn provenance_does_not_change_values() {
        for spec in ["dihedral:6", "alt4", "order16_id12", "cyclic:12"] {
            let g = designated_graph(spec);
            assert_eq!(both(&g), both(&g.clone().without_provenance()), "{spec}");
        }
        // disconnected Cayley graph: Z_12 with S = {4, 8}
        let z = crate::group::make_cyclic(12).unwrap();
        let g = cayley_graph(&z, &ElementSet::from_indices([4, 8])).unwrap();
        assert_eq!(both(&g), (4, 4));
        assert_eq!(both(&g.without_provenance()), (4, 4));
    }
}
