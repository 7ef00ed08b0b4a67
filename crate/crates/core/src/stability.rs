//! Subset indices, s-factors and the stability scan.
//!
//! For `A ⊆ G`, a right s-factor is a set `B` maximal with the property that
//! every element of `AB` factors uniquely as `ab`. These are exactly the
//! maximal independent sets of `Cay(G, ∂A)`, so the upper index `|G:A|⁺` is
//! `α` of that graph and the lower index `|G:A|⁻` is `i`.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bitset::ElementSet;
use crate::cayley::{boundary_set, cayley_graph_shared};
use crate::group::{FiniteGroup, GroupError, IDENTITY};
use crate::solver::{solve, Meter, Objective, SolveBudget, SolveError, SolveResult};

/// Largest group [`brute_force_indices`] accepts.
pub const BRUTE_FORCE_MAX_ORDER: usize = 14;

/// Largest group the exhaustive scan accepts.
pub const EXHAUSTIVE_MAX_ORDER: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    /// `|G:A|⁻`
    pub lower: usize,
    /// `|G:A|⁺`
    pub upper: usize,
    pub witness_small: ElementSet,
    pub witness_large: ElementSet,
    pub stable: bool,
    /// `∂A`; empty for reports from [`brute_force_indices`].
    pub boundary: ElementSet,
    /// Number of components of `Cay(G, ∂A)`, i.e. `|G : ⟨∂A⟩|`.
    pub components: usize,
}

/// Whether `B` is a right s-factor of `A`.
pub fn sfactor_check(g: &FiniteGroup, a: &ElementSet, b: &ElementSet) -> Result<bool, GroupError> {
    if a.is_empty() || b.is_empty() {
        return Err(GroupError::Domain("s-factor check needs non-empty sets".into()));
    }
    let ab = g.product_set(a, b);
    if ab.len() != a.len() * b.len() {
        return Ok(false);
    }
    // B + {x} keeps unique products iff Ax misses AB
    Ok((0..g.order()).filter(|x| !b.contains(*x)).all(|x| g.right_translate(a, x).intersects(&ab)))
}

/// Right indices of `A` via the Cayley graph on `∂A`.
pub fn subset_indices(g: &FiniteGroup, a: &ElementSet, budget: &SolveBudget) -> SolveResult<IndexReport> {
    subset_indices_shared(&Arc::new(g.clone()), a, budget)
}

/// As [`subset_indices`], sharing an existing group handle.
pub fn subset_indices_shared(g: &Arc<FiniteGroup>, a: &ElementSet, budget: &SolveBudget) -> SolveResult<IndexReport> {
    check_subset(g, a)?;
    let boundary = boundary_set(g, a)?;
    let graph = cayley_graph_shared(g, &boundary)?;
    let mut meter = Meter::new(budget);
    let small = solve(&graph, Objective::MinMaximalIndependent, &mut meter)?;
    let large = solve(&graph, Objective::MaxIndependent, &mut meter)?;
    for w in [&small.witness, &large.witness] {
        assert!(sfactor_check(g, a, w)?, "solver witness {w:?} is not an s-factor of {a:?}");
    }
    Ok(IndexReport {
        lower: small.size,
        upper: large.size,
        witness_small: small.witness,
        witness_large: large.witness,
        stable: small.size == large.size,
        boundary,
        components: g.order() / g.subgroup_generated(&boundary).len(),
    })
}

/// Left indices: `B` with `BA` uniquely factored, computed as right indices
/// in the opposite group.
pub fn left_subset_indices(g: &FiniteGroup, a: &ElementSet, budget: &SolveBudget) -> SolveResult<IndexReport> {
    subset_indices(&g.opposite(), a, budget)
}

fn check_subset(g: &FiniteGroup, a: &ElementSet) -> Result<(), GroupError> {
    if a.is_empty() {
        return Err(GroupError::Domain("subset must be non-empty".into()));
    }
    if a.last().is_some_and(|x| x >= g.order()) {
        return Err(GroupError::UnknownElement(format!("#{}", a.last().unwrap())));
    }
    Ok(())
}

/// Indices straight from the definition, trying every candidate `B`.
pub fn brute_force_indices(g: &FiniteGroup, a: &ElementSet) -> SolveResult<IndexReport> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(SolveError::TooLarge { n, max: BRUTE_FORCE_MAX_ORDER });
    }
    check_subset(g, a)?;
    let ax: Vec<u32> = (0..n).map(|x| g.right_translate(a, x).low_mask() as u32).collect();
    let k = a.len() as u32;
    let mut small: Option<u32> = None;
    let mut large: Option<u32> = None;
    for b in 1u32..(1 << n) {
        let mut prod = 0u32;
        let mut m = b;
        while m != 0 {
            prod |= ax[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        if prod.count_ones() != k * b.count_ones() {
            continue;
        }
        if !(0..n).all(|x| b & (1 << x) != 0 || ax[x] & prod != 0) {
            continue;
        }
        if small.is_none_or(|s| b.count_ones() < s.count_ones()) {
            small = Some(b);
        }
        if large.is_none_or(|l| b.count_ones() > l.count_ones()) {
            large = Some(b);
        }
    }
    let (small, large) = (small.expect("G itself admits an s-factor"), large.expect("as above"));
    let (lower, upper) = (small.count_ones() as usize, large.count_ones() as usize);
    Ok(IndexReport {
        lower,
        upper,
        witness_small: ElementSet::from_mask(small as u64),
        witness_large: ElementSet::from_mask(large as u64),
        stable: lower == upper,
        boundary: ElementSet::new(),
        components: 0,
    })
}

/// Lexicographic `k`-subsets of `{1, .., n-1}`, each returned with `0` added.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (1..=k).collect(), done: k >= n }
    }
}

impl Iterator for Combinations {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        if self.done {
            return None;
        }
        let mut out = ElementSet::singleton(IDENTITY);
        for &i in &self.idx {
            out.insert(i);
        }
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Whether `a` is the lexicographically least of its left translates `xA`.
pub fn is_canonical(g: &FiniteGroup, a: &ElementSet) -> bool {
    if !a.contains(IDENTITY) {
        return false;
    }
    a.iter().skip(1).all(|x| g.left_translate(g.inv(x), a).lex_cmp(a).is_ge())
}

/// One representative per class `{xA : x ∈ G}` of non-empty subsets, namely
/// the class member whose sorted index list is lexicographically least.
/// Yields by ascending size, then lexicographically.
pub fn translation_class_representatives(g: &FiniteGroup) -> impl Iterator<Item = ElementSet> + '_ {
    let n = g.order();
    (0..n).flat_map(move |k| Combinations::new(n, k)).filter(move |a| is_canonical(g, a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub group_name: String,
    pub stable: bool,
    pub witness_subset: Option<ElementSet>,
    /// Element labels of `witness_subset`.
    pub witness_labels: Option<Vec<String>>,
    /// `(lower, upper)` for the witness.
    pub witness_indices: Option<(usize, usize)>,
    pub subsets_examined: u64,
}

impl StabilityReport {
    /// Line-oriented `key: value` record.
    pub fn to_text(&self) -> String {
        let witness = match &self.witness_labels {
            Some(l) => format!("{{{}}}", l.join(", ")),
            None => "none".into(),
        };
        let (lower, upper) = match self.witness_indices {
            Some((l, u)) => (l.to_string(), u.to_string()),
            None => ("-".into(), "-".into()),
        };
        format!(
            "group: {}\nstable: {}\nwitness: {witness}\nlower: {lower}\nupper: {upper}\nexamined: {}\n",
            self.group_name, self.stable, self.subsets_examined
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group_name,
            "stable": self.stable,
            "witness": self.witness_labels,
            "lower": self.witness_indices.map(|w| w.0),
            "upper": self.witness_indices.map(|w| w.1),
            "examined": self.subsets_examined,
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub workers: usize,
    /// Representatives handed to the pool per round.
    pub chunk: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { workers: std::thread::available_parallelism().map_or(1, |n| n.get()), chunk: 4096 }
    }
}

/// Scans every translation class. See [`is_stable_group_with`].
pub fn is_stable_group(g: &FiniteGroup, budget: &SolveBudget) -> SolveResult<StabilityReport> {
    is_stable_group_with(g, budget, &ScanOptions::default())
}

/// Decides stability by scanning all translation-class representatives in
/// canonical order. Singletons and sets with `∂A = G \ {e}` are counted but
/// not solved (their graphs are edgeless or complete). The first unstable
/// representative in scan order is reported regardless of worker count.
///
/// A time limit in `budget` applies to the whole scan; the node limit
/// applies to each subset.
pub fn is_stable_group_with(g: &FiniteGroup, budget: &SolveBudget, opts: &ScanOptions) -> SolveResult<StabilityReport> {
    let n = g.order();
    if n > EXHAUSTIVE_MAX_ORDER {
        return Err(GroupError::OrderTooLarge { order: n, max: EXHAUSTIVE_MAX_ORDER }.into());
    }
    let budget = budget.started();
    let shared = Arc::new(g.clone());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| GroupError::Domain(format!("worker pool: {e}")))?;
    let check = |a: &ElementSet| -> SolveResult<Option<IndexReport>> {
        if a.len() == 1 {
            return Ok(None);
        }
        let boundary = boundary_set(&shared, a)?;
        if boundary.len() == n - 1 {
            return Ok(None);
        }
        let r = subset_indices_shared(&shared, a, &budget)?;
        Ok((!r.stable).then_some(r))
    };
    let mut reps = translation_class_representatives(g);
    let mut examined = 0u64;
    loop {
        let chunk: Vec<ElementSet> = reps.by_ref().take(opts.chunk.max(1)).collect();
        if chunk.is_empty() {
            break;
        }
        let hit = pool.install(|| {
            chunk
                .par_iter()
                .enumerate()
                .map(|(i, a)| (i, check(a)))
                .find_first(|(_, r)| !matches!(r, Ok(None)))
        });
        match hit {
            None => examined += chunk.len() as u64,
            Some((_, Err(e))) => return Err(e),
            Some((i, Ok(Some(r)))) => {
                let a = chunk[i];
                return Ok(StabilityReport {
                    group_name: g.name().to_string(),
                    stable: false,
                    witness_subset: Some(a),
                    witness_labels: Some(g.set_labels_vec(&a)),
                    witness_indices: Some((r.lower, r.upper)),
                    subsets_examined: examined + i as u64 + 1,
                });
            }
            Some((_, Ok(None))) => unreachable!("filtered by find_first"),
        }
    }
    Ok(StabilityReport {
        group_name: g.name().to_string(),
        stable: true,
        witness_subset: None,
        witness_labels: None,
        witness_indices: None,
        subsets_examined: examined,
    })
}
