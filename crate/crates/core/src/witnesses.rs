//! Closed forms, the cyclic-quotient construction, the list of stable groups
//! and the harness that checks the classification end to end.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::bitset::ElementSet;
use crate::catalog::{parse_group_spec, NamedGroup};
use crate::cayley::{boundary_set, cayley_graph};
use crate::group::{FiniteGroup, GroupError, IDENTITY};
use crate::solver::{SolveBudget, SolveError};
use crate::stability::{is_stable_group_with, subset_indices, ScanOptions, StabilityReport};

/// `(i(C_n), α(C_n)) = (⌈n/3⌉, ⌊n/2⌋)`.
pub fn cycle_formula(n: usize) -> Result<(usize, usize), GroupError> {
    if n < 3 {
        return Err(GroupError::Domain(format!("cycle needs n >= 3, got {n}")));
    }
    Ok((n.div_ceil(3), n / 2))
}

/// Indices of `{e, a, b}` in `D_n`: `(⌈2n/5⌉, ⌊2n/3⌋)`.
pub fn dihedral_formula(n: usize) -> Result<(usize, usize), GroupError> {
    if n < 3 {
        return Err(GroupError::Domain(format!("dihedral group needs n >= 3, got {n}")));
    }
    Ok(((2 * n).div_ceil(5), 2 * n / 3))
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("H is not a subgroup")]
    NotSubgroup,
    #[error("H is not normal")]
    NotNormal,
    #[error("Hg does not generate G/H")]
    QuotientNotGenerated,
    #[error("quotient has order {0}, need at least 4")]
    QuotientTooSmall(usize),
    #[error("H has order {0}, need at least 3")]
    SubgroupTooSmall(usize),
    #[error("h must be a non-identity element of H")]
    BadH,
    #[error("g^{0} is not the identity")]
    PowerNotIdentity(usize),
    #[error("construction failed: {0}")]
    Internal(String),
}

/// Output of [`cyclic_quotient_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicQuotientWitness {
    /// `(H \ {h}) ∪ {g}`
    pub subset: ElementSet,
    /// Independent dominating set of size `⌈n/2⌉`.
    pub dominating: ElementSet,
    /// Independent set `{e, η, .., η^(n-2)}` with `η = h⁻¹g`.
    pub independent: ElementSet,
    /// Order of `G/H`.
    pub n: usize,
}

/// Builds a subset with `|G:A|⁻ ≤ ⌈n/2⌉ < n-1 ≤ |G:A|⁺` from a normal
/// subgroup `H` with cyclic quotient `G/H = ⟨Hg⟩` of order `n ≥ 4`.
///
/// Each free choice of an element of `H` takes the least index meeting its
/// constraints. The result is checked against the Cayley graph before it is
/// returned.
pub fn cyclic_quotient_witness(
    g: &FiniteGroup,
    h_set: &ElementSet,
    gen: usize,
    h: usize,
) -> Result<CyclicQuotientWitness, WitnessError> {
    if !g.is_subgroup(h_set) {
        return Err(WitnessError::NotSubgroup);
    }
    if !g.is_normal(h_set) {
        return Err(WitnessError::NotNormal);
    }
    let m = h_set.len();
    let n = (1..=g.order()).find(|&k| h_set.contains(g.pow(gen, k as i64))).expect("g^|G| = e lies in H");
    if n * m != g.order() {
        return Err(WitnessError::QuotientNotGenerated);
    }
    if n < 4 {
        return Err(WitnessError::QuotientTooSmall(n));
    }
    if m < 3 {
        return Err(WitnessError::SubgroupTooSmall(m));
    }
    if h == IDENTITY || !h_set.contains(h) {
        return Err(WitnessError::BadH);
    }
    if g.pow(gen, n as i64) != IDENTITY {
        return Err(WitnessError::PowerNotIdentity(n));
    }

    let mut subset = *h_set;
    subset.remove(h);
    subset.insert(gen);

    let p = |k: i64| g.pow(gen, k);
    let eta = g.mul(g.inv(h), gen);
    let eta_sq = g.mul(eta, eta);
    let eta_prime = g.inv(eta);
    let least_avoiding = |avoid: &[usize]| -> Result<usize, WitnessError> {
        h_set
            .iter()
            .find(|x| !avoid.contains(x))
            .ok_or_else(|| WitnessError::Internal("no admissible element of H".into()))
    };
    // x_{i+1} must differ from g^(-2i-2) η² g^(2i) x_i
    let follow = |i: i64, x_i: usize| g.product([p(-2 * i - 2), eta_sq, p(2 * i), x_i]);

    let k = n.div_ceil(2) - 1;
    let mut x = vec![IDENTITY; k + 1];
    for i in 0..k.saturating_sub(1) {
        x[i + 1] = least_avoiding(&[follow(i as i64, x[i])])?;
    }
    let ki = k as i64;
    if n % 2 == 0 {
        let wrap = g.product([p(-2 * ki), eta_prime, eta_prime]);
        x[k] = least_avoiding(&[follow(ki - 1, x[k - 1]), wrap])?;
    } else {
        x[k] = h;
        let wrap = g.product([p(-2 * ki + 2), g.pow(eta_prime, 3)]);
        x[k - 1] = least_avoiding(&[follow(ki - 2, x[k - 2]), wrap])?;
    }
    let dominating: ElementSet = (0..=k).map(|i| g.mul(p(2 * i as i64), x[i])).collect();
    let independent: ElementSet = (0..n - 1).map(|j| g.pow(eta, j as i64)).collect();

    let graph = cayley_graph(g, &boundary_set(g, &subset).map_err(|e| WitnessError::Internal(e.to_string()))?)
        .map_err(|e| WitnessError::Internal(e.to_string()))?;
    if dominating.len() != k + 1 || !graph.is_maximal_independent(&dominating) {
        return Err(WitnessError::Internal(format!("{dominating:?} is not an independent dominating set")));
    }
    if independent.len() != n - 1 || !graph.is_independent(&independent) {
        return Err(WitnessError::Internal(format!("{independent:?} is not independent")));
    }
    Ok(CyclicQuotientWitness { subset, dominating, independent, n })
}

/// The fourteen stable groups as `(display name, spec)`.
pub const STABLE_GROUPS: [(&str, &str); 14] = [
    ("C1", "cyclic:1"),
    ("C2", "cyclic:2"),
    ("C2xC2", "elementary:2:2"),
    ("C2xC2xC2", "elementary:2:3"),
    ("C2xC2xC2xC2", "elementary:2:4"),
    ("C3", "cyclic:3"),
    ("C3xC3", "elementary:3:2"),
    ("C4", "cyclic:4"),
    ("C2xC4", "cyclic:2xcyclic:4"),
    ("C5", "cyclic:5"),
    ("C7", "cyclic:7"),
    ("S3", "dihedral:3"),
    ("D4", "dihedral:4"),
    ("Q8", "quaternion8"),
];

pub fn stable_group_catalog() -> Vec<(String, FiniteGroup)> {
    STABLE_GROUPS
        .iter()
        .map(|&(name, spec)| (name.to_string(), crate::catalog::group(spec).expect("built-in spec")))
        .collect()
}

/// A computed instance: designated subset of a built-in group and its
/// expected `(lower, upper)` indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PaperInstance {
    pub spec: &'static str,
    pub lower: usize,
    pub upper: usize,
    pub note: &'static str,
}

impl PaperInstance {
    pub fn load(&self) -> NamedGroup {
        parse_group_spec(self.spec).expect("built-in spec")
    }

    pub fn subset(&self) -> ElementSet {
        self.load().designated.expect("built-in instance has a designated subset")
    }
}

const fn inst(spec: &'static str, lower: usize, upper: usize, note: &'static str) -> PaperInstance {
    PaperInstance { spec, lower, upper, note }
}

/// Every instance with known indices, including the closed-form families at
/// the orders the classification relies on.
pub fn paper_instance_table() -> Vec<PaperInstance> {
    let mut out = vec![
        inst("cyclic:6", 2, 3, "cyclic, pair {0,1}"),
        inst("cyclic:7", 3, 3, "cyclic, pair {0,1}"),
        inst("cyclic:9", 3, 4, "cyclic, pair {0,1}"),
        inst("dihedral:4", 2, 2, "dihedral, triple {e,a,b}"),
        inst("dihedral:5", 2, 3, "dihedral, triple {e,a,b}"),
        inst("dihedral:6", 3, 4, "dihedral, triple {e,a,b}"),
        inst("dihedral:7", 3, 4, "dihedral, triple {e,a,b}"),
        inst("c7_rtimes_c3", 3, 6, "nonabelian of order 21"),
        inst("ut3_3", 3, 6, "Heisenberg group mod 3"),
        inst("elementary:2:5", 2, 4, "elementary abelian of order 32"),
        inst("elementary:3:3", 3, 4, "elementary abelian of order 27"),
        inst("alt4", 2, 3, "alternating group of degree 4"),
        inst("c3c3_rtimes_c2", 2, 4, "generalized dihedral of order 18"),
        inst("order16_id11", 2, 4, "C2 x D4"),
        inst("order16_id12", 2, 4, "C2 x Q8"),
        inst("order16_id13", 2, 4, "Pauli group"),
    ];
    out.sort_by_key(|p| (p.load().group.order(), p.spec));
    out
}

/// A cyclic-quotient instance: group spec, generators of `H`, `g`, `h`.
#[derive(Clone, Copy, Debug)]
pub struct QuotientInstance {
    pub spec: &'static str,
    pub subgroup: &'static str,
    pub g: &'static str,
    pub h: &'static str,
}

pub const QUOTIENT_INSTANCES: [QuotientInstance; 6] = [
    QuotientInstance { spec: "cyclic:12", subgroup: "4", g: "3", h: "4" },
    QuotientInstance { spec: "cyclic:15", subgroup: "5", g: "3", h: "5" },
    QuotientInstance { spec: "cyclic:4xcyclic:4", subgroup: "(0,1)", g: "(1,0)", h: "(0,1)" },
    QuotientInstance { spec: "cyclic:4xcyclic:2xcyclic:2", subgroup: "((0,1),0),((0,0),1)", g: "((1,0),0)", h: "((0,1),0)" },
    QuotientInstance { spec: "cyclic:5xcyclic:5", subgroup: "(0,1)", g: "(1,0)", h: "(0,1)" },
    QuotientInstance { spec: "cyclic:7xcyclic:7", subgroup: "(0,1)", g: "(1,0)", h: "(0,1)" },
];

impl QuotientInstance {
    pub fn build(&self) -> Result<(FiniteGroup, CyclicQuotientWitness), String> {
        let g = crate::catalog::group(self.spec).map_err(|e| e.to_string())?;
        let gens = g.parse_subset(self.subgroup).map_err(|e| e.to_string())?;
        let h_set = g.subgroup_generated(&gens);
        let gen = g.parse_element(self.g).map_err(|e| e.to_string())?;
        let h = g.parse_element(self.h).map_err(|e| e.to_string())?;
        let w = cyclic_quotient_witness(&g, &h_set, gen, h).map_err(|e| e.to_string())?;
        Ok((g, w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogResult {
    pub name: String,
    pub spec: String,
    pub order: usize,
    /// `Err` holds the message of a budget or scan failure.
    pub report: Result<StabilityReport, String>,
}

impl CatalogResult {
    pub fn passed(&self) -> bool {
        matches!(&self.report, Ok(r) if r.stable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcludedWitness {
    pub group: String,
    pub subset: Vec<String>,
    /// `(lower, upper)`, or the failure message.
    pub indices: Result<(usize, usize), String>,
    pub note: String,
}

impl ExcludedWitness {
    pub fn passed(&self) -> bool {
        matches!(self.indices, Ok((l, u)) if l < u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRun {
    pub catalog_results: Vec<CatalogResult>,
    pub excluded_witnesses: Vec<ExcludedWitness>,
    pub all_pass: bool,
    /// Some check ran out of budget.
    pub budget_exceeded: bool,
}

fn fmt_set(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

impl ClassificationRun {
    pub fn to_table(&self) -> String {
        let mut out = String::from("stable groups\n");
        let _ = writeln!(out, "  {:<14} {:>5}  {:<10} {:>8}", "group", "order", "verdict", "examined");
        for c in &self.catalog_results {
            let (verdict, examined) = match &c.report {
                Ok(r) if r.stable => ("stable".to_string(), r.subsets_examined.to_string()),
                Ok(r) => (
                    format!("UNSTABLE {}", fmt_set(r.witness_labels.as_deref().unwrap_or_default())),
                    r.subsets_examined.to_string(),
                ),
                Err(e) => (format!("FAILED ({e})"), "-".into()),
            };
            let _ = writeln!(out, "  {:<14} {:>5}  {:<10} {:>8}", c.name, c.order, verdict, examined);
        }
        out.push_str("instability witnesses\n");
        let gw = self.excluded_witnesses.iter().map(|w| w.group.len()).chain([5]).max().unwrap_or(5);
        let sw = self.excluded_witnesses.iter().map(|w| fmt_set(&w.subset).len()).chain([6]).max().unwrap_or(6);
        let _ = writeln!(out, "  {:<gw$} {:<sw$} {:>5} {:>5}  {:<9} note", "group", "subset", "lower", "upper", "verdict");
        for w in &self.excluded_witnesses {
            let (l, u, verdict) = match &w.indices {
                Ok((l, u)) => (l.to_string(), u.to_string(), if l < u { "unstable" } else { "STABLE" }.to_string()),
                Err(e) => ("-".into(), "-".into(), format!("FAILED ({e})")),
            };
            let _ = writeln!(
                out,
                "  {:<gw$} {:<sw$} {:>5} {:>5}  {:<9} {}",
                w.group,
                fmt_set(&w.subset),
                l,
                u,
                verdict,
                w.note
            );
        }
        let _ = writeln!(out, "all_pass: {}", self.all_pass);
        out
    }

    pub fn to_json(&self) -> Value {
        let catalog: Vec<Value> = self
            .catalog_results
            .iter()
            .map(|c| match &c.report {
                Ok(r) => {
                    let mut v = r.to_json();
                    v["group"] = json!(c.name);
                    v["spec"] = json!(c.spec);
                    v["order"] = json!(c.order);
                    v
                }
                Err(e) => json!({
                    "group": c.name, "spec": c.spec, "order": c.order, "stable": null,
                    "witness": null, "lower": null, "upper": null, "examined": null, "error": e,
                }),
            })
            .collect();
        let witnesses: Vec<Value> = self
            .excluded_witnesses
            .iter()
            .map(|w| {
                let (lower, upper, error) = match &w.indices {
                    Ok((l, u)) => (json!(l), json!(u), Value::Null),
                    Err(e) => (Value::Null, Value::Null, json!(e)),
                };
                json!({
                    "group": w.group, "witness": w.subset, "lower": lower, "upper": upper,
                    "stable": w.indices.as_ref().ok().map(|(l, u)| l == u), "note": w.note, "error": error,
                })
            })
            .collect();
        json!({ "catalog": catalog, "witnesses": witnesses, "all_pass": self.all_pass })
    }
}

/// The instability witnesses the classification relies on, as
/// `(group spec, group, subset, note)`.
fn excluded_instances() -> Result<Vec<(String, FiniteGroup, ElementSet, String)>, String> {
    let mut out = Vec::new();
    for n in std::iter::once(6).chain(8..=16) {
        let named = parse_group_spec(&format!("cyclic:{n}")).map_err(|e| e.to_string())?;
        out.push((named.group.name().to_string(), named.group, named.designated.unwrap(), "cyclic, pair {0,1}".into()));
    }
    for p in paper_instance_table() {
        if p.lower < p.upper && !p.spec.starts_with("cyclic:") {
            let named = p.load();
            out.push((p.spec.to_string(), named.group, named.designated.unwrap(), p.note.to_string()));
        }
    }
    for q in QUOTIENT_INSTANCES {
        let (g, w) = q.build()?;
        let note = format!("cyclic quotient of order {} over a normal subgroup of order {}", w.n, g.order() / w.n);
        out.push((q.spec.to_string(), g, w.subset, note));
    }
    Ok(out)
}

/// Certifies every listed stable group by exhaustive scan and checks every
/// instability witness. Output does not depend on `opts.workers`.
pub fn verify_classification(budget: &SolveBudget, opts: &ScanOptions) -> ClassificationRun {
    let budget = budget.started();
    let mut budget_exceeded = false;
    let mut note_error = |e: &SolveError| {
        budget_exceeded |= e.is_budget();
        e.to_string()
    };
    let catalog_results: Vec<CatalogResult> = STABLE_GROUPS
        .iter()
        .map(|&(name, spec)| {
            let g = crate::catalog::group(spec).expect("built-in spec");
            let report = is_stable_group_with(&g, &budget, opts).map_err(|e| note_error(&e));
            CatalogResult { name: name.to_string(), spec: spec.to_string(), order: g.order(), report }
        })
        .collect();
    let excluded_witnesses = match excluded_instances() {
        Ok(list) => list
            .into_iter()
            .map(|(spec, g, a, note)| ExcludedWitness {
                group: spec,
                subset: g.set_labels_vec(&a),
                indices: subset_indices(&g, &a, &budget).map(|r| (r.lower, r.upper)).map_err(|e| note_error(&e)),
                note,
            })
            .collect(),
        Err(e) => vec![ExcludedWitness { group: "-".into(), subset: vec![], indices: Err(e), note: "setup".into() }],
    };
    let all_pass = catalog_results.iter().all(CatalogResult::passed) && excluded_witnesses.iter().all(ExcludedWitness::passed);
    ClassificationRun { catalog_results, excluded_witnesses, all_pass, budget_exceeded }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic;

    #[test]
    fn formulas() {
        assert_eq!(cycle_formula(3).unwrap(), (1, 1));
        assert_eq!(cycle_formula(7).unwrap(), (3, 3));
        assert_eq!(cycle_formula(8).unwrap(), (3, 4));
        assert!(cycle_formula(2).is_err());
        assert_eq!(dihedral_formula(4).unwrap(), (2, 2));
        assert_eq!(dihedral_formula(5).unwrap(), (2, 3));
        assert_eq!(dihedral_formula(6).unwrap(), (3, 4));
        assert!(dihedral_formula(2).is_err());
    }

    #[test]
    fn catalog_shape() {
        let cat = stable_group_catalog();
        assert_eq!(cat.len(), 14);
        let orders: Vec<usize> = cat.iter().map(|(_, g)| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 8, 16, 3, 9, 4, 8, 5, 7, 6, 8, 8]);
        let nonabelian: Vec<&str> = cat.iter().filter(|(_, g)| !g.is_abelian()).map(|(n, _)| n.as_str()).collect();
        assert_eq!(nonabelian, vec!["S3", "D4", "Q8"]);
    }

    #[test]
    fn quotient_preconditions() {
        let z12 = make_cyclic(12).unwrap();
        let h = ElementSet::from_indices([0, 4, 8]);
        assert_eq!(cyclic_quotient_witness(&z12, &h, 1, 4), Err(WitnessError::PowerNotIdentity(4)));
        assert_eq!(cyclic_quotient_witness(&z12, &h, 2, 4), Err(WitnessError::QuotientNotGenerated));
        assert_eq!(cyclic_quotient_witness(&z12, &h, 3, 0), Err(WitnessError::BadH));
        assert_eq!(cyclic_quotient_witness(&z12, &ElementSet::from_indices([0, 4]), 3, 4), Err(WitnessError::NotSubgroup));
        let h6 = ElementSet::from_indices([0, 6]);
        assert_eq!(cyclic_quotient_witness(&z12, &h6, 1, 6), Err(WitnessError::SubgroupTooSmall(2)));
        let h4 = ElementSet::from_indices([0, 3, 6, 9]);
        assert_eq!(cyclic_quotient_witness(&z12, &h4, 1, 3), Err(WitnessError::QuotientTooSmall(3)));

        let w = cyclic_quotient_witness(&z12, &h, 3, 4).unwrap();
        assert_eq!(w.n, 4);
        assert_eq!(w.dominating.len(), 2);
        let r = subset_indices(&z12, &w.subset, &SolveBudget::default()).unwrap();
        assert!(r.lower <= 2 && 3 <= r.upper);
    }

    #[test]
    fn quotient_instances_build() {
        for q in QUOTIENT_INSTANCES {
            let (g, w) = q.build().unwrap();
            let r = subset_indices(&g, &w.subset, &SolveBudget::default()).unwrap();
            assert!(r.lower <= w.n.div_ceil(2) && w.n - 1 <= r.upper && r.lower < r.upper, "{}", q.spec);
        }
    }

    #[test]
    fn instance_table_matches() {
        for p in paper_instance_table() {
            let named = p.load();
            let r = subset_indices(&named.group, &named.designated.unwrap(), &SolveBudget::default()).unwrap();
            assert_eq!((r.lower, r.upper), (p.lower, p.upper), "{}", p.spec);
        }
    }
}
