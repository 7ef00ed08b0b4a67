//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text to print, so the binary stays a two-line wrapper.
//!
//! Exit codes: 0 success or stable, 1 unstable or mismatch, 2 usage error,
//! 3 budget exhausted or inconclusive.

use std::ffi::OsString;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bitset::ElementSet;
use crate::catalog::{parse_group_spec, NamedGroup};
use crate::cayley::{boundary_set, cayley_graph, export_dot};
use crate::group::FiniteGroup;
use crate::solver::{SolveBudget, SolveError};
use crate::stability::{
    brute_force_indices, is_stable_group_with, subset_indices, IndexReport, ScanOptions, StabilityReport,
    BRUTE_FORCE_MAX_ORDER, EXHAUSTIVE_MAX_ORDER,
};
use crate::witnesses::{cyclic_quotient_witness, verify_classification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSTABLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Largest order scanned without `--exhaustive`.
pub const DEFAULT_SCAN_MAX_ORDER: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "sfactor", version, about = "Subset indices and stability of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower and upper index of one subset
    Indices(SubsetArgs),
    /// Decide whether every subset of a group is stable
    Stable(StableArgs),
    /// Check the list of stable groups and the instability witnesses
    Classify(ClassifyArgs),
    /// Build the cyclic-quotient instability witness
    Witness(WitnessArgs),
    /// Print Cay(G, ∂A) as DOT
    Export(ExportArgs),
    /// Compare the solver with definition-level enumeration
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Search-node limit per subset
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Wall-clock limit in milliseconds for the whole command
    #[arg(long)]
    budget_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> SolveBudget {
        let mut b = SolveBudget::default();
        if let Some(n) = self.budget_nodes {
            b = b.with_nodes(n);
        }
        if let Some(ms) = self.budget_ms {
            b = b.with_time(Duration::from_millis(ms));
        }
        b.started()
    }

    fn given(&self) -> bool {
        self.budget_nodes.is_some() || self.budget_ms.is_some()
    }
}

#[derive(Args, Debug)]
struct SubsetArgs {
    /// Group spec, e.g. cyclic:9, dihedral:5, alt4, cyclic:2xcyclic:4, or a table file
    #[arg(long)]
    group: String,
    /// Comma-separated element labels, or `paper` for the designated subset
    #[arg(long)]
    subset: String,
    #[arg(long, value_enum, default_value_t = Side::Right)]
    side: Side,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct StableArgs {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = Side::Right)]
    side: Side,
    /// Scan every subset even above order 16 (needs a budget flag)
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(long)]
    group: String,
    /// Generators of the normal subgroup H
    #[arg(long)]
    subgroup: String,
    /// Element whose coset generates G/H
    #[arg(long)]
    g: String,
    /// Non-identity element of H
    #[arg(long)]
    h: String,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    subset: String,
    #[arg(long, value_enum, default_value_t = Side::Right)]
    side: Side,
    /// Labels to fill, or witness-small / witness-large
    #[arg(long)]
    highlight: Option<String>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    group: String,
    #[arg(long, required_unless_present = "all_subsets", conflicts_with = "all_subsets")]
    subset: Option<String>,
    /// Check every subset containing the identity
    #[arg(long)]
    all_subsets: bool,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    budget: BudgetArgs,
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }

    fn solve_error(e: SolveError) -> Self {
        let code = if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE };
        Self::fail(code, e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(code, text)
            };
        }
    };
    match cli.command {
        Command::Indices(a) => cmd_indices(a),
        Command::Stable(a) => cmd_stable(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Export(a) => cmd_export(a),
        Command::Oracle(a) => cmd_oracle(a),
    }
}

fn load_group(spec: &str, side: Side) -> Result<NamedGroup, Outcome> {
    let mut named = parse_group_spec(spec).map_err(|e| Outcome::fail(EXIT_USAGE, e))?;
    if side == Side::Left {
        // left s-factors of A in G are right s-factors of A in the opposite group
        let name = named.group.name().to_string();
        named.group = named.group.opposite().with_name(name);
    }
    Ok(named)
}

fn load_subset(named: &NamedGroup, spec: &str) -> Result<ElementSet, Outcome> {
    if spec.trim() == "paper" {
        return named
            .designated
            .ok_or_else(|| Outcome::fail(EXIT_USAGE, format!("group `{}` has no designated subset", named.group.name())));
    }
    let a = named.group.parse_subset(spec).map_err(|e| Outcome::fail(EXIT_USAGE, e))?;
    if a.is_empty() {
        return Err(Outcome::fail(EXIT_USAGE, "subset is empty"));
    }
    Ok(a)
}

fn render(output: Output, text: String, value: Value) -> String {
    match output {
        Output::Text => text,
        Output::Structured => {
            let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Right => "right",
        Side::Left => "left",
    }
}

fn index_text(g: &FiniteGroup, a: &ElementSet, side: Side, r: &IndexReport) -> String {
    format!(
        "group: {}\nsubset: {}\nside: {}\nboundary: {}\ncomponents: {}\nlower: {}\nupper: {}\nstable: {}\nwitness_small: {}\nwitness_large: {}\n",
        g.name(),
        g.format_set(a),
        side_name(side),
        g.format_set(&r.boundary),
        r.components,
        r.lower,
        r.upper,
        r.stable,
        g.format_set(&r.witness_small),
        g.format_set(&r.witness_large),
    )
}

fn index_json(g: &FiniteGroup, a: &ElementSet, side: Side, r: &IndexReport) -> Value {
    json!({
        "group": g.name(),
        "subset": g.set_labels_vec(a),
        "side": side_name(side),
        "boundary": g.set_labels_vec(&r.boundary),
        "components": r.components,
        "lower": r.lower,
        "upper": r.upper,
        "stable": r.stable,
        "witness_small": g.set_labels_vec(&r.witness_small),
        "witness_large": g.set_labels_vec(&r.witness_large),
    })
}

fn cmd_indices(args: SubsetArgs) -> Outcome {
    let named = match load_group(&args.group, args.side) {
        Ok(n) => n,
        Err(o) => return o,
    };
    let a = match load_subset(&named, &args.subset) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let g = &named.group;
    match subset_indices(g, &a, &args.budget.budget()) {
        Ok(r) => Outcome::ok(
            EXIT_OK,
            render(args.output, index_text(g, &a, args.side, &r), index_json(g, &a, args.side, &r)),
        ),
        Err(e) => Outcome::solve_error(e),
    }
}

fn workers(n: Option<usize>) -> ScanOptions {
    let mut opts = ScanOptions::default();
    if let Some(w) = n {
        opts.workers = w.max(1);
    }
    opts
}

fn cmd_stable(args: StableArgs) -> Outcome {
    let named = match load_group(&args.group, args.side) {
        Ok(n) => n,
        Err(o) => return o,
    };
    let g = &named.group;
    let budget = args.budget.budget();
    let order = g.order();
    if order > EXHAUSTIVE_MAX_ORDER && args.exhaustive {
        return Outcome::fail(EXIT_USAGE, format!("exhaustive scans support order <= {EXHAUSTIVE_MAX_ORDER}"));
    }
    if order > DEFAULT_SCAN_MAX_ORDER && args.exhaustive && !args.budget.given() {
        return Outcome::fail(EXIT_USAGE, "--exhaustive above order 16 needs --budget-nodes or --budget-ms");
    }
    if order > DEFAULT_SCAN_MAX_ORDER && !args.exhaustive {
        return designated_only(&named, &budget, args.output);
    }
    match is_stable_group_with(g, &budget, &workers(args.workers)) {
        Ok(r) => {
            let code = if r.stable { EXIT_OK } else { EXIT_UNSTABLE };
            Outcome::ok(code, render(args.output, r.to_text(), r.to_json()))
        }
        Err(e) => Outcome::solve_error(e),
    }
}

/// Above the exhaustive limit only the designated subset is tried. Finding
/// it unstable settles the question; otherwise the answer is unknown.
fn designated_only(named: &NamedGroup, budget: &SolveBudget, output: Output) -> Outcome {
    let g = &named.group;
    let inconclusive = |examined: u64| {
        let text = format!(
            "group: {}\nstable: unknown\nwitness: none\nlower: -\nupper: -\nexamined: {examined}\nnote: order {} exceeds {DEFAULT_SCAN_MAX_ORDER}; rerun with --exhaustive and a budget flag\n",
            g.name(),
            g.order()
        );
        let value = json!({
            "group": g.name(), "stable": null, "witness": null, "lower": null, "upper": null, "examined": examined,
        });
        Outcome::ok(EXIT_BUDGET, render(output, text, value))
    };
    let Some(a) = named.designated else {
        return inconclusive(0);
    };
    match subset_indices(g, &a, budget) {
        Ok(r) if !r.stable => {
            let report = StabilityReport {
                group_name: g.name().to_string(),
                stable: false,
                witness_subset: Some(a),
                witness_labels: Some(g.set_labels_vec(&a)),
                witness_indices: Some((r.lower, r.upper)),
                subsets_examined: 1,
            };
            Outcome::ok(EXIT_UNSTABLE, render(output, report.to_text(), report.to_json()))
        }
        Ok(_) => inconclusive(1),
        Err(e) => Outcome::solve_error(e),
    }
}

fn cmd_classify(args: ClassifyArgs) -> Outcome {
    let run = verify_classification(&args.budget.budget(), &workers(args.workers));
    let code = if run.all_pass {
        EXIT_OK
    } else if run.budget_exceeded {
        EXIT_BUDGET
    } else {
        EXIT_UNSTABLE
    };
    Outcome::ok(code, render(args.output, run.to_table(), run.to_json()))
}

fn cmd_witness(args: WitnessArgs) -> Outcome {
    let named = match load_group(&args.group, Side::Right) {
        Ok(n) => n,
        Err(o) => return o,
    };
    let g = &named.group;
    let parsed = (|| -> Result<_, crate::group::GroupError> {
        let gens = g.parse_subset(&args.subgroup)?;
        Ok((g.subgroup_generated(&gens), g.parse_element(&args.g)?, g.parse_element(&args.h)?))
    })();
    let (h_set, x, h) = match parsed {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let w = match cyclic_quotient_witness(g, &h_set, x, h) {
        Ok(w) => w,
        Err(crate::witnesses::WitnessError::Internal(m)) => return Outcome::fail(EXIT_UNSTABLE, m),
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let r = match subset_indices(g, &w.subset, &args.budget.budget()) {
        Ok(r) => r,
        Err(e) => return Outcome::solve_error(e),
    };
    let text = format!(
        "group: {}\nsubgroup: {}\nquotient_order: {}\nsubset: {}\ndominating: {}\nindependent: {}\nlower: {}\nupper: {}\nstable: {}\n",
        g.name(),
        g.format_set(&h_set),
        w.n,
        g.format_set(&w.subset),
        g.format_set(&w.dominating),
        g.format_set(&w.independent),
        r.lower,
        r.upper,
        r.stable
    );
    let value = json!({
        "group": g.name(),
        "subgroup": g.set_labels_vec(&h_set),
        "quotient_order": w.n,
        "witness": g.set_labels_vec(&w.subset),
        "dominating": g.set_labels_vec(&w.dominating),
        "independent": g.set_labels_vec(&w.independent),
        "lower": r.lower,
        "upper": r.upper,
        "stable": r.stable,
    });
    let code = if r.lower < r.upper { EXIT_OK } else { EXIT_UNSTABLE };
    Outcome::ok(code, render(args.output, text, value))
}

fn cmd_export(args: ExportArgs) -> Outcome {
    let named = match load_group(&args.group, args.side) {
        Ok(n) => n,
        Err(o) => return o,
    };
    let a = match load_subset(&named, &args.subset) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let g = &named.group;
    let s = boundary_set(g, &a).expect("subset is non-empty");
    let graph = cayley_graph(g, &s).expect("boundary sets are valid connection sets");
    let highlight = match args.highlight.as_deref().map(str::trim) {
        None => None,
        Some(which @ ("witness-small" | "witness-large")) => match subset_indices(g, &a, &args.budget.budget()) {
            Ok(r) => Some(if which == "witness-small" { r.witness_small } else { r.witness_large }),
            Err(e) => return Outcome::solve_error(e),
        },
        Some(labels) => match g.parse_subset(labels) {
            Ok(h) => Some(h),
            Err(e) => return Outcome::fail(EXIT_USAGE, e),
        },
    };
    Outcome::ok(EXIT_OK, export_dot(&graph, highlight.as_ref()))
}

fn cmd_oracle(args: OracleArgs) -> Outcome {
    let named = match load_group(&args.group, Side::Right) {
        Ok(n) => n,
        Err(o) => return o,
    };
    let g = &named.group;
    if g.order() > BRUTE_FORCE_MAX_ORDER {
        return Outcome::fail(EXIT_USAGE, format!("oracle supports order <= {BRUTE_FORCE_MAX_ORDER}, got {}", g.order()));
    }
    let subsets: Vec<ElementSet> = if args.all_subsets {
        (0u64..1 << (g.order() - 1)).map(|m| ElementSet::from_mask((m << 1) | 1)).collect()
    } else {
        match load_subset(&named, args.subset.as_deref().unwrap_or_default()) {
            Ok(a) => vec![a],
            Err(o) => return o,
        }
    };
    let budget = args.budget.budget();
    let mut mismatches = Vec::new();
    for a in &subsets {
        let solved = match subset_indices(g, a, &budget) {
            Ok(r) => r,
            Err(e) => return Outcome::solve_error(e),
        };
        let brute = match brute_force_indices(g, a) {
            Ok(r) => r,
            Err(e) => return Outcome::solve_error(e),
        };
        if (solved.lower, solved.upper) != (brute.lower, brute.upper) {
            mismatches.push(json!({
                "subset": g.set_labels_vec(a),
                "solver": [solved.lower, solved.upper],
                "brute_force": [brute.lower, brute.upper],
            }));
        }
    }
    let agree = mismatches.is_empty();
    let mut text = format!("group: {}\nchecked: {}\nagree: {}\n", g.name(), subsets.len(), agree);
    for m in &mismatches {
        text.push_str(&format!("mismatch: {m}\n"));
    }
    if let [a] = subsets.as_slice() {
        if agree {
            let r = brute_force_indices(g, a).expect("checked above");
            text.push_str(&format!("subset: {}\nlower: {}\nupper: {}\n", g.format_set(a), r.lower, r.upper));
        }
    }
    let value = json!({ "group": g.name(), "checked": subsets.len(), "agree": agree, "mismatches": mismatches });
    Outcome::ok(if agree { EXIT_OK } else { EXIT_UNSTABLE }, render(args.output, text, value))
}
