//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Expected values come from closed forms or hand-checked
//! tables written out here, never from the library's own tables.

use std::collections::HashSet;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sfactor::catalog::{self, parse_group_spec};
use sfactor::cayley::{boundary_set, cayley_graph, Graph};
use sfactor::group::{make_cyclic, make_semidirect, FiniteGroup};
use sfactor::solver::{brute_force_alpha_i, independence_number, independent_domination_number, vt_reduce, SolveBudget};
use sfactor::stability::{brute_force_indices, subset_indices, translation_class_representatives, ScanOptions};
use sfactor::witnesses::{cyclic_quotient_witness, paper_instance_table, verify_classification};
use sfactor::ElementSet;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alpha_i(g: &Graph) -> (usize, usize) {
    let b = SolveBudget::default();
    let a = independence_number(g, &b).expect("within budget").size;
    let i = independent_domination_number(g, &b).expect("within budget").size;
    (a, i)
}

fn designated(spec: &str) -> (FiniteGroup, ElementSet) {
    let n = parse_group_spec(spec).unwrap();
    let a = n.designated.unwrap();
    (n.group, a)
}

fn criterion_cycles() -> Outcome {
    for n in 3..=40usize {
        let z = make_cyclic(n).unwrap();
        let r = subset_indices(&z, &ElementSet::from_indices([0, 1]), &SolveBudget::default()).map_err(|e| e.to_string())?;
        let expected = (n.div_ceil(3), n / 2);
        ensure((r.lower, r.upper) == expected, || format!("Z_{n}: got {:?}, want {expected:?}", (r.lower, r.upper)))?;
    }
    Ok("38 cyclic groups".into())
}

fn criterion_dihedral() -> Outcome {
    for n in 3..=30usize {
        let (g, a) = designated(&format!("dihedral:{n}"));
        let r = subset_indices(&g, &a, &SolveBudget::default()).map_err(|e| e.to_string())?;
        let expected = ((2 * n).div_ceil(5), 2 * n / 3);
        ensure((r.lower, r.upper) == expected, || format!("D_{n}: got {:?}, want {expected:?}", (r.lower, r.upper)))?;
    }
    Ok("28 dihedral groups".into())
}

const TABLE: [(&str, usize, usize); 9] = [
    ("c7_rtimes_c3", 3, 6),
    ("ut3_3", 3, 6),
    ("elementary:2:5", 2, 4),
    ("elementary:3:3", 3, 4),
    ("alt4", 2, 3),
    ("c3c3_rtimes_c2", 2, 4),
    ("order16_id11", 2, 4),
    ("order16_id12", 2, 4),
    ("order16_id13", 2, 4),
];

fn criterion_table() -> Outcome {
    // the subsets, spelled out by label
    let subsets: [&str; 9] = [
        "e,a,b",
        "e,a,b,c",
        "00000,10000,01000,00100,00010,00001",
        "000,100,010,001",
        "e,b,t",
        "e,a,t,b*t",
        "e,a,b,c",
        "e,a,b,c",
        "e,a,b,c",
    ];
    for ((spec, lower, upper), labels) in TABLE.iter().zip(subsets) {
        let (g, a) = designated(spec);
        ensure(g.parse_subset(labels).unwrap() == a, || format!("{spec}: designated subset is not {{{labels}}}"))?;
        let r = subset_indices(&g, &a, &SolveBudget::default()).map_err(|e| e.to_string())?;
        ensure((r.lower, r.upper) == (*lower, *upper), || {
            format!("{spec}: got {:?}, want {:?}", (r.lower, r.upper), (lower, upper))
        })?;
    }
    Ok("9 instances exact".into())
}

fn criterion_classification() -> Outcome {
    let run = verify_classification(&SolveBudget::default(), &ScanOptions::default());
    ensure(run.catalog_results.len() == 14, || format!("{} catalog groups", run.catalog_results.len()))?;
    let mut max_classes = 0;
    for c in &run.catalog_results {
        let r = c.report.as_ref().map_err(|e| format!("{}: {e}", c.name))?;
        ensure(r.stable, || format!("{} reported unstable: {:?}", c.name, r.witness_labels))?;
        let g = catalog::group(&c.spec).unwrap();
        let classes = translation_class_representatives(&g).count() as u64;
        ensure(r.subsets_examined == classes, || format!("{}: examined {} of {classes}", c.name, r.subsets_examined))?;
        max_classes = max_classes.max(classes);
    }
    for w in &run.excluded_witnesses {
        ensure(w.passed(), || format!("witness {} {:?} -> {:?}", w.group, w.subset, w.indices))?;
    }
    let find = |group: &str| run.excluded_witnesses.iter().find(|w| w.group == group).map(|w| w.indices.clone());
    ensure(find("dihedral:5") == Some(Ok((2, 3))), || "D5 witness".into())?;
    ensure(find("dihedral:7") == Some(Ok((3, 4))), || "D7 witness".into())?;
    ensure(find("elementary:2:5") == Some(Ok((2, 4))), || "Z2^5 witness".into())?;
    ensure(run.all_pass, || "all_pass is false".into())?;
    Ok(format!(
        "14 stable groups certified (largest scan {max_classes} classes), {} witnesses unstable",
        run.excluded_witnesses.len()
    ))
}

fn criterion_oracle() -> Outcome {
    let specs: Vec<String> = (1..=12)
        .map(|n| format!("cyclic:{n}"))
        .chain((3..=6).map(|n| format!("dihedral:{n}")))
        .chain(
            ["elementary:2:2", "elementary:2:3", "elementary:3:2", "quaternion8", "alt4", "cyclic:2xcyclic:4", "cyclic:2xcyclic:6"]
                .map(String::from),
        )
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut checked = 0;
    for spec in &specs {
        let g = catalog::group(spec).unwrap();
        let n = g.order();
        for _ in 0..200 {
            let a = loop {
                let a: ElementSet = (0..n).filter(|_| rng.random_bool(0.4)).collect();
                if !a.is_empty() {
                    break a;
                }
            };
            let solved = subset_indices(&g, &a, &SolveBudget::default()).map_err(|e| e.to_string())?;
            let brute = brute_force_indices(&g, &a).map_err(|e| e.to_string())?;
            ensure((solved.lower, solved.upper) == (brute.lower, brute.upper), || {
                format!("{spec} A={a:?}: solver {:?}, brute force {:?}", (solved.lower, solved.upper), (brute.lower, brute.upper))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{} groups, {checked} subsets agree", specs.len()))
}

fn random_symmetric_subset(g: &FiniteGroup, within: &ElementSet, rng: &mut ChaCha8Rng) -> ElementSet {
    let mut s = ElementSet::new();
    for x in within.iter().filter(|&x| x != 0) {
        if x <= g.inv(x) && rng.random_bool(0.35) {
            s.insert(x);
            s.insert(g.inv(x));
        }
    }
    s
}

fn criterion_components() -> Outcome {
    let specs = [
        "cyclic:12", "cyclic:18", "cyclic:20", "dihedral:6", "dihedral:10", "alt4", "quaternion8", "elementary:2:4",
        "cyclic:2xdihedral:4", "order16_id13", "c3c3_rtimes_c2", "c7_rtimes_c3", "cyclic:3xcyclic:6", "cyclic:2xalt4",
        "cyclic:30", "dihedral:15", "alt4xcyclic:3",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut done = 0;
    let mut brute = 0;
    while done < 50 {
        let g = catalog::group(specs[rng.random_range(0..specs.len())]).unwrap();
        let n = g.order();
        let gens: ElementSet = (0..rng.random_range(1..=2)).map(|_| rng.random_range(0..n)).collect();
        let k = g.subgroup_generated(&gens);
        let s = random_symmetric_subset(&g, &k, &mut rng);
        let h = g.subgroup_generated(&s);
        if h.len() == n {
            continue;
        }
        let full = cayley_graph(&g, &s).unwrap().without_provenance();
        // the full graph is solved without splitting into components
        let whole = if n <= 24 {
            brute += 1;
            brute_force_alpha_i(&full).unwrap()
        } else {
            alpha_i(&full)
        };
        let (sub, embed) = g.subgroup_as_group(&h).unwrap();
        let s_sub: ElementSet = embed.iter().enumerate().filter(|(_, &x)| s.contains(x)).map(|(i, _)| i).collect();
        let (a_h, i_h) = alpha_i(&cayley_graph(&sub, &s_sub).unwrap());
        let index = n / h.len();
        ensure(whole == (index * a_h, index * i_h), || {
            format!("{}: S={s:?}, whole {whole:?}, |G:H|={index} times {:?}", g.name(), (a_h, i_h))
        })?;
        // the provenance-aware solver takes the coset shortcut; it must agree too
        ensure(alpha_i(&cayley_graph(&g, &s).unwrap()) == whole, || format!("{}: coset shortcut differs", g.name()))?;
        done += 1;
    }
    Ok(format!("50 non-generating connection sets ({brute} checked by exhaustive enumeration)"))
}

fn criterion_reduction() -> Outcome {
    let mut specs: Vec<&str> = paper_instance_table().iter().map(|p| p.spec).collect();
    specs.extend(TABLE.iter().map(|t| t.0));
    specs.sort_unstable();
    specs.dedup();
    for spec in &specs {
        let (g, a) = designated(spec);
        let graph = cayley_graph(&g, &boundary_set(&g, &a).unwrap()).unwrap().without_provenance();
        let direct = alpha_i(&graph);
        let (ra, ri) = alpha_i(&vt_reduce(&graph, 0));
        ensure(direct == (ra + 1, ri + 1), || format!("{spec}: direct {direct:?}, reduced {:?} + 1", (ra, ri)))?;
        if graph.vertex_count() <= 24 {
            ensure(brute_force_alpha_i(&graph).unwrap() == direct, || format!("{spec}: brute force disagrees"))?;
        }
    }
    Ok(format!("{} instances", specs.len()))
}

/// Checks a cyclic-quotient witness from the definitions, without the
/// library's graph code.
fn check_quotient_instance(g: &FiniteGroup, h_set: &ElementSet, x: usize, h: usize) -> Result<Option<String>, String> {
    let Ok(w) = cyclic_quotient_witness(g, h_set, x, h) else {
        return Err(format!("{}: rejected valid instance H={h_set:?} g={x} h={h}", g.name()));
    };
    let n = g.order() / h_set.len();
    let mut boundary = ElementSet::new();
    for p in &w.subset {
        for q in &w.subset {
            boundary.insert(g.mul(g.inv(p), q));
        }
    }
    boundary.remove(0);
    let adjacent = |u: usize, v: usize| boundary.contains(g.mul(v, g.inv(u)));
    let i: Vec<usize> = w.dominating.to_vec();
    ensure(i.len() == n.div_ceil(2), || format!("|I| = {}, n = {n}", i.len()))?;
    for (k, &u) in i.iter().enumerate() {
        ensure(i[k + 1..].iter().all(|&v| !adjacent(u, v)), || format!("I not independent in {}", g.name()))?;
    }
    for y in 0..g.order() {
        ensure(w.dominating.contains(y) || i.iter().any(|&v| adjacent(v, y)), || {
            format!("{}: {y} not dominated", g.name())
        })?;
    }
    let big = w.independent.to_vec();
    ensure(big.len() == n - 1, || "independent set has wrong size".into())?;
    for (k, &u) in big.iter().enumerate() {
        ensure(big[k + 1..].iter().all(|&v| !adjacent(u, v)), || "large set not independent".into())?;
    }
    let r = subset_indices(g, &w.subset, &SolveBudget::default()).map_err(|e| e.to_string())?;
    ensure(r.lower <= n.div_ceil(2) && r.upper >= n - 1 && r.lower < r.upper, || {
        format!("{}: indices {:?} with n = {n}", g.name(), (r.lower, r.upper))
    })?;
    Ok(Some(format!("{}:{}:{n}", g.name(), h_set.len())))
}

fn dicyclic12() -> FiniteGroup {
    let c3 = make_cyclic(3).unwrap();
    let c4 = make_cyclic(4).unwrap();
    let invert: Vec<usize> = (0..3).map(|x| (3 - x) % 3).collect();
    let id: Vec<usize> = (0..3).collect();
    make_semidirect(&c3, &c4, &[id.clone(), invert.clone(), id, invert]).unwrap().with_name("c3_rtimes_c4")
}

fn criterion_cyclic_quotient() -> Outcome {
    let mut groups: Vec<FiniteGroup> = [
        "cyclic:12", "cyclic:15", "cyclic:16", "cyclic:20", "cyclic:21", "cyclic:28", "cyclic:30",
        "cyclic:4xcyclic:4", "cyclic:2xcyclic:2xcyclic:4", "cyclic:5xcyclic:5", "cyclic:7xcyclic:7",
        "dihedral:3xcyclic:4", "dihedral:3xcyclic:5", "quaternion8xcyclic:5", "alt4xcyclic:4", "alt4xcyclic:5",
        "dihedral:5xcyclic:5",
    ]
    .iter()
    .map(|s| catalog::group(s).unwrap())
    .collect();
    groups.push(dicyclic12());
    let mut instances = 0;
    let mut nonabelian = 0;
    for g in &groups {
        let n = g.order();
        assert!(n <= 60);
        let mut subgroups: Vec<ElementSet> = Vec::new();
        let mut seen = HashSet::new();
        for x in 0..n {
            for y in x..n {
                let h = g.subgroup_generated(&ElementSet::from_indices([x, y]));
                if seen.insert(h) {
                    subgroups.push(h);
                }
            }
        }
        subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(b)));
        let mut per_group = 0;
        for h_set in subgroups {
            let m = h_set.len();
            if m < 3 || n % m != 0 || n / m < 4 || !g.is_normal(&h_set) {
                continue;
            }
            let q = n / m;
            let gen = (0..n).find(|&x| {
                g.pow(x, q as i64) == 0 && (1..q).all(|k| !h_set.contains(g.pow(x, k as i64)))
            });
            let Some(gen) = gen else { continue };
            let hs = h_set.to_vec();
            for h in [hs[1], *hs.last().unwrap()] {
                check_quotient_instance(g, &h_set, gen, h)?;
                instances += 1;
                if !g.is_abelian() {
                    nonabelian += 1;
                }
            }
            per_group += 1;
            if per_group == 3 {
                break;
            }
        }
    }
    ensure(instances >= 30, || format!("only {instances} instances in the matrix"))?;
    Ok(format!("{instances} instances from {} groups of order <= 60 ({nonabelian} nonabelian)", groups.len()))
}

fn run_classify(workers: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sfactor"))
        .args(["classify", "--workers", workers])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("classify --workers {workers} exited {:?}", out.status.code()))?;
    Ok(out.stdout)
}

fn criterion_determinism() -> Outcome {
    let one_a = run_classify("1")?;
    let one_b = run_classify("1")?;
    let eight_a = run_classify("8")?;
    let eight_b = run_classify("8")?;
    ensure(one_a == one_b, || "two 1-worker runs differ".into())?;
    ensure(eight_a == eight_b, || "two 8-worker runs differ".into())?;
    ensure(one_a == eight_a, || "1-worker and 8-worker reports differ".into())?;
    Ok(format!("4 runs byte-identical ({} bytes)", one_a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cycle sweep", criterion_cycles),
        ("dihedral sweep", criterion_dihedral),
        ("instance table", criterion_table),
        ("classification", criterion_classification),
        ("oracle equivalence", criterion_oracle),
        ("component decomposition", criterion_components),
        ("vertex-transitive reduction", criterion_reduction),
        ("cyclic-quotient witnesses", criterion_cyclic_quotient),
        ("determinism", criterion_determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
