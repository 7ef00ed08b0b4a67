//! Finite groups as explicit multiplication tables.
//!
//! Elements are dense indices `0..n` and the identity is always index 0.
//! Constructors here cover every family used by the catalog: cyclic,
//! dihedral, elementary abelian, direct and semidirect products, and
//! closure of permutation generators.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::bitset::{ElementSet, MAX_ORDER};

/// Index of the identity element in every [`FiniteGroup`].
pub const IDENTITY: usize = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("table is not square or has out-of-range entries")]
    Malformed,
    #[error("table is not a Latin square (row or column {0} repeats an entry)")]
    NotLatin(usize),
    #[error("table has no two-sided identity")]
    MissingIdentity,
    #[error("identity is element {0}, but index 0 must be the identity")]
    IdentityNotFirst(usize),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("generator {0} is not a permutation of the point set")]
    NotBijection(usize),
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("invalid semidirect action: {0}")]
    InvalidAction(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("table file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read `{path}`: {msg}")]
    Io { path: String, msg: String },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// A finite group given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u8>,
    inverse: Vec<u8>,
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(GroupError::Domain("group order must be positive".into()));
    }
    if n > MAX_ORDER {
        return Err(GroupError::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    Ok(())
}

impl FiniteGroup {
    /// Builds a group from a multiplication closure that is known to define
    /// a group with identity 0. Only internal constructors use this.
    pub(crate) fn from_fn(
        name: impl Into<String>,
        n: usize,
        mul: impl Fn(usize, usize) -> usize,
        labels: Vec<String>,
    ) -> Result<Self> {
        check_order(n)?;
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                debug_assert!(c < n);
                table[a * n + b] = c as u8;
            }
        }
        let mut inverse = vec![0u8; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] as usize == IDENTITY)
                .ok_or(GroupError::MissingInverse(a))?;
            inverse[a] = b as u8;
        }
        let mut g = FiniteGroup {
            name: name.into(),
            order: n,
            table,
            inverse,
            labels: Vec::new(),
            lookup: HashMap::new(),
        };
        g.set_labels(labels)?;
        debug_assert!(g.check_axioms().is_ok(), "constructor produced invalid table");
        Ok(g)
    }

    /// Validates an untrusted square table and returns the group.
    ///
    /// Runs the full axiom check, including the O(n³) associativity sweep.
    /// Index 0 must be the identity.
    pub fn validate_table(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::Malformed);
        }
        let mut table = vec![0u8; n * n];
        for (a, row) in rows.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                table[a * n + b] = c as u8;
            }
        }
        let mut g = FiniteGroup {
            name: format!("table:{n}"),
            order: n,
            table,
            inverse: vec![0; n],
            labels: Vec::new(),
            lookup: HashMap::new(),
        };
        g.check_axioms()?;
        for a in 0..n {
            let b = (0..n).find(|&b| g.mul(a, b) == IDENTITY).ok_or(GroupError::MissingInverse(a))?;
            g.inverse[a] = b as u8;
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        g.set_labels(labels)?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for i in 0..n {
            let mut row = ElementSet::new();
            let mut col = ElementSet::new();
            for j in 0..n {
                row.insert(self.mul(i, j));
                col.insert(self.mul(j, i));
            }
            if row.len() != n || col.len() != n {
                return Err(GroupError::NotLatin(i));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
            .ok_or(GroupError::MissingIdentity)?;
        if identity != IDENTITY {
            return Err(GroupError::IdentityNotFirst(identity));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        for a in 0..n {
            let ok = (0..n).any(|b| self.mul(a, b) == IDENTITY && self.mul(b, a) == IDENTITY);
            if !ok {
                return Err(GroupError::MissingInverse(a));
            }
        }
        Ok(())
    }

    fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.order {
            return Err(GroupError::Domain(format!(
                "expected {} labels, got {}",
                self.order,
                labels.len()
            )));
        }
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), i).is_some() {
                return Err(GroupError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = labels;
        self.lookup = lookup;
        Ok(())
    }

    /// Replaces the labels; they must be distinct.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        self.set_labels(labels)?;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Relabels every element by a normal form `g1^i1 * g2^i2 * ...`.
    ///
    /// `gens` lists `(name, element, exponent bound)`; exponent tuples are
    /// walked with the first generator outermost. Fails unless every element
    /// receives exactly one label.
    pub fn relabel_normal_form(self, gens: &[(&str, usize, usize)]) -> Result<Self> {
        let n = self.order;
        let mut labels: Vec<Option<String>> = vec![None; n];
        let mut exps = vec![0usize; gens.len()];
        loop {
            let mut x = IDENTITY;
            let mut parts = Vec::new();
            for (&(name, g, _), &k) in gens.iter().zip(&exps) {
                x = self.mul(x, self.pow(g, k as i64));
                match k {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{k}")),
                }
            }
            let label = if parts.is_empty() { "e".to_string() } else { parts.join("*") };
            if labels[x].is_some() {
                return Err(GroupError::Domain(format!("normal form is not unique at `{label}`")));
            }
            labels[x] = Some(label);
            // odometer
            let mut i = gens.len();
            loop {
                if i == 0 {
                    let labels: Option<Vec<String>> = labels.into_iter().collect();
                    let labels = labels
                        .ok_or_else(|| GroupError::Domain("normal form does not reach every element".into()))?;
                    return self.with_labels(labels);
                }
                i -= 1;
                exps[i] += 1;
                if exps[i] < gens[i].2 {
                    break;
                }
                exps[i] = 0;
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        IDENTITY
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = IDENTITY;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(IDENTITY, |acc, x| self.mul(acc, x))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Raw table rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn elements(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// Smallest `k >= 1` with `a^k = e`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted element orders, a cheap isomorphism fingerprint.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn center(&self) -> ElementSet {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Parses one element: a label, `#index`, `e`, or a `*`-separated word
    /// of labels with optional integer exponents (`t^2*a*b`, `a^-1`).
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if let Some(&i) = self.lookup.get(s) {
            return Ok(i);
        }
        if s == "e" {
            return Ok(IDENTITY);
        }
        if let Some(rest) = s.strip_prefix('#') {
            return rest
                .parse::<usize>()
                .ok()
                .filter(|&i| i < self.order)
                .ok_or_else(|| GroupError::UnknownElement(s.to_string()));
        }
        if !s.contains('*') && !s.contains('^') {
            return Err(GroupError::UnknownElement(s.to_string()));
        }
        let mut acc = IDENTITY;
        for factor in s.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.rsplit_once('^') {
                Some((b, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| GroupError::UnknownElement(s.to_string()))?;
                    (b.trim(), e)
                }
                None => (factor, 1),
            };
            let x = if base == "e" {
                IDENTITY
            } else {
                *self.lookup.get(base).ok_or_else(|| GroupError::UnknownElement(base.to_string()))?
            };
            acc = self.mul(acc, self.pow(x, exp));
        }
        Ok(acc)
    }

    /// Parses a comma-separated list of elements. Commas nested inside
    /// parentheses (pair labels such as `(1,2)`) do not split.
    pub fn parse_subset(&self, s: &str) -> Result<ElementSet> {
        let mut set = ElementSet::new();
        for item in split_top_level(s) {
            if item.trim().is_empty() {
                continue;
            }
            set.insert(self.parse_element(item)?);
        }
        Ok(set)
    }

    /// `{a, b, ...}` using element labels.
    pub fn format_set(&self, s: &ElementSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn set_labels_vec(&self, s: &ElementSet) -> Vec<String> {
        s.iter().map(|i| self.label(i).to_string()).collect()
    }

    /// `xA`
    pub fn left_translate(&self, x: usize, a: &ElementSet) -> ElementSet {
        a.iter().map(|y| self.mul(x, y)).collect()
    }

    /// `Ay`
    pub fn right_translate(&self, a: &ElementSet, y: usize) -> ElementSet {
        a.iter().map(|x| self.mul(x, y)).collect()
    }

    /// `A^{-1}`
    pub fn set_inverse(&self, a: &ElementSet) -> ElementSet {
        a.iter().map(|x| self.inv(x)).collect()
    }

    /// `AB`
    pub fn product_set(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new();
        for x in a {
            for y in b {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// Closure of `S ∪ {e}` under multiplication.
    pub fn subgroup_generated(&self, s: &ElementSet) -> ElementSet {
        let gens = s.to_vec();
        let mut seen = ElementSet::singleton(IDENTITY);
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen.contains(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn is_subgroup(&self, h: &ElementSet) -> bool {
        h.contains(IDENTITY)
            && h.last().is_none_or(|m| m < self.order)
            && h.iter().all(|a| h.iter().all(|b| h.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &ElementSet) -> bool {
        self.is_subgroup(h)
            && (0..self.order).all(|g| {
                let gi = self.inv(g);
                h.iter().all(|x| h.contains(self.mul(self.mul(g, x), gi)))
            })
    }

    /// Right cosets `Hg`, ordered by their smallest element.
    pub fn coset_partition(&self, h: &ElementSet) -> Result<Vec<ElementSet>> {
        if !self.is_subgroup(h) {
            return Err(GroupError::NotSubgroup);
        }
        let mut covered = ElementSet::new();
        let mut cells = Vec::with_capacity(self.order / h.len());
        for g in 0..self.order {
            if covered.contains(g) {
                continue;
            }
            let coset = self.right_translate(h, g);
            covered |= coset;
            cells.push(coset);
        }
        Ok(cells)
    }

    /// The subgroup `H` as a standalone group, with elements renumbered in
    /// ascending order. Also returns the embedding into `self`.
    pub fn subgroup_as_group(&self, h: &ElementSet) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(h) {
            return Err(GroupError::NotSubgroup);
        }
        let embed = h.to_vec();
        let mut back = vec![usize::MAX; self.order];
        for (i, &x) in embed.iter().enumerate() {
            back[x] = i;
        }
        let labels = embed.iter().map(|&x| self.label(x).to_string()).collect();
        let sub = FiniteGroup::from_fn(
            format!("{}|sub{}", self.name, embed.len()),
            embed.len(),
            |a, b| back[self.mul(embed[a], embed[b])],
            labels,
        )?;
        Ok((sub, embed))
    }

    /// The opposite group: same elements, product `a∘b = b·a`.
    pub fn opposite(&self) -> FiniteGroup {
        FiniteGroup::from_fn(
            format!("{}^op", self.name),
            self.order,
            |a, b| self.mul(b, a),
            self.labels.clone(),
        )
        .expect("opposite of a valid group is valid")
    }
}

/// Splits on commas that are not inside parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Cyclic group `Z_n`; element `i` is labelled `"i"`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    check_order(n)?;
    FiniteGroup::from_fn(format!("cyclic:{n}"), n, |a, b| (a + b) % n, (0..n).map(|i| i.to_string()).collect())
}

/// Dihedral group of order `2n` generated by involutions `a`, `b` with
/// `ab` of order `n`.
///
/// Index `k + n*f` holds `(ab)^k b^f`, so `b` is index `n` and `a = (ab)b`
/// is index `n + 1`; see [`dihedral_generators`]. Each element is labelled
/// by its shortest word in `a` and `b` (found by BFS trying `a` first).
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(GroupError::Domain(format!("dihedral group needs n >= 3, got {n}")));
    }
    check_order(2 * n)?;
    let mul = |x: usize, y: usize| {
        let (k1, f1) = (x % n, x / n);
        let (k2, f2) = (y % n, y / n);
        let k = if f1 == 0 { k1 + k2 } else { k1 + n - k2 };
        (k % n) + n * ((f1 + f2) % 2)
    };
    let (a, b) = dihedral_generators(n);
    let mut words: Vec<Option<Vec<&str>>> = vec![None; 2 * n];
    words[IDENTITY] = Some(Vec::new());
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (name, g) in [("a", a), ("b", b)] {
            let y = mul(x, g);
            if words[y].is_none() {
                let mut w = words[x].clone().unwrap();
                w.push(name);
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    let labels = words
        .into_iter()
        .map(|w| {
            let w = w.expect("a and b generate the dihedral group");
            if w.is_empty() {
                "e".to_string()
            } else {
                w.join("*")
            }
        })
        .collect();
    FiniteGroup::from_fn(format!("dihedral:{n}"), 2 * n, mul, labels)
}

/// Indices of the generating involutions `(a, b)` in [`make_dihedral`]`(n)`.
pub fn dihedral_generators(n: usize) -> (usize, usize) {
    (n + 1, n)
}

/// Elementary abelian group `Z_p^k`.
///
/// Index `Σ x_i p^(i-1)` encodes the coordinate vector `(x_1..x_k)`; the
/// label is the digit string `x_1 x_2 ... x_k`. The basis vector `e_i` is
/// index `p^(i-1)` (see [`elementary_basis`]).
pub fn make_elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    if ![2, 3, 5, 7].contains(&p) {
        return Err(GroupError::Domain(format!("prime p must be one of 2, 3, 5, 7; got {p}")));
    }
    if k == 0 {
        return Err(GroupError::Domain("rank k must be positive".into()));
    }
    let n = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(p)).unwrap_or(usize::MAX);
    check_order(n)?;
    let digits = |mut x: usize| {
        let mut d = Vec::with_capacity(k);
        for _ in 0..k {
            d.push(x % p);
            x /= p;
        }
        d
    };
    let mul = |a: usize, b: usize| {
        let (da, db) = (digits(a), digits(b));
        da.iter().zip(&db).rev().fold(0, |acc, (x, y)| acc * p + (x + y) % p)
    };
    let labels = (0..n).map(|x| digits(x).iter().map(|d| d.to_string()).collect::<String>()).collect();
    FiniteGroup::from_fn(format!("elementary:{p}:{k}"), n, mul, labels)
}

/// Indices of the standard basis vectors `e_1..e_k` of `Z_p^k`.
pub fn elementary_basis(p: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| p.pow(i as u32)).collect()
}

/// Direct product `G × H`; index `g*|H| + h`, labels `(g,h)`.
pub fn make_direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let m = h.order();
    let n = g.order().saturating_mul(m);
    check_order(n)?;
    let labels = (0..n).map(|x| format!("({},{})", g.label(x / m), h.label(x % m))).collect();
    FiniteGroup::from_fn(
        format!("{}x{}", g.name(), h.name()),
        n,
        |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m),
        labels,
    )
}

/// Index of `(a, b)` in [`make_direct_product`]`(g, h)`.
pub fn pair_index(h: &FiniteGroup, a: usize, b: usize) -> usize {
    a * h.order() + b
}

/// Semidirect product `N ⋊ H`.
///
/// `action[h]` is the automorphism of `N` attached to `h`, given as the
/// image table `n ↦ action[h][n]`. The product is
/// `(n1,h1)(n2,h2) = (n1·action[h1](n2), h1·h2)`, and `(n,h)` sits at index
/// `n + |N|*h`. Both the automorphism property of every entry and the
/// homomorphism property `action[h1 h2] = action[h1] ∘ action[h2]` are
/// verified.
pub fn make_semidirect(n_grp: &FiniteGroup, h_grp: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
    let nn = n_grp.order();
    let nh = h_grp.order();
    let total = nn.saturating_mul(nh);
    check_order(total)?;
    if action.len() != nh {
        return Err(GroupError::InvalidAction(format!("expected {nh} automorphisms, got {}", action.len())));
    }
    for (h, phi) in action.iter().enumerate() {
        if phi.len() != nn || phi.iter().any(|&x| x >= nn) {
            return Err(GroupError::InvalidAction(format!("entry {h} is not a map on N")));
        }
        if ElementSet::from_indices(phi.iter().copied()).len() != nn {
            return Err(GroupError::InvalidAction(format!("entry {h} is not a bijection")));
        }
        for x in 0..nn {
            for y in 0..nn {
                if phi[n_grp.mul(x, y)] != n_grp.mul(phi[x], phi[y]) {
                    return Err(GroupError::InvalidAction(format!("entry {h} is not an automorphism")));
                }
            }
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let lhs = &action[h_grp.mul(h1, h2)];
            if (0..nn).any(|x| lhs[x] != action[h1][action[h2][x]]) {
                return Err(GroupError::InvalidAction(format!(
                    "action is not a homomorphism at ({h1}, {h2})"
                )));
            }
        }
    }
    let labels = (0..total).map(|x| format!("({},{})", n_grp.label(x % nn), h_grp.label(x / nn))).collect();
    FiniteGroup::from_fn(
        format!("{}:{}", n_grp.name(), h_grp.name()),
        total,
        |x, y| {
            let (n1, h1) = (x % nn, x / nn);
            let (n2, h2) = (y % nn, y / nn);
            n_grp.mul(n1, action[h1][n2]) + nn * h_grp.mul(h1, h2)
        },
        labels,
    )
}

/// Closes a list of permutations of `{0..degree}` under composition.
///
/// Permutations compose left to right: `(p·q)(x) = q(p(x))`. The identity
/// is element 0 and further elements are numbered in BFS discovery order
/// (right-multiplying by generators in the order given), so the numbering is
/// a function of the generator list. Labels use cycle notation.
pub fn close_permutation_generators(degree: usize, generators: &[Vec<usize>]) -> Result<FiniteGroup> {
    for (i, g) in generators.iter().enumerate() {
        if g.len() != degree || ElementSet::from_indices(g.iter().copied().filter(|&x| x < degree)).len() != degree {
            return Err(GroupError::NotBijection(i));
        }
        if degree > MAX_ORDER {
            return Err(GroupError::Domain(format!("degree {degree} too large")));
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elems.len() {
        for g in generators {
            let next: Vec<usize> = elems[head].iter().map(|&x| g[x]).collect();
            if !index.contains_key(&next) {
                if elems.len() == MAX_ORDER {
                    return Err(GroupError::OrderTooLarge { order: MAX_ORDER + 1, max: MAX_ORDER });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
        head += 1;
    }
    let labels = elems.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_fn(
        format!("perm:{degree}:{}", elems.len()),
        elems.len(),
        |a, b| {
            let prod: Vec<usize> = elems[a].iter().map(|&x| elems[b][x]).collect();
            index[&prod]
        },
        labels,
    )
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&parts.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Parses the text table format:
///
/// ```text
/// group-table v1
/// order <n>
/// <n lines of n whitespace-separated indices>
/// labels <n comma-separated names>      (optional)
/// ```
pub fn read_table(text: &str) -> Result<FiniteGroup> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let err = |line: usize, msg: &str| GroupError::Parse { line: line + 1, msg: msg.to_string() };
    let (ln, header) = lines.next().ok_or_else(|| err(0, "empty input"))?;
    if header.trim() != "group-table v1" {
        return Err(err(ln, "expected `group-table v1`"));
    }
    let (ln, order_line) = lines.next().ok_or_else(|| err(ln + 1, "missing order line"))?;
    let n: usize = order_line
        .trim()
        .strip_prefix("order")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| err(ln, "expected `order <n>`"))?;
    check_order(n)?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines.next().ok_or_else(|| err(ln, "table ends early"))?;
        let row: std::result::Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| err(ln, "non-numeric entry"))?;
        if row.len() != n {
            return Err(err(ln, "row has the wrong length"));
        }
        rows.push(row);
    }
    let mut labels = None;
    if let Some((ln, line)) = lines.next() {
        let rest = line.trim().strip_prefix("labels").ok_or_else(|| err(ln, "expected `labels` line"))?;
        let ls: Vec<String> = split_top_level(rest.trim()).into_iter().map(|s| s.trim().to_string()).collect();
        if ls.len() != n {
            return Err(err(ln, "wrong number of labels"));
        }
        labels = Some(ls);
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln, "trailing content"));
        }
    }
    FiniteGroup::validate_table(&rows, labels)
}

/// Serializes a group in the format accepted by [`read_table`].
pub fn write_table(g: &FiniteGroup) -> String {
    let mut out = format!("group-table v1\norder {}\n", g.order());
    for row in g.table_rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out.push_str("labels ");
    out.push_str(&g.labels().join(","));
    out.push('\n');
    out
}
