//! Named groups and their designated subsets.
//!
//! A group spec is one of the family names below, a product of them joined
//! by `x` (e.g. `cyclic:2xdihedral:4`), or a path to a table file
//! (`file:<path>`, or any existing path).
//!
//! | spec | group | designated subset |
//! |------|-------|-------------------|
//! | `cyclic:n` | `Z_n` | `{0, 1}` |
//! | `dihedral:n` | `D_n`, order `2n`, involutions `a`, `b` | `{e, a, b}` |
//! | `elementary:p:k` | `Z_p^k`, labels are digit strings | `{0, e_1, .., e_k}` |
//! | `quaternion8` | `Q_8 = <a, b>` | none |
//! | `alt4` | `A_4 = <a, b, t>`, `t^-1 a t = b`, `t^-1 b t = ab` | `{e, b, t}` |
//! | `c7_rtimes_c3` | `<a, b>`, `a^7 = b^3 = e`, `b a b^-1 = a^2` | `{e, a, b}` |
//! | `ut3_3` | unitriangular 3×3 over F_3, `a = t12(1)`, `b = t23(1)`, `c = t13(-1)` | `{e, a, b, c}` |
//! | `c3c3_rtimes_c2` | `(C3×C3) ⋊ C2 = <a, b, t>`, `t` inverts | `{e, a, t, b*t}` |
//! | `order16_id11` | `C2 × D4`: `a^4 = b^2 = c^2 = (ab)^2 = e`, `c` central | `{e, a, b, c}` |
//! | `order16_id12` | `C2 × Q8`: `a^2 = b^2`, `(ab)^2 = a^2`, `c` central | `{e, a, b, c}` |
//! | `order16_id13` | Pauli group: `a` central of order 4, `b^2 = c^2 = e`, `(bc)^2 = a^2` | `{e, a, b, c}` |
//!
//! The three order-16 groups are pinned by these presentations. Their
//! element-order profiles distinguish them from each other, but nothing here
//! certifies a match against any external small-group numbering.

use std::path::Path;

use crate::bitset::ElementSet;
use crate::group::{
    dihedral_generators, elementary_basis, make_cyclic, make_dihedral, make_direct_product, make_elementary_abelian,
    make_semidirect, pair_index, read_table, FiniteGroup, GroupError, Result,
};

/// A group together with its designated subset, where one is known.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub group: FiniteGroup,
    pub designated: Option<ElementSet>,
}

pub fn quaternion8() -> Result<FiniteGroup> {
    // (i, j) at index i + 4j is a^i b^j, with b a = a^-1 b and b^2 = a^2
    let mul = |x: usize, y: usize| {
        let (i1, j1) = (x % 4, x / 4);
        let (i2, j2) = (y % 4, y / 4);
        if j1 == 0 {
            (i1 + i2) % 4 + 4 * j2
        } else if j2 == 0 {
            (i1 + 4 - i2) % 4 + 4
        } else {
            (i1 + 4 - i2 + 2) % 4
        }
    };
    FiniteGroup::from_fn("quaternion8", 8, mul, (0..8).map(|i| i.to_string()).collect())?
        .relabel_normal_form(&[("a", 1, 4), ("b", 4, 2)])
}

pub fn alt4() -> Result<FiniteGroup> {
    let v4 = make_elementary_abelian(2, 2)?;
    let c3 = make_cyclic(3)?;
    // a = 1, b = 2, ab = 3 in V4. t acts by a -> ab, b -> a, ab -> b.
    let phi_t = vec![0, 3, 1, 2];
    let phi_t2: Vec<usize> = (0..4).map(|x| phi_t[phi_t[x]]).collect();
    let g = make_semidirect(&v4, &c3, &[(0..4).collect(), phi_t, phi_t2])?;
    Ok(g.relabel_normal_form(&[("t", 4, 3), ("a", 1, 2), ("b", 2, 2)])?.with_name("alt4"))
}

pub fn c7_rtimes_c3() -> Result<FiniteGroup> {
    let c7 = make_cyclic(7)?;
    let c3 = make_cyclic(3)?;
    let action: Vec<Vec<usize>> = (0..3u32).map(|h| (0..7).map(|x| x * 2usize.pow(h) % 7).collect()).collect();
    let g = make_semidirect(&c7, &c3, &action)?;
    Ok(g.relabel_normal_form(&[("b", 7, 3), ("a", 1, 7)])?.with_name("c7_rtimes_c3"))
}

pub fn ut3_3() -> Result<FiniteGroup> {
    // [[1, x, z], [0, 1, y], [0, 0, 1]] at index x + 3y + 9z
    let mul = |p: usize, q: usize| {
        let (x1, y1, z1) = (p % 3, p / 3 % 3, p / 9);
        let (x2, y2, z2) = (q % 3, q / 3 % 3, q / 9);
        (x1 + x2) % 3 + 3 * ((y1 + y2) % 3) + 9 * ((z1 + z2 + x1 * y2) % 3)
    };
    let (a, b, c) = (1, 3, 2 * 9);
    FiniteGroup::from_fn("ut3_3", 27, mul, (0..27).map(|i| i.to_string()).collect())?
        .relabel_normal_form(&[("a", a, 3), ("b", b, 3), ("c", c, 3)])
}

pub fn c3c3_rtimes_c2() -> Result<FiniteGroup> {
    let n = make_elementary_abelian(3, 2)?;
    let c2 = make_cyclic(2)?;
    let invert: Vec<usize> = (0..9).map(|x| n.inv(x)).collect();
    let g = make_semidirect(&n, &c2, &[(0..9).collect(), invert])?;
    Ok(g.relabel_normal_form(&[("a", 1, 3), ("b", 3, 3), ("t", 9, 2)])?.with_name("c3c3_rtimes_c2"))
}

pub fn order16_id11() -> Result<FiniteGroup> {
    let d4 = make_dihedral(4)?;
    let c2 = make_cyclic(2)?;
    let g = make_direct_product(&d4, &c2)?;
    let (s, t) = dihedral_generators(4);
    let a = pair_index(&c2, d4.mul(s, t), 0);
    let b = pair_index(&c2, t, 0);
    let c = pair_index(&c2, 0, 1);
    Ok(g.relabel_normal_form(&[("a", a, 4), ("b", b, 2), ("c", c, 2)])?.with_name("order16_id11"))
}

pub fn order16_id12() -> Result<FiniteGroup> {
    let q8 = quaternion8()?;
    let c2 = make_cyclic(2)?;
    let g = make_direct_product(&q8, &c2)?;
    let a = pair_index(&c2, q8.parse_element("a")?, 0);
    let b = pair_index(&c2, q8.parse_element("b")?, 0);
    let c = pair_index(&c2, 0, 1);
    Ok(g.relabel_normal_form(&[("a", a, 4), ("b", b, 2), ("c", c, 2)])?.with_name("order16_id12"))
}

pub fn order16_id13() -> Result<FiniteGroup> {
    // i^k X^x Z^z at index k + 4x + 8z; Z X = -X Z
    let mul = |p: usize, q: usize| {
        let (k1, x1, z1) = (p % 4, p / 4 % 2, p / 8);
        let (k2, x2, z2) = (q % 4, q / 4 % 2, q / 8);
        (k1 + k2 + 2 * z1 * x2) % 4 + 4 * ((x1 + x2) % 2) + 8 * ((z1 + z2) % 2)
    };
    FiniteGroup::from_fn("order16_id13", 16, mul, (0..16).map(|i| i.to_string()).collect())?
        .relabel_normal_form(&[("a", 1, 4), ("b", 4, 2), ("c", 8, 2)])
}

fn subset(g: &FiniteGroup, items: &[&str]) -> Result<ElementSet> {
    items.iter().map(|s| g.parse_element(s)).collect()
}

fn parse_num(s: &str, spec: &str) -> Result<usize> {
    s.parse().map_err(|_| GroupError::UnknownGroup(spec.to_string()))
}

fn parse_family(spec: &str) -> Result<NamedGroup> {
    let parts: Vec<&str> = spec.split(':').collect();
    let named = |group: FiniteGroup, items: &[&str]| -> Result<NamedGroup> {
        let designated = Some(subset(&group, items)?);
        Ok(NamedGroup { group, designated })
    };
    match parts.as_slice() {
        ["cyclic", n] => {
            let g = make_cyclic(parse_num(n, spec)?)?;
            let designated = if g.order() >= 2 { Some(ElementSet::from_indices([0, 1])) } else { None };
            Ok(NamedGroup { group: g, designated })
        }
        ["dihedral", n] => {
            let n = parse_num(n, spec)?;
            let g = make_dihedral(n)?;
            let (a, b) = dihedral_generators(n);
            Ok(NamedGroup { group: g, designated: Some(ElementSet::from_indices([0, a, b])) })
        }
        ["elementary", p, k] => {
            let (p, k) = (parse_num(p, spec)?, parse_num(k, spec)?);
            let g = make_elementary_abelian(p, k)?;
            let mut a = ElementSet::from_indices(elementary_basis(p, k));
            a.insert(0);
            Ok(NamedGroup { group: g, designated: Some(a) })
        }
        ["quaternion8"] => Ok(NamedGroup { group: quaternion8()?, designated: None }),
        ["alt4"] => named(alt4()?, &["e", "b", "t"]),
        ["c7_rtimes_c3"] => named(c7_rtimes_c3()?, &["e", "a", "b"]),
        ["ut3_3"] => named(ut3_3()?, &["e", "a", "b", "c"]),
        ["c3c3_rtimes_c2"] => named(c3c3_rtimes_c2()?, &["e", "a", "t", "b*t"]),
        ["order16_id11"] => named(order16_id11()?, &["e", "a", "b", "c"]),
        ["order16_id12"] => named(order16_id12()?, &["e", "a", "b", "c"]),
        ["order16_id13"] => named(order16_id13()?, &["e", "a", "b", "c"]),
        _ => Err(GroupError::UnknownGroup(spec.to_string())),
    }
}

/// Resolves a group spec. See the module docs for the grammar.
pub fn parse_group_spec(spec: &str) -> Result<NamedGroup> {
    let spec = spec.trim();
    let path = spec.strip_prefix("file:").map(Path::new).or_else(|| {
        let p = Path::new(spec);
        p.is_file().then_some(p)
    });
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        let group = read_table(&text)?.with_name(path.display().to_string());
        return Ok(NamedGroup { group, designated: None });
    }
    let factors: Vec<&str> = spec.split('x').map(str::trim).collect();
    if factors.len() == 1 {
        let mut named = parse_family(spec)?;
        named.group = named.group.with_name(spec);
        return Ok(named);
    }
    let mut acc = parse_family(factors[0])?.group;
    for f in &factors[1..] {
        let next = parse_family(f)?.group;
        acc = make_direct_product(&acc, &next)?;
    }
    Ok(NamedGroup { group: acc.with_name(spec), designated: None })
}

/// Convenience wrapper returning only the group.
pub fn group(spec: &str) -> Result<FiniteGroup> {
    parse_group_spec(spec).map(|n| n.group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_relation(g: &FiniteGroup, lhs: &str, rhs: &str) {
        assert_eq!(
            g.parse_element(lhs).unwrap(),
            g.parse_element(rhs).unwrap(),
            "{}: {lhs} != {rhs}",
            g.name()
        );
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion8().unwrap();
        check_relation(&q, "a^4", "e");
        check_relation(&q, "a^2", "b^2");
        check_relation(&q, "b^-1*a*b", "a^-1");
        assert_eq!(q.order_profile(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn alt4_presentation() {
        let g = alt4().unwrap();
        assert_eq!(g.order(), 12);
        for (l, r) in [("a^2", "e"), ("b^2", "e"), ("t^3", "e"), ("a*b", "b*a"), ("t^-1*a*t", "b"), ("t^-1*b*t", "a*b")] {
            check_relation(&g, l, r);
        }
        let a4 = crate::group::close_permutation_generators(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![1, 2, 0, 3]])
            .unwrap();
        assert_eq!(g.order_profile(), a4.order_profile());
    }

    #[test]
    fn order21_presentation() {
        let g = c7_rtimes_c3().unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        for (l, r) in [("a^7", "e"), ("b^3", "e"), ("b*a*b^-1", "a^2")] {
            check_relation(&g, l, r);
        }
        // labels follow the b^j a^i normal form
        assert!(g.parse_element("b*a^5").is_ok());
        assert!(g.parse_element("b^2*a^4").is_ok());
    }

    #[test]
    fn ut33_presentation() {
        let g = ut3_3().unwrap();
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
        assert!((1..27).all(|x| g.element_order(x) == 3));
        for (l, r) in [("a^3", "e"), ("b^3", "e"), ("c^3", "e"), ("b^-1*a^-1*b*a", "c"), ("a*c", "c*a"), ("b*c", "c*b")] {
            check_relation(&g, l, r);
        }
    }

    #[test]
    fn ut33_as_permutation_closure() {
        // regular representation of a, b from the matrix model, closed as permutations
        let g = ut3_3().unwrap();
        let gens: Vec<Vec<usize>> = ["a", "b"]
            .iter()
            .map(|s| {
                let x = g.parse_element(s).unwrap();
                (0..27).map(|y| g.mul(y, x)).collect()
            })
            .collect();
        let closed = crate::group::close_permutation_generators(27, &gens).unwrap();
        assert_eq!(closed.order(), 27);
        assert!(!closed.is_abelian());
        assert!((1..27).all(|x| closed.element_order(x) == 3));
    }

    #[test]
    fn order18_presentation() {
        let g = c3c3_rtimes_c2().unwrap();
        assert_eq!(g.order(), 18);
        for (l, r) in [("a^3", "e"), ("b^3", "e"), ("t^2", "e"), ("a*b", "b*a"), ("t*a*t", "a^2"), ("t*b*t", "b^2")] {
            check_relation(&g, l, r);
        }
    }

    #[test]
    fn order16_presentations() {
        let g = order16_id11().unwrap();
        for (l, r) in [("a^4", "e"), ("b^2", "e"), ("c^2", "e"), ("a*c", "c*a"), ("b*c", "c*b"), ("(a*b)", "a*b")] {
            if l.starts_with('(') {
                continue;
            }
            check_relation(&g, l, r);
        }
        check_relation(&g, "a*b*a*b", "e");
        let g = order16_id12().unwrap();
        for (l, r) in [("a^4", "e"), ("b^4", "e"), ("c^2", "e"), ("a^2", "b^2"), ("a*c", "c*a"), ("b*c", "c*b"), ("a*b*a*b", "a^2")] {
            check_relation(&g, l, r);
        }
        let g = order16_id13().unwrap();
        for (l, r) in [("a^4", "e"), ("b^2", "e"), ("c^2", "e"), ("a*b", "b*a"), ("c*a", "a*c"), ("b*c*b*c", "a^2")] {
            check_relation(&g, l, r);
        }
    }

    fn involutions_and_fours(g: &FiniteGroup) -> (usize, usize) {
        let p = g.order_profile();
        (p.iter().filter(|&&o| o == 2).count(), p.iter().filter(|&&o| o == 4).count())
    }

    #[test]
    fn order16_fingerprints_differ() {
        assert_eq!(involutions_and_fours(&order16_id11().unwrap()), (11, 4));
        assert_eq!(involutions_and_fours(&order16_id12().unwrap()), (3, 12));
        assert_eq!(involutions_and_fours(&order16_id13().unwrap()), (7, 8));
        assert_eq!(order16_id13().unwrap().center().len(), 4);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(group("cyclic:2xcyclic:4").unwrap().order(), 8);
        assert_eq!(group("cyclic:2 x dihedral:4").unwrap().order(), 16);
        assert_eq!(group("cyclic:2xcyclic:2xcyclic:2").unwrap().order(), 8);
        assert!(matches!(group("nonsense"), Err(GroupError::UnknownGroup(_))));
        assert!(matches!(group("cyclic:x"), Err(GroupError::UnknownGroup(_))));
        let n = parse_group_spec("c3c3_rtimes_c2").unwrap();
        assert_eq!(n.designated.unwrap().len(), 4);
        let n = parse_group_spec("elementary:2:5").unwrap();
        assert_eq!(n.group.format_set(&n.designated.unwrap()), "{00000, 10000, 01000, 00100, 00010, 00001}");
        assert!(parse_group_spec("quaternion8").unwrap().designated.is_none());
        assert!(matches!(parse_group_spec("file:/nonexistent/table.txt"), Err(GroupError::Io { .. })));
    }
}
