//! Graph properties predicted from the shape of the submodule lattice alone.

use serde::Serialize;

use crate::module::SubmoduleLattice;

/// One isotypic component `n·T` of a semisimple member. `end_size` is
/// `|End(T)|`, which the lattice only reveals when `n ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IsotypicPart {
    pub mult: usize,
    pub end_size: Option<u64>,
}

/// Isotypic decomposition of a semisimple member, read off the lattice:
/// distinct simples `S`, `T` are isomorphic iff `S + T` contains a third
/// simple, and then `S + T` contains exactly `|End(S)| + 1` simples.
///
/// Parts are sorted by decreasing multiplicity. `None` if the member is not
/// semisimple.
pub fn isotypic_profile(lattice: &SubmoduleLattice, i: usize) -> Option<Vec<IsotypicPart>> {
    if !lattice.is_semisimple_at(i) {
        return None;
    }
    let simples = lattice.simples_below(i);
    let simples_in_join = |a: usize, b: usize| lattice.simples_below(lattice.join(a, b)).len();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &s in &simples {
        match classes.iter_mut().find(|c| simples_in_join(c[0], s) > 2) {
            Some(c) => c.push(s),
            None => classes.push(vec![s]),
        }
    }
    let mut parts: Vec<IsotypicPart> = classes
        .iter()
        .map(|c| {
            if c.len() == 1 {
                return IsotypicPart {
                    mult: 1,
                    end_size: None,
                };
            }
            let d = (simples_in_join(c[0], c[1]) - 1) as u64;
            // |c| = 1 + d + … + d^{n−1}.
            let (mut n, mut total, mut power) = (0, 0u64, 1u64);
            while total < c.len() as u64 {
                total += power;
                power *= d;
                n += 1;
            }
            IsotypicPart {
                mult: n,
                end_size: Some(d),
            }
        })
        .collect();
    parts.sort_by(|a, b| b.cmp(a));
    Some(parts)
}

/// Predicted properties of the intersection graph. Member references are
/// lattice indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// `None` for a simple module, whose graph has no vertices.
    pub connected: Option<bool>,
    pub edgeless: bool,
    pub cut_vertex: Option<usize>,
    /// Edges `(simple, maximal)` predicted to be bridges.
    pub bridges: Vec<(usize, usize)>,
    pub acyclic: bool,
    pub bipartite: bool,
    pub no_k3: bool,
    pub no_k4: bool,
    pub no_k5: bool,
    pub planar: bool,
    /// The clause `a`–`d` of the `K_4`-free characterization that holds.
    pub k4_clause: Option<char>,
    /// The clause `a`–`h` of the `K_5`-free characterization that holds.
    pub k5_clause: Option<char>,
}

fn three_distinct_simples(profile: &Option<Vec<IsotypicPart>>) -> bool {
    profile
        .as_ref()
        .is_some_and(|p| p.len() == 3 && p.iter().all(|x| x.mult == 1))
}

fn two_s_plus_t_over_f2(profile: &Option<Vec<IsotypicPart>>) -> bool {
    profile.as_ref().is_some_and(|p| {
        p.len() == 2 && p[0].mult == 2 && p[0].end_size == Some(2) && p[1].mult == 1
    })
}

/// Unique maximal submodule of member `i`, if there is exactly one.
fn unique_maximal(l: &SubmoduleLattice, i: usize) -> Option<usize> {
    match l.maximals_of(i).as_slice() {
        [j] => Some(*j),
        _ => None,
    }
}

pub fn classify_structure(l: &SubmoduleLattice) -> Verdicts {
    let top = l.top();
    let len = l.composition_length();
    let fm = l.maximal_count(top);
    let maximals = l.maximals_of(top);
    let semisimple = l.is_semisimple_at(top);
    let profile = isotypic_profile(l, top);
    let socle = l.socle();

    let connected = (len >= 2).then_some(!semisimple || len >= 3);
    let edgeless = len <= 2;
    let cut_vertex = (l.length(socle) == 2 && l.length(socle) + 1 == len).then_some(socle);
    let bridges = if len == 3 {
        l.strata()[1]
            .iter()
            .filter_map(|&s| {
                let containing: Vec<usize> = maximals.iter().copied().filter(|&m| l.leq(s, m)).collect();
                (containing.len() == 1).then(|| (s, containing[0]))
            })
            .collect()
    } else {
        Vec::new()
    };
    let no_k3 = len <= 2 || (len == 3 && fm == 1);

    let j = unique_maximal(l, top);
    let fm_j = j.map(|j| l.maximal_count(j));
    let k4_clause = if len <= 2 {
        Some('a')
    } else if len == 3 && !semisimple && fm <= 2 {
        Some('b')
    } else if three_distinct_simples(&profile) {
        Some('c')
    } else if len == 4 && fm_j == Some(1) {
        Some('d')
    } else {
        None
    };
    let k5_clause = if len <= 2 {
        Some('a')
    } else if len == 3 && !semisimple && fm <= 3 {
        Some('b')
    } else if three_distinct_simples(&profile) {
        Some('c')
    } else if two_s_plus_t_over_f2(&profile) {
        Some('d')
    } else if len == 4 && fm_j.is_some_and(|f| f <= 2) {
        Some('e')
    } else if len == 4 && j.is_some_and(|j| three_distinct_simples(&isotypic_profile(l, j))) {
        Some('f')
    } else if len == 4 && fm == 2 && maximals.iter().all(|&m| l.maximal_count(m) == 1) {
        Some('g')
    } else if len == 5
        && j.and_then(|j1| unique_maximal(l, j1))
            .and_then(|j2| unique_maximal(l, j2))
            .is_some()
    {
        Some('h')
    } else {
        None
    };
    Verdicts {
        connected,
        edgeless,
        cut_vertex,
        bridges,
        acyclic: no_k3,
        bipartite: no_k3,
        no_k3,
        no_k4: k4_clause.is_some(),
        no_k5: k5_clause.is_some(),
        planar: k5_clause.is_some(),
        k4_clause,
        k5_clause,
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;

    #[test]
    fn profiles_match_specs() {
        let l = ss(&[("S", 2, 2), ("T", 1, 2)]);
        let p = isotypic_profile(&l, l.top()).unwrap();
        assert_eq!(
            p,
            vec![
                IsotypicPart { mult: 2, end_size: Some(2) },
                IsotypicPart { mult: 1, end_size: None }
            ]
        );
        let l = ss(&[("S", 3, 3)]);
        assert_eq!(
            isotypic_profile(&l, l.top()).unwrap(),
            vec![IsotypicPart { mult: 3, end_size: Some(3) }]
        );
        // (Z/2)^2 as an abelian group is 2S with |End(S)| = 2.
        let l = z(&[2, 2]);
        assert_eq!(
            isotypic_profile(&l, l.top()).unwrap(),
            vec![IsotypicPart { mult: 2, end_size: Some(2) }]
        );
        // Z/2 ⊕ Z/3 = S ⊕ T with non-isomorphic simples.
        let l = z(&[2, 3]);
        assert_eq!(isotypic_profile(&l, l.top()).unwrap().len(), 2);
        assert!(isotypic_profile(&z(&[4]), 2).is_none());
    }

    #[test]
    fn examples() {
        let v = classify_structure(&z(&[16]));
        assert_eq!(v.k4_clause, Some('d'));
        assert!(v.planar);

        let l = z(&[4, 2]);
        let v = classify_structure(&l);
        assert!(!v.no_k4);
        assert_eq!(v.k5_clause, Some('b'));
        assert_eq!(v.cut_vertex, Some(l.socle()));
        assert_eq!(v.bridges.len(), 2);
        assert!(v.bridges.iter().all(|&(_, m)| m == l.socle()));

        let v = classify_structure(&ss(&[("S", 2, 2), ("T", 1, 2)]));
        assert_eq!(v.k5_clause, Some('d'));
        let v = classify_structure(&ss(&[("S", 2, 3), ("T", 1, 2)]));
        assert!(!v.planar);

        let v = classify_structure(&ss(&[("S", 3, 2)]));
        assert!(!v.planar && v.connected == Some(true));
        let v = classify_structure(&ss(&[("S", 1, 2), ("T", 1, 2)]));
        assert_eq!(v.connected, Some(false));
        assert!(v.edgeless);
        assert_eq!(classify_structure(&z(&[5])).connected, None);
        assert_eq!(classify_structure(&z(&[32])).k5_clause, Some('h'));
        assert!(!classify_structure(&z(&[64])).planar);
    }
}
