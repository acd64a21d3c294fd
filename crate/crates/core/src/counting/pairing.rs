use std::collections::HashMap;

use serde::Serialize;

use super::matching::{bipartite_matching, general_matching};
use crate::enumeration::enumerate_subspaces;
use crate::error::{Error, Result};
use crate::matrix::Subspace;
use crate::module::{Component, Submodule, SubmoduleLattice};

/// Complement map on the subspaces of `F_q^n`: a perfect matching between
/// dimensions `j` and `n − j` over complementary pairs, inverted for the
/// opposite dimension.
fn component_bijection(c: &Component) -> Result<HashMap<Subspace, Subspace>> {
    let n = c.mult;
    let mut by_dim: Vec<Vec<Subspace>> = vec![Vec::new(); n + 1];
    for s in enumerate_subspaces(&c.field, n, None)? {
        by_dim[s.dim()].push(s);
    }
    let mut phi = HashMap::new();
    for j in 0..=n / 2 {
        let (left, right) = (&by_dim[j], &by_dim[n - j]);
        let adj = left
            .iter()
            .map(|x| {
                right
                    .iter()
                    .enumerate()
                    .filter_map(|(r, y)| x.meet(y).map(|m| m.is_zero().then_some(r)).transpose())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = bipartite_matching(&adj, right.len());
        for (l, r) in m.iter().enumerate() {
            let r = r.ok_or_else(|| {
                Error::Internal(format!("no perfect complement matching in dimension {j} of {:?}^{n}", c.field))
            })?;
            phi.insert(left[l].clone(), right[r].clone());
            if j != n - j {
                phi.insert(right[r].clone(), left[l].clone());
            }
        }
    }
    Ok(phi)
}

/// A bijection `φ` on all members with `X ∩ φ(X) = 0` and `X + φ(X) = V`,
/// built per isotypic component and combined componentwise.
///
/// Returned as a permutation of lattice indices.
pub fn complement_bijection(lattice: &SubmoduleLattice) -> Result<Vec<usize>> {
    let cs = lattice
        .module()
        .components()
        .ok_or_else(|| Error::InvalidParameters("complement bijection needs a semisimple model".into()))?;
    let maps = cs.iter().map(component_bijection).collect::<Result<Vec<_>>>()?;
    let phi = lattice
        .members()
        .iter()
        .map(|s| {
            let parts = s.parts().expect("semisimple member");
            let image = parts.iter().zip(&maps).map(|(p, m)| m[p].clone()).collect();
            lattice.index_of(&Submodule::semisimple_parts(image))
        })
        .collect::<Result<Vec<_>>>()?;
    for (x, &y) in phi.iter().enumerate() {
        if lattice.meet(x, y) != lattice.zero() || lattice.join(x, y) != lattice.top() {
            return Err(Error::Internal(format!("φ({}) is not a complement", lattice.label(x))));
        }
    }
    Ok(phi)
}

/// A split of the length-`k` members into `a`, `b` (and possibly one
/// excluded member) with `a[i] ∩ b[i] = 0` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfPairing {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub excluded: Option<usize>,
}

/// Pairs up the middle stratum of a semisimple module of length `2k`.
///
/// * Some multiplicity `n_1` odd: `a` holds the members whose `T_1`-part has
///   length below `n_1 / 2`, and the pairing is the complement bijection.
/// * All multiplicities even, some `|End(T_i)|` odd: a perfect matching in
///   the disjointness graph of the stratum.
/// * A single component with `|End(T)|` even: a matching that leaves
///   exactly one member out.
/// * Otherwise: `Unsupported`.
pub fn half_pairing(lattice: &SubmoduleLattice, k: usize) -> Result<HalfPairing> {
    let cs = lattice
        .module()
        .components()
        .ok_or_else(|| Error::InvalidParameters("half pairing needs a semisimple model".into()))?;
    let n = lattice.composition_length();
    if n != 2 * k {
        return Err(Error::InvalidParameters(format!("length {n} is not 2k for k = {k}")));
    }
    let stratum = &lattice.strata()[k];
    if let Some(c1) = cs.iter().position(|c| c.mult % 2 == 1) {
        let phi = complement_bijection(lattice)?;
        let a: Vec<usize> = stratum
            .iter()
            .copied()
            .filter(|&x| 2 * lattice.member(x).parts().expect("semisimple")[c1].dim() < cs[c1].mult)
            .collect();
        let b: Vec<usize> = a.iter().map(|&x| phi[x]).collect();
        if a.len() + b.len() != stratum.len() {
            return Err(Error::Internal("complement pairing does not cover the stratum".into()));
        }
        return Ok(HalfPairing { a, b, excluded: None });
    }
    let some_odd_d = cs.iter().any(|c| c.field.q() % 2 == 1);
    if !some_odd_d && cs.len() > 1 {
        return Err(Error::Unsupported(
            "all multiplicities even and all endomorphism fields even with several simple types".into(),
        ));
    }
    let adj: Vec<Vec<usize>> = stratum
        .iter()
        .map(|&x| {
            (0..stratum.len())
                .filter(|&j| lattice.meet(x, stratum[j]) == lattice.zero())
                .collect()
        })
        .collect();
    let mate = general_matching(&adj);
    let unmatched: Vec<usize> = (0..stratum.len()).filter(|&i| mate[i].is_none()).collect();
    let allowed = if some_odd_d { 0 } else { 1 };
    if unmatched.len() != allowed {
        return Err(Error::Internal(format!(
            "disjointness matching leaves {} members unmatched, expected {allowed}",
            unmatched.len()
        )));
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (i, m) in mate.iter().enumerate() {
        if let Some(j) = *m {
            if i < j {
                a.push(stratum[i]);
                b.push(stratum[j]);
            }
        }
    }
    Ok(HalfPairing {
        a,
        b,
        excluded: unmatched.first().map(|&i| stratum[i]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Bounds;
    use crate::enumeration::enumerate_submodules;
    use crate::field::FieldSpec;
    use crate::module::{Module, ModuleSpec};

    fn lattice(parts: &[(&str, usize, u64)]) -> SubmoduleLattice {
        let spec = ModuleSpec::semisimple(
            parts
                .iter()
                .map(|&(t, n, q)| Component::new(t, n, FieldSpec::of_order(q).unwrap()))
                .collect(),
        );
        enumerate_submodules(&Module::new(spec, &Bounds::default()).unwrap()).unwrap()
    }

    fn check_pairing(l: &SubmoduleLattice, k: usize, p: &HalfPairing) {
        let mut all: Vec<usize> = p.a.iter().chain(&p.b).chain(&p.excluded).copied().collect();
        all.sort_unstable();
        let mut stratum = l.strata()[k].clone();
        stratum.sort_unstable();
        assert_eq!(all, stratum);
        assert_eq!(p.a.len(), p.b.len());
        for (&x, &y) in p.a.iter().zip(&p.b) {
            assert_eq!(l.meet(x, y), l.zero());
        }
    }

    #[test]
    fn bijection_is_a_complement_permutation() {
        for parts in [
            vec![("S", 2, 2)],
            vec![("S", 3, 2)],
            vec![("S", 2, 3)],
            vec![("S", 2, 2), ("T", 1, 2)],
            vec![("S", 4, 2)],
        ] {
            let l = lattice(&parts);
            let phi = complement_bijection(&l).unwrap();
            let mut seen = vec![false; l.len()];
            for (x, &y) in phi.iter().enumerate() {
                assert!(!seen[y]);
                seen[y] = true;
                assert_eq!(l.length(x) + l.length(y), l.composition_length());
            }
            assert_eq!(phi[l.zero()], l.top());
        }
    }

    #[test]
    fn pairing_cases() {
        let l = lattice(&[("S", 1, 2), ("T", 1, 2)]);
        let p = half_pairing(&l, 1).unwrap();
        check_pairing(&l, 1, &p);
        let labels: Vec<&str> = p.a.iter().chain(&p.b).map(|&x| l.label(x)).collect();
        assert_eq!(labels.len(), 2);

        let l = lattice(&[("S", 2, 2)]);
        let p = half_pairing(&l, 1).unwrap();
        check_pairing(&l, 1, &p);
        assert!(p.excluded.is_some());
        assert_eq!(p.a.len(), 1);

        let l = lattice(&[("S", 2, 2), ("T", 1, 2), ("U", 1, 2)]);
        let p = half_pairing(&l, 2).unwrap();
        check_pairing(&l, 2, &p);
        assert_eq!(p.a.len(), 4);

        let l = lattice(&[("S", 2, 3)]);
        let p = half_pairing(&l, 1).unwrap();
        check_pairing(&l, 1, &p);
        assert!(p.excluded.is_none());

        let l = lattice(&[("S", 2, 2), ("T", 2, 2)]);
        assert!(matches!(half_pairing(&l, 2), Err(Error::Unsupported(_))));
        assert!(half_pairing(&l, 1).is_err());
    }
}
