//! Exhaustive enumeration of subspaces and submodules.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::abelian::ElementSet;
use crate::bounds;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{FqMatrix, Subspace};
use crate::module::{Module, Submodule, SubmoduleLattice};

/// Largest `q^n` accepted by [`enumerate_subspaces`].
pub const SUBSPACE_LIMIT: u64 = 4096;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Every subspace of `F_q^n` (of dimension `dim` if given), as RREF bases.
///
/// Each subspace is produced once, by choosing its pivot columns and then
/// the entries right of each pivot outside the pivot columns.
pub fn enumerate_subspaces(field: &FieldSpec, n: usize, dim: Option<usize>) -> Result<Vec<Subspace>> {
    let size = (field.q() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    bounds::check("q^n", size, SUBSPACE_LIMIT)?;
    let q = field.q();
    let dims: Vec<usize> = match dim {
        Some(k) if k > n => return Ok(Vec::new()),
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let mut out = Vec::new();
    for k in dims {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| ((p + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = q.pow(free.len() as u32);
            for mut code in 0..total {
                let mut entries = vec![0u8; k * n];
                for (r, &p) in pivots.iter().enumerate() {
                    entries[r * n + p] = 1;
                }
                for &(r, c) in &free {
                    entries[r * n + c] = (code % q) as u8;
                    code /= q;
                }
                out.push(Subspace::from_rref_unchecked(FqMatrix::from_elems(field, k, n, entries)));
            }
        }
    }
    Ok(out)
}

/// The submodule generated by a single element (explicit model).
pub fn cyclic_submodule(module: &Module, v: usize) -> Result<Submodule> {
    module.generated_by(&[v])
}

fn cartesian(lists: &[Vec<Subspace>]) -> Vec<Vec<Subspace>> {
    let mut acc: Vec<Vec<Subspace>> = vec![Vec::new()];
    for list in lists {
        acc = acc
            .iter()
            .flat_map(|prefix| {
                list.iter().map(move |s| {
                    let mut v = prefix.clone();
                    v.push(s.clone());
                    v
                })
            })
            .collect();
    }
    acc
}

/// The full submodule lattice.
///
/// Semisimple: products of per-component subspaces. Explicit: all cyclic
/// submodules, closed under sums with a worklist; every submodule is a sum
/// of cyclic ones, so the closure is complete.
pub fn enumerate_submodules(module: &Module) -> Result<SubmoduleLattice> {
    if let Some(cs) = module.components() {
        let lists = cs
            .iter()
            .map(|c| enumerate_subspaces(&c.field, c.mult, None))
            .collect::<Result<Vec<_>>>()?;
        let members = cartesian(&lists).into_iter().map(Submodule::semisimple_parts).collect();
        return SubmoduleLattice::from_members(module.clone(), members, false);
    }
    let g = module.group().ok_or_else(|| Error::Internal("module without a model".into()))?;
    let cyclic: Vec<ElementSet> = {
        let all: Vec<ElementSet> = (0..g.order())
            .into_par_iter()
            .map(|v| g.span(g.action_orbit(v)))
            .collect();
        let mut seen = HashSet::new();
        all.into_iter().filter(|s| seen.insert(s.clone())).collect()
    };
    let mut seen: HashSet<ElementSet> = cyclic.iter().cloned().collect();
    let mut members: Vec<ElementSet> = cyclic.clone();
    let mut i = 0;
    while i < members.len() {
        let x = members[i].clone();
        let sums: Vec<ElementSet> = cyclic
            .par_iter()
            .filter(|c| !c.is_subset(&x) && !x.is_subset(c))
            .map(|c| g.sum(&x, c))
            .collect();
        for s in sums {
            if seen.insert(s.clone()) {
                members.push(s);
            }
        }
        i += 1;
    }
    let members = members.into_iter().map(|s| Submodule::explicit_with_length(s, 0)).collect();
    SubmoduleLattice::from_members(module.clone(), members, true)
}

/// Members `X` with `U ∩ X = 0` and `U + X = V`.
pub fn complements_of(lattice: &SubmoduleLattice, u: usize) -> Result<Vec<usize>> {
    if u >= lattice.len() {
        return Err(Error::NotInLattice);
    }
    Ok((0..lattice.len())
        .filter(|&x| lattice.meet(u, x) == lattice.zero() && lattice.join(u, x) == lattice.top())
        .collect())
}

/// Size of an endomorphism ring, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndSize {
    Finite(u64),
    Infinite,
}

/// Whether a module with the given semisimple profile `(n_k, |End(T_k)|)`
/// has finitely many submodules: it needs a composition series, and every
/// simple type occurring at least twice needs a finite endomorphism ring.
pub fn finiteness_predicate(profile: &[(usize, EndSize)], has_composition_series: bool) -> bool {
    has_composition_series
        && profile
            .iter()
            .all(|&(n, d)| n < 2 || matches!(d, EndSize::Finite(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianPresentation;
    use crate::bounds::Bounds;
    use crate::module::{Component, ModuleSpec};

    fn z(moduli: &[u32]) -> Module {
        Module::new(
            ModuleSpec::explicit(AbelianPresentation::z_module(moduli.to_vec())),
            &Bounds::default(),
        )
        .unwrap()
    }

    fn f(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    /// Counts subspaces by brute force: distinct row spaces of all k-tuples.
    fn brute_count(q: u64, n: usize, k: usize) -> usize {
        let field = f(q);
        let vectors: Vec<Vec<u32>> = (0..(q as usize).pow(n as u32))
            .map(|mut c| {
                (0..n)
                    .map(|_| {
                        let d = (c % q as usize) as u32;
                        c /= q as usize;
                        d
                    })
                    .collect()
            })
            .collect();
        let mut seen = HashSet::new();
        let mut stack = vec![(0usize, Vec::<Vec<u32>>::new())];
        while let Some((start, rows)) = stack.pop() {
            if rows.len() == k {
                let s = Subspace::from_rows(&field, n, &rows).unwrap();
                if s.dim() == k {
                    seen.insert(s);
                }
                continue;
            }
            for (i, v) in vectors.iter().enumerate().skip(start) {
                let mut r = rows.clone();
                r.push(v.clone());
                stack.push((i + 1, r));
            }
        }
        seen.len()
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(&f(2), 2, Some(1)).unwrap().len(), 3);
        assert_eq!(enumerate_subspaces(&f(2), 3, None).unwrap().len(), 16);
        assert_eq!(enumerate_subspaces(&f(3), 2, Some(1)).unwrap().len(), 4);
        for (q, n) in [(2, 3), (3, 2), (4, 2), (2, 4)] {
            for k in 0..=n {
                assert_eq!(
                    enumerate_subspaces(&f(q), n, Some(k)).unwrap().len(),
                    brute_count(q, n, k),
                    "q={q} n={n} k={k}"
                );
            }
        }
        assert!(enumerate_subspaces(&f(2), 13, None).is_err());
    }

    #[test]
    fn explicit_lattices() {
        let l = enumerate_submodules(&z(&[4, 2])).unwrap();
        assert_eq!(l.len(), 8);
        assert_eq!(l.composition_length(), 3);
        let l = enumerate_submodules(&z(&[8])).unwrap();
        assert_eq!(l.len(), 4);
        let (rad, max) = l.radical_and_maximals();
        assert_eq!(max.len(), 1);
        assert_eq!(l.label(rad), "<(2)>");
        assert_eq!(l.label(l.socle()), "<(4)>");
    }

    #[test]
    fn semisimple_lattices() {
        let m = Module::new(ModuleSpec::homogeneous(2, 2).unwrap(), &Bounds::default()).unwrap();
        assert_eq!(enumerate_submodules(&m).unwrap().len(), 5);
        let st = ModuleSpec::semisimple(vec![Component::new("S", 1, f(2)), Component::new("T", 1, f(2))]);
        let l = enumerate_submodules(&Module::new(st, &Bounds::default()).unwrap()).unwrap();
        assert_eq!(l.len(), 4);
    }

    #[test]
    fn cyclic_examples() {
        let m = z(&[4, 2]);
        let g = m.group().unwrap();
        assert_eq!(cyclic_submodule(&m, 0).unwrap(), m.zero());
        let c = cyclic_submodule(&m, g.encode(&[1, 1])).unwrap();
        let got: Vec<Vec<u32>> = c.elements().unwrap().iter().map(|x| g.decode(x)).collect();
        assert_eq!(got, vec![vec![0, 0], vec![1, 1], vec![2, 0], vec![3, 1]]);
        let m8 = z(&[8]);
        assert_eq!(m8.order_of(&cyclic_submodule(&m8, 2).unwrap()), 4);
    }

    #[test]
    fn complement_examples() {
        let m = Module::new(ModuleSpec::homogeneous(2, 2).unwrap(), &Bounds::default()).unwrap();
        let l = enumerate_submodules(&m).unwrap();
        assert_eq!(complements_of(&l, 0).unwrap(), vec![l.top()]);
        assert_eq!(complements_of(&l, 1).unwrap().len(), 2);
        let l8 = enumerate_submodules(&z(&[8])).unwrap();
        let two = l8.strata()[2][0];
        assert!(complements_of(&l8, two).unwrap().is_empty());
        assert!(complements_of(&l8, 99).is_err());
    }

    #[test]
    fn finiteness_examples() {
        assert!(finiteness_predicate(&[(3, EndSize::Finite(2))], true));
        assert!(!finiteness_predicate(&[(2, EndSize::Infinite)], true));
        assert!(finiteness_predicate(&[(1, EndSize::Infinite), (1, EndSize::Infinite)], true));
        assert!(!finiteness_predicate(&[(1, EndSize::Finite(2))], false));
    }
}
