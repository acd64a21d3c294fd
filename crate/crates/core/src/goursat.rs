//! Submodules of a product `U × W` as quintuples `(U1, U2, θ, W2, W1)` with
//! `U2 ⊆ U1 ⊆ U`, `W2 ⊆ W1 ⊆ W` and an isomorphism `θ: U1/U2 → W1/W2`.
//!
//! Both factors are explicit modules acting through the same number of
//! matrices; the product acts block-diagonally. Elements of the product are
//! indexed as `u · |W| + w`.

use std::collections::{HashSet, VecDeque};

use crate::abelian::{AbelianPresentation, ElementSet, FiniteAbelianGroup};
use crate::bounds::{self, Bounds};
use crate::enumeration::enumerate_submodules;
use crate::error::{Error, Result};
use crate::module::{Module, ModuleSpec, Submodule, SubmoduleLattice};

/// Submodule data of a product, with `theta` as a table of coset
/// representatives (smallest element index of each coset).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoursatQuintuple {
    pub u1: ElementSet,
    pub u2: ElementSet,
    pub w2: ElementSet,
    pub w1: ElementSet,
    /// Sorted pairs `(rep of u + U2, rep of θ(u + U2))`.
    pub theta: Vec<(usize, usize)>,
}

/// Presentation of `U × W`; the actions are combined block-diagonally.
pub fn product_presentation(u: &AbelianPresentation, w: &AbelianPresentation) -> Result<AbelianPresentation> {
    if u.action.len() != w.action.len() {
        return Err(Error::InvalidParameters(format!(
            "factors act through {} and {} matrices",
            u.action.len(),
            w.action.len()
        )));
    }
    let (a, b) = (u.moduli.len(), w.moduli.len());
    let mut moduli = u.moduli.clone();
    moduli.extend(&w.moduli);
    let action = u
        .action
        .iter()
        .zip(&w.action)
        .map(|(x, y)| {
            let mut m = vec![vec![0i64; a + b]; a + b];
            for i in 0..a {
                m[i][..a].copy_from_slice(&x[i]);
            }
            for i in 0..b {
                m[a + i][a..].copy_from_slice(&y[i]);
            }
            m
        })
        .collect();
    Ok(AbelianPresentation::new(moduli, action))
}

/// The two factors and their product, all explicit.
#[derive(Clone, Debug)]
pub struct Product {
    pub u: Module,
    pub w: Module,
    pub product: Module,
}

impl Product {
    /// Semisimple factors are first converted to explicit form.
    pub fn new(u: &ModuleSpec, w: &ModuleSpec, bounds: &Bounds) -> Result<Self> {
        let (pu, pw) = (u.to_explicit(), w.to_explicit());
        bounds::check("product order", pu.order().saturating_mul(pw.order()), bounds.max_order)?;
        let pp = product_presentation(&pu, &pw)?;
        Ok(Product {
            u: Module::new(ModuleSpec::explicit(pu), bounds)?,
            w: Module::new(ModuleSpec::explicit(pw), bounds)?,
            product: Module::new(ModuleSpec::explicit(pp), bounds)?,
        })
    }

    fn gu(&self) -> &FiniteAbelianGroup {
        self.u.group().expect("explicit")
    }

    fn gw(&self) -> &FiniteAbelianGroup {
        self.w.group().expect("explicit")
    }

    fn split(&self, x: usize) -> (usize, usize) {
        let n = self.gw().order();
        (x / n, x % n)
    }

    fn pair(&self, u: usize, w: usize) -> usize {
        u * self.gw().order() + w
    }

    /// The quintuple of a submodule of `U × W`.
    pub fn quintuple_of(&self, m: &ElementSet) -> Result<GoursatQuintuple> {
        let gp = self.product.group().expect("explicit");
        if !m.fits(gp.order()) || !gp.is_subgroup(m) || !gp.is_action_closed(m) {
            return Err(Error::InvalidParameters("not a submodule of the product".into()));
        }
        let (nu, nw) = (self.gu().order(), self.gw().order());
        let mut u1 = ElementSet::empty(nu);
        let mut u2 = ElementSet::empty(nu);
        let mut w1 = ElementSet::empty(nw);
        let mut w2 = ElementSet::empty(nw);
        for x in m.iter() {
            let (u, w) = self.split(x);
            u1.insert(u);
            w1.insert(w);
            if w == 0 {
                u2.insert(u);
            }
            if u == 0 {
                w2.insert(w);
            }
        }
        let ru = Cosets::new(self.gu(), &u1, &u2);
        let rw = Cosets::new(self.gw(), &w1, &w2);
        if ru.reps.len() != rw.reps.len() || m.len() != ru.reps.len() * u2.len() * w2.len() {
            return Err(Error::Internal("quotient orders differ".into()));
        }
        let mut theta: Vec<(usize, usize)> = m
            .iter()
            .map(|x| {
                let (u, w) = self.split(x);
                (ru.rep[u], rw.rep[w])
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        theta.sort_unstable();
        Ok(GoursatQuintuple { u1, u2, w2, w1, theta })
    }

    /// The submodule `{(u, w) ∈ U1 × W1 : θ(u + U2) = w + W2}`.
    pub fn submodule_of(&self, q: &GoursatQuintuple) -> Result<Submodule> {
        let (gu, gw) = (self.gu(), self.gw());
        for (set, g) in [(&q.u1, gu), (&q.u2, gu), (&q.w1, gw), (&q.w2, gw)] {
            if !set.fits(g.order()) || !g.is_subgroup(set) || !g.is_action_closed(set) {
                return Err(Error::InvalidParameters("quintuple entry is not a submodule".into()));
            }
        }
        if !q.u2.is_subset(&q.u1) || !q.w2.is_subset(&q.w1) {
            return Err(Error::InvalidParameters("quintuple entries are not nested".into()));
        }
        let ru = Cosets::new(gu, &q.u1, &q.u2);
        let rw = Cosets::new(gw, &q.w1, &q.w2);
        let map = theta_table(&ru, &rw, &q.theta)?;
        if !is_isomorphism(gu, gw, &ru, &rw, &map) {
            return Err(Error::InvalidParameters("theta is not an isomorphism".into()));
        }
        let gp = self.product.group().expect("explicit");
        let mut set = ElementSet::empty(gp.order());
        for u in q.u1.iter() {
            let target = map[ru.index[ru.rep[u]]];
            for w in q.w1.iter() {
                if rw.rep[w] == target {
                    set.insert(self.pair(u, w));
                }
            }
        }
        self.product.explicit_sub(set)
    }

    /// Every quintuple: nested pairs in each factor with quotients of equal
    /// order, and every isomorphism between the quotients.
    pub fn enumerate_quintuples(&self) -> Result<Vec<GoursatQuintuple>> {
        let lu = enumerate_submodules(&self.u)?;
        let lw = enumerate_submodules(&self.w)?;
        let pairs_u = nested_pairs(&lu);
        let pairs_w = nested_pairs(&lw);
        let (gu, gw) = (self.gu(), self.gw());
        let mut out = Vec::new();
        for (u1, u2) in &pairs_u {
            let ru = Cosets::new(gu, u1, u2);
            for (w1, w2) in &pairs_w {
                if u1.len() / u2.len() != w1.len() / w2.len() {
                    continue;
                }
                let rw = Cosets::new(gw, w1, w2);
                for map in isomorphisms(gu, gw, &ru, &rw) {
                    let mut theta: Vec<(usize, usize)> =
                        ru.reps.iter().zip(&map).map(|(&a, &b)| (a, b)).collect();
                    theta.sort_unstable();
                    out.push(GoursatQuintuple {
                        u1: u1.clone(),
                        u2: u2.clone(),
                        w2: w2.clone(),
                        w1: w1.clone(),
                        theta,
                    });
                }
            }
        }
        Ok(out)
    }

    /// All submodules of `U × W`, one per quintuple.
    pub fn enumerate_product_submodules(&self) -> Result<Vec<Submodule>> {
        let subs = self
            .enumerate_quintuples()?
            .iter()
            .map(|q| self.submodule_of(q))
            .collect::<Result<Vec<_>>>()?;
        let distinct: HashSet<&Submodule> = subs.iter().collect();
        if distinct.len() != subs.len() {
            return Err(Error::Internal("two quintuples gave the same submodule".into()));
        }
        Ok(subs)
    }
}

/// Convenience wrapper over [`Product::enumerate_product_submodules`].
pub fn enumerate_product_submodules(u: &ModuleSpec, w: &ModuleSpec, bounds: &Bounds) -> Result<Vec<Submodule>> {
    Product::new(u, w, bounds)?.enumerate_product_submodules()
}

fn nested_pairs(l: &SubmoduleLattice) -> Vec<(ElementSet, ElementSet)> {
    let sets: Vec<&ElementSet> = l.members().iter().map(|s| s.elements().expect("explicit")).collect();
    let mut out = Vec::new();
    for a in 0..l.len() {
        for b in l.below(a).ones() {
            out.push((sets[a].clone(), sets[b].clone()));
        }
    }
    out
}

/// Cosets of `h` in `g1`, each named by its smallest element.
struct Cosets {
    reps: Vec<usize>,
    /// `rep[x]` for `x ∈ g1`; `usize::MAX` elsewhere.
    rep: Vec<usize>,
    /// Position of a representative in `reps`.
    index: Vec<usize>,
}

impl Cosets {
    fn new(g: &FiniteAbelianGroup, g1: &ElementSet, h: &ElementSet) -> Self {
        let mut rep = vec![usize::MAX; g.order()];
        let mut index = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g1.iter() {
            if rep[x] != usize::MAX {
                continue;
            }
            index[x] = reps.len();
            reps.push(x);
            for y in h.iter() {
                rep[g.add(x, y)] = x;
            }
        }
        Cosets { reps, rep, index }
    }

    fn add(&self, g: &FiniteAbelianGroup, a: usize, b: usize) -> usize {
        self.rep[g.add(a, b)]
    }

    /// Greedy generators of the quotient, as representatives.
    fn generators(&self, g: &FiniteAbelianGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = self.closure(g, &gens);
        for &r in &self.reps {
            if !reached[self.index[r]] {
                gens.push(r);
                reached = self.closure(g, &gens);
            }
        }
        gens
    }

    /// Which cosets lie in the subgroup generated by `gens`.
    fn closure(&self, g: &FiniteAbelianGroup, gens: &[usize]) -> Vec<bool> {
        let mut reached = vec![false; self.reps.len()];
        reached[0] = true;
        let mut queue = VecDeque::from([self.reps[0]]);
        while let Some(x) = queue.pop_front() {
            for &h in gens {
                let y = self.add(g, x, h);
                if !reached[self.index[y]] {
                    reached[self.index[y]] = true;
                    queue.push_back(y);
                }
            }
        }
        reached
    }
}

fn theta_table(ru: &Cosets, rw: &Cosets, theta: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; ru.reps.len()];
    for &(a, b) in theta {
        let i = ru.index.get(a).copied().unwrap_or(usize::MAX);
        let ok = i != usize::MAX && rw.index.get(b).is_some_and(|&j| j != usize::MAX);
        if !ok || map[i] != usize::MAX {
            return Err(Error::InvalidParameters("theta is not a map between coset representatives".into()));
        }
        map[i] = b;
    }
    if map.contains(&usize::MAX) {
        return Err(Error::InvalidParameters("theta is not defined on every coset".into()));
    }
    Ok(map)
}

/// Whether `map` (indexed by position in `ru.reps`) is an additive,
/// action-equivariant bijection onto the cosets of `rw`.
fn is_isomorphism(gu: &FiniteAbelianGroup, gw: &FiniteAbelianGroup, ru: &Cosets, rw: &Cosets, map: &[usize]) -> bool {
    if ru.reps.len() != rw.reps.len() {
        return false;
    }
    let image: HashSet<usize> = map.iter().copied().collect();
    if image.len() != map.len() {
        return false;
    }
    let f = |x: usize| map[ru.index[ru.rep[x]]];
    for &a in &ru.reps {
        for &b in &ru.reps {
            if f(gu.add(a, b)) != rw.add(gw, f(a), f(b)) {
                return false;
            }
        }
        for k in 0..gu.action_count() {
            if f(gu.act(k, a)) != rw.rep[gw.act(k, f(a))] {
                return false;
            }
        }
    }
    true
}

/// All isomorphisms between two quotients, as tables over `ru.reps`.
///
/// The images of greedy generators determine a homomorphism; each choice is
/// extended by breadth-first search and kept if it is consistent, bijective
/// and commutes with the action.
fn isomorphisms(gu: &FiniteAbelianGroup, gw: &FiniteAbelianGroup, ru: &Cosets, rw: &Cosets) -> Vec<Vec<usize>> {
    let gens = ru.generators(gu);
    let n = rw.reps.len();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(map) = extend(gu, gw, ru, rw, &gens, &choice) {
            if is_isomorphism(gu, gw, ru, rw, &map) {
                out.push(map);
            }
        }
        // Next choice in mixed radix.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend(
    gu: &FiniteAbelianGroup,
    gw: &FiniteAbelianGroup,
    ru: &Cosets,
    rw: &Cosets,
    gens: &[usize],
    choice: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; ru.reps.len()];
    map[0] = rw.reps[0];
    let mut queue = VecDeque::from([ru.reps[0]]);
    while let Some(x) = queue.pop_front() {
        let fx = map[ru.index[x]];
        for (&g, &c) in gens.iter().zip(choice) {
            let y = ru.add(gu, x, g);
            let fy = rw.add(gw, fx, rw.reps[c]);
            let slot = &mut map[ru.index[y]];
            if *slot == usize::MAX {
                *slot = fy;
                queue.push_back(y);
            } else if *slot != fy {
                return None;
            }
        }
    }
    map.iter().all(|&v| v != usize::MAX).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(moduli: &[u32]) -> ModuleSpec {
        ModuleSpec::explicit(AbelianPresentation::z_module(moduli.to_vec()))
    }

    fn product(a: &[u32], b: &[u32]) -> Product {
        Product::new(&z(a), &z(b), &Bounds::default()).unwrap()
    }

    #[test]
    fn product_counts() {
        assert_eq!(product(&[2], &[2]).enumerate_product_submodules().unwrap().len(), 5);
        assert_eq!(product(&[2], &[3]).enumerate_product_submodules().unwrap().len(), 4);
        assert_eq!(product(&[4], &[2]).enumerate_product_submodules().unwrap().len(), 8);
    }

    #[test]
    fn diagonal_quintuple() {
        let p = product(&[2], &[2]);
        let g = p.product.group().unwrap();
        let diag = g.span([g.encode(&[1, 1])]);
        let q = p.quintuple_of(&diag).unwrap();
        assert_eq!(q.u1.len(), 2);
        assert_eq!(q.u2.len(), 1);
        assert_eq!(q.w1.len(), 2);
        assert_eq!(q.w2.len(), 1);
        assert_eq!(q.theta, vec![(0, 0), (1, 1)]);
        let back = p.submodule_of(&q).unwrap();
        assert_eq!(back.elements().unwrap(), &diag);
    }

    #[test]
    fn factor_quintuples() {
        let p = product(&[4], &[2]);
        let g = p.product.group().unwrap();
        let u_times_0 = g.span([g.encode(&[1, 0])]);
        let q = p.quintuple_of(&u_times_0).unwrap();
        assert_eq!(q.u1, q.u2);
        assert_eq!(q.u1.len(), 4);
        assert_eq!((q.w1.len(), q.w2.len()), (1, 1));
        assert_eq!(q.theta.len(), 1);
        let full = g.full_set();
        let q = p.quintuple_of(&full).unwrap();
        assert_eq!((q.u1.len(), q.u2.len(), q.w2.len(), q.w1.len()), (4, 4, 2, 2));
    }

    #[test]
    fn round_trip_all() {
        let p = product(&[4], &[4]);
        for q in p.enumerate_quintuples().unwrap() {
            let s = p.submodule_of(&q).unwrap();
            assert_eq!(p.quintuple_of(s.elements().unwrap()).unwrap(), q);
        }
    }

    #[test]
    fn malformed_theta_rejected() {
        let p = product(&[2], &[2]);
        let g = p.gu();
        let q = GoursatQuintuple {
            u1: g.full_set(),
            u2: g.zero_set(),
            w2: g.zero_set(),
            w1: g.full_set(),
            theta: vec![(0, 1), (1, 0)],
        };
        assert!(p.submodule_of(&q).is_err());
    }

    #[test]
    fn mismatched_actions_rejected() {
        let a = AbelianPresentation::z_module(vec![2]);
        let b = AbelianPresentation::new(vec![2], vec![vec![vec![1]]]);
        assert!(product_presentation(&a, &b).is_err());
    }
}
