//! The two module models and their submodules.
//!
//! A *semisimple* module `n_1 T_1 ⊕ … ⊕ n_r T_r` is described by its isotypic
//! components; each `T_i` has endomorphism field `F_{q_i}` and a submodule is
//! a tuple of subspaces `W_i ⊆ F_{q_i}^{n_i}`. An *explicit* module is a
//! finite abelian group with an action by integer matrices; a submodule is
//! an action-closed subgroup, stored as its element set.

mod lattice;

use std::fmt;

pub use lattice::{StructuralFlags, SubmoduleLattice};

use crate::abelian::{AbelianPresentation, ElementSet, FiniteAbelianGroup};
use crate::bounds::{self, Bounds};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Subspace;

/// One isotypic component `n · T` of a semisimple module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Component {
    pub type_id: String,
    pub mult: usize,
    /// `End(T)`; its order is the `d` of the counting formulas.
    pub field: FieldSpec,
}

impl Component {
    pub fn new(type_id: impl Into<String>, mult: usize, field: FieldSpec) -> Self {
        Component {
            type_id: type_id.into(),
            mult,
            field,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModuleSpec {
    Semisimple { components: Vec<Component> },
    Explicit { pres: AbelianPresentation },
}

impl ModuleSpec {
    pub fn semisimple(components: Vec<Component>) -> Self {
        ModuleSpec::Semisimple { components }
    }

    pub fn explicit(pres: AbelianPresentation) -> Self {
        ModuleSpec::Explicit { pres }
    }

    /// `n · T` over `F_q`, a single homogeneous component named `S`.
    pub fn homogeneous(mult: usize, q: u64) -> Result<Self> {
        Ok(Self::semisimple(vec![Component::new("S", mult, FieldSpec::of_order(q)?)]))
    }

    /// The same module as an explicit group with action.
    ///
    /// Each `F_q` with `q = p^e` becomes `(Z/p)^e`. For every component the
    /// action contains the projection onto that component and the
    /// multiplication by the field generator `x` on each of its coordinates,
    /// so submodules of the result are exactly tuples of `F_q`-subspaces.
    /// Explicit specs are returned unchanged.
    pub fn to_explicit(&self) -> AbelianPresentation {
        let components = match self {
            ModuleSpec::Explicit { pres } => return pres.clone(),
            ModuleSpec::Semisimple { components } => components,
        };
        let mut moduli = Vec::new();
        let mut blocks = Vec::new();
        for c in components {
            let start = moduli.len();
            let (p, e) = (c.field.p(), c.field.e() as usize);
            moduli.extend(std::iter::repeat_n(p, e * c.mult));
            blocks.push((start, moduli.len(), p, e, c.field.reduction_poly().to_vec()));
        }
        let t = moduli.len();
        let mut action = Vec::new();
        for &(start, end, p, e, ref poly) in &blocks {
            let mut proj = vec![vec![0i64; t]; t];
            let mut gen = vec![vec![0i64; t]; t];
            for (i, row) in proj.iter_mut().enumerate().take(end).skip(start) {
                row[i] = 1;
            }
            for coord in (start..end).step_by(e) {
                // Column j is x · x^j in the basis 1, x, …, x^{e-1}.
                for j in 0..e {
                    if j + 1 < e {
                        gen[coord + j + 1][coord + j] = 1;
                    } else {
                        for (i, &c) in poly.iter().take(e).enumerate() {
                            gen[coord + i][coord + j] = ((p - c % p) % p) as i64;
                        }
                    }
                }
            }
            action.push(proj);
            action.push(gen);
        }
        AbelianPresentation::new(moduli, action)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Semisimple(Vec<Component>),
    Explicit(FiniteAbelianGroup),
}

/// A validated module within the size bounds.
#[derive(Clone, Debug)]
pub struct Module {
    spec: ModuleSpec,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum SubRepr {
    Semisimple(Vec<Subspace>),
    Explicit(ElementSet),
}

/// A submodule with its composition length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    repr: SubRepr,
    length: usize,
}

impl Submodule {
    pub fn length(&self) -> usize {
        self.length
    }

    /// Per-component subspaces (semisimple model).
    pub fn parts(&self) -> Option<&[Subspace]> {
        match &self.repr {
            SubRepr::Semisimple(p) => Some(p),
            SubRepr::Explicit(_) => None,
        }
    }

    /// Element set (explicit model).
    pub fn elements(&self) -> Option<&ElementSet> {
        match &self.repr {
            SubRepr::Explicit(s) => Some(s),
            SubRepr::Semisimple(_) => None,
        }
    }

    pub(crate) fn explicit_with_length(set: ElementSet, length: usize) -> Self {
        Submodule {
            repr: SubRepr::Explicit(set),
            length,
        }
    }

    pub(crate) fn semisimple_parts(parts: Vec<Subspace>) -> Self {
        let length = parts.iter().map(|s| s.dim()).sum();
        Submodule {
            repr: SubRepr::Semisimple(parts),
            length,
        }
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            SubRepr::Semisimple(p) => write!(f, "Sub{p:?}"),
            SubRepr::Explicit(s) => write!(f, "Sub{s:?}"),
        }
    }
}

fn prime_factor_count(mut n: u64) -> usize {
    let mut count = 0;
    let mut d = 2;
    while n > 1 {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    count
}

impl Module {
    pub fn new(spec: ModuleSpec, bounds: &Bounds) -> Result<Self> {
        let repr = match &spec {
            ModuleSpec::Semisimple { components } => {
                if components.is_empty() {
                    return Err(Error::InvalidParameters("no components".into()));
                }
                for (i, c) in components.iter().enumerate() {
                    if c.mult == 0 {
                        return Err(Error::InvalidParameters(format!(
                            "component {} has multiplicity 0",
                            c.type_id
                        )));
                    }
                    if components[..i].iter().any(|d| d.type_id == c.type_id) {
                        return Err(Error::InvalidParameters(format!(
                            "duplicate type id {}",
                            c.type_id
                        )));
                    }
                    bounds::check("field size", c.field.q() as u64, bounds.max_field)?;
                    bounds::check("multiplicity", c.mult as u64, bounds.max_dim as u64)?;
                    let size = (c.field.q() as u64).pow(c.mult as u32);
                    bounds::check("component size q^n", size, bounds.max_order)?;
                }
                Repr::Semisimple(components.clone())
            }
            ModuleSpec::Explicit { pres } => {
                Repr::Explicit(FiniteAbelianGroup::new(pres.clone(), bounds.max_order)?)
            }
        };
        Ok(Module { spec, repr })
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn components(&self) -> Option<&[Component]> {
        match &self.repr {
            Repr::Semisimple(c) => Some(c),
            Repr::Explicit(_) => None,
        }
    }

    pub fn group(&self) -> Option<&FiniteAbelianGroup> {
        match &self.repr {
            Repr::Explicit(g) => Some(g),
            Repr::Semisimple(_) => None,
        }
    }

    pub fn zero(&self) -> Submodule {
        match &self.repr {
            Repr::Semisimple(cs) => Submodule::semisimple_parts(
                cs.iter().map(|c| Subspace::zero(&c.field, c.mult)).collect(),
            ),
            Repr::Explicit(g) => Submodule::explicit_with_length(g.zero_set(), 0),
        }
    }

    pub fn top(&self) -> Submodule {
        match &self.repr {
            Repr::Semisimple(cs) => Submodule::semisimple_parts(
                cs.iter().map(|c| Subspace::full(&c.field, c.mult)).collect(),
            ),
            Repr::Explicit(g) => {
                let set = g.full_set();
                let length = self.explicit_length(g, &set);
                Submodule::explicit_with_length(set, length)
            }
        }
    }

    pub fn composition_length(&self) -> usize {
        match &self.repr {
            Repr::Semisimple(cs) => cs.iter().map(|c| c.mult).sum(),
            Repr::Explicit(g) => self.explicit_length(g, &g.full_set()),
        }
    }

    /// Length of a maximal chain `0 ⊂ … ⊂ H` of submodules.
    ///
    /// Without an action the composition factors are `Z/p`, so the length is
    /// the number of prime factors of `|H|`. Otherwise the chain is built
    /// greedily: above `X`, a smallest `X + Rv` with `v ∈ H \ X` is a cover
    /// of `X`, since every submodule strictly above `X` contains such a sum.
    fn explicit_length(&self, g: &FiniteAbelianGroup, h: &ElementSet) -> usize {
        if g.action_count() == 0 {
            return prime_factor_count(h.len() as u64);
        }
        let mut x = g.zero_set();
        let mut length = 0;
        while x.len() < h.len() {
            let mut best: Option<ElementSet> = None;
            for v in h.iter() {
                if x.contains(v) {
                    continue;
                }
                let c = g.sum(&x, &g.span(g.action_orbit(v)));
                let prime_step = prime_factor_count((c.len() / x.len()) as u64) == 1;
                if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                    best = Some(c);
                }
                if prime_step {
                    break;
                }
            }
            x = best.expect("h strictly contains x");
            length += 1;
        }
        length
    }

    /// Wraps per-component subspaces as a submodule (semisimple model).
    pub fn semisimple_sub(&self, parts: Vec<Subspace>) -> Result<Submodule> {
        let cs = self.components().ok_or(Error::AmbientMismatch)?;
        if parts.len() != cs.len()
            || parts
                .iter()
                .zip(cs)
                .any(|(s, c)| s.field() != &c.field || s.ambient() != c.mult)
        {
            return Err(Error::AmbientMismatch);
        }
        Ok(Submodule::semisimple_parts(parts))
    }

    /// Wraps an element set, checking that it is an action-closed subgroup.
    pub fn explicit_sub(&self, set: ElementSet) -> Result<Submodule> {
        let g = self.group().ok_or(Error::AmbientMismatch)?;
        if !set.fits(g.order()) {
            return Err(Error::AmbientMismatch);
        }
        if !g.is_subgroup(&set) || !g.is_action_closed(&set) {
            return Err(Error::InvalidParameters("element set is not a submodule".into()));
        }
        let length = self.explicit_length(g, &set);
        Ok(Submodule::explicit_with_length(set, length))
    }

    /// The submodule generated by the given element indices.
    pub fn generated_by(&self, elems: &[usize]) -> Result<Submodule> {
        let g = self.group().ok_or(Error::AmbientMismatch)?;
        if let Some(&x) = elems.iter().find(|&&x| x >= g.order()) {
            return Err(Error::InvalidParameters(format!("element index {x} out of range")));
        }
        let set = g.span(elems.iter().flat_map(|&v| g.action_orbit(v)));
        let length = self.explicit_length(g, &set);
        Ok(Submodule::explicit_with_length(set, length))
    }

    fn check(&self, s: &Submodule) -> Result<()> {
        let ok = match (&self.repr, &s.repr) {
            (Repr::Semisimple(cs), SubRepr::Semisimple(p)) => {
                p.len() == cs.len()
                    && p.iter().zip(cs).all(|(s, c)| s.field() == &c.field && s.ambient() == c.mult)
            }
            (Repr::Explicit(g), SubRepr::Explicit(e)) => e.fits(g.order()),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn meet(&self, a: &Submodule, b: &Submodule) -> Result<Submodule> {
        self.check(a)?;
        self.check(b)?;
        match (&a.repr, &b.repr) {
            (SubRepr::Semisimple(x), SubRepr::Semisimple(y)) => Ok(Submodule::semisimple_parts(
                x.iter().zip(y).map(|(s, t)| s.meet(t)).collect::<Result<_>>()?,
            )),
            (SubRepr::Explicit(x), SubRepr::Explicit(y)) => {
                let g = self.group().expect("checked");
                let set = x.intersection(y);
                let length = self.explicit_length(g, &set);
                Ok(Submodule::explicit_with_length(set, length))
            }
            _ => Err(Error::AmbientMismatch),
        }
    }

    pub fn join(&self, a: &Submodule, b: &Submodule) -> Result<Submodule> {
        self.check(a)?;
        self.check(b)?;
        match (&a.repr, &b.repr) {
            (SubRepr::Semisimple(x), SubRepr::Semisimple(y)) => Ok(Submodule::semisimple_parts(
                x.iter().zip(y).map(|(s, t)| s.join(t)).collect::<Result<_>>()?,
            )),
            (SubRepr::Explicit(x), SubRepr::Explicit(y)) => {
                let g = self.group().expect("checked");
                let set = g.sum(x, y);
                let length = self.explicit_length(g, &set);
                Ok(Submodule::explicit_with_length(set, length))
            }
            _ => Err(Error::AmbientMismatch),
        }
    }

    /// Whether `small ⊆ big`.
    pub fn contains(&self, big: &Submodule, small: &Submodule) -> Result<bool> {
        self.check(big)?;
        self.check(small)?;
        match (&big.repr, &small.repr) {
            (SubRepr::Semisimple(x), SubRepr::Semisimple(y)) => {
                for (s, t) in x.iter().zip(y) {
                    if !s.contains(t)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (SubRepr::Explicit(x), SubRepr::Explicit(y)) => Ok(y.is_subset(x)),
            _ => Err(Error::AmbientMismatch),
        }
    }

    /// Canonical text label: type ids with RREF rows, or group generators.
    pub fn label(&self, s: &Submodule) -> String {
        match (&self.repr, &s.repr) {
            (Repr::Semisimple(cs), SubRepr::Semisimple(parts)) => cs
                .iter()
                .zip(parts)
                .map(|(c, p)| {
                    let rows: Vec<String> = (0..p.dim())
                        .map(|r| {
                            let cells: Vec<String> =
                                p.basis().row(r).iter().map(|x| x.to_string()).collect();
                            format!("({})", cells.join(","))
                        })
                        .collect();
                    format!("{}<{}>", c.type_id, rows.join(","))
                })
                .collect::<Vec<_>>()
                .join("+"),
            (Repr::Explicit(g), SubRepr::Explicit(set)) => {
                let gens: Vec<String> = g
                    .group_generators(set)
                    .into_iter()
                    .map(|x| {
                        let d: Vec<String> = g.decode(x).iter().map(|c| c.to_string()).collect();
                        format!("({})", d.join(","))
                    })
                    .collect();
                format!("<{}>", gens.join(","))
            }
            _ => "<foreign>".to_string(),
        }
    }

    /// Number of elements of a submodule.
    pub fn order_of(&self, s: &Submodule) -> u64 {
        match (&self.repr, &s.repr) {
            (Repr::Semisimple(cs), SubRepr::Semisimple(parts)) => cs
                .iter()
                .zip(parts)
                .map(|(c, p)| (c.field.q() as u64).pow(p.dim() as u32))
                .product(),
            (_, SubRepr::Explicit(set)) => set.len() as u64,
            _ => 0,
        }
    }
}
