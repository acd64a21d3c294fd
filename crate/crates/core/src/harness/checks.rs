//! The registered checks. Each one decides per instance whether its
//! hypothesis applies and, if so, compares a closed form or a lattice-level
//! prediction with a brute-force value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigUint;

use super::analysis::Analysis;
use super::manifest::NamedPair;
use crate::abelian::AbelianPresentation;
use crate::bounds::Bounds;
use crate::counting::{
    chromatic_formula, complement_bijection, count_by_length, count_complements, count_intersecting, count_maximal,
    count_maximal_homogeneous, domination_formula, gaussian_binomial, half_pairing, HalfPairing,
};
use crate::enumeration::{complements_of, enumerate_submodules, enumerate_subspaces, finiteness_predicate, EndSize};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::goursat::Product;
use crate::graph::{
    chromatic_number, chromatic_upper_bound, domination_facts, is_dominating, lift_dominating_set, min_dominating_set,
    Computed, Graph, IsotypicPart,
};
use crate::module::{Component, Module, ModuleSpec, SubmoduleLattice};

pub(crate) enum Verdict {
    Holds { detail: String, side: Option<bool> },
    Violated { expected: String, actual: String },
    Skipped(String),
    NotApplicable,
}

pub(crate) enum Eval {
    Instance(fn(&Analysis) -> Result<Verdict>),
    Pair(fn(&NamedPair, &Bounds) -> Result<Verdict>),
}

pub(crate) struct CheckDef {
    pub id: &'static str,
    pub description: &'static str,
    /// Characterizations must be seen holding on both sides of the condition.
    pub both_sides: bool,
    pub eval: Eval,
}

macro_rules! value {
    ($e:expr) => {
        match $e? {
            Computed::Value(v) => v,
            Computed::Skipped { skipped } => return Ok(Verdict::Skipped(skipped.clone())),
        }
    };
}

fn holds(detail: impl Into<String>) -> Verdict {
    Verdict::Holds {
        detail: detail.into(),
        side: None,
    }
}

fn violated(expected: impl Into<String>, actual: impl Into<String>) -> Verdict {
    Verdict::Violated {
        expected: expected.into(),
        actual: actual.into(),
    }
}

fn compare<T: PartialEq + Debug>(what: &str, expected: T, actual: T, side: Option<bool>) -> Verdict {
    if expected == actual {
        Verdict::Holds {
            detail: format!("{what} = {actual:?}"),
            side,
        }
    } else {
        violated(format!("{what} = {expected:?}"), format!("{what} = {actual:?}"))
    }
}

/// Single-component spec of the model, if it has one.
fn homogeneous_model(a: &Analysis) -> Option<&Component> {
    match &a.spec {
        ModuleSpec::Semisimple { components } if components.len() == 1 => Some(&components[0]),
        _ => None,
    }
}

fn model_components(a: &Analysis) -> Option<&[Component]> {
    match &a.spec {
        ModuleSpec::Semisimple { components } => Some(components),
        ModuleSpec::Explicit { .. } => None,
    }
}

/// `(n, d)` of a homogeneous semisimple instance. For `n = 1` the lattice
/// does not reveal `d`, and no count below depends on it.
fn homogeneous_params(a: &Analysis) -> Option<(usize, u64)> {
    if let Some(c) = homogeneous_model(a) {
        return Some((c.mult, c.field.q() as u64));
    }
    match a.profile.as_deref() {
        Some([p]) => Some((p.mult, p.end_size.unwrap_or(2))),
        _ => None,
    }
}

/// A semisimple spec with the same isotypic profile as the instance.
fn profile_spec(a: &Analysis) -> Result<Option<ModuleSpec>> {
    if let ModuleSpec::Semisimple { .. } = a.spec {
        return Ok(Some(a.spec.clone()));
    }
    let Some(profile) = &a.profile else { return Ok(None) };
    let components = profile
        .iter()
        .enumerate()
        .map(|(i, p)| Ok(Component::new(format!("T{i}"), p.mult, FieldSpec::of_order(p.end_size.unwrap_or(2))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(ModuleSpec::semisimple(components)))
}

fn some_odd_mult(profile: &[IsotypicPart]) -> bool {
    profile.iter().any(|p| p.mult % 2 == 1)
}

fn labels(a: &Analysis, vertices: &[usize]) -> Vec<String> {
    vertices.iter().map(|&v| a.lattice.label(a.member(v)).to_string()).collect()
}

/// Graph vertices strictly below member `u`, and the induced graph `G(U)`.
fn sub_graph(a: &Analysis, u: usize) -> (Vec<usize>, Graph) {
    let vs: Vec<usize> = a
        .lattice
        .proper()
        .filter(|&x| x != u && a.lattice.leq(x, u))
        .map(|x| a.vertex(x))
        .collect();
    let g = a.graph.induced(&vs);
    (vs, g)
}

fn sum_mu(l: &SubmoduleLattice, from: usize, to_exclusive: usize) -> usize {
    (from..to_exclusive).map(|i| l.mu(i)).sum()
}

// Connectivity and cycles.

fn rem_2_2(a: &Analysis) -> Result<Verdict> {
    if a.graph.vertex_count() == 0 {
        return Ok(Verdict::NotApplicable);
    }
    let d = a.components.diameters.iter().copied().max().unwrap_or(0);
    Ok(if d <= 2 {
        holds(format!("component diameters {:?}", a.components.diameters))
    } else {
        violated("every diameter <= 2", format!("diameters {:?}", a.components.diameters))
    })
}

fn prop_2_3(a: &Analysis) -> Result<Verdict> {
    let Some(predicted) = a.verdicts.connected else {
        return Ok(Verdict::NotApplicable);
    };
    Ok(compare("connected", predicted, a.components.is_connected(), Some(predicted)))
}

fn cor_2_4(a: &Analysis) -> Result<Verdict> {
    if a.graph.edge_count() == 0 {
        return Ok(Verdict::NotApplicable);
    }
    Ok(compare("connected", true, a.components.is_connected(), None))
}

fn rem_2_5(a: &Analysis) -> Result<Verdict> {
    let predicted = a.length() <= 2;
    Ok(compare("edgeless", predicted, a.graph.edge_count() == 0, Some(predicted)))
}

fn rem_2_6(a: &Analysis) -> Result<Verdict> {
    let predicted: Vec<usize> = a.verdicts.cut_vertex.map(|s| a.vertex(s)).into_iter().collect();
    let side = !predicted.is_empty();
    Ok(compare(
        "cut vertices",
        labels(a, &predicted),
        labels(a, &a.cut_vertices),
        Some(side),
    ))
}

fn rem_2_7(a: &Analysis) -> Result<Verdict> {
    let mut predicted: Vec<(usize, usize)> = a
        .verdicts
        .bridges
        .iter()
        .map(|&(s, m)| {
            let (x, y) = (a.vertex(s), a.vertex(m));
            (x.min(y), x.max(y))
        })
        .collect();
    predicted.sort_unstable();
    let side = !predicted.is_empty();
    let named = |es: &[(usize, usize)]| -> Vec<[String; 2]> {
        es.iter()
            .map(|&(x, y)| [a.lattice.label(a.member(x)).to_string(), a.lattice.label(a.member(y)).to_string()])
            .collect()
    };
    Ok(compare("bridges", named(&predicted), named(&a.cut_edges), Some(side)))
}

fn prop_3_2(a: &Analysis) -> Result<Verdict> {
    let predicted = a.verdicts.acyclic;
    let acyclic = a.girth.is_none();
    let triangle_free = a.girth != Some(3);
    Ok(compare(
        "(acyclic, triangle-free)",
        (predicted, predicted),
        (acyclic, triangle_free),
        Some(predicted),
    ))
}

fn cor_3_3(a: &Analysis) -> Result<Verdict> {
    let predicted = a.verdicts.bipartite;
    Ok(compare("bipartite", predicted, a.bipartite, Some(predicted)))
}

// Domination.

fn pair_spec(p: &NamedPair) -> Result<(ModuleSpec, ModuleSpec)> {
    Ok((p.left.to_spec()?, p.right.to_spec()?))
}

fn lem_4_1(p: &NamedPair, bounds: &Bounds) -> Result<Verdict> {
    let (u, w) = pair_spec(p)?;
    let product = match Product::new(&u, &w, bounds) {
        Ok(x) => x,
        Err(e @ Error::BoundExceeded { .. }) => return Ok(Verdict::Skipped(e.to_string())),
        Err(e) => return Err(e),
    };
    let lattice = enumerate_submodules(&product.product)?;
    for (i, m) in lattice.members().iter().enumerate() {
        let set = m.elements().expect("explicit product");
        let q = product.quintuple_of(set)?;
        let back = product.submodule_of(&q)?;
        if back.elements() != Some(set) {
            return Ok(violated(
                format!("round trip of {}", lattice.label(i)),
                "a different submodule".to_string(),
            ));
        }
        // p1/k1, p2/k2 and M/(k1 × k2) have the same order.
        let (s1, s2) = (q.u1.len() / q.u2.len(), q.w1.len() / q.w2.len());
        let s3 = set.len() / (q.u2.len() * q.w2.len());
        if s1 != s2 || s1 != s3 {
            return Ok(violated(
                format!("equal section orders for {}", lattice.label(i)),
                format!("{s1}, {s2}, {s3}"),
            ));
        }
    }
    let quintuples = product.enumerate_quintuples()?;
    Ok(compare("submodule count", lattice.len(), quintuples.len(), None))
}

fn lem_4_2(a: &Analysis) -> Result<Verdict> {
    if a.length() < 2 {
        return Ok(Verdict::NotApplicable);
    }
    let gamma = match a.gamma()? {
        Computed::Value(d) => Some(d.len()),
        Computed::Skipped { .. } => None,
    };
    let l = &a.lattice;
    let (mut checked, mut skipped) = (0, 0);
    for u in (0..l.len()).filter(|&u| l.length(u) >= 2) {
        let (vs, gu) = sub_graph(a, u);
        let d = match min_dominating_set(&gu, &a.bounds) {
            Ok(d) => d,
            Err(Error::BoundExceeded { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let members: Vec<usize> = d.iter().map(|&i| a.member(vs[i])).collect();
        let lifted = match lift_dominating_set(l, &a.graph, u, &members) {
            Ok(x) => x,
            Err(Error::Internal(msg)) => return Ok(violated(format!("lift for {} dominates", l.label(u)), msg)),
            Err(e) => return Err(e),
        };
        let as_vertices: Vec<usize> = lifted.iter().map(|&x| a.vertex(x)).collect();
        if !is_dominating(&a.graph, &as_vertices) {
            return Ok(violated(
                format!("lift for {} dominates", l.label(u)),
                format!("{:?} does not", labels(a, &as_vertices)),
            ));
        }
        if let Some(g) = gamma {
            if lifted.len() < g {
                return Ok(violated(
                    format!("lift for {} has at least {g} members", l.label(u)),
                    format!("{} members", lifted.len()),
                ));
            }
        }
        checked += 1;
    }
    if checked == 0 {
        return Ok(Verdict::Skipped(format!("all {skipped} subgraphs exceed the solver cap")));
    }
    Ok(holds(format!("{checked} lifts dominate ({skipped} skipped)")))
}

fn lem_4_3(a: &Analysis) -> Result<Verdict> {
    if !a.semisimple() || a.length() < 3 {
        return Ok(Verdict::NotApplicable);
    }
    let d: Vec<usize> = value!(a.gamma()).iter().map(|&v| a.member(v)).collect();
    let l = &a.lattice;
    let candidates: Vec<usize> = l.strata()[2]
        .iter()
        .copied()
        .filter(|&u| d.iter().all(|&x| l.meet(u, x) != u))
        .collect();
    if candidates.is_empty() {
        return Ok(violated(
            "a length-2 member contained in no member of the dominating set",
            "none",
        ));
    }
    for &u in &candidates {
        let (vs, gu) = sub_graph(a, u);
        let restricted: BTreeSet<usize> = d
            .iter()
            .map(|&x| l.meet(x, u))
            .filter(|&m| m != l.zero())
            .map(|m| vs.iter().position(|&v| v == a.vertex(m)).expect("proper member of U"))
            .collect();
        let restricted: Vec<usize> = restricted.into_iter().collect();
        if !is_dominating(&gu, &restricted) {
            return Ok(violated(
                format!("restriction to {} dominates", l.label(u)),
                "it does not".to_string(),
            ));
        }
    }
    Ok(holds(format!("{} length-2 members qualify", candidates.len())))
}

fn thm_4_4(a: &Analysis) -> Result<Verdict> {
    if a.length() < 2 {
        return Ok(Verdict::NotApplicable);
    }
    let gamma = value!(a.gamma()).len() as u64;
    Ok(compare("γ", domination_formula(&domination_facts(&a.lattice)), gamma, None))
}

// Finiteness and counting.

fn lem_5_1(a: &Analysis) -> Result<Verdict> {
    let Some((n, d)) = homogeneous_params(a) else {
        return Ok(Verdict::NotApplicable);
    };
    let expected = count_maximal_homogeneous(n as u32, d)?;
    let actual = BigUint::from(a.lattice.maximal_count(a.lattice.top()));
    Ok(compare("maximal submodules", expected, actual, None))
}

fn prop_5_2(a: &Analysis) -> Result<Verdict> {
    let Some(spec) = profile_spec(a)? else {
        return Ok(Verdict::NotApplicable);
    };
    let expected = count_maximal(&spec)?;
    let actual = BigUint::from(a.lattice.maximal_count(a.lattice.top()));
    Ok(compare("maximal submodules", expected, actual, None))
}

fn thm_5_3(a: &Analysis) -> Result<Verdict> {
    // The socle is a semisimple section; its simple types with multiplicity
    // at least two expose their endomorphism field sizes.
    let l = &a.lattice;
    let profile = crate::graph::isotypic_profile(l, l.socle()).expect("the socle is semisimple");
    let sizes: Vec<(usize, EndSize)> = profile
        .iter()
        .map(|p| (p.mult, EndSize::Finite(p.end_size.unwrap_or(1))))
        .collect();
    let predicted = finiteness_predicate(&sizes, true);
    Ok(compare("finitely many submodules", predicted, !l.is_empty(), None))
}

fn rem_5_4(a: &Analysis) -> Result<Verdict> {
    let (v, e) = (a.graph.vertex_count(), a.graph.edge_count());
    if e == 0 {
        return Ok(Verdict::NotApplicable);
    }
    Ok(if e <= v * (v - 1) / 2 {
        holds(format!("{v} vertices, {e} edges"))
    } else {
        violated(format!("at most {} edges", v * (v - 1) / 2), format!("{e} edges"))
    })
}

fn lem_6_2_2(a: &Analysis) -> Result<Verdict> {
    let Some((n, d)) = homogeneous_params(a) else {
        return Ok(Verdict::NotApplicable);
    };
    let expected = (0..=n)
        .map(|i| gaussian_binomial(n as u32, i as u32, d))
        .collect::<Result<Vec<_>>>()?;
    let actual: Vec<BigUint> = (0..=n).map(|i| BigUint::from(a.lattice.mu(i))).collect();
    if let Some(c) = homogeneous_model(a) {
        let listed = (0..=n)
            .map(|i| enumerate_subspaces(&c.field, n, Some(i)).map(|s| BigUint::from(s.len())))
            .collect::<Result<Vec<_>>>()?;
        if listed != expected {
            return Ok(compare("subspaces by dimension", expected, listed, None));
        }
    }
    Ok(compare("μ", expected, actual, None))
}

fn lem_6_2_3(a: &Analysis) -> Result<Verdict> {
    let Some((n, d)) = homogeneous_params(a) else {
        return Ok(Verdict::NotApplicable);
    };
    let l = &a.lattice;
    let mut triples = 0;
    for u in 0..l.len() {
        let j = l.length(u);
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for w in 0..l.len() {
            *counts.entry((l.length(w), l.length(l.meet(u, w)))).or_default() += 1;
        }
        for i in 0..=n {
            for m in 0..=i.min(j) {
                let expected = if i - m > n - j {
                    BigUint::from(0u32)
                } else {
                    count_intersecting(n as u32, d, j as u32, i as u32, m as u32)?
                };
                let actual = BigUint::from(counts.get(&(i, m)).copied().unwrap_or(0));
                if expected != actual {
                    return Ok(violated(
                        format!("U = {}, (j, i, m) = ({j}, {i}, {m}): {expected}", l.label(u)),
                        actual.to_string(),
                    ));
                }
                triples += 1;
            }
        }
        let expected = BigUint::from(d).pow(((n - j) * j) as u32);
        let actual = BigUint::from(complements_of(l, u)?.len());
        if expected != actual {
            return Ok(violated(
                format!("complements of {}: {expected}", l.label(u)),
                actual.to_string(),
            ));
        }
    }
    Ok(holds(format!("{triples} (U, i, m) counts and {} complement counts", l.len())))
}

/// Order isomorphism between the subspaces of `F_p^n` and the subgroups of
/// `(Z/p)^n`, sending a subspace to its set of vectors.
fn elementary_iso(ss: &SubmoduleLattice, ex: &SubmoduleLattice) -> Result<Option<String>> {
    if ss.len() != ex.len() {
        return Ok(Some(format!("{} subspaces vs {} subgroups", ss.len(), ex.len())));
    }
    let module = ex.module();
    let group = module.group().expect("explicit");
    let mut image = Vec::with_capacity(ss.len());
    for s in ss.members() {
        let [part] = s.parts().expect("semisimple") else {
            return Err(Error::Internal("expected one component".into()));
        };
        let mut set = group.zero_set();
        for v in part.vectors() {
            let coords: Vec<u32> = v.iter().map(|&x| x as u32).collect();
            set.insert(group.encode(&coords));
        }
        image.push(ex.index_of(&module.explicit_sub(set)?)?);
    }
    let distinct: BTreeSet<usize> = image.iter().copied().collect();
    if distinct.len() != image.len() {
        return Ok(Some("two subspaces map to the same subgroup".into()));
    }
    for a in 0..ss.len() {
        for b in 0..ss.len() {
            if ss.leq(a, b) != ex.leq(image[a], image[b]) {
                return Ok(Some(format!(
                    "containment differs for {} and {}",
                    ss.label(a),
                    ss.label(b)
                )));
            }
        }
    }
    Ok(None)
}

fn rem_6_3(a: &Analysis) -> Result<Verdict> {
    let Some(profile) = &a.profile else {
        return Ok(Verdict::NotApplicable);
    };
    let mut expected = BigUint::from(1u32);
    for p in profile {
        let d = p.end_size.unwrap_or(2);
        let size: BigUint = (0..=p.mult)
            .map(|i| gaussian_binomial(p.mult as u32, i as u32, d))
            .sum::<Result<BigUint>>()?;
        expected *= size;
    }
    let actual = BigUint::from(a.lattice.len());
    if expected != actual {
        return Ok(compare("lattice size", expected, actual, None));
    }
    // Elementary abelian groups against subspace lattices.
    let bounds = a.bounds;
    let counterpart = match &a.spec {
        ModuleSpec::Semisimple { components }
            if components.len() == 1 && components[0].field.e() == 1 && components[0].mult <= 3 =>
        {
            let c = &components[0];
            let pres = AbelianPresentation::z_module(vec![c.field.p(); c.mult]);
            Some((false, ModuleSpec::explicit(pres)))
        }
        ModuleSpec::Explicit { pres }
            if pres.action.is_empty()
                && pres.moduli.len() <= 3
                && pres.moduli.windows(2).all(|w| w[0] == w[1])
                && FieldSpec::of_order(pres.moduli[0] as u64).is_ok_and(|f| f.e() == 1) =>
        {
            Some((true, ModuleSpec::homogeneous(pres.moduli.len(), pres.moduli[0] as u64)?))
        }
        _ => None,
    };
    let Some((self_explicit, other)) = counterpart else {
        return Ok(holds(format!("{actual} members")));
    };
    let other = enumerate_submodules(&Module::new(other, &bounds)?)?;
    let (ss, ex) = if self_explicit { (&other, &a.lattice) } else { (&a.lattice, &other) };
    Ok(match elementary_iso(ss, ex)? {
        None => holds(format!("{actual} members; isomorphic to the elementary abelian counterpart")),
        Some(msg) => violated("subspace and subgroup lattices isomorphic", msg),
    })
}

fn prop_6_4_1(a: &Analysis) -> Result<Verdict> {
    let Some(spec) = profile_spec(a)? else {
        return Ok(Verdict::NotApplicable);
    };
    let n = a.length();
    let expected = (0..=n).map(|i| count_by_length(&spec, i)).collect::<Result<Vec<_>>>()?;
    let actual: Vec<BigUint> = (0..=n).map(|i| BigUint::from(a.lattice.mu(i))).collect();
    Ok(compare("μ", expected, actual, None))
}

fn prop_6_4_2(a: &Analysis) -> Result<Verdict> {
    if model_components(a).is_none() {
        return Ok(Verdict::NotApplicable);
    }
    let l = &a.lattice;
    for u in 0..l.len() {
        let dims: Vec<usize> = l.member(u).parts().expect("semisimple").iter().map(|s| s.dim()).collect();
        let expected = count_complements(&a.spec, &dims)?;
        let actual = BigUint::from(complements_of(l, u)?.len());
        if expected != actual {
            return Ok(violated(
                format!("complements of {}: {expected}", l.label(u)),
                actual.to_string(),
            ));
        }
    }
    Ok(holds(format!("complement counts of {} members", l.len())))
}

fn cor_6_5(a: &Analysis) -> Result<Verdict> {
    if !a.semisimple() {
        return Ok(Verdict::NotApplicable);
    }
    let l = &a.lattice;
    let n = a.length();
    let mu: Vec<usize> = (0..=n).map(|i| l.mu(i)).collect();
    if (0..=n).any(|i| mu[i] != mu[n - i]) {
        let reversed: Vec<usize> = mu.iter().rev().copied().collect();
        return Ok(compare("μ reversed", mu, reversed, None));
    }
    let complements = (0..l.len()).map(|u| complements_of(l, u)).collect::<Result<Vec<_>>>()?;
    for u in 0..l.len() {
        let w = complements[u][0];
        if complements[u].len() != complements[w].len() {
            return Ok(violated(
                format!("{} and its complement {} have equally many complements", l.label(u), l.label(w)),
                format!("{} vs {}", complements[u].len(), complements[w].len()),
            ));
        }
    }
    if model_components(a).is_some() {
        // Isomorphic members have the same dimension in every component.
        let mut by_type: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (u, cs) in complements.iter().enumerate() {
            let dims: Vec<usize> = l.member(u).parts().expect("semisimple").iter().map(|s| s.dim()).collect();
            let c = cs.len();
            if *by_type.entry(dims.clone()).or_insert(c) != c {
                return Ok(violated(
                    format!("isomorphic members of type {dims:?} have equally many complements"),
                    format!("{} has {c}", l.label(u)),
                ));
            }
        }
    }
    Ok(holds(format!("μ = {mu:?}")))
}

fn check_pairing(l: &SubmoduleLattice, k: usize, p: &HalfPairing) -> Option<String> {
    if p.excluded.is_some() {
        return Some("a member was left out".into());
    }
    if p.a.len() != p.b.len() {
        return Some(format!("|A| = {}, |B| = {}", p.a.len(), p.b.len()));
    }
    let mut all: Vec<usize> = p.a.iter().chain(&p.b).copied().collect();
    all.sort_unstable();
    if all != l.strata()[k] {
        return Some("A and B do not partition the middle stratum".into());
    }
    p.a.iter()
        .zip(&p.b)
        .find(|&(&x, &y)| l.meet(x, y) != l.zero())
        .map(|(&x, &y)| format!("{} meets its partner {}", l.label(x), l.label(y)))
}

fn lem_6_7_1(a: &Analysis) -> Result<Verdict> {
    if model_components(a).is_none() {
        return Ok(Verdict::NotApplicable);
    }
    let l = &a.lattice;
    let n = a.length();
    let phi = match complement_bijection(l) {
        Ok(p) => p,
        Err(Error::Internal(msg)) => return Ok(violated("a complement bijection", msg)),
        Err(e) => return Err(e),
    };
    let distinct: BTreeSet<usize> = phi.iter().copied().collect();
    if distinct.len() != l.len() {
        return Ok(violated("φ is a bijection", "it is not injective"));
    }
    for (x, &y) in phi.iter().enumerate() {
        if l.meet(x, y) != l.zero() || l.join(x, y) != l.top() || l.length(y) != n - l.length(x) {
            return Ok(violated(
                format!("φ({}) is a complement of length {}", l.label(x), n - l.length(x)),
                l.label(y).to_string(),
            ));
        }
    }
    Ok(holds(format!("φ pairs all {} members", l.len())))
}

fn pairing_check(a: &Analysis, applies: fn(&[Component]) -> bool) -> Result<Verdict> {
    let Some(cs) = model_components(a) else {
        return Ok(Verdict::NotApplicable);
    };
    let n = a.length();
    if n == 0 || n % 2 == 1 || !applies(cs) {
        return Ok(Verdict::NotApplicable);
    }
    let k = n / 2;
    let p = match half_pairing(&a.lattice, k) {
        Ok(p) => p,
        Err(Error::Internal(msg)) => return Ok(violated("a pairing of the middle stratum", msg)),
        Err(e) => return Err(e),
    };
    Ok(match check_pairing(&a.lattice, k, &p) {
        None => holds(format!("{} disjoint pairs of length {k}", p.a.len())),
        Some(msg) => violated("a pairing of the middle stratum", msg),
    })
}

fn lem_6_7_2(a: &Analysis) -> Result<Verdict> {
    pairing_check(a, |cs| cs.iter().any(|c| c.mult % 2 == 1))
}

fn lem_6_7_3(a: &Analysis) -> Result<Verdict> {
    pairing_check(a, |cs| {
        cs.iter().all(|c| c.mult % 2 == 0) && cs.iter().any(|c| c.field.q() % 2 == 1)
    })
}

// Coloring.

fn prop_7_1(a: &Analysis) -> Result<Verdict> {
    let chi = *value!(a.chi());
    let bound = match chromatic_upper_bound(&a.lattice, &a.graph, &a.bounds) {
        Ok(b) => b,
        Err(e @ Error::BoundExceeded { .. }) => return Ok(Verdict::Skipped(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(if chi <= bound {
        holds(format!("χ = {chi} <= {bound}"))
    } else {
        violated(format!("χ <= {bound}"), format!("χ = {chi}"))
    })
}

fn rem_7_2(a: &Analysis) -> Result<Verdict> {
    if a.graph.vertex_count() == 0 {
        return Ok(Verdict::NotApplicable);
    }
    let chi = *value!(a.chi());
    let l = &a.lattice;
    let mut best = 0;
    for w in l.proper() {
        let (_, gw) = sub_graph(a, w);
        let chi_w = match chromatic_number(&gw, &a.bounds) {
            Ok((c, _)) => c,
            Err(Error::BoundExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        let lower = chi_w + l.interval_count(w) - 1;
        if lower > chi {
            return Ok(violated(format!("χ >= {lower} from {}", l.label(w)), format!("χ = {chi}")));
        }
        best = best.max(lower);
    }
    Ok(holds(format!("χ = {chi}, best lower bound {best}")))
}

fn lem_7_4(a: &Analysis) -> Result<Verdict> {
    let n = a.length();
    if n == 0 {
        return Ok(Verdict::NotApplicable);
    }
    let l = &a.lattice;
    let big_from = if n % 2 == 1 { n.div_ceil(2) } else { n / 2 + 1 };
    let big: Vec<usize> = (big_from..=n).flat_map(|i| l.strata()[i].iter().copied()).collect();
    for (i, &x) in big.iter().enumerate() {
        for &y in &big[i..] {
            if l.meet(x, y) == l.zero() {
                return Ok(violated(
                    format!("{} and {} intersect", l.label(x), l.label(y)),
                    "they do not".to_string(),
                ));
            }
        }
    }
    if n.is_multiple_of(2) {
        for &u in &l.strata()[n / 2] {
            if let Some(&w) = big.iter().find(|&&w| l.meet(u, w) == l.zero()) {
                return Ok(violated(
                    format!("{} and {} intersect", l.label(u), l.label(w)),
                    "they do not".to_string(),
                ));
            }
        }
    }
    let chi = *value!(a.chi());
    Ok(if n % 2 == 1 {
        let lower = sum_mu(l, n.div_ceil(2), n);
        if chi >= lower {
            holds(format!("χ = {chi} >= {lower}"))
        } else {
            violated(format!("χ >= {lower}"), format!("χ = {chi}"))
        }
    } else {
        let lower = sum_mu(l, n / 2 + 1, n);
        if chi > lower {
            holds(format!("χ = {chi} > {lower}"))
        } else {
            violated(format!("χ > {lower}"), format!("χ = {chi}"))
        }
    })
}

/// Three pairwise disjoint members of the given stratum, if any.
fn disjoint_triple(l: &SubmoduleLattice, stratum: &[usize]) -> Option<[usize; 3]> {
    let zero = l.zero();
    for (i, &x) in stratum.iter().enumerate() {
        for (j, &y) in stratum.iter().enumerate().skip(i + 1) {
            if l.meet(x, y) != zero {
                continue;
            }
            if let Some(&z) = stratum[j + 1..]
                .iter()
                .find(|&&z| l.meet(x, z) == zero && l.meet(y, z) == zero)
            {
                return Some([x, y, z]);
            }
        }
    }
    None
}

fn lem_7_5(a: &Analysis) -> Result<Verdict> {
    let Some(profile) = &a.profile else {
        return Ok(Verdict::NotApplicable);
    };
    let n = a.length();
    if n == 0 || n % 2 == 1 {
        return Ok(Verdict::NotApplicable);
    }
    let l = &a.lattice;
    let odd = some_odd_mult(profile);
    let triple = disjoint_triple(l, &l.strata()[n / 2]);
    let names = |t: [usize; 3]| t.map(|x| l.label(x).to_string()).join(", ");
    Ok(match (odd, triple) {
        (true, None) => Verdict::Holds {
            detail: "no pairwise disjoint triple".into(),
            side: Some(true),
        },
        (true, Some(t)) => violated("no pairwise disjoint triple", names(t)),
        // With every multiplicity even, W ≅ V/W is possible and such a
        // triple exists (two halves and a diagonal in each component).
        (false, Some(t)) => Verdict::Holds {
            detail: format!("all multiplicities even; disjoint triple {}", names(t)),
            side: Some(false),
        },
        (false, None) => violated("a pairwise disjoint triple", "none"),
    })
}

fn chromatic_rhs(a: &Analysis, need_odd_length: bool) -> Result<Option<usize>> {
    let Some(profile) = &a.profile else { return Ok(None) };
    let n = a.length();
    if n <= 2 || (n % 2 == 1) != need_odd_length {
        return Ok(None);
    }
    let l = &a.lattice;
    let rhs = if n % 2 == 1 {
        sum_mu(l, n.div_ceil(2), n)
    } else {
        if !some_odd_mult(profile) {
            return Ok(None);
        }
        l.mu(n / 2) / 2 + sum_mu(l, n / 2 + 1, n)
    };
    Ok(Some(rhs))
}

fn chromatic_check(a: &Analysis, odd: bool) -> Result<Verdict> {
    let Some(rhs) = chromatic_rhs(a, odd)? else {
        return Ok(Verdict::NotApplicable);
    };
    if model_components(a).is_some() {
        let f = chromatic_formula(&a.spec)?;
        if f != BigUint::from(rhs) {
            return Ok(compare("formula from strata", BigUint::from(rhs), f, None));
        }
    }
    let chi = *value!(a.chi());
    Ok(compare("χ", rhs, chi, None))
}

fn prop_7_6_2(a: &Analysis) -> Result<Verdict> {
    chromatic_check(a, true)
}

fn prop_7_6_3(a: &Analysis) -> Result<Verdict> {
    chromatic_check(a, false)
}

// Cliques and planarity.

fn rem_8_1(a: &Analysis) -> Result<Verdict> {
    if a.length() < 2 {
        return Ok(Verdict::NotApplicable);
    }
    let omega = *value!(a.omega());
    let need = a.length() - 1;
    Ok(if omega >= need {
        holds(format!("ω = {omega} >= {need}"))
    } else {
        violated(format!("ω >= {need}"), format!("ω = {omega}"))
    })
}

fn lem_8_2(a: &Analysis) -> Result<Verdict> {
    let m = a.length() as i64;
    if m < 3 {
        return Ok(Verdict::NotApplicable);
    }
    let n = *value!(a.omega()) as i64 + 1;
    let fm = a.lattice.maximal_count(a.lattice.top()) as i64;
    let ss = a.semisimple();
    let cap = if ss { n - m + 2 } else { n - m + 1 };
    if fm > cap {
        return Ok(violated(format!("fm <= {cap} without K_{n}"), format!("fm = {fm}")));
    }
    if 2 * m > n + 2 && ss {
        return Ok(violated("not semisimple since 2m > n + 2", "semisimple"));
    }
    Ok(holds(format!("fm = {fm} <= {cap} with n = {n}, m = {m}")))
}

fn clique_free(a: &Analysis, k: usize, predicted: bool) -> Result<Verdict> {
    let omega = *value!(a.omega());
    Ok(compare(&format!("K{k}-free"), predicted, omega < k, Some(predicted)))
}

fn prop_8_3(a: &Analysis) -> Result<Verdict> {
    clique_free(a, 3, a.verdicts.no_k3)
}

fn prop_8_4(a: &Analysis) -> Result<Verdict> {
    clique_free(a, 4, a.verdicts.no_k4)
}

fn prop_8_5(a: &Analysis) -> Result<Verdict> {
    clique_free(a, 5, a.verdicts.no_k5)
}

fn cor_8_6(a: &Analysis) -> Result<Verdict> {
    let planar = *value!(a.planar());
    let predicted = a.verdicts.planar;
    Ok(compare("planar", predicted, planar, Some(predicted)))
}

const MODULARITY_MEMBERS: usize = 1200;

fn modularity(a: &Analysis) -> Result<Verdict> {
    let l = &a.lattice;
    if l.len() > MODULARITY_MEMBERS {
        return Ok(Verdict::Skipped(format!(
            "{} members exceed the modularity scan limit {MODULARITY_MEMBERS}",
            l.len()
        )));
    }
    let mut triples = 0u64;
    for c in 0..l.len() {
        for x in l.below(c).ones() {
            for b in 0..l.len() {
                if l.join(x, l.meet(b, c)) != l.meet(l.join(x, b), c) {
                    return Ok(violated(
                        format!(
                            "a ∨ (b ∧ c) = (a ∨ b) ∧ c for a = {}, b = {}, c = {}",
                            l.label(x),
                            l.label(b),
                            l.label(c)
                        ),
                        "the two sides differ".to_string(),
                    ));
                }
                triples += 1;
            }
        }
    }
    Ok(holds(format!("{triples} triples")))
}

macro_rules! check {
    ($id:literal, $desc:literal, $both:literal, $kind:ident($f:path)) => {
        CheckDef {
            id: $id,
            description: $desc,
            both_sides: $both,
            eval: Eval::$kind($f),
        }
    };
}

/// Sorted by id.
pub(crate) const CHECKS: &[CheckDef] = &[
    check!("Cor2.4", "a graph with an edge is connected", false, Instance(cor_2_4)),
    check!("Cor3.3", "bipartite exactly when predicted", true, Instance(cor_3_3)),
    check!("Cor6.5", "strata sizes and complement counts are symmetric", false, Instance(cor_6_5)),
    check!("Cor8.6", "planar exactly when predicted", true, Instance(cor_8_6)),
    check!("Lem4.1", "product submodules correspond to quintuples", false, Pair(lem_4_1)),
    check!("Lem4.2", "lifted dominating sets dominate and are not smaller than γ", false, Instance(lem_4_2)),
    check!("Lem4.3", "a minimum dominating set restricts to a length-2 member", false, Instance(lem_4_3)),
    check!("Lem5.1", "maximal submodules of nS number (d^n - 1)/(d - 1)", false, Instance(lem_5_1)),
    check!("Lem6.2.2", "length strata of nS are Gaussian binomials", false, Instance(lem_6_2_2)),
    check!("Lem6.2.3", "intersection-length counts and complements in nS", false, Instance(lem_6_2_3)),
    check!("Lem6.7.1", "complement bijection on all submodules", false, Instance(lem_6_7_1)),
    check!("Lem6.7.2", "middle stratum pairs up when a multiplicity is odd", false, Instance(lem_6_7_2)),
    check!("Lem6.7.3", "middle stratum pairs up for even multiplicities and an odd field", false, Instance(lem_6_7_3)),
    check!("Lem7.4", "large strata pairwise intersect and bound χ from below", false, Instance(lem_7_4)),
    check!("Lem7.5", "no three pairwise disjoint middle members iff a multiplicity is odd", true, Instance(lem_7_5)),
    check!("Lem8.2", "maximal submodule counts bounded by the clique number", false, Instance(lem_8_2)),
    check!("Modularity", "the submodule lattice is modular", false, Instance(modularity)),
    check!("Prop2.3", "connected exactly when predicted", true, Instance(prop_2_3)),
    check!("Prop3.2", "acyclic and triangle-free exactly when predicted", true, Instance(prop_3_2)),
    check!("Prop5.2", "maximal submodule count is a sum over isotypic parts", false, Instance(prop_5_2)),
    check!("Prop6.4.1", "length strata of a semisimple module", false, Instance(prop_6_4_1)),
    check!("Prop6.4.2", "complement counts of a semisimple module", false, Instance(prop_6_4_2)),
    check!("Prop7.1", "χ is at most the socle bound", false, Instance(prop_7_1)),
    check!("Prop7.6.2", "χ for odd length", false, Instance(prop_7_6_2)),
    check!("Prop7.6.3", "χ for even length with an odd multiplicity", false, Instance(prop_7_6_3)),
    check!("Prop8.3", "K3-free exactly when predicted", true, Instance(prop_8_3)),
    check!("Prop8.4", "K4-free exactly when predicted", true, Instance(prop_8_4)),
    check!("Prop8.5", "K5-free exactly when predicted", true, Instance(prop_8_5)),
    check!("Rem2.2", "every component has diameter at most 2", false, Instance(rem_2_2)),
    check!("Rem2.5", "edgeless exactly when the length is at most 2", true, Instance(rem_2_5)),
    check!("Rem2.6", "cut vertices are exactly the predicted socle", true, Instance(rem_2_6)),
    check!("Rem2.7", "bridges are exactly the predicted simple-maximal edges", true, Instance(rem_2_7)),
    check!("Rem5.4", "finitely many vertices and edges", false, Instance(rem_5_4)),
    check!("Rem6.3", "lattice is a product of subspace lattices", false, Instance(rem_6_3)),
    check!("Rem7.2", "χ lower bound from every proper submodule", false, Instance(rem_7_2)),
    check!("Rem8.1", "ω is at least the length minus one", false, Instance(rem_8_1)),
    check!("Thm4.4", "γ equals the closed form", false, Instance(thm_4_4)),
    check!("Thm5.3", "finiteness predicate agrees with enumeration", false, Instance(thm_5_3)),
];
