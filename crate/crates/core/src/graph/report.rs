//! Everything known about one intersection graph, as a serializable report.

use serde::Serialize;

use super::classify::{classify_structure, isotypic_profile};
use super::{
    build_graph, chromatic_number, components_and_diameter, cut_edges, cut_vertices, girth_bipartite, is_planar,
    max_clique, min_dominating_set,
};
use crate::bounds::Bounds;
use crate::counting::{chromatic_formula, domination_formula, DominationFacts};
use crate::error::{Error, Result};
use crate::module::{ModuleSpec, StructuralFlags, SubmoduleLattice};

/// A value from an exact solver, or the reason it was not computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Computed<T> {
    Value(T),
    Skipped { skipped: String },
}

impl<T> Computed<T> {
    /// Bound violations become `Skipped`; other errors propagate.
    pub fn from_result(r: Result<T>) -> Result<Self> {
        match r {
            Ok(v) => Ok(Computed::Value(v)),
            Err(e @ Error::BoundExceeded { .. }) => Ok(Computed::Skipped {
                skipped: e.to_string(),
            }),
            Err(e) => Err(e),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Computed::Value(v) => Some(v),
            Computed::Skipped { .. } => None,
        }
    }
}

/// Structural predictions, with members given by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedStructure {
    pub connected: Option<bool>,
    pub edgeless: bool,
    pub cut_vertex: Option<String>,
    pub bridges: Vec<[String; 2]>,
    pub acyclic: bool,
    pub bipartite: bool,
    pub no_k3: bool,
    pub no_k4: bool,
    pub no_k5: bool,
    pub planar: bool,
    pub k4_clause: Option<char>,
    pub k5_clause: Option<char>,
}

/// Closed forms next to solver values. `None` where a formula does not apply
/// or the solver was skipped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub gamma_formula: u64,
    pub gamma_matches: Option<bool>,
    /// Decimal string; the value can exceed 64 bits in principle.
    pub chi_formula: Option<String>,
    pub chi_matches: Option<bool>,
    pub planar_matches: Option<bool>,
    pub structure_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub composition_length: usize,
    pub submodules: usize,
    pub strata: Vec<usize>,
    pub flags: StructuralFlags,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub connected: bool,
    /// Largest component diameter; `None` without vertices.
    pub diameter: Option<usize>,
    pub diameters: Vec<usize>,
    pub cut_vertices: Vec<String>,
    pub cut_edges: Vec<[String; 2]>,
    pub girth: Option<usize>,
    pub bipartite: bool,
    pub gamma: Computed<usize>,
    pub chi: Computed<usize>,
    pub omega: Computed<usize>,
    pub planar: Computed<bool>,
    pub predicted: PredictedStructure,
    pub agreement: Agreement,
}

/// Inputs of the domination formula, read off the lattice.
pub fn domination_facts(lattice: &SubmoduleLattice) -> DominationFacts {
    let flags = lattice.structural_flags();
    let profile = isotypic_profile(lattice, lattice.top());
    DominationFacts {
        is_simple: flags.is_simple,
        is_semisimple: flags.is_semisimple,
        homogeneous: profile.as_ref().is_some_and(|p| p.len() == 1),
        end_size: profile
            .as_ref()
            .and_then(|p| p.first())
            .and_then(|p| p.end_size)
            .unwrap_or(0),
    }
}

pub fn invariant_report(lattice: &SubmoduleLattice, bounds: &Bounds) -> Result<InvariantReport> {
    let ig = build_graph(lattice);
    let g = ig.graph();
    let label = |v: usize| ig.label(v).to_string();
    let comps = components_and_diameter(g);
    let cuts = cut_vertices(g);
    let bridges = cut_edges(g);
    let (girth, bipartite) = girth_bipartite(g);
    let gamma = Computed::from_result(min_dominating_set(g, bounds).map(|d| d.len()))?;
    let chi = Computed::from_result(chromatic_number(g, bounds).map(|c| c.0))?;
    let omega = Computed::from_result(max_clique(g, bounds).map(|c| c.len()))?;
    let planar = Computed::from_result(is_planar(g, bounds))?;

    let v = classify_structure(lattice);
    let flags = lattice.structural_flags();
    let gamma_formula = domination_formula(&domination_facts(lattice));
    let chi_formula = match lattice.module().spec() {
        ModuleSpec::Semisimple { .. } if lattice.composition_length() > 2 => {
            match chromatic_formula(lattice.module().spec()) {
                Ok(x) => Some(x.to_string()),
                Err(Error::Unsupported(_)) => None,
                Err(e) => return Err(e),
            }
        }
        _ => None,
    };
    let structure_matches = v.connected.is_none_or(|c| c == comps.is_connected())
        && v.edgeless == (g.edge_count() == 0)
        && v.cut_vertex.and_then(|s| ig.vertex_of(s)).into_iter().collect::<Vec<_>>() == cuts
        && {
            let mut predicted: Vec<(usize, usize)> = v
                .bridges
                .iter()
                .map(|&(a, b)| {
                    let (a, b) = (ig.vertex_of(a).expect("proper"), ig.vertex_of(b).expect("proper"));
                    (a.min(b), a.max(b))
                })
                .collect();
            predicted.sort_unstable();
            predicted == bridges
        }
        && v.acyclic == girth.is_none()
        && v.bipartite == bipartite;
    let agreement = Agreement {
        gamma_formula,
        gamma_matches: gamma.value().map(|&x| x as u64 == gamma_formula),
        chi_matches: chi
            .value()
            .zip(chi_formula.as_ref())
            .map(|(x, f)| x.to_string() == *f),
        chi_formula,
        planar_matches: planar.value().map(|&p| p == v.planar),
        structure_matches,
    };
    let predicted = PredictedStructure {
        connected: v.connected,
        edgeless: v.edgeless,
        cut_vertex: v.cut_vertex.map(|s| lattice.label(s).to_string()),
        bridges: v
            .bridges
            .iter()
            .map(|&(a, b)| [lattice.label(a).to_string(), lattice.label(b).to_string()])
            .collect(),
        acyclic: v.acyclic,
        bipartite: v.bipartite,
        no_k3: v.no_k3,
        no_k4: v.no_k4,
        no_k5: v.no_k5,
        planar: v.planar,
        k4_clause: v.k4_clause,
        k5_clause: v.k5_clause,
    };
    Ok(InvariantReport {
        composition_length: lattice.composition_length(),
        submodules: lattice.len(),
        strata: lattice.strata().iter().map(Vec::len).collect(),
        flags,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        components: comps.count(),
        connected: comps.is_connected(),
        diameter: comps.diameters.iter().copied().max(),
        diameters: comps.diameters.clone(),
        cut_vertices: cuts.iter().map(|&v| label(v)).collect(),
        cut_edges: bridges.iter().map(|&(a, b)| [label(a), label(b)]).collect(),
        girth,
        bipartite,
        gamma,
        chi,
        omega,
        planar,
        predicted,
        agreement,
    })
}
