//! Everything the checks need about one instance, computed once and shared.

use std::sync::OnceLock;

use crate::bounds::Bounds;
use crate::enumeration::enumerate_submodules;
use crate::error::{Error, Result};
use crate::graph::{
    build_graph, chromatic_number, classify_structure, components_and_diameter, cut_edges, cut_vertices,
    girth_bipartite, is_planar, isotypic_profile, max_clique, min_dominating_set, Components, Computed, Graph,
    IsotypicPart, Verdicts,
};
use crate::module::{Module, ModuleSpec, SubmoduleLattice};
use crate::specfile::SpecDoc;

type Solved<T> = std::result::Result<Computed<T>, String>;

pub(crate) struct Analysis {
    pub spec: ModuleSpec,
    pub lattice: SubmoduleLattice,
    pub graph: Graph,
    pub bounds: Bounds,
    pub verdicts: Verdicts,
    pub profile: Option<Vec<IsotypicPart>>,
    pub components: Components,
    pub cut_vertices: Vec<usize>,
    pub cut_edges: Vec<(usize, usize)>,
    pub girth: Option<usize>,
    pub bipartite: bool,
    gamma: OnceLock<Solved<Vec<usize>>>,
    chi: OnceLock<Solved<usize>>,
    omega: OnceLock<Solved<usize>>,
    planar: OnceLock<Solved<bool>>,
}

fn solve<T>(r: Result<T>) -> Solved<T> {
    Computed::from_result(r).map_err(|e| e.to_string())
}

fn get<T>(s: &Solved<T>) -> Result<&Computed<T>> {
    s.as_ref().map_err(|e| Error::Internal(e.clone()))
}

impl Analysis {
    /// The inner `Err` holds the reason when the instance exceeds the bounds.
    pub fn new(spec: ModuleSpec, bounds: &Bounds) -> Result<std::result::Result<Self, String>> {
        let lattice = match Module::new(spec.clone(), bounds).and_then(|m| enumerate_submodules(&m)) {
            Ok(l) => l,
            Err(e @ Error::BoundExceeded { .. }) => return Ok(Err(e.to_string())),
            Err(e) => return Err(e),
        };
        let graph = build_graph(&lattice).graph().clone();
        let components = components_and_diameter(&graph);
        let (girth, bipartite) = girth_bipartite(&graph);
        Ok(Ok(Analysis {
            verdicts: classify_structure(&lattice),
            profile: isotypic_profile(&lattice, lattice.top()),
            cut_vertices: cut_vertices(&graph),
            cut_edges: cut_edges(&graph),
            components,
            girth,
            bipartite,
            spec,
            lattice,
            graph,
            bounds: *bounds,
            gamma: OnceLock::new(),
            chi: OnceLock::new(),
            omega: OnceLock::new(),
            planar: OnceLock::new(),
        }))
    }

    pub fn doc(&self) -> SpecDoc {
        SpecDoc::from(&self.spec)
    }

    pub fn length(&self) -> usize {
        self.lattice.composition_length()
    }

    pub fn semisimple(&self) -> bool {
        self.profile.is_some()
    }

    /// Graph vertex of a proper lattice member.
    pub fn vertex(&self, m: usize) -> usize {
        m - self.lattice.proper().start
    }

    /// Lattice member of a graph vertex.
    pub fn member(&self, v: usize) -> usize {
        v + self.lattice.proper().start
    }

    /// A minimum dominating set, as graph vertices.
    pub fn gamma(&self) -> Result<&Computed<Vec<usize>>> {
        get(self.gamma.get_or_init(|| solve(min_dominating_set(&self.graph, &self.bounds))))
    }

    pub fn chi(&self) -> Result<&Computed<usize>> {
        get(self.chi.get_or_init(|| solve(chromatic_number(&self.graph, &self.bounds).map(|c| c.0))))
    }

    pub fn omega(&self) -> Result<&Computed<usize>> {
        get(self.omega.get_or_init(|| solve(max_clique(&self.graph, &self.bounds).map(|c| c.len()))))
    }

    pub fn planar(&self) -> Result<&Computed<bool>> {
        get(self.planar.get_or_init(|| solve(is_planar(&self.graph, &self.bounds))))
    }
}
