//! Intersection graphs of proper submodules and their invariants.

mod classify;
mod clique;
mod coloring;
mod domination;
mod planarity;
mod report;
mod structure;

use rayon::prelude::*;

use crate::bits::Bits;
use crate::module::SubmoduleLattice;

pub use classify::{classify_structure, isotypic_profile, IsotypicPart, Verdicts};
pub use clique::max_clique;
pub use coloring::{chromatic_number, chromatic_upper_bound, dsatur_coloring, is_proper_coloring};
pub use domination::{is_dominating, lift_dominating_set, min_dominating_set};
pub use planarity::{is_planar, lr_planarity};
pub use report::{domination_facts, invariant_report, Computed, InvariantReport};
pub use structure::{components_and_diameter, cut_edges, cut_vertices, girth_bipartite, Components};

/// A simple undirected graph on vertices `0..n` stored as adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Bits>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Bits::new(n); n],
        }
    }

    /// Loops and repeated edges are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].set(b);
            self.adj[b].set(a);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::count).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].get(b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn row(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|a| self.neighbors(a).filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    /// Subgraph induced on `vs`; vertex `i` of the result is `vs[i]`.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::new(vs.len());
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Adjacency as 64-bit masks, for graphs with at most 64 vertices.
    pub(crate) fn masks(&self) -> Option<Vec<u64>> {
        if self.vertex_count() > 64 {
            return None;
        }
        Some(
            (0..self.vertex_count())
                .map(|v| self.neighbors(v).fold(0u64, |m, b| m | 1 << b))
                .collect(),
        )
    }
}

/// The intersection graph of a submodule lattice: one vertex per proper
/// nonzero submodule, edges between distinct members with nonzero meet.
#[derive(Clone, Debug)]
pub struct IntersectionGraph<'a> {
    lattice: &'a SubmoduleLattice,
    vertices: Vec<usize>,
    graph: Graph,
}

impl<'a> IntersectionGraph<'a> {
    pub fn lattice(&self) -> &'a SubmoduleLattice {
        self.lattice
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Lattice index of vertex `v`.
    pub fn member(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn members(&self) -> &[usize] {
        &self.vertices
    }

    /// Vertex of lattice member `m`, if it is proper and nonzero.
    pub fn vertex_of(&self, m: usize) -> Option<usize> {
        let r = self.lattice.proper();
        r.contains(&m).then(|| m - r.start)
    }

    pub fn label(&self, v: usize) -> &str {
        self.lattice.label(self.vertices[v])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

pub fn build_graph(lattice: &SubmoduleLattice) -> IntersectionGraph<'_> {
    let vertices: Vec<usize> = lattice.proper().collect();
    let n = vertices.len();
    let zero = lattice.zero();
    let adj: Vec<Bits> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = Bits::new(n);
            for j in 0..n {
                if i != j && lattice.meet(vertices[i], vertices[j]) != zero {
                    row.set(j);
                }
            }
            row
        })
        .collect();
    IntersectionGraph {
        lattice,
        vertices,
        graph: Graph { adj },
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use crate::abelian::AbelianPresentation;
    use crate::bounds::Bounds;
    use crate::enumeration::enumerate_submodules;
    use crate::field::FieldSpec;
    use crate::module::{Component, Module, ModuleSpec, SubmoduleLattice};

    pub fn z(moduli: &[u32]) -> SubmoduleLattice {
        let spec = ModuleSpec::explicit(AbelianPresentation::z_module(moduli.to_vec()));
        enumerate_submodules(&Module::new(spec, &Bounds::default()).unwrap()).unwrap()
    }

    pub fn ss(parts: &[(&str, usize, u64)]) -> SubmoduleLattice {
        let spec = ModuleSpec::semisimple(
            parts
                .iter()
                .map(|&(t, n, q)| Component::new(t, n, FieldSpec::of_order(q).unwrap()))
                .collect(),
        );
        enumerate_submodules(&Module::new(spec, &Bounds::default()).unwrap()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;

    #[test]
    fn small_graphs() {
        let l = z(&[8]);
        let g = build_graph(&l);
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(g.label(0), "<(4)>");

        let l = ss(&[("S", 2, 2)]);
        let g = build_graph(&l);
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 0));

        let l = z(&[4, 2]);
        let g = build_graph(&l);
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 8));
        let soc = g.vertex_of(l.socle()).unwrap();
        assert_eq!(g.graph().degree(soc), 5);

        assert_eq!(build_graph(&z(&[3])).vertex_count(), 0);
    }

    #[test]
    fn induced_and_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 1)]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.masks().unwrap()[0], 0b1010);
    }
}
