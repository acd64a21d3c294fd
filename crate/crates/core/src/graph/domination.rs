//! Minimum dominating sets and the lift of a dominating set of a submodule's
//! graph to the whole module.

use super::Graph;
use crate::bounds::{self, Bounds};
use crate::error::{Error, Result};
use crate::module::SubmoduleLattice;

/// Every vertex is in `set` or adjacent to a member of it.
pub fn is_dominating(g: &Graph, set: &[usize]) -> bool {
    (0..g.vertex_count()).all(|v| set.contains(&v) || set.iter().any(|&d| g.has_edge(v, d)))
}

struct Search<'a> {
    closed: &'a [u64],
    full: u64,
    best: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, chosen: &mut Vec<usize>, dominated: u64) {
        if dominated == self.full {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let open = self.full & !dominated;
        let max_cover = self.closed.iter().map(|c| (c & open).count_ones()).max().unwrap_or(0);
        let lower = open.count_ones().div_ceil(max_cover) as usize;
        if chosen.len() + lower >= self.best.len() {
            return;
        }
        // Branch on the open vertex with the fewest ways to be dominated.
        let mut rest = open;
        let mut u = rest.trailing_zeros() as usize;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.closed[v].count_ones() < self.closed[u].count_ones() {
                u = v;
            }
        }
        let mut options: Vec<usize> = (0..self.closed.len()).filter(|&w| self.closed[u] >> w & 1 == 1).collect();
        options.sort_by_key(|&w| (std::cmp::Reverse((self.closed[w] & open).count_ones()), w));
        for w in options {
            chosen.push(w);
            self.run(chosen, dominated | self.closed[w]);
            chosen.pop();
        }
    }
}

fn greedy(closed: &[u64], full: u64) -> Vec<usize> {
    let mut dominated = 0u64;
    let mut out = Vec::new();
    while dominated != full {
        let w = (0..closed.len())
            .max_by_key(|&w| ((closed[w] & !dominated).count_ones(), std::cmp::Reverse(w)))
            .expect("a vertex remains");
        out.push(w);
        dominated |= closed[w];
    }
    out
}

/// A minimum dominating set (ascending). On an edgeless graph every vertex
/// has to be chosen.
pub fn min_dominating_set(g: &Graph, bounds: &Bounds) -> Result<Vec<usize>> {
    bounds::check("solver vertices", g.vertex_count() as u64, bounds.solver_vertices as u64)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = g.masks().expect("within the solver bound");
    let closed: Vec<u64> = adj.iter().enumerate().map(|(v, &m)| m | 1 << v).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = Search {
        closed: &closed,
        full,
        best: greedy(&closed, full),
    };
    s.run(&mut Vec::new(), 0);
    let mut best = s.best;
    best.sort_unstable();
    Ok(best)
}

/// Lifts a dominating set `a` of the graph of a non-simple submodule `u` to
/// `{T + W : T ∈ a}`, where `W` is a maximal member with `W ∩ U = 0`.
///
/// All arguments and the result are lattice indices. The result is checked
/// to dominate the graph of the whole module.
pub fn lift_dominating_set(lattice: &SubmoduleLattice, g: &Graph, u: usize, a: &[usize]) -> Result<Vec<usize>> {
    if u >= lattice.len() || a.iter().any(|&t| t >= lattice.len()) {
        return Err(Error::NotInLattice);
    }
    if lattice.length(u) < 2 {
        return Err(Error::InvalidParameters(format!(
            "{} is zero or simple",
            lattice.label(u)
        )));
    }
    let zero = lattice.zero();
    // Members are sorted by length, so the last disjoint one is maximal.
    let w = (0..lattice.len())
        .rev()
        .find(|&x| lattice.meet(x, u) == zero)
        .expect("zero is disjoint from everything");
    let mut lifted: Vec<usize> = a.iter().map(|&t| lattice.join(t, w)).collect();
    lifted.sort_unstable();
    lifted.dedup();
    let proper = lattice.proper();
    let as_vertices: Option<Vec<usize>> = lifted
        .iter()
        .map(|&x| proper.contains(&x).then(|| x - proper.start))
        .collect();
    match as_vertices {
        Some(vs) if is_dominating(g, &vs) => Ok(lifted),
        _ => Err(Error::Internal(format!(
            "lift of a dominating set of {} does not dominate",
            lattice.label(u)
        ))),
    }
}
