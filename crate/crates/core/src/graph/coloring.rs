//! Exact chromatic number: DSATUR for an upper bound, a maximum clique for
//! the lower bound, then a DSATUR-ordered backtracking search for each
//! color count in between.

use super::clique::clique_of_masks;
use super::Graph;
use crate::bounds::{self, Bounds};
use crate::error::Result;
use crate::module::SubmoduleLattice;

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.vertex_count() && g.edges().iter().all(|&(a, b)| colors[a] != colors[b])
}

/// Greedy DSATUR coloring. Ties on saturation go to the larger degree,
/// then to the smaller vertex id.
pub fn dsatur_coloring(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut color: Vec<Option<usize>> = vec![None; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v].is_none())
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..).find(|&c| !seen[v].get(c).copied().unwrap_or(false)).unwrap();
        color[v] = Some(c);
        for w in g.neighbors(v) {
            if seen[w].len() <= c {
                seen[w].resize(c + 1, false);
            }
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    color.into_iter().map(|c| c.expect("colored")).collect()
}

struct Search<'a> {
    adj: &'a [u64],
    k: usize,
    color: Vec<Option<usize>>,
}

impl Search<'_> {
    fn forbidden(&self, v: usize) -> u64 {
        let mut m = 0u64;
        let mut nb = self.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if let Some(c) = self.color[w] {
                m |= 1 << c;
            }
        }
        m
    }

    fn solve(&mut self, used: usize) -> bool {
        let mut pick: Option<(u32, u32, usize, u64)> = None;
        for v in 0..self.adj.len() {
            if self.color[v].is_some() {
                continue;
            }
            let f = self.forbidden(v);
            let s = f.count_ones();
            if s as usize >= self.k {
                return false;
            }
            let deg = (0..self.adj.len())
                .filter(|&w| self.adj[v] >> w & 1 == 1 && self.color[w].is_none())
                .count() as u32;
            if pick.is_none_or(|(ps, pd, _, _)| (s, deg) > (ps, pd)) {
                pick = Some((s, deg, v, f));
            }
        }
        let Some((_, _, v, f)) = pick else {
            return true;
        };
        // Colors beyond the first unused one are interchangeable.
        for c in 0..self.k.min(used + 1) {
            if f >> c & 1 == 1 {
                continue;
            }
            self.color[v] = Some(c);
            if self.solve(used.max(c + 1)) {
                return true;
            }
        }
        self.color[v] = None;
        false
    }
}

/// A proper `k`-coloring extending distinct colors on `clique`, if any.
fn k_coloring(adj: &[u64], k: usize, clique: &[usize]) -> Option<Vec<usize>> {
    let mut s = Search {
        adj,
        k,
        color: vec![None; adj.len()],
    };
    for (c, &v) in clique.iter().enumerate() {
        s.color[v] = Some(c);
    }
    s.solve(clique.len())
        .then(|| s.color.into_iter().map(|c| c.expect("colored")).collect())
}

/// `χ` with an optimal coloring. The empty graph has `χ = 0`, an edgeless
/// nonempty graph `χ = 1`.
pub fn chromatic_number(g: &Graph, bounds: &Bounds) -> Result<(usize, Vec<usize>)> {
    bounds::check("solver vertices", g.vertex_count() as u64, bounds.solver_vertices as u64)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = g.masks().expect("within the solver bound");
    let clique = clique_of_masks(&adj);
    let greedy = dsatur_coloring(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    for k in clique.len()..upper {
        if let Some(colors) = k_coloring(&adj, k, &clique) {
            return Ok((k, colors));
        }
    }
    Ok((upper, greedy))
}

/// Upper bound `χ(G(Soc)) + (n − 2)·χ(G̃) + m − 1`, where `n` bounds the
/// number of submodules above each simple submodule, `m` counts the
/// submodules containing the socle, and `G̃` is induced on the socles of
/// the members incomparable to the socle.
pub fn chromatic_upper_bound(lattice: &SubmoduleLattice, g: &Graph, bounds: &Bounds) -> Result<usize> {
    let soc = lattice.socle();
    let proper = lattice.proper();
    let vertex = |m: usize| m - proper.start;
    let below_soc: Vec<usize> = proper
        .clone()
        .filter(|&x| x != soc && lattice.leq(x, soc))
        .map(vertex)
        .collect();
    let mut tilde: Vec<usize> = proper
        .clone()
        .filter(|&x| !lattice.leq(x, soc) && !lattice.leq(soc, x))
        .map(|x| vertex(lattice.socle_of(x)))
        .collect();
    tilde.sort_unstable();
    tilde.dedup();
    let chi_soc = chromatic_number(&g.induced(&below_soc), bounds)?.0;
    let chi_tilde = chromatic_number(&g.induced(&tilde), bounds)?.0;
    let n = lattice.strata()[1].iter().map(|&s| lattice.interval_count(s)).max().unwrap_or(0);
    let m = lattice.interval_count(soc);
    Ok(chi_soc + n.saturating_sub(2) * chi_tilde + m - 1)
}
