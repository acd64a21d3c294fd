//! Exact maximum clique by branch and bound with greedy-coloring bounds.

use super::Graph;
use crate::bounds::{self, Bounds};
use crate::error::Result;

/// A maximum clique, as ascending vertex ids.
pub fn max_clique(g: &Graph, bounds: &Bounds) -> Result<Vec<usize>> {
    bounds::check("solver vertices", g.vertex_count() as u64, bounds.solver_vertices as u64)?;
    let adj = g.masks().expect("within the solver bound");
    Ok(clique_of_masks(&adj))
}

pub(crate) fn clique_of_masks(adj: &[u64]) -> Vec<usize> {
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut best = Vec::new();
    expand(adj, all, &mut Vec::new(), &mut best);
    best.sort_unstable();
    best
}

/// Greedy sequential coloring of `cand` in vertex-id order. Returns the
/// vertices by ascending color together with their colors (1-based); a
/// clique inside the first `i + 1` vertices has at most `colors[i]` members.
fn color_sort(adj: &[u64], cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut k = 0;
    while uncolored != 0 {
        k += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            order.push(v);
            colors.push(k);
            uncolored &= !(1 << v);
            q &= !(1 << v) & !adj[v];
        }
    }
    (order, colors)
}

fn expand(adj: &[u64], cand: u64, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    let (order, colors) = color_sort(adj, cand);
    let mut remaining = cand;
    for i in (0..order.len()).rev() {
        if current.len() + colors[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let next = remaining & adj[v];
        if next == 0 {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(adj, next, current, best);
        }
        current.pop();
        remaining &= !(1 << v);
    }
}
