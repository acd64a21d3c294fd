//! Connectivity, articulation points, bridges, girth and bipartiteness.

use std::collections::VecDeque;

use serde::Serialize;

use super::Graph;
use crate::bits::Bits;

/// Connected components (each sorted, ordered by least vertex) and the
/// diameter of each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    pub members: Vec<Vec<usize>>,
    pub diameters: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn is_connected(&self) -> bool {
        self.members.len() <= 1
    }
}

/// Eccentricity of `s` within its component, by bitset BFS.
fn eccentricity(g: &Graph, s: usize) -> usize {
    let n = g.vertex_count();
    let mut visited = Bits::new(n);
    visited.set(s);
    let mut frontier = vec![s];
    let mut depth = 0;
    loop {
        let mut next = Vec::new();
        for &v in &frontier {
            for w in g.neighbors(v) {
                if !visited.get(w) {
                    visited.set(w);
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return depth;
        }
        depth += 1;
        frontier = next;
    }
}

pub fn components_and_diameter(g: &Graph) -> Components {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut members = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        members.push(comp);
    }
    let diameters = members
        .iter()
        .map(|c| c.iter().map(|&v| eccentricity(g, v)).max().unwrap_or(0))
        .collect();
    Components { members, diameters }
}

/// Low-link DFS shared by the articulation point and bridge searches.
struct LowLink {
    disc: Vec<usize>,
    low: Vec<usize>,
    cut: Vec<bool>,
    bridges: Vec<(usize, usize)>,
}

fn low_link(g: &Graph) -> LowLink {
    let n = g.vertex_count();
    let mut ll = LowLink {
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        cut: vec![false; n],
        bridges: Vec::new(),
    };
    let mut timer = 0;
    for root in 0..n {
        if ll.disc[root] != usize::MAX {
            continue;
        }
        ll.disc[root] = timer;
        ll.low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, neighbors not yet scanned)
        let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(root, usize::MAX, g.neighbors(root).collect())];
        while let Some((v, parent, pending)) = stack.last_mut() {
            let (v, parent) = (*v, *parent);
            if let Some(w) = pending.pop() {
                if w == parent {
                    continue;
                }
                if ll.disc[w] == usize::MAX {
                    ll.disc[w] = timer;
                    ll.low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, g.neighbors(w).collect()));
                } else {
                    ll.low[v] = ll.low[v].min(ll.disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent != usize::MAX {
                ll.low[parent] = ll.low[parent].min(ll.low[v]);
                if ll.low[v] > ll.disc[parent] {
                    ll.bridges.push((parent.min(v), parent.max(v)));
                }
                if parent != root && ll.low[v] >= ll.disc[parent] {
                    ll.cut[parent] = true;
                }
            }
        }
        if root_children >= 2 {
            ll.cut[root] = true;
        }
    }
    ll
}

/// Articulation points, ascending.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let ll = low_link(g);
    (0..g.vertex_count()).filter(|&v| ll.cut[v]).collect()
}

/// Bridges `(a, b)` with `a < b`, sorted.
pub fn cut_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut b = low_link(g).bridges;
    b.sort_unstable();
    b
}

fn has_triangle(g: &Graph) -> bool {
    g.edges().iter().any(|&(a, b)| !g.row(a).and(g.row(b)).is_empty())
}

/// Length of a shortest cycle (`None` if acyclic) and whether the graph is
/// bipartite.
pub fn girth_bipartite(g: &Graph) -> (Option<usize>, bool) {
    let n = g.vertex_count();
    let girth = if has_triangle(g) {
        Some(3)
    } else {
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in g.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    };
    let mut side = vec![u8::MAX; n];
    let mut bipartite = true;
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    bipartite = false;
                }
            }
        }
    }
    (girth, bipartite)
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::super::build_graph;
    use super::*;
    use proptest::prelude::*;

    fn components_brute(g: &Graph, removed_vertex: Option<usize>, removed_edge: Option<(usize, usize)>) -> usize {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] || Some(s) == removed_vertex {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in g.neighbors(v) {
                    let e = (v.min(w), v.max(w));
                    if !seen[w] && Some(w) != removed_vertex && Some(e) != removed_edge {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    fn graph_strategy() -> impl Strategy<Value = Graph> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..18).prop_map(move |es| Graph::from_edges(n, &es))
        })
    }

    proptest! {
        #[test]
        fn cut_structure_matches_removal(g in graph_strategy()) {
            let base = components_brute(&g, None, None);
            let cuts: Vec<usize> = (0..g.vertex_count())
                .filter(|&v| components_brute(&g, Some(v), None) > base - usize::from(g.degree(v) == 0))
                .collect();
            prop_assert_eq!(cut_vertices(&g), cuts);
            let bridges: Vec<(usize, usize)> =
                g.edges().into_iter().filter(|&e| components_brute(&g, None, Some(e)) > base).collect();
            prop_assert_eq!(cut_edges(&g), bridges);
            prop_assert_eq!(components_and_diameter(&g).count(), base);
        }

        #[test]
        fn girth_matches_cycle_search(g in graph_strategy()) {
            // Brute force: a shortest cycle through edge (a, b) is a shortest
            // a-b path avoiding that edge plus the edge itself.
            let mut best: Option<usize> = None;
            for (a, b) in g.edges() {
                let n = g.vertex_count();
                let mut dist = vec![usize::MAX; n];
                dist[a] = 0;
                let mut queue = VecDeque::from([a]);
                while let Some(v) = queue.pop_front() {
                    for w in g.neighbors(v) {
                        if (v, w) == (a, b) || dist[w] != usize::MAX {
                            continue;
                        }
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
                if dist[b] != usize::MAX {
                    let len = dist[b] + 1;
                    best = Some(best.map_or(len, |x: usize| x.min(len)));
                }
            }
            let (girth, bipartite) = girth_bipartite(&g);
            prop_assert_eq!(girth, best);
            // Odd cycle exists iff some 2-coloring fails: check by brute force.
            let n = g.vertex_count();
            let two_colorable = (0u32..1 << n).any(|mask| g.edges().iter().all(|&(a, b)| (mask >> a & 1) != (mask >> b & 1)));
            prop_assert_eq!(bipartite, two_colorable);
        }
    }

    #[test]
    fn module_examples() {
        let l = ss(&[("S", 1, 2), ("T", 1, 2)]);
        assert_eq!(components_and_diameter(build_graph(&l).graph()).count(), 2);

        let l = z(&[4, 2]);
        let g = build_graph(&l);
        let c = components_and_diameter(g.graph());
        assert_eq!(c.count(), 1);
        assert_eq!(c.diameters, vec![2]);
        let cv = cut_vertices(g.graph());
        assert_eq!(cv, vec![g.vertex_of(l.socle()).unwrap()]);
        let bridges = cut_edges(g.graph());
        assert_eq!(bridges.len(), 2);
        let soc = g.vertex_of(l.socle()).unwrap();
        assert!(bridges.iter().all(|&(a, b)| a == soc || b == soc));

        let l = z(&[8]);
        let g = build_graph(&l);
        assert_eq!(cut_edges(g.graph()), vec![(0, 1)]);
        assert!(cut_vertices(g.graph()).is_empty());
        assert_eq!(girth_bipartite(g.graph()), (None, true));

        let l = ss(&[("S", 3, 2)]);
        let g = build_graph(&l);
        let c = components_and_diameter(g.graph());
        assert!(c.is_connected());
        assert!(cut_vertices(g.graph()).is_empty());
        assert!(cut_edges(g.graph()).is_empty());

        assert_eq!(girth_bipartite(build_graph(&z(&[16])).graph()), (Some(3), false));
        let l27 = z(&[27]);
        let star = build_graph(&l27);
        assert_eq!(girth_bipartite(star.graph()), (None, true));
    }
}
