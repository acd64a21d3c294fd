//! Left-right planarity test (decision only, no embedding).
//!
//! Phase one orients the graph by DFS and computes low points and nesting
//! depths; phase two walks the DFS again with outgoing edges sorted by
//! nesting depth and maintains a stack of conflict pairs of return-edge
//! intervals. A conflict that cannot be resolved by swapping sides means the
//! graph is not planar.

use super::Graph;
use crate::bounds::{self, Bounds};
use crate::error::Result;

/// Exact planarity decision for graphs within the planarity bound.
pub fn is_planar(g: &Graph, bounds: &Bounds) -> Result<bool> {
    bounds::check("planarity vertices", g.vertex_count() as u64, bounds.planarity_vertices as u64)?;
    Ok(lr_planarity(g))
}

/// Planarity without a size bound.
pub fn lr_planarity(g: &Graph) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n > 2 && m > 3 * n - 6 {
        return false;
    }
    let mut lr = Lr::new(g);
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            lr.roots.push(v);
            lr.orient(v);
        }
    }
    for v in 0..n {
        let nesting = &lr.nesting;
        lr.out[v].sort_by_key(|&e| nesting[e]);
    }
    let roots = std::mem::take(&mut lr.roots);
    roots.into_iter().all(|r| lr.test(r))
}

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

/// Two intervals of return edges that must lie on opposite sides. `id`
/// identifies the pair across pops and pushes.
#[derive(Clone, Copy, Debug)]
struct Pair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl Pair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    g: &'a Graph,
    roots: Vec<usize>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    /// Oriented edge id of `(v, w)` at `v * n + w`.
    edge_id: Vec<Option<usize>>,
    target: Vec<usize>,
    source: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    out: Vec<Vec<usize>>,
    lowpt_edge: Vec<Option<usize>>,
    refs: Vec<Option<usize>>,
    stack_bottom: Vec<Option<usize>>,
    stack: Vec<Pair>,
    next_pair: usize,
}

impl<'a> Lr<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        Lr {
            g,
            roots: Vec::new(),
            height: vec![None; n],
            parent_edge: vec![None; n],
            edge_id: vec![None; n * n],
            target: Vec::with_capacity(m),
            source: Vec::with_capacity(m),
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting: Vec::with_capacity(m),
            out: vec![Vec::new(); n],
            lowpt_edge: vec![None; m],
            refs: vec![None; m],
            stack_bottom: vec![None; m],
            stack: Vec::new(),
            next_pair: 0,
        }
    }

    fn height(&self, v: usize) -> usize {
        self.height[v].expect("visited vertex")
    }

    fn orient(&mut self, v: usize) {
        let n = self.g.vertex_count();
        let e = self.parent_edge[v];
        let hv = self.height(v);
        let neighbors: Vec<usize> = self.g.neighbors(v).collect();
        for w in neighbors {
            if self.edge_id[v * n + w].is_some() || self.edge_id[w * n + v].is_some() {
                continue;
            }
            let vw = self.target.len();
            self.edge_id[v * n + w] = Some(vw);
            self.source.push(v);
            self.target.push(w);
            self.lowpt.push(hv);
            self.lowpt2.push(hv);
            self.nesting.push(0);
            self.out[v].push(vw);
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(vw);
                    self.height[w] = Some(hv + 1);
                    self.orient(w);
                }
                Some(hw) => self.lowpt[vw] = hw,
            }
            self.nesting[vw] = 2 * self.lowpt[vw] + usize::from(self.lowpt2[vw] < hv);
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn fresh_pair(&mut self, left: Interval, right: Interval) -> Pair {
        self.next_pair += 1;
        Pair {
            id: self.next_pair,
            left,
            right,
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        i.high.is_some_and(|h| self.lowpt[h] > self.lowpt[b])
    }

    fn lowest(&self, p: &Pair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => unreachable!("conflict pairs on the stack are nonempty"),
        }
    }

    fn set_ref(&mut self, at: Option<usize>, to: Option<usize>) {
        if let Some(a) = at {
            self.refs[a] = to;
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let hv = self.height(v);
        let out = self.out[v].clone();
        for (i, &ei) in out.iter().enumerate() {
            let w = self.target[ei];
            self.stack_bottom[ei] = self.top_id();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                let p = self.fresh_pair(
                    Interval::default(),
                    Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                );
                self.stack.push(p);
            }
            if self.lowpt[ei] < hv {
                let e = e.expect("a return edge below v means v is not a root");
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = self.fresh_pair(Interval::default(), Interval::default());
        // Merge the return edges of ei into p.right.
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("nonempty interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qlow] = self.lowpt_edge[e];
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        // Merge conflicting return edges of earlier siblings into p.left.
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("checked above");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.source[e];
        let hu = self.height(u);
        while self.stack.last().is_some_and(|top| self.lowest(top) == hu) {
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high.filter(|&h| self.target[h] == u) {
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                self.set_ref(p.left.low, p.right.low);
                p.left.low = None;
            }
            while let Some(h) = p.right.high.filter(|&h| self.target[h] == u) {
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                self.set_ref(p.right.low, p.left.low);
                p.right.low = None;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("a return edge keeps a pair on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = match (hl, hr) {
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => hl,
                (Some(_), None) => hl,
                _ => hr,
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::super::build_graph;
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    fn petersen() -> Graph {
        let mut es = Vec::new();
        for i in 0..5 {
            es.push((i, (i + 1) % 5));
            es.push((i, i + 5));
            es.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &es)
    }

    #[test]
    fn classic_graphs() {
        assert!(lr_planarity(&complete(4)));
        assert!(!lr_planarity(&complete(5)));
        let k33: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        assert!(!lr_planarity(&Graph::from_edges(6, &k33)));
        assert!(!lr_planarity(&petersen()));
        // K5 minus an edge and K3,3 minus an edge are planar.
        let mut k5e = complete(5).edges();
        k5e.pop();
        assert!(lr_planarity(&Graph::from_edges(5, &k5e)));
        assert!(lr_planarity(&Graph::from_edges(6, &k33[1..])));
        // A 5x5 grid.
        let mut grid = Vec::new();
        for r in 0..5 {
            for c in 0..5 {
                if c < 4 {
                    grid.push((r * 5 + c, r * 5 + c + 1));
                }
                if r < 4 {
                    grid.push((r * 5 + c, r * 5 + c + 5));
                }
            }
        }
        assert!(lr_planarity(&Graph::from_edges(25, &grid)));
        // Subdivided K3,3 next to a planar component.
        let mut sub = vec![(0, 6), (6, 3)];
        sub.extend(k33[1..].iter().copied());
        sub.extend([(7, 8), (8, 9), (9, 7)]);
        assert!(!lr_planarity(&Graph::from_edges(10, &sub)));
        assert!(lr_planarity(&Graph::new(0)));
    }

    #[test]
    fn module_examples() {
        let b = Bounds::default();
        assert!(is_planar(build_graph(&z(&[32])).graph(), &b).unwrap());
        assert!(is_planar(build_graph(&z(&[16])).graph(), &b).unwrap());
        assert!(!is_planar(build_graph(&z(&[64])).graph(), &b).unwrap());
        assert!(!is_planar(build_graph(&ss(&[("S", 3, 2)])).graph(), &b).unwrap());
        assert!(is_planar(build_graph(&ss(&[("S", 2, 2), ("T", 1, 2)])).graph(), &b).unwrap());
        assert!(is_planar(build_graph(&z(&[4, 2])).graph(), &b).unwrap());
        assert!(is_planar(&Graph::new(61), &b).is_err());
    }
}
