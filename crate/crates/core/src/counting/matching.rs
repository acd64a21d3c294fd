//! Maximum matchings: augmenting paths for bipartite graphs and Edmonds'
//! blossom algorithm for general graphs.

use std::collections::VecDeque;

/// Maximum bipartite matching; `adj[l]` lists the right vertices adjacent
/// to left vertex `l`. Returns the partner of each left vertex.
pub fn bipartite_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    let mut match_right: Vec<Option<usize>> = vec![None; right];
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(l, adj, &mut seen, &mut match_right);
    }
    let mut match_left = vec![None; adj.len()];
    for (r, l) in match_right.iter().enumerate() {
        if let Some(l) = *l {
            match_left[l] = Some(r);
        }
    }
    match_left
}

fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_right[r].is_none_or(|l2| augment(l2, adj, seen, match_right)) {
            match_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// Maximum matching of a general graph; returns each vertex's partner.
pub fn general_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    // Greedy start, then augment from every exposed vertex.
    for v in 0..n {
        if mate[v].is_none() {
            if let Some(&u) = adj[v].iter().find(|&&u| mate[u].is_none() && u != v) {
                mate[v] = Some(u);
                mate[u] = Some(v);
            }
        }
    }
    for root in 0..n {
        if mate[root].is_none() {
            if let Some(end) = Blossom::new(adj, &mate).search(root) {
                end.apply(&mut mate);
            }
        }
    }
    mate
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: &'a [Option<usize>],
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    queue: VecDeque<usize>,
}

struct Augmenting {
    parent: Vec<Option<usize>>,
    end: usize,
}

impl Augmenting {
    fn apply(self, mate: &mut [Option<usize>]) {
        let mut v = Some(self.end);
        while let Some(x) = v {
            let pv = self.parent[x].expect("path vertex has a parent");
            let ppv = mate[pv];
            mate[x] = Some(pv);
            mate[pv] = Some(x);
            v = ppv;
        }
    }
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>], mate: &'a [Option<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate,
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("matched outer vertex has a parent"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("inner path is matched")].expect("parent");
        }
    }

    fn mark_path(&mut self, in_blossom: &mut [bool], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom path is matched");
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("parent");
        }
    }

    fn search(mut self, root: usize) -> Option<Augmenting> {
        let n = self.adj.len();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer = to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(&mut in_blossom, v, cur, to);
                    self.mark_path(&mut in_blossom, to, cur, v);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => {
                            return Some(Augmenting {
                                parent: self.parent,
                                end: to,
                            })
                        }
                        Some(m) => {
                            self.used[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Number of matched pairs in a partner table.
pub fn matching_size(mate: &[Option<usize>]) -> usize {
    mate.iter().filter(|m| m.is_some()).count() / 2
}
