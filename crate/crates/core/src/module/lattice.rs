use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{Module, Submodule};
use crate::abelian::ElementSet;
use crate::bits::Bits;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralFlags {
    pub is_semisimple: bool,
    pub is_simple: bool,
    pub is_uniform: bool,
}

/// All submodules of a module, ordered by `(length, label)`, with the
/// containment relation.
///
/// Member `0` is the zero submodule and the last member is the module itself.
/// Meets and joins are read off the containment relation: since members are
/// sorted by length, the meet of `a` and `b` is the last common lower bound
/// and the join is the first common upper bound.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    module: Module,
    members: Vec<Submodule>,
    labels: Vec<String>,
    index: HashMap<Submodule, usize>,
    strata: Vec<Vec<usize>>,
    below: Vec<Bits>,
    above: Vec<Bits>,
}

/// Element sets standing in for submodules during containment tests.
fn footprint(s: &Submodule) -> Vec<ElementSet> {
    if let Some(e) = s.elements() {
        return vec![e.clone()];
    }
    let parts = s.parts().expect("semisimple submodule");
    parts
        .iter()
        .map(|p| {
            let q = p.field().q();
            let size = q.pow(p.ambient() as u32);
            let mut set = ElementSet::empty(size);
            for v in p.vectors() {
                set.insert(v.iter().fold(0, |acc, &x| acc * q + x as usize));
            }
            set
        })
        .collect()
}

impl SubmoduleLattice {
    /// Builds the lattice from a complete, duplicate-free list of submodules.
    ///
    /// With `recompute_lengths` the cached lengths are replaced by chain
    /// heights in the containment order.
    pub(crate) fn from_members(
        module: Module,
        mut members: Vec<Submodule>,
        recompute_lengths: bool,
    ) -> Result<Self> {
        let sizes: Vec<u64> = members.iter().map(|s| module.order_of(s)).collect();
        let mut by_size: Vec<usize> = (0..members.len()).collect();
        by_size.sort_by_key(|&i| sizes[i]);
        members = by_size.iter().map(|&i| members[i].clone()).collect();
        let sizes: Vec<u64> = by_size.iter().map(|&i| sizes[i]).collect();
        let n = members.len();
        let prints: Vec<Vec<ElementSet>> = members.par_iter().map(footprint).collect();

        // below[i] holds j with members[j] ⊆ members[i]; only smaller sets qualify.
        let below: Vec<Bits> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut b = Bits::new(n);
                b.set(i);
                for j in 0..i {
                    if sizes[j] < sizes[i]
                        && prints[j].iter().zip(&prints[i]).all(|(x, y)| x.is_subset(y))
                    {
                        b.set(j);
                    }
                }
                b
            })
            .collect();
        if recompute_lengths {
            let mut height = vec![0usize; n];
            for i in 0..n {
                height[i] = below[i].ones().filter(|&j| j != i).map(|j| height[j] + 1).max().unwrap_or(0);
            }
            for (s, h) in members.iter_mut().zip(height) {
                s.length = h;
            }
        }

        let labels: Vec<String> = members.par_iter().map(|s| module.label(s)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| (members[a].length, &labels[a]).cmp(&(members[b].length, &labels[b])));
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let members: Vec<Submodule> = order.iter().map(|&o| members[o].clone()).collect();
        let labels: Vec<String> = order.iter().map(|&o| labels[o].clone()).collect();
        let below: Vec<Bits> = order
            .iter()
            .map(|&o| {
                let mut b = Bits::new(n);
                for j in below[o].ones() {
                    b.set(pos[j]);
                }
                b
            })
            .collect();
        let mut above = vec![Bits::new(n); n];
        for (i, b) in below.iter().enumerate() {
            for j in b.ones() {
                above[j].set(i);
            }
        }
        let index: HashMap<Submodule, usize> =
            members.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        if index.len() != n {
            return Err(Error::Internal("duplicate submodules in lattice".into()));
        }
        let top_len = members.iter().map(|s| s.length).max().unwrap_or(0);
        let mut strata = vec![Vec::new(); top_len + 1];
        for (i, s) in members.iter().enumerate() {
            strata
                .get_mut(s.length)
                .ok_or_else(|| Error::Internal(format!("member longer than module: {}", labels[i])))?
                .push(i);
        }
        if strata[0].len() != 1 || strata[top_len].len() != 1 {
            return Err(Error::Internal("lattice lacks a unique bottom or top".into()));
        }
        Ok(SubmoduleLattice {
            module,
            members,
            labels,
            index,
            strata,
            below,
            above,
        })
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Submodule] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Submodule {
        &self.members[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn length(&self, i: usize) -> usize {
        self.members[i].length
    }

    pub fn index_of(&self, s: &Submodule) -> Result<usize> {
        self.index.get(s).copied().ok_or(Error::NotInLattice)
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    pub fn composition_length(&self) -> usize {
        self.strata.len() - 1
    }

    /// `strata()[i]` lists the members of length `i`.
    pub fn strata(&self) -> &[Vec<usize>] {
        &self.strata
    }

    /// `μ_i`, the number of submodules of length `i`.
    pub fn mu(&self, i: usize) -> usize {
        self.strata.get(i).map_or(0, |s| s.len())
    }

    /// Whether member `a` is contained in member `b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].get(a)
    }

    /// Members contained in `i` (including `i`).
    pub fn below(&self, i: usize) -> &Bits {
        &self.below[i]
    }

    /// Members containing `i` (including `i`).
    pub fn above(&self, i: usize) -> &Bits {
        &self.above[i]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.below[a].last_common(&self.below[b]).expect("zero is a common lower bound")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.above[a].first_common(&self.above[b]).expect("top is a common upper bound")
    }

    /// Submodules of co-length one in member `i`.
    pub fn maximals_of(&self, i: usize) -> Vec<usize> {
        let l = self.length(i);
        if l == 0 {
            return Vec::new();
        }
        self.below[i].ones().filter(|&j| self.length(j) + 1 == l).collect()
    }

    /// `fm(W)`: the number of maximal submodules of member `i`.
    pub fn maximal_count(&self, i: usize) -> usize {
        self.maximals_of(i).len()
    }

    /// Simple submodules contained in member `i`.
    pub fn simples_below(&self, i: usize) -> Vec<usize> {
        self.strata.get(1).map_or(Vec::new(), |s| {
            s.iter().copied().filter(|&j| self.below[i].get(j)).collect()
        })
    }

    /// Join of all simple submodules of member `i`.
    pub fn socle_of(&self, i: usize) -> usize {
        self.simples_below(i).into_iter().fold(0, |acc, s| self.join(acc, s))
    }

    pub fn socle(&self) -> usize {
        self.socle_of(self.top())
    }

    pub fn is_semisimple_at(&self, i: usize) -> bool {
        self.socle_of(i) == i
    }

    /// Radical (meet of maximal submodules) and the maximal submodules.
    pub fn radical_and_maximals(&self) -> (usize, Vec<usize>) {
        let maximals = self.maximals_of(self.top());
        let radical = maximals.iter().fold(self.top(), |acc, &m| self.meet(acc, m));
        (radical, maximals)
    }

    /// Number of members containing member `w`, i.e. of submodules of `V/W`.
    pub fn interval_count(&self, w: usize) -> usize {
        self.above[w].count()
    }

    pub fn structural_flags(&self) -> StructuralFlags {
        let simples = self.mu(1);
        StructuralFlags {
            is_semisimple: self.socle() == self.top(),
            is_simple: self.composition_length() == 1,
            // Every nonzero submodule contains a simple one, so nonzero
            // submodules pairwise meet iff there is a single simple submodule.
            is_uniform: simples <= 1,
        }
    }

    /// Proper nonzero members: the vertices of the intersection graph.
    pub fn proper(&self) -> std::ops::Range<usize> {
        if self.len() <= 2 {
            return 1..1;
        }
        1..self.top()
    }
}
