//! Finite abelian groups `⊕ Z/m_i` with an action by integer matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ActionViolation, Error, Result};
use crate::field::prime_power;

/// Upper bound on the number of distinct products recorded by [`validate_action`].
pub const ACTION_CLOSURE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianPresentation {
    pub moduli: Vec<u32>,
    /// `t×t` integer matrices; empty means a plain `Z`-module.
    #[serde(default)]
    pub action: Vec<Vec<Vec<i64>>>,
}

impl AbelianPresentation {
    pub fn new(moduli: Vec<u32>, action: Vec<Vec<Vec<i64>>>) -> Self {
        AbelianPresentation { moduli, action }
    }

    pub fn z_module(moduli: Vec<u32>) -> Self {
        Self::new(moduli, Vec::new())
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&m| m as u64).product()
    }
}

/// The monoid generated by the action matrices, with entries reduced
/// row-wise modulo the moduli.
#[derive(Debug, Clone)]
pub struct ActionClosure {
    pub products: Vec<Vec<Vec<u32>>>,
    /// `true` if the closure was cut off at [`ACTION_CLOSURE_LIMIT`].
    pub truncated: bool,
}

/// Checks that every action matrix induces a well-defined endomorphism.
///
/// Entry `A[i][j]` sends the generator of `Z/m_j` into `Z/m_i`, which is
/// well defined iff `A[i][j]·m_j ≡ 0 (mod m_i)`.
pub fn validate_action(p: &AbelianPresentation) -> std::result::Result<ActionClosure, Vec<ActionViolation>> {
    let t = p.moduli.len();
    let mut bad = Vec::new();
    for (i, &m) in p.moduli.iter().enumerate() {
        if m < 2 || prime_power(m as u64).is_none() {
            bad.push(ActionViolation {
                matrix: 0,
                row: i + 1,
                col: i + 1,
                reason: format!("modulus {m} is not a prime power >= 2"),
            });
        }
    }
    for (k, a) in p.action.iter().enumerate() {
        if a.len() != t || a.iter().any(|r| r.len() != t) {
            bad.push(ActionViolation {
                matrix: k + 1,
                row: 0,
                col: 0,
                reason: format!("matrix is not {t}x{t}"),
            });
            continue;
        }
        for (i, row) in a.iter().enumerate() {
            for (j, &aij) in row.iter().enumerate() {
                let (mi, mj) = (p.moduli[i] as i128, p.moduli[j] as i128);
                if mi == 0 {
                    continue;
                }
                if (aij as i128 * mj).rem_euclid(mi) != 0 {
                    bad.push(ActionViolation {
                        matrix: k + 1,
                        row: i + 1,
                        col: j + 1,
                        reason: format!("{}·{} is not 0 mod {}", aij, mj, mi),
                    });
                }
            }
        }
    }
    if !bad.is_empty() {
        return Err(bad);
    }
    let reduce = |a: &Vec<Vec<i64>>| -> Vec<Vec<u32>> {
        a.iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|&x| x.rem_euclid(p.moduli[i] as i64) as u32).collect())
            .collect()
    };
    let gens: Vec<Vec<Vec<u32>>> = p.action.iter().map(reduce).collect();
    let mut products: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut frontier = gens.clone();
    let mut truncated = false;
    while let Some(m) = frontier.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        if products.len() == ACTION_CLOSURE_LIMIT {
            truncated = true;
            break;
        }
        for g in &gens {
            let prod: Vec<Vec<u32>> = (0..t)
                .map(|i| {
                    (0..t)
                        .map(|j| {
                            let s: u64 = (0..t).map(|k| g[i][k] as u64 * m[k][j] as u64).sum();
                            (s % p.moduli[i] as u64) as u32
                        })
                        .collect()
                })
                .collect();
            frontier.push(prod);
        }
        products.push(m);
    }
    Ok(ActionClosure { products, truncated })
}

/// A set of group elements stored as a bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
    count: usize,
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet {
            words: vec![0; order.div_ceil(64)],
            count: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, x % 64);
        if self.words[w] >> b & 1 == 1 {
            return false;
        }
        self.words[w] |= 1 << b;
        self.count += 1;
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let count = words.iter().map(|w| w.count_ones() as usize).sum();
        ElementSet { words, count }
    }

    /// Whether the set was sized for a group of `order` elements and
    /// contains only indices below it.
    pub fn fits(&self, order: usize) -> bool {
        self.words.len() == order.div_ceil(64) && self.iter().all(|x| x < order)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A validated presentation with element arithmetic.
///
/// Elements are indexed in mixed radix with the last coordinate varying fastest.
#[derive(Debug, Clone)]
pub struct FiniteAbelianGroup {
    pres: AbelianPresentation,
    strides: Vec<usize>,
    order: usize,
    /// Action matrices reduced row-wise modulo the moduli.
    action: Vec<Vec<Vec<u32>>>,
    closure_size: usize,
}

impl FiniteAbelianGroup {
    pub fn new(pres: AbelianPresentation, max_order: u64) -> Result<Self> {
        if pres.moduli.is_empty() {
            return Err(Error::InvalidParameters("empty list of moduli".into()));
        }
        let closure = validate_action(&pres).map_err(Error::InvalidAction)?;
        let order = pres.order();
        if order > max_order {
            return Err(Error::BoundExceeded {
                what: "group order",
                value: order,
                limit: max_order,
            });
        }
        let t = pres.moduli.len();
        let mut strides = vec![1; t];
        for i in (0..t.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * pres.moduli[i + 1] as usize;
        }
        let action = pres
            .action
            .iter()
            .map(|a| {
                a.iter()
                    .enumerate()
                    .map(|(i, r)| r.iter().map(|&x| x.rem_euclid(pres.moduli[i] as i64) as u32).collect())
                    .collect()
            })
            .collect();
        Ok(FiniteAbelianGroup {
            pres,
            strides,
            order: order as usize,
            action,
            closure_size: closure.products.len(),
        })
    }

    pub fn presentation(&self) -> &AbelianPresentation {
        &self.pres
    }

    pub fn moduli(&self) -> &[u32] {
        &self.pres.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.pres.moduli.len()
    }

    pub fn action_count(&self) -> usize {
        self.action.len()
    }

    /// Number of distinct products of action matrices (capped).
    pub fn action_closure_size(&self) -> usize {
        self.closure_size
    }

    pub fn decode(&self, mut x: usize) -> Vec<u32> {
        self.pres
            .moduli
            .iter()
            .zip(&self.strides)
            .map(|(&m, &s)| {
                let d = (x / s) as u32 % m;
                x %= s;
                d
            })
            .collect()
    }

    pub fn encode(&self, v: &[u32]) -> usize {
        v.iter()
            .zip(&self.pres.moduli)
            .zip(&self.strides)
            .map(|((&x, &m), &s)| (x % m) as usize * s)
            .sum()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.pres.moduli.iter().zip(&self.strides) {
            let m = m as usize;
            let da = a / s % m;
            let db = b / s % m;
            out += (da + db) % m * s;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.pres.moduli.iter().zip(&self.strides) {
            let m = m as usize;
            out += (m - a / s % m) % m * s;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Applies action matrix `k` to element `x`.
    pub fn act(&self, k: usize, x: usize) -> usize {
        let v = self.decode(x);
        let a = &self.action[k];
        let out: Vec<u32> = (0..v.len())
            .map(|i| {
                let s: u64 = (0..v.len()).map(|j| a[i][j] as u64 * v[j] as u64).sum();
                (s % self.pres.moduli[i] as u64) as u32
            })
            .collect();
        self.encode(&out)
    }

    pub fn zero_set(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.order);
        s.insert(0);
        s
    }

    pub fn full_set(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.order);
        for x in 0..self.order {
            s.insert(x);
        }
        s
    }

    /// Adds the cyclic group `⟨g⟩` to a subgroup `h` (as element list + set).
    fn extend_by(&self, set: &mut ElementSet, elems: &mut Vec<usize>, g: usize) {
        if set.contains(g) {
            return;
        }
        let base = elems.clone();
        let mut shift = g;
        while !set.contains(shift) {
            for &h in &base {
                let y = self.add(h, shift);
                if set.insert(y) {
                    elems.push(y);
                }
            }
            shift = self.add(shift, g);
        }
    }

    /// The subgroup generated by `gens` (ignoring the action).
    pub fn span(&self, gens: impl IntoIterator<Item = usize>) -> ElementSet {
        let mut set = self.zero_set();
        let mut elems = vec![0];
        for g in gens {
            self.extend_by(&mut set, &mut elems, g);
        }
        set
    }

    /// The sum of two subgroups.
    pub fn sum(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut set = big.clone();
        let mut elems: Vec<usize> = set.iter().collect();
        for g in self.group_generators(small) {
            self.extend_by(&mut set, &mut elems, g);
        }
        set
    }

    /// Orbit of `v` under the monoid generated by the action matrices.
    pub fn action_orbit(&self, v: usize) -> Vec<usize> {
        let mut seen = ElementSet::empty(self.order);
        seen.insert(v);
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for k in 0..self.action.len() {
                let y = self.act(k, x);
                if seen.insert(y) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Whether a subgroup is mapped into itself by every action matrix.
    pub fn is_action_closed(&self, s: &ElementSet) -> bool {
        (0..self.action.len()).all(|k| s.iter().all(|x| s.contains(self.act(k, x))))
    }

    /// Whether `s` is closed under addition and contains 0.
    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        s.contains(0) && s.iter().all(|x| s.iter().all(|y| s.contains(self.add(x, y))))
    }

    /// Greedy generating sequence: scan elements in index order and keep
    /// each one not already in the span of those kept.
    ///
    /// Depends only on the set, so it is a canonical generating matrix.
    pub fn group_generators(&self, s: &ElementSet) -> Vec<usize> {
        let mut set = self.zero_set();
        let mut elems = vec![0];
        let mut gens = Vec::new();
        for x in s.iter() {
            if set.len() == s.len() {
                break;
            }
            if !set.contains(x) {
                gens.push(x);
                self.extend_by(&mut set, &mut elems, x);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compatible_action_is_ok() {
        let p = AbelianPresentation::new(vec![4, 2], vec![vec![vec![1, 0], vec![1, 1]]]);
        assert!(validate_action(&p).is_ok());
        let p = AbelianPresentation::new(vec![2, 4], vec![vec![vec![0, 1], vec![0, 0]]]);
        assert!(validate_action(&p).is_ok());
    }

    #[test]
    fn incompatible_entry_reported() {
        let p = AbelianPresentation::new(vec![4, 2], vec![vec![vec![1, 1], vec![0, 1]]]);
        let v = validate_action(&p).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].matrix, v[0].row, v[0].col), (1, 1, 2));
    }

    #[test]
    fn empty_action_is_ok() {
        let p = AbelianPresentation::z_module(vec![8]);
        let c = validate_action(&p).unwrap();
        assert!(c.products.is_empty());
    }

    #[test]
    fn non_prime_power_modulus_rejected() {
        assert!(validate_action(&AbelianPresentation::z_module(vec![6])).is_err());
        assert!(validate_action(&AbelianPresentation::z_module(vec![1])).is_err());
    }

    #[test]
    fn closure_of_a_nilpotent_action() {
        // N = [[0,1],[0,0]] on (Z/2)^2: products N, N^2 = 0.
        let p = AbelianPresentation::new(vec![2, 2], vec![vec![vec![0, 1], vec![0, 0]]]);
        let c = validate_action(&p).unwrap();
        assert_eq!(c.products.len(), 2);
        assert!(!c.truncated);
    }

    #[test]
    fn arithmetic_roundtrip() {
        let g = FiniteAbelianGroup::new(AbelianPresentation::z_module(vec![4, 2]), 4096).unwrap();
        assert_eq!(g.order(), 8);
        for x in 0..8 {
            assert_eq!(g.encode(&g.decode(x)), x);
            assert_eq!(g.add(x, g.neg(x)), 0);
        }
        let a = g.encode(&[1, 1]);
        let s = g.span([a]);
        let got: Vec<Vec<u32>> = s.iter().map(|x| g.decode(x)).collect();
        assert_eq!(got, vec![vec![0, 0], vec![1, 1], vec![2, 0], vec![3, 1]]);
    }

    #[test]
    fn generators_are_canonical() {
        let g = FiniteAbelianGroup::new(AbelianPresentation::z_module(vec![4, 2]), 4096).unwrap();
        let socle = g.span([g.encode(&[2, 0]), g.encode(&[0, 1])]);
        let gens: Vec<Vec<u32>> = g.group_generators(&socle).iter().map(|&x| g.decode(x)).collect();
        assert_eq!(gens, vec![vec![0, 1], vec![2, 0]]);
        let again = g.span([g.encode(&[2, 1]), g.encode(&[2, 0])]);
        assert_eq!(again, socle);
        assert_eq!(g.group_generators(&again), g.group_generators(&socle));
    }

    #[test]
    fn order_bound_enforced() {
        let r = FiniteAbelianGroup::new(AbelianPresentation::z_module(vec![64, 64, 2]), 4096);
        assert!(matches!(r, Err(Error::BoundExceeded { .. })));
    }
}
