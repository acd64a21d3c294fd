//! Closed-form submodule counts in exact arithmetic, and the complement
//! bijections and pairings used by the coloring results.

pub mod matching;
mod pairing;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

pub use pairing::{complement_bijection, half_pairing, HalfPairing};

use crate::error::{Error, Result};
use crate::module::{Component, ModuleSpec};

/// The `d`-ary Gaussian binomial `C(n, m)_d`.
///
/// Numerator and denominator are accumulated separately and divided once;
/// a nonzero remainder is reported as an internal error.
pub fn gaussian_binomial(n: u32, m: u32, d: u64) -> Result<BigUint> {
    if m > n {
        return Err(Error::InvalidParameters(format!("m = {m} exceeds n = {n}")));
    }
    if d < 2 {
        return Err(Error::InvalidParameters(format!("d = {d} is below 2")));
    }
    let d = BigUint::from(d);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 0..m {
        num *= d.pow(n) - d.pow(k);
        den *= d.pow(m) - d.pow(k);
    }
    let (q, r) = (&num / &den, &num % &den);
    if !r.is_zero() {
        return Err(Error::Internal("Gaussian binomial is not integral".into()));
    }
    Ok(q)
}

/// `w_n = (d^n − 1)/(d − 1)`, the number of maximal submodules of `nS`.
pub fn count_maximal_homogeneous(n: u32, d: u64) -> Result<BigUint> {
    if n == 0 || d < 2 {
        return Err(Error::InvalidParameters(format!("need n >= 1 and d >= 2, got n = {n}, d = {d}")));
    }
    let d = BigUint::from(d);
    Ok((d.pow(n) - 1u32) / (d - 1u32))
}

fn components(spec: &ModuleSpec) -> Result<&[Component]> {
    match spec {
        ModuleSpec::Semisimple { components } => Ok(components),
        ModuleSpec::Explicit { .. } => Err(Error::InvalidParameters("a semisimple spec is required".into())),
    }
}

/// Sum of `w_{n_i}` over the isotypic components.
pub fn count_maximal(spec: &ModuleSpec) -> Result<BigUint> {
    components(spec)?
        .iter()
        .map(|c| count_maximal_homogeneous(c.mult as u32, c.field.q() as u64))
        .sum()
}

/// Number of submodules of length `i`: a sum over `i_1 + … + i_r = i`,
/// `0 ≤ i_k ≤ n_k`, of `∏ C(n_k, i_k)_{d_k}`.
pub fn count_by_length(spec: &ModuleSpec, i: usize) -> Result<BigUint> {
    let cs = components(spec)?;
    let n: usize = cs.iter().map(|c| c.mult).sum();
    if i > n {
        return Err(Error::InvalidParameters(format!("length {i} exceeds {n}")));
    }
    // poly[j] = number of submodules of length j in the components so far.
    let mut poly = vec![BigUint::one()];
    for c in cs {
        let row = (0..=c.mult)
            .map(|j| gaussian_binomial(c.mult as u32, j as u32, c.field.q() as u64))
            .collect::<Result<Vec<_>>>()?;
        let mut next = vec![BigUint::zero(); poly.len() + c.mult];
        for (a, x) in poly.iter().enumerate() {
            for (b, y) in row.iter().enumerate() {
                next[a + b] += x * y;
            }
        }
        poly = next;
    }
    Ok(poly[i].clone())
}

/// Per-length counts `μ_0, …, μ_n` and their total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataCounts {
    pub mu: Vec<BigUint>,
    pub total: BigUint,
}

pub fn strata_counts(spec: &ModuleSpec) -> Result<StrataCounts> {
    let n: usize = components(spec)?.iter().map(|c| c.mult).sum();
    let mu = (0..=n).map(|i| count_by_length(spec, i)).collect::<Result<Vec<_>>>()?;
    let total = mu.iter().sum();
    Ok(StrataCounts { mu, total })
}

/// In `nS` with `|End(S)| = d` and a fixed submodule `U` of length `j`, the
/// number of length-`i` submodules `W` with `ℓ(U ∩ W) = m`:
/// `d^{(i−m)(j−m)} C(n−j, i−m)_d C(j, m)_d`.
pub fn count_intersecting(n: u32, d: u64, j: u32, i: u32, m: u32) -> Result<BigUint> {
    if j > n || i > n || m > i.min(j) || i - m > n - j {
        return Err(Error::InvalidParameters(format!(
            "invalid parameters n = {n}, j = {j}, i = {i}, m = {m}"
        )));
    }
    let e = (i - m) * (j - m);
    Ok(BigUint::from(d).pow(e) * gaussian_binomial(n - j, i - m, d)? * gaussian_binomial(j, m, d)?)
}

/// Complements of a submodule `U ≅ ⊕ m_k T_k`: `∏ d_k^{(n_k − m_k) m_k}`.
pub fn count_complements(spec: &ModuleSpec, sub_mults: &[usize]) -> Result<BigUint> {
    let cs = components(spec)?;
    if sub_mults.len() != cs.len() {
        return Err(Error::InvalidParameters(format!(
            "{} multiplicities for {} components",
            sub_mults.len(),
            cs.len()
        )));
    }
    let mut out = BigUint::one();
    for (c, &m) in cs.iter().zip(sub_mults) {
        if m > c.mult {
            return Err(Error::InvalidParameters(format!(
                "multiplicity {m} exceeds {} for {}",
                c.mult, c.type_id
            )));
        }
        out *= BigUint::from(c.field.q() as u64).pow(((c.mult - m) * m) as u32);
    }
    Ok(out)
}

/// Lattice facts that determine the domination number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DominationFacts {
    pub is_simple: bool,
    pub is_semisimple: bool,
    pub homogeneous: bool,
    /// `|End(S)|` of the simple type when homogeneous.
    pub end_size: u64,
}

/// `γ` of the intersection graph: 0 for a simple module, 1 if not
/// semisimple, 2 if semisimple with two simple types, and `d + 1` for a
/// homogeneous semisimple module of length at least 2.
pub fn domination_formula(f: &DominationFacts) -> u64 {
    if f.is_simple {
        0
    } else if !f.is_semisimple {
        1
    } else if !f.homogeneous {
        2
    } else {
        f.end_size + 1
    }
}

/// Chromatic number of the intersection graph of a semisimple module of
/// length `n > 2`.
///
/// For `n = 2k − 1` it is `Σ_{i=k}^{n−1} μ_i`; for `n = 2k` with an odd
/// multiplicity it is `μ_k / 2 + Σ_{i=k+1}^{n−1} μ_i`. With every
/// multiplicity even no formula is known and `Unsupported` is returned.
pub fn chromatic_formula(spec: &ModuleSpec) -> Result<BigUint> {
    let cs = components(spec)?;
    let n: usize = cs.iter().map(|c| c.mult).sum();
    if n <= 2 {
        return Err(Error::InvalidParameters(format!(
            "length {n} <= 2: the graph has no edges"
        )));
    }
    let sum_from = |lo: usize| -> Result<BigUint> { (lo..n).map(|i| count_by_length(spec, i)).sum() };
    if n % 2 == 1 {
        return sum_from(n.div_ceil(2));
    }
    if cs.iter().all(|c| c.mult % 2 == 0) {
        return Err(Error::Unsupported(
            "every multiplicity is even; the chromatic number has no closed form here".into(),
        ));
    }
    let k = n / 2;
    let half = count_by_length(spec, k)?;
    if (&half % 2u32) != BigUint::zero() {
        return Err(Error::Internal("middle stratum has odd size".into()));
    }
    Ok(half / 2u32 + sum_from(k + 1)?)
}
