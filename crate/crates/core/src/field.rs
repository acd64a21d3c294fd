//! Table-driven finite fields `F_q` for `q = p^e ≤ 64`.
//!
//! Elements are encoded as integers `0..q`: the polynomial
//! `c_0 + c_1 x + … + c_{e-1} x^{e-1}` is stored as `Σ c_i p^i`. For `e = 1`
//! this is ordinary residue arithmetic modulo `p`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, always `< q`.
pub type Elem = u8;

const MAX_Q: u64 = 64;

struct Tables {
    p: u32,
    e: u32,
    q: usize,
    /// Monic reduction polynomial, coefficients `c_0..=c_e`.
    poly: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field with precomputed addition, multiplication and inverse tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `n` into `(p, e)` with `n = p^e`, if `n` is a prime power.
pub(crate) fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

// Polynomials over F_p as coefficient vectors, lowest degree first.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while a.len() > db {
        let top = *a.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = a.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - f * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue mod a prime")
}

fn decode_poly(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let c = code % p;
            code /= p;
            c
        })
        .collect()
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    // Any factorization has a monic factor of degree ≤ deg / 2.
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = decode_poly(code, p, d);
            g.push(1);
            if poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `e`, ordered by the
/// base-`p` integer encoding of its lower coefficients.
fn least_irreducible(p: u32, e: u32) -> Option<Vec<u32>> {
    (0..p.pow(e)).find_map(|code| {
        let mut f = decode_poly(code, p, e as usize);
        f.push(1);
        is_irreducible(&f, p).then_some(f)
    })
}

/// Constructs `F_{p^e}`.
pub fn field_make(p: u32, e: u32) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=4).contains(&e) {
        return Err(Error::DegreeOutOfRange(e));
    }
    let q64 = (p as u64).pow(e);
    if q64 > MAX_Q {
        return Err(Error::FieldTooLarge(q64, MAX_Q));
    }
    let q = q64 as usize;
    let poly = if e == 1 {
        vec![0, 1]
    } else {
        least_irreducible(p, e)
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {e} over F_{p}")))?
    };
    let e_us = e as usize;
    let encode = |c: &[u32]| -> Elem {
        c.iter().rev().fold(0u32, |acc, &x| acc * p + x) as Elem
    };
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        let pa = decode_poly(a as u32, p, e_us);
        for b in 0..q {
            let pb = decode_poly(b as u32, p, e_us);
            let sum: Vec<u32> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(&sum);
            let mut prod = vec![0u32; 2 * e_us - 1];
            for (i, x) in pa.iter().enumerate() {
                for (j, y) in pb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = if e == 1 { prod } else { poly_rem(prod, &poly, p) };
            r.resize(e_us, 0);
            mul[a * q + b] = encode(&r);
        }
    }
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
        .collect();
    let mut inv = vec![0; q];
    for a in 1..q {
        inv[a] = (1..q)
            .find(|&b| mul[a * q + b] == 1)
            .ok_or_else(|| Error::Internal(format!("{a} has no inverse in F_{q}")))?
            as Elem;
    }
    Ok(FieldSpec(Arc::new(Tables {
        p,
        e,
        q,
        poly,
        add,
        mul,
        neg,
        inv,
    })))
}

impl FieldSpec {
    /// The field with `q` elements; `q` must be a prime power within bounds.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q, MAX_Q));
        }
        field_make(p as u32, e)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> usize {
        self.0.q
    }

    /// Coefficients `c_0..=c_e` of the reduction polynomial.
    pub fn reduction_poly(&self) -> &[u32] {
        &self.0.poly
    }

    pub fn contains(&self, x: u32) -> bool {
        (x as usize) < self.0.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|x| x as Elem)
    }

    /// The class of `x` in the additive group, i.e. its base-`p` digits.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        decode_poly(x as u32, self.0.p, self.0.e as usize)
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_is_residues() {
        let f = field_make(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn f4_units_have_order_dividing_three() {
        let f = field_make(2, 2).unwrap();
        assert_eq!(f.q(), 4);
        for x in 1..4 {
            let cube = f.mul(f.mul(x, x), x);
            assert_eq!(cube, 1, "x = {x}");
        }
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert!(matches!(field_make(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(field_make(2, 5), Err(Error::DegreeOutOfRange(5))));
        assert!(matches!(field_make(3, 4), Err(Error::FieldTooLarge(81, 64))));
    }

    #[test]
    fn reduction_polys_are_least() {
        assert_eq!(field_make(2, 2).unwrap().reduction_poly(), &[1, 1, 1]);
        assert_eq!(field_make(2, 3).unwrap().reduction_poly(), &[1, 1, 0, 1]);
        assert_eq!(field_make(3, 2).unwrap().reduction_poly(), &[1, 0, 1]);
        assert_eq!(field_make(2, 4).unwrap().reduction_poly(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (13, 1)] {
            let f = field_make(p, e).unwrap();
            let q = f.q() as Elem;
            assert!(q <= 16);
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // Nonzero elements form a group: every product of units is a unit.
            for a in 1..q {
                for b in 1..q {
                    assert_ne!(f.mul(a, b), 0);
                }
            }
        }
    }

    #[test]
    fn every_admissible_order_builds() {
        for q in 2..=64u64 {
            if let Some((p, e)) = prime_power(q) {
                let r = FieldSpec::of_order(q);
                if e <= 4 {
                    assert_eq!(r.unwrap().q() as u64, q, "p = {p}");
                } else {
                    assert!(r.is_err());
                }
            }
        }
    }
}
