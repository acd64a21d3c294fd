//! Dense matrices over `F_q`, reduced row echelon form, and subspaces
//! represented by their RREF bases.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl FqMatrix {
    /// Builds a matrix from row-major entries, validating every entry.
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::ElementOutOfField {
                value: bad,
                q: field.q(),
            });
        }
        Ok(FqMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: entries.into_iter().map(|x| x as Elem).collect(),
        })
    }

    pub fn from_rows(field: &FieldSpec, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub(crate) fn from_elems(field: &FieldSpec, rows: usize, cols: usize, entries: Vec<Elem>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// Reduced row echelon form (same shape, zero rows last) and rank.
    pub fn rref(&self) -> Result<(FqMatrix, usize)> {
        if let Some(&bad) = self.entries.iter().find(|&&x| !self.field.contains(x as u32)) {
            return Err(Error::ElementOutOfField {
                value: bad as u32,
                q: self.field.q(),
            });
        }
        let mut m = self.clone();
        let rank = m.rref_in_place();
        Ok((m, rank))
    }

    fn rref_in_place(&mut self) -> usize {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| self.entries[r * cols + c] != 0) else {
                continue;
            };
            if piv != rank {
                for k in 0..cols {
                    self.entries.swap(piv * cols + k, rank * cols + k);
                }
            }
            let inv = f.inv(self.entries[rank * cols + c]).unwrap();
            for k in 0..cols {
                let v = self.entries[rank * cols + k];
                self.entries[rank * cols + k] = f.mul(v, inv);
            }
            for r in 0..rows {
                let factor = self.entries[r * cols + c];
                if r == rank || factor == 0 {
                    continue;
                }
                for k in 0..cols {
                    let v = f.sub(self.entries[r * cols + k], f.mul(factor, self.entries[rank * cols + k]));
                    self.entries[r * cols + k] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Pivot columns, assuming `self` is already in RREF.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.rows)
            .filter_map(|r| self.row(r).iter().position(|&x| x != 0))
            .collect()
    }

    pub fn is_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for r in 0..self.rows {
            match self.row(r).iter().position(|&x| x != 0) {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || last.is_some_and(|l| c <= l) || self.get(r, c) != 1 {
                        return false;
                    }
                    if (0..self.rows).any(|o| o != r && self.get(o, c) != 0) {
                        return false;
                    }
                    last = Some(c);
                }
            }
        }
        true
    }

    fn stacked(&self, other: &FqMatrix) -> FqMatrix {
        debug_assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        FqMatrix::from_elems(&self.field, self.rows + other.rows, self.cols, entries)
    }

    fn truncated(mut self, rows: usize) -> FqMatrix {
        self.entries.truncate(rows * self.cols);
        self.rows = rows;
        self
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.field)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ";")?;
            }
            for x in self.row(r) {
                write!(f, " {x}")?;
            }
        }
        write!(f, " ]")
    }
}

/// A subspace of `F_q^n`, stored as the RREF of a basis (no zero rows).
///
/// Two subspaces are equal exactly when their bases are equal entrywise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FqMatrix,
}

impl Subspace {
    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        Subspace {
            basis: FqMatrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        Subspace {
            basis: FqMatrix::identity(field, n),
        }
    }

    /// Row space of an arbitrary matrix.
    pub fn span(m: &FqMatrix) -> Result<Self> {
        let (r, rank) = m.rref()?;
        Ok(Subspace {
            basis: r.truncated(rank),
        })
    }

    pub fn from_rows(field: &FieldSpec, n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        Self::span(&FqMatrix::from_rows(field, n, rows)?)
    }

    /// Wraps a matrix that is already a reduced basis.
    pub(crate) fn from_rref_unchecked(basis: FqMatrix) -> Self {
        debug_assert!(basis.is_rref() && basis.pivots().len() == basis.rows());
        Subspace { basis }
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn field(&self) -> &FieldSpec {
        &self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() || self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "{:?}^{} vs {:?}^{}",
                self.field(),
                self.ambient(),
                other.field(),
                other.ambient()
            )));
        }
        Ok(())
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        Ok(subspace_meet_join(self, other)?.1)
    }

    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        Ok(subspace_meet_join(self, other)?.0)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        let s = Subspace::span(&self.basis.stacked(&other.basis))?;
        Ok(s.dim() == self.dim())
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        let m = FqMatrix::from_elems(self.field(), 1, v.len(), v.to_vec());
        let s = Subspace::span(&self.basis.stacked(&m)).expect("valid entries");
        s.dim() == self.dim()
    }

    /// Every vector of the subspace, in the order of coefficient tuples.
    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        let f = self.field();
        let q = f.q();
        let n = self.ambient();
        let k = self.dim();
        let total = q.pow(k as u32);
        (0..total)
            .map(|mut code| {
                let mut v = vec![0; n];
                for r in 0..k {
                    let c = (code % q) as Elem;
                    code /= q;
                    if c != 0 {
                        for (x, &b) in v.iter_mut().zip(self.basis.row(r)) {
                            *x = f.add(*x, f.mul(c, b));
                        }
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.basis)
    }
}

/// Intersection and sum of two subspaces of the same `F_q^n`.
///
/// Uses the Zassenhaus construction: row-reduce `[A | A]` stacked over
/// `[B | 0]`; rows with a nonzero left half span `A + B`, and the right
/// halves of the remaining rows span `A ∩ B`.
pub fn subspace_meet_join(a: &Subspace, b: &Subspace) -> Result<(Subspace, Subspace)> {
    a.compatible(b)?;
    let field = a.field();
    let n = a.ambient();
    let rows = a.dim() + b.dim();
    let mut entries = Vec::with_capacity(rows * 2 * n);
    for r in 0..a.dim() {
        entries.extend_from_slice(a.basis.row(r));
        entries.extend_from_slice(a.basis.row(r));
    }
    for r in 0..b.dim() {
        entries.extend_from_slice(b.basis.row(r));
        entries.extend(std::iter::repeat_n(0, n));
    }
    let mut m = FqMatrix::from_elems(field, rows, 2 * n, entries);
    let rank = m.rref_in_place();
    let mut join_rows = Vec::new();
    let mut meet_rows = Vec::new();
    for r in 0..rank {
        let row = m.row(r);
        if row[..n].iter().any(|&x| x != 0) {
            join_rows.extend_from_slice(&row[..n]);
        } else {
            meet_rows.extend_from_slice(&row[n..]);
        }
    }
    let jr = join_rows.len() / n.max(1);
    let mr = meet_rows.len() / n.max(1);
    let join = Subspace::span(&FqMatrix::from_elems(field, jr, n, join_rows))?;
    let meet = Subspace::span(&FqMatrix::from_elems(field, mr, n, meet_rows))?;
    Ok((meet, join))
}
