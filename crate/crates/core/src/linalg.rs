//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are stored as lists of sparse rows. Elimination pivots on the first
//! non-zero entry in column order, which for the matrices built elsewhere in this
//! crate is the canonical monomial order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

type SparseRow = BTreeMap<usize, Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![SparseRow::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from dense rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut m = RationalMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = RationalMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        assert!(col < self.cols);
        self.data[row]
            .get(&col)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            self.data[row].remove(&col);
        } else {
            self.data[row].insert(col, value);
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                t.data[j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (&j, a)| acc + a * &v[j])
            })
            .collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = SparseRow::new();
            for (&k, a) in row {
                for (&j, b) in &other.data[k] {
                    let entry = acc.entry(j).or_insert_with(Rational::zero);
                    *entry += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        out
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let mut rows: Vec<SparseRow> = self
            .data
            .iter()
            .filter(|r| !r.is_empty())
            .cloned()
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
                continue;
            };
            rows.swap(next, found);
            let inv = rows[next][&col].recip();
            for v in rows[next].values_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next {
                    continue;
                }
                if let Some(factor) = row.get(&col).cloned() {
                    axpy(row, &-factor, &pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        let rank = pivots.len();
        let mut matrix = RationalMatrix::zeros(self.rows, self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            matrix.data[i] = row;
        }
        Echelon {
            matrix,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space `{x : Mx = 0}`. One vector per free column, with a
    /// 1 in that column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let echelon = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &echelon.pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in echelon.pivots.iter().enumerate() {
                if let Some(a) = echelon.matrix.data[r].get(&free) {
                    v[p] = -a;
                }
            }
            vectors.push(v);
        }
        SubspaceBasis::from_independent(self.cols, vectors)
    }

    /// Basis of the column space, as vectors of length `rows`, in echelon form.
    pub fn image_basis(&self) -> SubspaceBasis {
        let echelon = self.transpose().rref();
        let vectors = (0..echelon.rank)
            .map(|r| dense(&echelon.matrix.data[r], self.rows))
            .collect();
        SubspaceBasis::from_independent(self.rows, vectors)
    }
}

/// `row += factor * other`, dropping cancelled entries.
fn axpy(row: &mut SparseRow, factor: &Rational, other: &SparseRow) {
    for (&j, b) in other {
        let delta = factor * b;
        match row.entry(j) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(delta);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += delta;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

fn dense(row: &SparseRow, len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    for (&j, a) in row {
        v[j] = a.clone();
    }
    v
}

fn sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(j, a)| (j, a.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A linearly independent family of vectors together with an echelon form of
/// their span, used for membership tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<Vec<Rational>>,
    echelon: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            vectors: Vec::new(),
            echelon: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let vectors = (0..ambient)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        SubspaceBasis::from_independent(ambient, vectors)
    }

    /// The span of arbitrary vectors; dependent vectors are dropped, keeping the
    /// first independent ones in order.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut out = SubspaceBasis::zero(ambient);
        for v in vectors {
            out.try_push(v);
        }
        out
    }

    fn from_independent(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let mut out = SubspaceBasis::zero(ambient);
        for v in vectors {
            let added = out.try_push(v);
            debug_assert!(added, "vectors were not independent");
        }
        out
    }

    /// Adds `v` if it is not already in the span; returns whether it was added.
    pub fn try_push(&mut self, v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let mut residue = self.reduce_sparse(sparse(&v));
        let Some((&pivot, lead)) = residue.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for a in residue.values_mut() {
            *a *= &inv;
        }
        for row in &mut self.echelon {
            if let Some(factor) = row.get(&pivot).cloned() {
                axpy(row, &-factor, &residue);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.echelon.insert(at, residue);
        self.vectors.push(v);
        true
    }

    fn reduce_sparse(&self, mut v: SparseRow) -> SparseRow {
        for (row, &p) in self.echelon.iter().zip(&self.pivots) {
            if let Some(factor) = v.get(&p).cloned() {
                axpy(&mut v, &-factor, row);
            }
        }
        v
    }

    /// The remainder of `v` after elimination against the echelon form; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient);
        dense(&self.reduce_sparse(sparse(v)), self.ambient)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce_sparse(sparse(v)).is_empty()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The basis vectors, in the order they were supplied.
    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// Reduced echelon basis of the same span, ordered by pivot column.
    pub fn echelon_vectors(&self) -> Vec<Vec<Rational>> {
        self.echelon
            .iter()
            .map(|r| dense(r, self.ambient))
            .collect()
    }
}

/// `dim big − dim sub`, after checking `sub ⊆ big`.
pub fn quotient_dim(big: &SubspaceBasis, sub: &SubspaceBasis) -> Result<usize> {
    if big.ambient != sub.ambient {
        return Err(Error::DimensionMismatch {
            expected: big.ambient,
            found: sub.ambient,
        });
    }
    if !big.contains_subspace(sub) {
        return Err(Error::ContainmentViolation);
    }
    Ok(big.dim() - sub.dim())
}

/// Solves `Σ c_j columns[j] = target`; returns one solution (free variables set
/// to zero) or `None` if the system is inconsistent.
pub fn solve(rows: usize, columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(target.len(), rows);
    let n = columns.len();
    let mut augmented = RationalMatrix::from_columns(rows, columns);
    augmented.cols += 1;
    for (i, t) in target.iter().enumerate() {
        augmented.set(i, n, t.clone());
    }
    let echelon = augmented.rref();
    if echelon.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &p) in echelon.pivots.iter().enumerate() {
        x[p] = echelon.matrix.get(r, n);
    }
    Some(x)
}
