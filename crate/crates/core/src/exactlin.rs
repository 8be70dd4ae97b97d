//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything in this module works on [`BigInt`] entries: Hermite and Smith
//! normal forms with their unimodular transforms, integer kernels, and
//! lattices stored by their canonical row-style Hermite basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix data has {found} entries, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense integer matrix stored in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinError> {
        if entries.len() != rows * cols {
            return Err(LinError::BadShape {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows. `cols` is needed so that a matrix without
    /// rows still has a well-defined width.
    pub fn from_rows<R, T>(cols: usize, rows: impl IntoIterator<Item = R>) -> Result<Self, LinError>
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut entries = Vec::new();
        let mut count = 0;
        for row in rows {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let width = entries.len() - before;
            if width != cols {
                return Err(LinError::DimensionMismatch {
                    expected: cols,
                    found: width,
                });
            }
            count += 1;
        }
        IntMatrix::new(count, cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinError> {
        if self.cols != other.rows {
            return Err(LinError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinError> {
        if v.len() != self.rows {
            return Err(LinError::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(self.row(i)) {
                *o += c * e;
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinError> {
        if v.len() != self.cols {
            return Err(LinError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .row_iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix, LinError> {
        if self.cols != other.cols {
            return Err(LinError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        IntMatrix::new(self.rows + other.rows, self.cols, entries)
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: cols.len(),
            entries,
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LinError> {
        if self.rows != self.cols {
            return Err(LinError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        h.row_iter().filter(|r| r.iter().any(|x| !x.is_zero())).count()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[r * self.cols + j];
            *e = -std::mem::take(e);
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.entries[target * self.cols + j] -= delta;
        }
    }

    /// col[target] -= factor * col[source]
    fn sub_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.entries[i * self.cols + target] -= delta;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let strs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", strs.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U·A == H`, `U`
/// unimodular, positive pivots, entries above each pivot in `[0, pivot)`,
/// and zero rows at the bottom.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let mut has_pivot = false;
        loop {
            let pivot = (r..a.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&i, &j| h.get(i, c).abs().cmp(&h.get(j, c).abs()));
            let Some(p) = pivot else { break };
            has_pivot = true;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..a.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c) / h.get(r, c);
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// `P·A·Q == D` with `P`, `Q` unimodular and `D` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub p: IntMatrix,
    pub d: IntMatrix,
    pub q: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of zero columns of `D`; these sit on the right.
    pub fn zero_columns(&self) -> usize {
        self.d.cols() - self.rank()
    }
}

fn min_abs_nonzero(d: &IntMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !d.get(i, j).is_zero())
        .min_by(|&(a, b), &(c, e)| d.get(a, b).abs().cmp(&d.get(c, e).abs()))
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut p = IntMatrix::identity(rows);
    let mut q = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let all = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = min_abs_nonzero(&d, all) else {
            break;
        };
        d.swap_rows(t, pi);
        p.swap_rows(t, pi);
        d.swap_cols(t, pj);
        q.swap_cols(t, pj);
        loop {
            let mut leftover = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let f = d.get(i, t) / d.get(t, t);
                d.sub_row_multiple(i, t, &f);
                p.sub_row_multiple(i, t, &f);
                leftover |= !d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let f = d.get(t, j) / d.get(t, t);
                d.sub_col_multiple(j, t, &f);
                q.sub_col_multiple(j, t, &f);
                leftover |= !d.get(t, j).is_zero();
            }
            if leftover {
                let cross = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = min_abs_nonzero(&d, cross).expect("pivot is nonzero");
                d.swap_rows(t, pi);
                p.swap_rows(t, pi);
                d.swap_cols(t, pj);
                q.swap_cols(t, pj);
                continue;
            }
            // divisibility chain: fold an offending row into the pivot row
            let pivot = d.get(t, t).clone();
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    p.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..rows.min(cols))
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect();
    SmithDecomposition {
        p,
        d,
        q,
        invariant_factors,
    }
}

/// A sublattice of `Z^n` stored by its canonical Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: IntMatrix::zeros(0, ambient_dim),
        }
    }

    /// Lattice spanned by the rows of `generators` (which may be dependent).
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let (h, _) = hermite_normal_form(generators);
        let rows: Vec<Vec<BigInt>> = h
            .row_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| r.to_vec())
            .collect();
        let basis = IntMatrix::from_rows(generators.cols, rows).expect("rows have matrix width");
        Lattice {
            ambient_dim: generators.cols,
            basis,
        }
    }

    pub fn from_vectors<R, T>(ambient_dim: usize, vectors: impl IntoIterator<Item = R>) -> Result<Self, LinError>
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Ok(Lattice::from_generators(&IntMatrix::from_rows(ambient_dim, vectors)?))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LinError> {
        if v.len() != self.ambient_dim {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let mut rest = v.to_vec();
        let mut col = 0;
        for row in self.basis.row_iter() {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if rest[col..pivot_col].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            let (q, r) = rest[pivot_col].div_rem(&row[pivot_col]);
            if !r.is_zero() {
                return Ok(false);
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
            col = pivot_col + 1;
        }
        Ok(rest.iter().all(Zero::is_zero))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool, LinError> {
        for row in other.basis.row_iter() {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice, LinError> {
        Ok(Lattice::from_generators(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection via the kernel of the stacked bases: `x·B1 == y·B2`.
    pub fn intersection(&self, other: &Lattice) -> Result<Lattice, LinError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let (r1, r2) = (self.rank(), other.rank());
        if r1 == 0 || r2 == 0 {
            return Ok(Lattice::zero(self.ambient_dim));
        }
        let mut neg = other.basis.clone();
        for e in neg.entries.iter_mut() {
            *e = -std::mem::take(e);
        }
        let stacked = self.basis.vstack(&neg)?;
        // columns of `stacked.transpose()` are the stacked rows
        let relations = kernel_basis(&stacked.transpose());
        let mut rows = Vec::with_capacity(relations.rank());
        for rel in relations.basis.row_iter() {
            rows.push(self.basis.left_apply(&rel[..r1])?);
        }
        Ok(Lattice::from_generators(&IntMatrix::from_rows(self.ambient_dim, rows)?))
    }

    /// Keeps the listed coordinates of every lattice vector.
    pub fn project(&self, coords: &[usize]) -> Lattice {
        Lattice::from_generators(&self.basis.select_columns(coords))
    }
}

/// Integer kernel `{v : A·v == 0}` as a lattice in `Z^{cols}`.
pub fn kernel_basis(a: &IntMatrix) -> Lattice {
    let (h, u) = hermite_normal_form(&a.transpose());
    let rows: Vec<Vec<BigInt>> = (0..h.rows)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    Lattice::from_generators(&IntMatrix::from_rows(a.cols, rows).expect("kernel rows have width cols"))
}

pub fn lattice_member(lattice: &Lattice, v: &[BigInt]) -> Result<bool, LinError> {
    lattice.contains(v)
}

pub fn lattice_intersection(a: &Lattice, b: &Lattice) -> Result<Lattice, LinError> {
    a.intersection(b)
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
