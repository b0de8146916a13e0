//! Dense matrices over GF(p) with exact row reduction.
//!
//! Every dimension in this crate is decided here: ranks, kernels and
//! solvability are computed exactly, so there is no tolerance anywhere.

use std::fmt;

use crate::error::LinalgError;
use crate::field::Fp;

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    field: Fp,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over GF({}) [", self.rows, self.cols, self.p())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
    }

    /// Builds a matrix from rows of signed integers, reducing mod p.
    /// Panics when rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(field: Fp, cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().map(|&v| field.from_i64(v)));
        }
        FpMatrix {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    /// Wraps raw residues. Panics if the length is wrong or an entry is out of range.
    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must be rows*cols");
        assert!(data.iter().all(|&v| v < field.modulus()));
        FpMatrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn from_fn(field: Fp, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c) % field.modulus());
            }
        }
        FpMatrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// A single column vector.
    pub fn column(field: Fp, v: &[u32]) -> Self {
        Self::from_vec(field, v.len(), 1, v.to_vec())
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(field: Fp, len: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, len, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), len);
            for (r, &x) in v.iter().enumerate() {
                m.data[r * m.cols + c] = x;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p();
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    pub fn col_vec(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &FpMatrix) -> Result<(), LinalgError> {
        if self.p() != other.p() {
            return Err(LinalgError::ModulusMismatch(self.p(), other.p()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    /// Matrix product. Panics on shape or modulus mismatch.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    fn mul_unchecked(&self, other: &FpMatrix) -> FpMatrix {
        let p = self.p() as u64;
        let n = other.cols;
        let mut out = vec![0u64; self.rows * n];
        // Accumulate in u64 and reduce lazily; each product is < 2^62, so
        // reduce whenever the running sum could overflow.
        let limit = u64::MAX - (p - 1) * (p - 1);
        for i in 0..self.rows {
            let orow = &mut out[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    let mut v = *o + a * b as u64;
                    if v >= limit {
                        v %= p;
                    }
                    *o = v;
                }
            }
        }
        FpMatrix {
            rows: self.rows,
            cols: n,
            field: self.field,
            data: out.into_iter().map(|v| (v % p) as u32).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p() as u64;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (&a, &b) in self.row(r).iter().zip(v) {
                    acc = (acc + a as u64 * b as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.check_field(other).unwrap();
        let f = self.field;
        FpMatrix {
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.check_field(other).unwrap();
        let f = self.field;
        FpMatrix {
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let f = self.field;
        FpMatrix {
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
            ..self.clone()
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: u32, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let p = self.p() as u64;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + s as u64 * b as u64) % p) as u32;
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Horizontal concatenation; all parts need equal row counts.
    pub fn hstack(field: Fp, rows: usize, parts: &[&FpMatrix]) -> FpMatrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                out.data[r * cols + off..r * cols + off + m.cols].copy_from_slice(m.row(r));
            }
            off += m.cols;
        }
        out
    }

    /// Vertical concatenation; all parts need equal column counts.
    pub fn vstack(field: Fp, cols: usize, parts: &[&FpMatrix]) -> FpMatrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&m.data);
        }
        FpMatrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Block-diagonal matrix.
    pub fn block_diag(field: Fp, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|m| m.rows).sum();
        let cols = blocks.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut out = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            out.data[r * cols..(r + 1) * cols]
                .copy_from_slice(&self.data[(r0 + r) * self.cols + c0..(r0 + r) * self.cols + c0 + cols]);
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FpMatrix) {
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> FpMatrix {
        Self::from_fn(self.field, self.rows, cols.len(), |r, c| self.get(r, cols[c]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        FpMatrix {
            rows: rows.len(),
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces in place, choosing pivots only among the first
    /// `pivot_cols` columns. Returns the pivot columns.
    pub fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field;
        let p = f.modulus() as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..pivot_cols.min(cols) {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if sel != prow {
                for k in c..cols {
                    self.data.swap(sel * cols + k, prow * cols + k);
                }
            }
            let inv = f.inv(self.data[prow * cols + c]) as u64;
            if inv != 1 {
                for k in c..cols {
                    let v = &mut self.data[prow * cols + k];
                    *v = ((*v as u64 * inv) % p) as u32;
                }
            }
            let (before, rest) = self.data.split_at_mut(prow * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let pivot_tail = &pivot_row[c..];
            let eliminate = |row: &mut [u32]| {
                let factor = row[c] as u64;
                if factor == 0 {
                    return;
                }
                let neg = p - factor;
                for (x, &y) in row[c..].iter_mut().zip(pivot_tail) {
                    if y != 0 {
                        *x = ((*x as u64 + neg * y as u64) % p) as u32;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            // Eliminating along the short side is cheaper.
            return self.transpose().rank();
        }
        self.rref().1.len()
    }

    /// Columns form a basis of the right null space `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> FpMatrix {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let f = self.field;
        let mut out = Self::zeros(f, n, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.data[fc * free.len() + k] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                out.data[pc * free.len() + k] = f.neg(r.get(i, fc));
            }
        }
        out
    }

    /// Solves `self * X = b`. Returns `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &FpMatrix) -> Result<Option<FpMatrix>, LinalgError> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug = Self::hstack(self.field, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        let n = self.cols;
        // A pivot in the right-hand block means an inconsistent row.
        let mut x = Self::zeros(self.field, n, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            if pc >= n {
                return Ok(None);
            }
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.get(i, n + j);
            }
        }
        // Rows without a pivot in the left block must be zero on the right.
        for i in pivots.len()..r.rows {
            if (0..b.cols).any(|j| r.get(i, n + j) != 0) {
                return Ok(None);
            }
        }
        Ok(Some(x))
    }

    /// Is `v` in the column span of `self`?
    pub fn spans(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.rows);
        matches!(self.solve(&FpMatrix::column(self.field, v)), Ok(Some(_)))
    }

    /// A maximal linearly independent subset of the columns, in order.
    pub fn column_basis(&self) -> FpMatrix {
        let pivots = self.rref().1;
        self.select_cols(&pivots)
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Self::hstack(self.field, n, &[self, &Self::identity(self.field, n)]);
        let mut r = aug;
        let pivots = r.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Flattens into a single vector (row-major).
    pub fn to_vector(&self) -> Vec<u32> {
        self.data.clone()
    }
}

/// Incrementally maintained echelon basis of a subspace of GF(p)^n.
#[derive(Clone, Debug)]
pub struct Span {
    field: Fp,
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(field: Fp, len: usize) -> Self {
        Span {
            field,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the current basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.field.modulus() as u64;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let factor = v[pc] as u64;
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.len);
        if self.rows.len() == self.len {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]);
        for x in w.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    /// Echelon basis vectors (not reduced against each other).
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

/// Coordinates with respect to a fixed set of linearly independent columns.
///
/// Picks a set of rows on which the basis is invertible once, after which
/// each coordinate query is a small matrix-vector product.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: FpMatrix,
    rows: Vec<usize>,
    inv: FpMatrix,
}

impl Coordinates {
    /// Panics if the columns are dependent.
    pub fn new(basis: FpMatrix) -> Self {
        let k = basis.cols();
        let rows = basis.transpose().rref().1;
        assert_eq!(rows.len(), k, "coordinate basis columns are dependent");
        let inv = basis
            .select_rows(&rows)
            .inverse()
            .expect("selected rows are independent");
        Coordinates { basis, rows, inv }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    /// Coordinates of `v`, assuming it lies in the span.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let sub: Vec<u32> = self.rows.iter().map(|&r| v[r]).collect();
        self.inv.mul_vec(&sub)
    }

    /// Coordinates of `v`, or `None` if it is outside the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.coords_unchecked(v);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }
}
