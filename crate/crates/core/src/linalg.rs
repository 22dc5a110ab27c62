//! Dense exact linear algebra over a prime field GF(p).
//!
//! Entries are stored as canonical residues in `[0, p)`. Moduli up to 2^31 are
//! supported, so every product of two residues fits in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest supported characteristic.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Trial-division primality test; adequate for moduli below 2^31.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

#[inline]
pub(crate) fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero in GF({p})");
    // extended Euclid on signed values
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

/// Reduce an arbitrary signed integer into `[0, p)`.
pub fn reduce_signed(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// An element of GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    pub fn new(value: i64, modulus: u64) -> Self {
        Self { value: reduce_signed(value, modulus), modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| Self { value: inv_mod(self.value, self.modulus), modulus: self.modulus })
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self { value: add_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self { value: sub_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: neg_mod(self.value, self.modulus), modulus: self.modulus }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Row-major dense matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// A solution of `a * x = b`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Matrix,
    /// Columns span `{x : a * x = 0}`.
    pub nullspace: Matrix,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Self { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    /// Builds a matrix from raw residues; values are reduced mod `modulus`.
    pub fn from_vec(rows: usize, cols: usize, modulus: u64, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        let data = data.into_iter().map(|v| v % modulus).collect();
        Self { rows, cols, modulus, data }
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| reduce_signed(v, modulus)));
        }
        Self { rows: r, cols: c, modulus, data }
    }

    /// Column vector from raw residues.
    pub fn column(modulus: u64, entries: Vec<u64>) -> Self {
        let n = entries.len();
        Self::from_vec(n, 1, modulus, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.modulus;
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElement {
        FieldElement { value: self.get(r, c), modulus: self.modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        let mut out = Matrix::zeros(self.rows, rhs.cols, p);
        for i in 0..self.rows {
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let p = self.modulus;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| add_mod(a, b, p)).collect();
        Matrix { rows: self.rows, cols: self.cols, modulus: p, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        let p = self.modulus;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| sub_mod(a, b, p)).collect();
        Matrix { rows: self.rows, cols: self.cols, modulus: p, data }
    }

    pub fn scale(&self, s: u64) -> Matrix {
        let p = self.modulus;
        let s = s % p;
        let data = self.data.iter().map(|&a| mul_mod(a, s, p)).collect();
        Matrix { rows: self.rows, cols: self.cols, modulus: p, data }
    }

    pub fn neg(&self) -> Matrix {
        let p = self.modulus;
        let data = self.data.iter().map(|&a| neg_mod(a, p)).collect();
        Matrix { rows: self.rows, cols: self.cols, modulus: p, data }
    }

    /// `self += s * rhs`
    pub fn add_scaled_assign(&mut self, s: u64, rhs: &Matrix) {
        assert_eq!(self.shape(), rhs.shape());
        let p = self.modulus;
        let s = s % p;
        if s == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a = (*a + s * b) % p;
        }
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.rows, self.cols + rhs.cols, self.modulus);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(rhs.row(r));
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix { rows: self.rows + rhs.rows, cols: self.cols, modulus: self.modulus, data }
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[&Matrix], modulus: u64) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols, modulus);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len(), self.modulus);
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { rows: rows.len(), cols: self.cols, modulus: self.modulus, data }
    }

    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len(), self.modulus);
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let p = self.modulus;
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = inv_mod(m.get(row, col), p);
            for c in col..m.cols {
                let i = row * m.cols + c;
                m.data[i] = mul_mod(m.data[i], inv, p);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                let f = neg_mod(factor, p);
                for c in col..m.cols {
                    let src = m.data[row * m.cols + c];
                    if src != 0 {
                        let i = r * m.cols + c;
                        m.data[i] = (m.data[i] + f * src) % p;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        Rref { rank: pivot_cols.len(), reduced: m, pivot_cols }
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.cols > self.rows {
            self.transpose().rref().rank
        } else {
            self.rref().rank
        }
    }

    /// Columns form a basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivot_cols, .. } = self.rref();
        let p = self.modulus;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len(), p);
        for (j, &f) in free.iter().enumerate() {
            k.data[f * free.len() + j] = 1 % p;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                k.data[pc * free.len() + j] = neg_mod(reduced.get(r, f), p);
            }
        }
        k
    }

    /// Solves `self * x = b`; `None` iff some column of `b` is outside the column span.
    pub fn solve_right(&self, b: &Matrix) -> Option<Solution> {
        assert_eq!(self.rows, b.rows, "solve_right: row count mismatch");
        let aug = self.hstack(b);
        let Rref { reduced, pivot_cols, .. } = aug.rref();
        if pivot_cols.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols, self.modulus);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = reduced.get(r, self.cols + j);
            }
        }
        Some(Solution { particular: x, nullspace: self.kernel_basis() })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rref().rank == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.solve_right(&Matrix::identity(self.rows, self.modulus)).map(|s| s.particular)
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.rows == 0 || self.pow(self.rows as u32).is_zero()
    }

    /// Columns forming a basis of the column space (a subset of the columns of `self`).
    pub fn column_space_basis(&self) -> Matrix {
        let pivots = self.rref().pivot_cols;
        self.select_cols(&pivots)
    }

    /// Rows spanning the left kernel, i.e. `y` with `y * self = 0`, as a full-row-rank matrix.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<GF({})>{}x{}[", self.modulus, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Rank of a family of equally long coordinate vectors.
pub fn rank_of_vectors(vectors: &[Vec<u64>], len: usize, modulus: u64) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    let data = vectors.iter().flat_map(|v| v.iter().copied()).collect();
    Matrix::from_vec(vectors.len(), len, modulus, data).rank()
}
