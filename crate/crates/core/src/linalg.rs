//! Dense linear algebra over prime fields.
//!
//! Vectors are rows and linear maps act on the right: a matrix `m` with
//! `rows × cols` entries is the map `K^rows → K^cols`, `v ↦ v·m`. Every module
//! element in this crate is such a row vector, which matches the right-module
//! actions used everywhere else.
//!
//! Matrices with zero rows or zero columns are ordinary values. Products,
//! stacking and reduction all handle them without special cases at the call
//! site.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The prime field `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: 3 }
    }
}

impl PrimeField {
    /// Largest modulus accepted; products of two reduced entries must fit in `u64`.
    pub const MAX_MODULUS: u32 = (1 << 31) - 1;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduce an arbitrary integer into `[0, p)`.
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// The representative of `a` in `(-p/2, p/2]`, used for display.
    pub fn signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(field: PrimeField, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % field.p;
        }
        m
    }

    /// Build from signed integer rows; entries are reduced mod p.
    ///
    /// `cols` is needed so that zero-row matrices keep their width.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    cols
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(v);
            }
        }
        Ok(m)
    }

    /// Build from already reduced entries in row-major order.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        debug_assert!(data.iter().all(|&v| v < field.p));
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A single row vector.
    pub fn row_vector(field: PrimeField, v: &[u32]) -> Self {
        Self::from_vec(field, 1, v.len(), v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.mul(v, c)).collect(),
        }
    }

    /// `v·self` for a row vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length");
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        let p = f.p as u64;
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o = (*o + vi as u64 * m as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix::from_vec(self.field, idx.len(), self.cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Columns `start..end`.
    pub fn col_range(&self, start: usize, end: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, end - start, |i, j| {
            self.get(i, start + j)
        })
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        Matrix::from_vec(
            self.field,
            end - start,
            self.cols,
            self.data[start * self.cols..end * self.cols].to_vec(),
        )
    }

    /// Stack matrices on top of each other. `cols` fixes the width when `parts` is empty.
    pub fn vstack(field: PrimeField, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack width mismatch");
            data.extend_from_slice(&m.data);
        }
        Matrix::from_vec(field, rows, cols, data)
    }

    /// Concatenate matrices side by side. `rows` fixes the height when `parts` is empty.
    pub fn hstack(field: PrimeField, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack height mismatch");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.data[i * cols + off + j] = m.get(i, j);
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn block_diag(field: PrimeField, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.data[(r0 + i) * cols + c0 + j] = m.get(i, j);
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Gauss-Jordan elimination in place, choosing pivots only among the first
    /// `pivot_limit` columns. Returns the pivot columns.
    fn eliminate(&mut self, pivot_limit: usize) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_limit.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in 0..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in 0..cols {
                    let v = self.data[r * cols + j];
                    if v != 0 {
                        self.data[i * cols + j] = f.add(self.data[i * cols + j], f.mul(neg, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.eliminate(m.cols);
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the row space, in reduced echelon form.
    pub fn row_space(&self) -> Matrix {
        let r = self.rref();
        let k = r.rank();
        r.matrix.row_range(0, k)
    }

    /// Rows form a basis of the left null space `{v : v·self = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        // Left kernel of m is the right kernel of mᵀ.
        let t = self.transpose();
        let r = t.rref();
        let n = t.cols;
        let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
        let f = self.field;
        let mut out = Matrix::zeros(f, free.len(), n);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * n + fc] = 1 % f.p;
            for (pi, &pc) in r.pivots.iter().enumerate() {
                out.data[k * n + pc] = f.neg(r.matrix.get(pi, fc));
            }
        }
        out
    }

    /// Solve `x·self = b`. Returns `None` when no solution exists.
    pub fn solve_left(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.cols, b.cols, "solve_left: column counts differ");
        let f = self.field;
        let k = self.rows;
        let n = self.cols;
        let r = b.rows;
        let at = self.transpose();
        let bt = b.transpose();
        let mut aug = Matrix::hstack(f, n, &[&at, &bt]);
        let pivots = aug.eliminate(k);
        let rank = pivots.len();
        for i in rank..n {
            if (k..k + r).any(|j| aug.get(i, j) != 0) {
                return None;
            }
        }
        let mut x = Matrix::zeros(f, r, k);
        for (pi, &pc) in pivots.iter().enumerate() {
            for c in 0..r {
                x.data[c * k + pc] = aug.get(pi, k + c);
            }
        }
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let pivots = aug.eliminate(n);
        if pivots.len() != n {
            return None;
        }
        Some(aug.col_range(n, 2 * n))
    }

    /// True when `v` lies in the row space of `self`.
    pub fn spans(&self, v: &Matrix) -> bool {
        self.solve_left(v).is_some()
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u64).is_zero()
    }

    /// Render with entries in `(-p/2, p/2]`.
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| self.field.signed(v)).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix<{}>{}x{}{:?}",
            self.field,
            self.rows,
            self.cols,
            self.to_signed_rows()
        )
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "({}x{} empty)", self.rows, self.cols);
        }
        let rows = self.to_signed_rows();
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            write!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        assert_eq!(
            self.field, rhs.field,
            "matrix product over different fields"
        );
        let p = self.field.p as u64;
        let n = rhs.cols;
        let mut acc = vec![0u64; self.rows * n];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let out = &mut acc[i * n..(i + 1) * n];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Matrix::from_vec(
            self.field,
            self.rows,
            n,
            acc.into_iter().map(|v| v as u32).collect(),
        )
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self + &(-rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.neg(v)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn m(rows: &[&[i64]], cols: usize) -> Matrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows(gf3(), cols, &rows).unwrap()
    }

    #[test]
    fn field_rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::default().modulus(), 3);
    }

    #[test]
    fn field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, f.inv(3)), 1);
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.signed(6), -1);
        assert_eq!(f.sub(2, 5), 4);
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(gf3(), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zeros(gf3(), 2, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_nilpotent_loop_action() {
        let x = m(&[&[0, 1], &[0, 0]], 2);
        let r = x.rref();
        assert_eq!(r.matrix, x);
        assert_eq!(r.pivots, vec![1]);
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = Matrix::identity(gf3(), 3).kernel_basis();
        assert_eq!(k.shape(), (0, 3));
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = Matrix::zeros(gf3(), 2, 4).kernel_basis();
        assert_eq!(k, Matrix::identity(gf3(), 2));
    }

    #[test]
    fn kernel_of_loop_action() {
        let x = m(&[&[0, 1], &[0, 0]], 2);
        let k = x.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert!((&k * &x).is_zero());
        assert_eq!(k.row(0), &[0, 1]);
    }

    #[test]
    fn solve_left_identity_and_zero() {
        let b = m(&[&[1, 2], &[0, 1]], 2);
        let id = Matrix::identity(gf3(), 2);
        assert_eq!(id.solve_left(&b).unwrap(), b);
        let z = Matrix::zeros(gf3(), 2, 2);
        assert!(z.solve_left(&b).is_none());
    }

    #[test]
    fn empty_matrices_behave() {
        let f = gf3();
        let a = Matrix::zeros(f, 0, 3);
        let b = Matrix::zeros(f, 3, 0);
        assert_eq!((&a * &Matrix::identity(f, 3)).shape(), (0, 3));
        assert_eq!((&Matrix::identity(f, 3) * &b).shape(), (3, 0));
        assert_eq!((&b * &a), Matrix::zeros(f, 3, 3));
        assert_eq!((&a * &b).shape(), (0, 0));
        assert!(Matrix::zeros(f, 0, 0).is_invertible());
        assert_eq!(b.kernel_basis(), Matrix::identity(f, 3));
        assert_eq!(a.kernel_basis().shape(), (0, 0));
        // x·(0×3) = (2×3 zero) has solution x of shape 2×0
        let x = a.solve_left(&Matrix::zeros(f, 2, 3)).unwrap();
        assert_eq!(x.shape(), (2, 0));
        assert!(a.solve_left(&m(&[&[1, 0, 0]], 3)).is_none());
    }

    #[test]
    fn invertibility() {
        assert!(Matrix::identity(gf3(), 2).is_invertible());
        assert!(!Matrix::zeros(gf3(), 1, 1).is_invertible());
        assert!(!m(&[&[0, 1], &[0, 0]], 2).is_invertible());
        let a = m(&[&[1, 1], &[1, 2]], 2);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(gf3(), 2));
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix> {
        (0..=max, 0..=max, prop::sample::select(vec![2u32, 3, 5, 7])).prop_flat_map(|(r, c, p)| {
            prop::collection::vec(0..p, r * c)
                .prop_map(move |data| Matrix::from_vec(PrimeField::new(p).unwrap(), r, c, data))
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_preserving(a in arb_matrix(6)) {
            let r = a.rref();
            prop_assert_eq!(r.matrix.rref().matrix.clone(), r.matrix.clone());
            prop_assert_eq!(r.matrix.rank(), r.rank());
            prop_assert_eq!(a.transpose().rank(), r.rank());
            prop_assert!(r.matrix.data().iter().all(|&v| v < a.field().modulus()));
        }

        #[test]
        fn kernel_rank_nullity(a in arb_matrix(6)) {
            let k = a.kernel_basis();
            prop_assert!((&k * &a).is_zero());
            prop_assert_eq!(k.rank(), k.rows());
            prop_assert_eq!(k.rows() + a.rank(), a.rows());
        }

        #[test]
        fn solve_left_round_trip(a in arb_matrix(5), seed in any::<u64>()) {
            let f = a.field();
            let mut s = seed;
            let x0 = Matrix::from_fn(f, 3, a.rows(), |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % f.modulus() as u64) as u32
            });
            let b = &x0 * &a;
            let x = a.solve_left(&b).expect("solvable by construction");
            prop_assert_eq!(&x * &a, b);
        }
    }
}
