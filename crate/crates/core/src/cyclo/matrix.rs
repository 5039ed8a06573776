//! Dense matrices over Q(ζ_L) with exact Gauss–Jordan elimination.

use super::{CycloNum, MulAcc, Rational};
use std::fmt;

/// Row-major matrix; every entry shares one conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<CycloNum>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, conductor: u32) -> Self {
        Matrix {
            rows,
            cols,
            conductor,
            data: vec![CycloNum::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zero(n, n, conductor);
        for i in 0..n {
            *m.at_mut(i, i) = CycloNum::one(conductor);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloNum>>, cols: usize, conductor: u32) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            for e in &r {
                assert_eq!(e.conductor(), conductor, "mixed conductors in matrix");
            }
            data.extend(r);
        }
        Matrix {
            rows: n_rows,
            cols,
            conductor,
            data,
        }
    }

    pub fn from_columns(cols_vecs: Vec<Vec<CycloNum>>, rows: usize, conductor: u32) -> Self {
        let n_cols = cols_vecs.len();
        let mut m = Self::zero(rows, n_cols, conductor);
        for (j, col) in cols_vecs.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                *m.at_mut(i, j) = col[i].clone();
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

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn at(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CycloNum {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<CycloNum> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<CycloNum> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::zero(self.cols, self.rows, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        assert_eq!(self.conductor, rhs.conductor);
        let mut out = Self::zero(self.rows, rhs.cols, self.conductor);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = MulAcc::new(self.conductor);
                for k in 0..self.cols {
                    acc.add_product(self.at(i, k), rhs.at(k, j));
                }
                *out.at_mut(i, j) = acc.finish();
            }
        }
        out
    }

    pub fn matvec(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| super::dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Matrix {
        let mut out = self.clone();
        for e in out.data.iter_mut() {
            *e = e.scale(r);
        }
        out
    }

    /// self − λ·I.
    pub fn sub_scalar_identity(&self, lambda: &CycloNum) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            *out.at_mut(i, i) -= lambda;
        }
        out
    }

    /// self + c·I.
    pub fn add_scalar_identity(&self, c: &CycloNum) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            *out.at_mut(i, i) += c;
        }
        out
    }

    pub fn trace(&self) -> CycloNum {
        assert_eq!(self.rows, self.cols);
        let mut t = CycloNum::zero(self.conductor);
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    pub fn lift(&self, conductor: u32) -> Matrix {
        if conductor == self.conductor {
            return self.clone();
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            conductor,
            data: self.data.iter().map(|e| e.lift(conductor)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// When every entry is a (small) rational integer, the integer matrix.
    pub fn as_int_entries(&self) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.data.len());
        for e in &self.data {
            let r = e.to_rational()?;
            if !num_traits::One::is_one(r.denom()) {
                return None;
            }
            out.push(i64::try_from(r.numer().clone()).ok()?);
        }
        Some(out)
    }

    /// Canonical reduced row echelon form: pivots are 1, pivot columns are
    /// cleared above and below, rows ordered by pivot column, zero rows at the
    /// bottom. The pivot in each column is the first row with a nonzero entry.
    pub fn rref(&self) -> (usize, Matrix) {
        let mut m = self.clone();
        let mut rank = 0usize;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot = (rank..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            let inv = m.at(rank, col).inv().expect("pivot is nonzero");
            if !m.at(rank, col).is_one() {
                for j in col..m.cols {
                    let v = m.at(rank, j) * &inv;
                    *m.at_mut(rank, j) = v;
                }
            }
            for r in 0..m.rows {
                if r == rank || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in col..m.cols {
                    let t = &factor * m.at(rank, j);
                    *m.at_mut(r, j) -= &t;
                }
            }
            rank += 1;
        }
        (rank, m)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right kernel {v : M v = 0} (not canonicalized).
    pub fn kernel_raw(&self) -> Vec<Vec<CycloNum>> {
        let (rank, r) = self.rref();
        let mut pivot_cols = Vec::with_capacity(rank);
        for row in 0..rank {
            let col = (0..self.cols)
                .find(|&j| !r.at(row, j).is_zero())
                .expect("nonzero row");
            pivot_cols.push(col);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![CycloNum::zero(self.conductor); self.cols];
            v[free] = CycloNum::one(self.conductor);
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -r.at(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse, or None when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = CycloNum::one(self.conductor);
        }
        let (rank, r) = aug.rref();
        if rank < n {
            return None;
        }
        let mut out = Matrix::zero(n, n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = r.at(i, n + j).clone();
            }
        }
        Some(out)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} @ z{}", self.rows, self.cols, self.conductor)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|e| format!("{e}")).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
