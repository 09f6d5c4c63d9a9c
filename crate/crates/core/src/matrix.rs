//! Dense matrices over a [`FieldContext`] with exact Gaussian elimination.
//!
//! Pivoting always takes the first nonzero entry in the column, so every
//! routine here is deterministic.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>, cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "matrix row length",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElement] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Rows `row_idx` and columns `col_idx`, in the given order.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        let mut s = Matrix::zeros(row_idx.len(), col_idx.len());
        for (a, &i) in row_idx.iter().enumerate() {
            for (b, &j) in col_idx.iter().enumerate() {
                s[(a, b)] = self[(i, j)];
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &Matrix, ctx: &FieldContext) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                what: "matrix product inner dimension",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = ctx.add(out[(i, j)], ctx.mul(a, other[(l, j)]));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `y * self`.
    pub fn left_mul(&self, y: &[FieldElement], ctx: &FieldContext) -> Result<Vec<FieldElement>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch {
                what: "row vector length",
                expected: self.rows,
                found: y.len(),
            });
        }
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = ctx.add(*o, ctx.mul(yi, a));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref_in_place(&mut self, ctx: &FieldContext) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = ctx.inv(self[(r, c)]).expect("pivot is nonzero");
            for x in self.row_mut(r) {
                *x = ctx.mul(*x, inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let sub = ctx.mul(factor, self[(r, j)]);
                    self[(i, j)] = ctx.sub(self[(i, j)], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, ctx: &FieldContext) -> usize {
        self.clone().rref_in_place(ctx).len()
    }

    /// Exact determinant by forward elimination.
    pub fn determinant(&self, ctx: &FieldContext) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                what: "determinant of non-square matrix",
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = FieldElement::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return Ok(FieldElement::ZERO);
            };
            if pr != c {
                a.swap_rows(c, pr);
                det = ctx.neg(det);
            }
            let pivot = a[(c, c)];
            det = ctx.mul(det, pivot);
            let inv = ctx.inv(pivot)?;
            for i in c + 1..n {
                let factor = ctx.mul(a[(i, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let sub = ctx.mul(factor, a[(c, j)]);
                    a[(i, j)] = ctx.sub(a[(i, j)], sub);
                }
            }
        }
        Ok(det)
    }

    /// A nonzero `x` with `self * x = 0`, if the columns are dependent.
    pub fn right_nullspace_vector(&self, ctx: &FieldContext) -> Option<Vec<FieldElement>> {
        let mut a = self.clone();
        let pivots = a.rref_in_place(ctx);
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut x = vec![FieldElement::ZERO; self.cols];
        x[free] = FieldElement::ONE;
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = ctx.neg(a[(r, free)]);
        }
        Some(x)
    }

    /// A nonzero row vector `y` with `y * self = 0`, if the rows are dependent.
    pub fn left_nullspace_vector(&self, ctx: &FieldContext) -> Option<Vec<FieldElement>> {
        self.transpose().right_nullspace_vector(ctx)
    }

    /// Some `y` with `y * self = b`, or `None` when `b` is outside the row space.
    pub fn solve_left(&self, b: &[FieldElement], ctx: &FieldContext) -> Result<Option<Vec<FieldElement>>> {
        if b.len() != self.cols {
            return Err(Error::DimensionMismatch {
                what: "right-hand side length",
                expected: self.cols,
                found: b.len(),
            });
        }
        // [self^T | b^T] in row echelon form
        let mut aug = Matrix::zeros(self.cols, self.rows + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(j, i)] = self[(i, j)];
            }
        }
        for (j, &bj) in b.iter().enumerate() {
            aug[(j, self.rows)] = bj;
        }
        let pivots = aug.rref_in_place(ctx);
        if pivots.last() == Some(&self.rows) {
            return Ok(None);
        }
        let mut y = vec![FieldElement::ZERO; self.rows];
        for (r, &pc) in pivots.iter().enumerate() {
            y[pc] = aug[(r, self.rows)];
        }
        Ok(Some(y))
    }

    pub fn inverse(&self, ctx: &FieldContext) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug[(i, n + i)] = FieldElement::ONE;
        }
        let pivots = aug.rref_in_place(ctx);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(aug.select(&rows, &cols))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}
