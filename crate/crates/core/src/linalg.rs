//! Dense matrices over a prime field: row reduction, rank, nullspaces.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::{FieldElement, PrimeField};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>, // row-major
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<Vec<FieldElement>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, j)];
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_rows(
            self.field,
            self.cols,
            rows.iter().map(|&i| self.row(i).to_vec()).collect(),
        )
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Matrix::from_rows(self.field, self.cols + other.cols, rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and the pivot columns, scanning columns left
    /// to right (partial pivoting only).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot is non-zero");
            for j in c..m.cols {
                m[(r, j)] *= inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(r, j)];
                    m[(i, j)] -= factor * v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank by Gaussian elimination with full (row and column) pivoting.
    ///
    /// Kept separate from [`Matrix::rref`] so the two can cross-check each other.
    pub fn rank_full_pivot(&self) -> usize {
        let mut m = self.clone();
        let mut col_order: Vec<usize> = (0..m.cols).collect();
        let mut rank = 0;
        while rank < m.rows.min(m.cols) {
            let mut found = None;
            'search: for i in rank..m.rows {
                for jj in rank..m.cols {
                    if !m[(i, col_order[jj])].is_zero() {
                        found = Some((i, jj));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = found else { break };
            m.swap_rows(rank, pi);
            col_order.swap(rank, pj);
            let c = col_order[rank];
            let inv = m[(rank, c)].inv().expect("pivot is non-zero");
            for i in rank + 1..m.rows {
                let factor = m[(i, c)] * inv;
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m[(rank, j)];
                    m[(i, j)] -= factor * v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right nullspace `{v : M v = 0}`, one vector per row.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis[(k, fc)] = self.field.one();
            for (pi, &pc) in pivots.iter().enumerate() {
                basis[(k, pc)] = -r[(pi, fc)];
            }
        }
        basis
    }

    /// Indices of a maximal independent subset of rows, greedily left to right.
    pub fn independent_rows(&self) -> Vec<usize> {
        self.transpose().rref().1
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Precomputed solver for `A c = r` when `A` has full column rank.
///
/// Row-reducing `[A | I]` yields an invertible `E` with `E A = [I; 0]`; the top
/// rows of `E` form a left inverse and the bottom rows a parity check.
#[derive(Debug, Clone)]
pub struct LeftInverse {
    left: Matrix,
    parity: Matrix,
}

impl LeftInverse {
    /// `None` when `A` does not have full column rank.
    pub fn new(a: &Matrix) -> Option<Self> {
        let field = a.field();
        let n = a.rows();
        let k = a.cols();
        let aug = a.hstack(&Matrix::identity(field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < k || pivots[..k] != (0..k).collect::<Vec<_>>()[..] {
            return None;
        }
        let e_cols: Vec<usize> = (k..k + n).collect();
        let e = r.select_columns(&e_cols);
        let left = e.select_rows(&(0..k).collect::<Vec<_>>());
        let parity = e.select_rows(&(k..n).collect::<Vec<_>>());
        Some(Self { left, parity })
    }

    /// Solves `A c = r`; `None` if `r` is outside the column space of `A`.
    pub fn solve(&self, r: &[FieldElement]) -> Option<Vec<FieldElement>> {
        if self.parity.rows() > 0 && !self.parity.mul_vec(r).iter().all(|v| v.is_zero()) {
            return None;
        }
        Some(self.left.mul_vec(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn m(field: PrimeField, rows: &[&[u64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.elem(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let f = f7();
        let a = m(f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rank_full_pivot(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.rows(), 1);
        assert!(a.mul(&ns.transpose()).is_zero());
        assert_eq!(Matrix::identity(f, 4).rank(), 4);
        assert_eq!(Matrix::zeros(f, 3, 2).rank(), 0);
    }

    #[test]
    fn left_inverse_solves_overdetermined() {
        let f = f7();
        let a = m(f, &[&[1, 0], &[1, 1], &[1, 2]]);
        let solver = LeftInverse::new(&a).unwrap();
        let c = vec![f.elem(3), f.elem(5)];
        let r = a.mul_vec(&c);
        assert_eq!(solver.solve(&r), Some(c));
        let mut bad = r.clone();
        bad[0] += f.one();
        assert_eq!(solver.solve(&bad), None);
        let deficient = m(f, &[&[1, 2], &[2, 4]]);
        assert!(LeftInverse::new(&deficient).is_none());
    }

    proptest! {
        #[test]
        fn rank_routes_agree(rows in 1usize..6, cols in 1usize..6, data in proptest::collection::vec(0u64..5, 36)) {
            let f = PrimeField::new(5).unwrap();
            let a = Matrix::from_rows(f, cols, (0..rows).map(|i| (0..cols).map(|j| f.elem(data[i * 6 + j])).collect()).collect());
            prop_assert_eq!(a.rank(), a.rank_full_pivot());
            prop_assert_eq!(a.rank(), a.transpose().rank());
            let ns = a.nullspace();
            prop_assert_eq!(ns.rows(), cols - a.rank());
            if ns.rows() > 0 {
                prop_assert!(a.mul(&ns.transpose()).is_zero());
            }
        }
    }
}
