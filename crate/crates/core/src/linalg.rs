//! Exact dense linear algebra over a [`Scalar`] field.

use crate::scalar::{FieldKind, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub field: FieldKind,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zero(field: &FieldKind, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &FieldKind, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one(field);
        }
        m
    }

    pub fn from_rows(field: &FieldKind, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Matrix { field: field.clone(), rows: r, cols: c, data: rows.concat() }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = self.at(i, k).mul(other.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(&self.field);
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    /// Gauss-Jordan to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.at(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, p * self.cols + j);
                }
            }
            let inv = self.at(row, col).inv();
            for j in col..self.cols {
                *self.at_mut(row, j) = self.at(row, j).mul(&inv);
            }
            for i in 0..self.rows {
                if i == row || self.at(i, col).is_zero() {
                    continue;
                }
                let factor = self.at(i, col).clone();
                for j in col..self.cols {
                    let delta = factor.mul(self.at(row, j));
                    *self.at_mut(i, j) = self.at(i, j).sub(&delta);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Solve self * x = b; None when inconsistent. Free variables are set
    /// to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(&self.field); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(&self.field); self.cols];
                v[fc] = Scalar::one(&self.field);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.at(row, fc).neg();
                }
                v
            })
            .collect()
    }
}
