//! Dense exact linear algebra over the rationals.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{int, NumDen, PLocalRational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<PLocalRational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of [`Matrix::solve`] when there is no unique solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveFailure {
    Inconsistent { rank: usize },
    Underdetermined { rank: usize },
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![PLocalRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, int(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<PLocalRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: Vec<Vec<PLocalRational>>, rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_u64_rows(rows: &[Vec<u64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v as i64)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &PLocalRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: PLocalRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[PLocalRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<PLocalRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[PLocalRational]) -> Vec<PLocalRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(PLocalRational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column (the canonical RREF basis).
    pub fn kernel(&self) -> Vec<Vec<PLocalRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![PLocalRational::zero(); self.cols];
                v[f] = int(1);
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Unique solution of `self · x = rhs`.
    pub fn solve(&self, rhs: &[PLocalRational]) -> Result<Vec<PLocalRational>, SolveFailure> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, b) in rhs.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b.clone());
        }
        let (r, pivots) = aug.rref();
        let rank = pivots.iter().filter(|&&c| c < self.cols).count();
        if pivots.contains(&self.cols) {
            return Err(SolveFailure::Inconsistent { rank });
        }
        if rank < self.cols {
            return Err(SolveFailure::Underdetermined { rank });
        }
        let mut x = vec![PLocalRational::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Ok(x)
    }

    /// Canonical basis (rows of the RREF) of the span of the given vectors.
    pub fn row_space_basis(vectors: &[Vec<PLocalRational>], dim: usize) -> Vec<Vec<PLocalRational>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_rows(vectors.to_vec());
        assert_eq!(m.cols, dim);
        let (r, pivots) = m.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn to_json(&self, row_labels: Vec<String>, col_labels: Vec<String>) -> MatrixJson {
        MatrixJson {
            rows: row_labels,
            columns: col_labels,
            data: (0..self.rows).map(|i| self.row(i).iter().cloned().map(NumDen).collect()).collect(),
        }
    }
}

/// Row-major export with basis labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub data: Vec<Vec<NumDen>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.data.iter().map(|r| r.iter().map(|v| v.0.clone()).collect()).collect())
    }
}

pub fn is_identity(m: &Matrix) -> bool {
    m.rows == m.cols
        && (0..m.rows)
            .all(|i| (0..m.cols).all(|j| (i == j) == m.get(i, j).is_one() && (i == j || m.get(i, j).is_zero())))
}
