//! Dense matrices over a coefficient ring, with pivoted elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::padic::Coeff;

#[derive(Clone, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Matrix<C> {
    pub fn from_rows(rows: Vec<Vec<C>>) -> Matrix<C> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C) -> Matrix<C> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize, proto: &C) -> Matrix<C> {
        Matrix::from_fn(n, n, |i, j| if i == j { proto.one_like() } else { proto.zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<C> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix<C> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    pub fn mul(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = self.get(i, 0).zero_like();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.get(i, 0).zero_like();
                for (k, vk) in v.iter().enumerate() {
                    acc = acc.add(&self.get(i, k).mul(vk));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix<C> {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.get(0, 0));
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

    /// Solves `self * X = rhs` for a square invertible `self`.
    pub fn solve(&self, rhs: &Matrix<C>) -> Result<Matrix<C>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.to_rows();
        let mut b = rhs.to_rows();
        for col in 0..n {
            let pivot = (col..n)
                .min_by_key(|&r| a[r][col].pivot_key())
                .filter(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let inv = a[col][col].inv()?;
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].mul(&inv);
                for k in col..n {
                    let t = factor.mul(&a[col][k]);
                    a[r][k] = a[r][k].sub(&t);
                }
                for k in 0..m {
                    let t = factor.mul(&b[col][k]);
                    b[r][k] = b[r][k].sub(&t);
                }
            }
        }
        for r in 0..n {
            let inv = a[r][r].inv()?;
            for k in 0..m {
                b[r][k] = b[r][k].mul(&inv);
            }
        }
        Ok(Matrix::from_rows(b))
    }

    pub fn solve_vec(&self, rhs: &[C]) -> Result<Vec<C>> {
        let b = Matrix::from_fn(rhs.len(), 1, |i, _| rhs[i].clone());
        Ok(self.solve(&b)?.column(0))
    }

    pub fn inverse(&self) -> Result<Matrix<C>> {
        self.solve(&Matrix::identity(self.rows, self.get(0, 0)))
    }

    pub fn determinant(&self) -> C {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = self.get(0, 0).one_like();
        for col in 0..n {
            let pivot = (col..n).min_by_key(|&r| a[r][col].pivot_key()).unwrap();
            if a[pivot][col].is_zero() {
                return a[pivot][col].clone();
            }
            if pivot != col {
                a.swap(col, pivot);
                det = det.neg();
            }
            det = det.mul(&a[col][col]);
            let inv = a[col][col].inv().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = a[r][col].mul(&inv);
                for k in col..n {
                    let t = factor.mul(&a[col][k]);
                    a[r][k] = a[r][k].sub(&t);
                }
            }
        }
        det
    }

    /// Coefficients `c_0..c_n` of `det(T*I - self)`, lowest degree first.
    /// Uses the Faddeev–LeVerrier recursion, which divides by `1..n`.
    pub fn charpoly(&self) -> Result<Vec<C>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let proto = self.get(0, 0);
        let mut coeffs = vec![proto.zero_like(); n + 1];
        coeffs[n] = proto.one_like();
        let mut mk = Matrix::from_fn(n, n, |_, _| proto.zero_like());
        let id = Matrix::identity(n, proto);
        for k in 1..=n {
            let shifted = mk.add(&id.map(|c| c.mul(&coeffs[n - k + 1])));
            mk = self.mul(&shifted);
            let mut tr = proto.zero_like();
            for i in 0..n {
                tr = tr.add(mk.get(i, i));
            }
            coeffs[n - k] = tr.neg().div_int(k as i64)?;
        }
        Ok(coeffs)
    }
}

impl<C: fmt::Display> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}
