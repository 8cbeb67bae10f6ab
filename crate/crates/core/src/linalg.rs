//! Dense exact linear algebra over ℚ.
//!
//! Elimination runs fraction-free on integer-scaled rows (Bareiss), which keeps
//! intermediate entries bounded by minors of the input; the reduced row-echelon
//! form is only assembled over ℚ at the end.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// The scalar `c` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self[(0, 0)].clone();
        (*self == Self::scalar(self.rows, &c)).then_some(c)
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    /// Fraction-free forward elimination; returns echelon rows and pivot columns.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, bool) {
        let mut a = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut swapped_odd = false;
        let mut k = 0;
        for col in 0..self.cols {
            if k == self.rows {
                break;
            }
            let Some(p) = (k..self.rows).find(|&r| !a[r][col].is_zero()) else { continue };
            if p != k {
                a.swap(p, k);
                swapped_odd = !swapped_odd;
            }
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest.iter_mut() {
                let factor = row[col].clone();
                for j in col + 1..self.cols {
                    let v = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = a[k][col].clone();
            pivots.push(col);
            k += 1;
        }
        a.truncate(k);
        (a, pivots, swapped_odd)
    }

    pub fn rref(&self) -> Rref {
        let (echelon, pivots) = {
            let (e, p, _) = self.bareiss_echelon();
            (e, p)
        };
        let mut m = Matrix::zeros(pivots.len(), self.cols);
        for (i, row) in echelon.iter().enumerate() {
            let lead = Rational::from_integer(row[pivots[i]].clone());
            for j in 0..self.cols {
                m[(i, j)] = Rational::from_integer(row[j].clone()) / &lead;
            }
        }
        for i in (0..pivots.len()).rev() {
            let pc = pivots[i];
            for r in 0..i {
                let f = m[(r, pc)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    let v = &m[(i, j)] * &f;
                    if !v.is_zero() {
                        m[(r, j)] -= v;
                    }
                }
            }
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let scale: BigInt = (0..n)
            .map(|i| self.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
            .product();
        let (e, pivots, odd) = self.bareiss_echelon();
        if pivots.len() < n {
            return Rational::zero();
        }
        let d = Rational::new(e[n - 1][n - 1].clone(), scale);
        if odd {
            -d
        } else {
            d
        }
    }

    /// Basis of the right null space, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rational::zero(); self.cols];
                v[fc] = Rational::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -matrix[(i, fc)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{ z : zᵀ·self = 0 }`.
    pub fn left_kernel(&self) -> Vec<Vec<Rational>> {
        self.transpose().kernel()
    }

    /// A solution of `self·x = b` supported on pivot columns, if the system is consistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn rref_of_rank_two() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix, Matrix::from_rows(vec![
            vec![int(1), int(0), int(1)],
            vec![int(0), int(1), int(1)],
        ]));
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), int(0));
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_rows(vec![vec![frac(1, 2), int(2)], vec![int(3), int(4)]]);
        assert_eq!(m.det(), int(-4));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det(), int(-1));
    }

    #[test]
    fn kernels() {
        let e = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(e.left_kernel(), vec![vec![int(0), int(1)]]);
        let z = Matrix::zeros(2, 2);
        assert_eq!(z.kernel()[0], vec![int(1), int(0)]);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&[int(1), int(2)]), Some(vec![int(1), int(0)]));
        assert_eq!(m.solve(&[int(1), int(3)]), None);
    }
}
