//! Exact dense matrices over a generic ring or field: determinant (Gaussian,
//! fraction-free Bareiss, cofactor), rank and inverse.

use crate::error::Error;
use crate::ring::{ExactDiv, Field, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).add(rhs.at(i, j))
        }))
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).sub(rhs.at(i, j))
        }))
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, Error> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch);
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
            }
            acc
        }))
    }

    pub fn scalar_mul(&self, c: &T) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mul(c))
    }

    pub fn neg(&self) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).neg())
    }

    /// Determinant by cofactor expansion along the first row. Works over any
    /// commutative ring; intended for small sizes.
    pub fn det_cofactor(&self) -> Result<T, Error> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        Ok(self.det_cofactor_inner())
    }

    fn det_cofactor_inner(&self) -> T {
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = T::zero();
        for j in 0..n {
            if self.at(0, j).is_zero() {
                continue;
            }
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                self.at(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = self.at(0, j).mul(&minor.det_cofactor_inner());
            acc = if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }
}

impl<T: ExactDiv> Matrix<T> {
    /// Fraction-free Bareiss determinant for integral-domain entries.
    pub fn det_bareiss(&self) -> Result<T, Error> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                // pivot search
                let mut found = None;
                for i in k + 1..n {
                    if !m.at(i, k).is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    Some(i) => {
                        for j in 0..n {
                            let a = m.at(k, j).clone();
                            let b = m.at(i, j).clone();
                            m.set(k, j, b);
                            m.set(i, j, a);
                        }
                        sign = !sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m
                        .at(k, k)
                        .mul(m.at(i, j))
                        .sub(&m.at(i, k).mul(m.at(k, j)));
                    let v = v
                        .exact_div(&prev)
                        .expect("Bareiss division must be exact");
                    m.set(i, j, v);
                }
                m.set(i, k, T::zero());
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if sign { d.neg() } else { d })
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by Gaussian elimination with exact field arithmetic.
    pub fn det(&self) -> Result<T, Error> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m.at(i, k).is_zero());
            let p = match pivot {
                Some(p) => p,
                None => return Ok(T::zero()),
            };
            if p != k {
                for j in 0..n {
                    let a = m.at(k, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(k, j, b);
                    m.set(p, j, a);
                }
                det = det.neg();
            }
            let pv = m.at(k, k).clone();
            det = det.mul(&pv);
            let pv_inv = pv.inv().unwrap();
            for i in k + 1..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k).mul(&pv_inv);
                for j in k..n {
                    let v = m.at(i, j).sub(&factor.mul(m.at(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&i| !m.at(i, col).is_zero());
            let p = match pivot {
                Some(p) => p,
                None => continue,
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(row, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.at(row, col).inv().unwrap();
            for i in row + 1..m.rows {
                if m.at(i, col).is_zero() {
                    continue;
                }
                let factor = m.at(i, col).mul(&inv);
                for j in col..m.cols {
                    let v = m.at(i, j).sub(&factor.mul(m.at(row, j)));
                    m.set(i, j, v);
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// Inverse by Gauss-Jordan; `Err(SingularMatrix)` when not invertible.
    pub fn inverse(&self) -> Result<Matrix<T>, Error> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::<T>::identity(n);
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !m.at(i, k).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if p != k {
                for j in 0..n {
                    let a = m.at(k, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(k, j, b);
                    m.set(p, j, a);
                    let a = inv.at(k, j).clone();
                    let b = inv.at(p, j).clone();
                    inv.set(k, j, b);
                    inv.set(p, j, a);
                }
            }
            let piv_inv = m.at(k, k).inv().unwrap();
            for j in 0..n {
                let v = m.at(k, j).mul(&piv_inv);
                m.set(k, j, v);
                let v = inv.at(k, j).mul(&piv_inv);
                inv.set(k, j, v);
            }
            for i in 0..n {
                if i == k || m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k).clone();
                for j in 0..n {
                    let v = m.at(i, j).sub(&factor.mul(m.at(k, j)));
                    m.set(i, j, v);
                    let v = inv.at(i, j).sub(&factor.mul(inv.at(k, j)));
                    inv.set(i, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let p = match (row..m.rows).find(|&i| !m.at(i, col).is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(row, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.at(row, col).inv().unwrap();
            for j in 0..m.cols {
                let v = m.at(row, j).mul(&inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.at(i, col).is_zero() {
                    continue;
                }
                let factor = m.at(i, col).clone();
                for j in 0..m.cols {
                    let v = m.at(i, j).sub(&factor.mul(m.at(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); m.cols];
            v[free] = T::one();
            for &(r, c) in &pivots {
                v[c] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b` for a single right-hand side; `None` when the
    /// system is inconsistent (least-structure exact solver for square or
    /// overdetermined systems).
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut m = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let p = match (row..m.rows).find(|&i| !m.at(i, col).is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(row, j).clone();
                    let b2 = m.at(p, j).clone();
                    m.set(row, j, b2);
                    m.set(p, j, a);
                }
            }
            let inv = m.at(row, col).inv().unwrap();
            for j in 0..m.cols {
                let v = m.at(row, j).mul(&inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.at(i, col).is_zero() {
                    continue;
                }
                let factor = m.at(i, col).clone();
                for j in 0..m.cols {
                    let v = m.at(i, j).sub(&factor.mul(m.at(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        // inconsistency: a zero row with nonzero rhs
        for i in row..m.rows {
            if !m.at(i, self.cols).is_zero() {
                return None;
            }
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, c) in pivots {
            x[c] = m.at(r, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn two_by_two() {
        let m = Matrix::new(2, 2, vec![g(1), g(2), g(3), g(4)]);
        assert_eq!(m.det().unwrap(), g(-2));
        assert_eq!(m.det_cofactor().unwrap(), g(-2));
    }

    #[test]
    fn empty_det_is_one() {
        let m: Matrix<GaussianRational> = Matrix::zero(0, 0);
        assert_eq!(m.det().unwrap(), g(1));
        assert_eq!(m.det_cofactor().unwrap(), g(1));
    }

    #[test]
    fn non_square_rejected() {
        let m: Matrix<GaussianRational> = Matrix::zero(2, 3);
        assert!(m.det().is_err());
    }

    #[test]
    fn rank_cases() {
        let ones = Matrix::from_fn(3, 3, |_, _| g(1));
        assert_eq!(ones.rank(), 1);
        let id: Matrix<GaussianRational> = Matrix::identity(4);
        assert_eq!(id.rank(), 4);
        let m = Matrix::new(2, 2, vec![g(1), g(1), g(1), g(1)]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::new(3, 3, vec![g(2), g(1), g(0), g(1), g(3), g(1), g(0), g(1), g(2)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn bareiss_matches_field_det() {
        use crate::multipoly::{MultiPoly, Var};
        let x = MultiPoly::var(Var::X);
        let u = MultiPoly::var(Var::U);
        let m = Matrix::new(
            2,
            2,
            vec![
                x.clone(),
                u.clone(),
                x.mul(&x),
                u.add(&MultiPoly::one()),
            ],
        );
        let d = m.det_bareiss().unwrap();
        let expect = x.mul(&u.add(&MultiPoly::one())).sub(&u.mul(&x.mul(&x)));
        assert_eq!(d, expect);
    }
}
