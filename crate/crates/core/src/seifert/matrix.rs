use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::Ring;

use super::SeifertError;

/// Dense row-major matrix over a ring.
///
/// Zero-row or zero-column shapes are allowed; an off-diagonal block between
/// a surface of genus 0 and one of positive genus is `r x 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<i64>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from nested rows; a zero-length outer vector is the empty matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, SeifertError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(SeifertError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build an explicitly shaped matrix from row-major data.
    pub fn with_shape(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, SeifertError> {
        if data.len() != rows * cols {
            return Err(SeifertError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Matrix with row `skip_row` and column `skip_col` removed.
    pub fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != skip_row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != skip_col).collect();
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Assemble `[[a, b], [c, d]]` from blocks with compatible shapes.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, SeifertError> {
        let top = a.rows;
        let left = a.cols;
        if b.rows != top || c.cols != left || d.rows != c.rows || d.cols != b.cols {
            return Err(SeifertError::DimensionMismatch("incompatible block shapes".into()));
        }
        Ok(Self::from_fn(top + c.rows, left + b.cols, |i, j| {
            match (i < top, j < left) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - left).clone(),
                (false, true) => c.get(i - top, j).clone(),
                (false, false) => d.get(i - top, j - left).clone(),
            }
        }))
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, SeifertError> {
        if self.cols != rhs.rows {
            return Err(SeifertError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc.plus(&self.get(i, k).times(rhs.get(k, j))))
        }))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, SeifertError> {
        self.zip_with(rhs, T::plus)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, SeifertError> {
        self.zip_with(rhs, T::minus)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self, SeifertError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(SeifertError::DimensionMismatch(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, SeifertError> {
        if v.len() != self.cols {
            return Err(SeifertError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |acc, k| acc.plus(&self.get(i, k).times(&v[k]))))
            .collect())
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> Result<T, SeifertError> {
        if u.len() != self.rows {
            return Err(SeifertError::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                u.len(),
                self.rows
            )));
        }
        let mv = self.mul_vec(v)?;
        Ok(u.iter().zip(&mv).fold(T::zero(), |acc, (a, b)| acc.plus(&a.times(b))))
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_add(rhs).expect("matrix shapes must agree")
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix shapes must agree")
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("inner dimensions must agree")
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(T::negated)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    /// Text matrix format: `<rows> <cols>` then one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("\n")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_assembly_and_transpose() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let b = IntMatrix::from_rows(vec![vec![5], vec![6]]).unwrap();
        let d = IntMatrix::from_rows(vec![vec![7]]).unwrap();
        let m = IntMatrix::block(&a, &b, &b.transpose(), &d).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1, 2, 5], vec![3, 4, 6], vec![5, 6, 7]]);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn empty_blocks_are_allowed() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::zeros(2, 0);
        let d = IntMatrix::zeros(0, 0);
        let m = IntMatrix::block(&a, &b, &b.transpose(), &d).unwrap();
        assert_eq!(m, a);
    }

    #[test]
    fn products_and_shapes() {
        let a = IntMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!((&a * &a).to_rows(), vec![vec![1, 2], vec![0, 1]]);
        assert!(a.try_mul(&IntMatrix::zeros(3, 1)).is_err());
        assert!(IntMatrix::from_rows(vec![vec![1], vec![1, 2]]).is_err());
        assert_eq!(a.bilinear(&[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(a.to_string(), "2 2\n1 1\n0 1");
    }
}
