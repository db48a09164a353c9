use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::poly::Ring;

use super::{IntMatrix, Matrix, SeifertError};

/// Dimensions up to this size use Laplace expansion instead of elimination.
const COFACTOR_LIMIT: usize = 4;

fn require_square<T: Clone>(m: &Matrix<T>) -> Result<(), SeifertError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(SeifertError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Exact determinant; the empty matrix has determinant 1.
pub fn det_exact<T: Ring>(m: &Matrix<T>) -> Result<T, SeifertError> {
    require_square(m)?;
    if m.rows() <= COFACTOR_LIMIT {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

/// Laplace expansion along the first row.
pub fn det_cofactor<T: Ring>(m: &Matrix<T>) -> Result<T, SeifertError> {
    require_square(m)?;
    Ok(cofactor_rec(m))
}

fn cofactor_rec<T: Ring>(m: &Matrix<T>) -> T {
    match m.rows() {
        0 => T::one(),
        1 => m.get(0, 0).clone(),
        2 => m.get(0, 0).times(m.get(1, 1)).minus(&m.get(0, 1).times(m.get(1, 0))),
        n => (0..n).fold(T::zero(), |acc, j| {
            let a = m.get(0, j);
            if a.is_zero() {
                return acc;
            }
            let term = a.times(&cofactor_rec(&m.minor(0, j)));
            if j % 2 == 0 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            }
        }),
    }
}

/// Fraction-free Gaussian elimination with exact division by the previous pivot.
pub fn det_bareiss<T: Ring>(m: &Matrix<T>) -> Result<T, SeifertError> {
    require_square(m)?;
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j).times(&pivot).minus(&a.get(i, k).times(a.get(k, j)));
                let q = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly by the previous pivot");
                a.set(i, j, q);
            }
            a.set(i, k, T::zero());
        }
        prev = pivot;
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if negate { d.negated() } else { d })
}

pub fn det_int(m: &IntMatrix) -> Result<BigInt, SeifertError> {
    det_exact(&m.map(|&x| BigInt::from(x)))
}

/// Integer inverse of a matrix with determinant ±1, via the adjugate.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix, SeifertError> {
    require_square(m)?;
    let det = det_int(m)?;
    let unit: i64 = if det == BigInt::from(1) {
        1
    } else if det == BigInt::from(-1) {
        -1
    } else {
        return Err(SeifertError::NotUnimodular { det: det.to_string() });
    };
    let n = m.rows();
    let big = m.map(|&x| BigInt::from(x));
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            // inverse[i][j] = (-1)^(i+j) det(minor(j, i)) / det
            let c = det_exact(&big.minor(j, i))?;
            let c = if (i + j) % 2 == 0 { c } else { -c };
            let v = (c * BigInt::from(unit))
                .to_i64()
                .ok_or_else(|| SeifertError::DimensionMismatch("inverse entry exceeds 64 bits".into()))?;
            out.set(i, j, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPoly1;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly1 {
        s.parse().unwrap()
    }

    #[test]
    fn empty_matrix_has_unit_determinant() {
        let m: Matrix<LaurentPoly1> = Matrix::zeros(0, 0);
        assert_eq!(det_exact(&m).unwrap(), LaurentPoly1::one());
        assert_eq!(det_bareiss(&m).unwrap(), LaurentPoly1::one());
    }

    #[test]
    fn two_by_two_polynomial() {
        let m = Matrix::from_rows(vec![vec![p("t"), p("1")], vec![p("1"), p("t")]]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), p("t^2 - 1"));
        assert_eq!(det_bareiss(&m).unwrap(), p("t^2 - 1"));
    }

    #[test]
    fn non_square_rejected() {
        let m = IntMatrix::zeros(2, 3);
        assert_eq!(det_exact(&m), Err(SeifertError::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn bareiss_needs_row_swap() {
        let m = IntMatrix::from_rows(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
        assert_eq!(det_bareiss(&m).unwrap(), -2);
    }

    #[test]
    fn polynomial_bareiss_matches_cofactor() {
        let entries = [
            "t - 1", "2", "t^-1", "0", "3*t", "1 + t", "-1", "t^2", "t", "1", "-t", "2 - t", "1", "0", "t^-2", "5",
        ];
        let m = Matrix::from_fn(4, 4, |i, j| p(entries[4 * i + j]));
        assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
    }

    #[test]
    fn unimodular_inverse() {
        let h = IntMatrix::from_rows(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        let inv = inverse_unimodular(&h).unwrap();
        assert_eq!(inv.to_rows(), vec![vec![-1, -1], vec![0, -1]]);
        let two = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            inverse_unimodular(&two),
            Err(SeifertError::NotUnimodular { .. })
        ));
        assert_eq!(
            inverse_unimodular(&IntMatrix::zeros(0, 0)).unwrap(),
            IntMatrix::zeros(0, 0)
        );
    }

    fn int_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |d| IntMatrix::with_shape(n, n, d).unwrap())
    }

    proptest! {
        #[test]
        fn bareiss_equals_cofactor_up_to_six(m in (0usize..=6).prop_flat_map(int_matrix)) {
            prop_assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
        }

        #[test]
        fn determinant_is_multiplicative(a in int_matrix(4), b in int_matrix(4)) {
            let ab = det_int(&(&a * &b)).unwrap();
            prop_assert_eq!(ab, det_int(&a).unwrap() * det_int(&b).unwrap());
        }
    }
}
