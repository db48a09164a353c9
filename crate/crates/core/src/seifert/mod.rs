//! Seifert-matrix linear algebra: Alexander polynomials of knots and of
//! almost classical knots, the two-variable polynomial of a boundary link
//! with one fibered component, and the identity connecting them.

mod det;
mod io;
mod matrix;

pub use det::{det_bareiss, det_cofactor, det_exact, det_int, inverse_unimodular};
pub use io::{parse_block, parse_matrix};
pub use matrix::{IntMatrix, Matrix};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::poly::{specialize, LaurentPoly1, LaurentPoly2, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix dimension {0} is odd")]
    OddDimension(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has determinant {det}, not invertible over the integers")]
    NotUnimodular { det: String },
    #[error("malformed matrix input: {0}")]
    Parse(String),
}

impl SeifertError {
    pub fn name(&self) -> &'static str {
        match self {
            SeifertError::NonSquare { .. } => "NonSquare",
            SeifertError::OddDimension(_) => "OddDimension",
            SeifertError::DimensionMismatch(_) => "DimensionMismatch",
            SeifertError::NotUnimodular { .. } => "NotUnimodular",
            SeifertError::Parse(_) => "SyntaxError",
        }
    }
}

fn require_even_square(m: &IntMatrix) -> Result<usize, SeifertError> {
    if !m.is_square() {
        return Err(SeifertError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.rows().is_multiple_of(2) {
        return Err(SeifertError::OddDimension(m.rows()));
    }
    Ok(m.rows())
}

/// Seifert matrix of two disjoint surfaces, `[[A_J, B], [Bᵀ, A_K]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSeifert {
    a_j: IntMatrix,
    a_k: IntMatrix,
    b: IntMatrix,
}

impl BlockSeifert {
    /// `b` must be `dim(a_j) x dim(a_k)`; an empty `b` is accepted when either
    /// surface is a disc.
    pub fn new(a_j: IntMatrix, a_k: IntMatrix, b: IntMatrix) -> Result<Self, SeifertError> {
        let nj = require_even_square(&a_j)?;
        let nk = require_even_square(&a_k)?;
        let b = if b.rows() * b.cols() == 0 && nj * nk == 0 {
            IntMatrix::zeros(nj, nk)
        } else {
            b
        };
        if (b.rows(), b.cols()) != (nj, nk) {
            return Err(SeifertError::DimensionMismatch(format!(
                "B is {}x{}, expected {nj}x{nk}",
                b.rows(),
                b.cols()
            )));
        }
        Ok(Self { a_j, a_k, b })
    }

    pub fn a_j(&self) -> &IntMatrix {
        &self.a_j
    }

    pub fn a_k(&self) -> &IntMatrix {
        &self.a_k
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    /// Genus of the first surface.
    pub fn genus_j(&self) -> usize {
        self.a_j.rows() / 2
    }

    pub fn genus_k(&self) -> usize {
        self.a_k.rows() / 2
    }

    /// The full matrix `A`.
    pub fn assembled(&self) -> IntMatrix {
        IntMatrix::block(&self.a_j, &self.b, &self.b.transpose(), &self.a_k).expect("shapes validated at construction")
    }
}

/// The push-off matrices `(V⁻, V⁺)` of a surface bounded by an almost classical knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcSeifertPair {
    v_minus: IntMatrix,
    v_plus: IntMatrix,
}

impl AcSeifertPair {
    pub fn new(v_minus: IntMatrix, v_plus: IntMatrix) -> Result<Self, SeifertError> {
        let n = require_even_square(&v_minus)?;
        let m = require_even_square(&v_plus)?;
        if n != m {
            return Err(SeifertError::DimensionMismatch(format!(
                "V- is {n}x{n} but V+ is {m}x{m}"
            )));
        }
        Ok(Self { v_minus, v_plus })
    }

    pub fn v_minus(&self) -> &IntMatrix {
        &self.v_minus
    }

    pub fn v_plus(&self) -> &IntMatrix {
        &self.v_plus
    }
}

/// `det(tV − Vᵀ)`.
pub fn alexander_classical(v: &IntMatrix) -> Result<LaurentPoly1, SeifertError> {
    let n = require_even_square(v)?;
    let t = LaurentPoly1::var(0);
    let m = Matrix::from_fn(n, n, |i, j| {
        &t.scaled(&BigInt::from(*v.get(i, j))) - &LaurentPoly1::constant(*v.get(j, i))
    });
    det_exact(&m)
}

/// `det(tV⁻ − V⁺)`.
pub fn alexander_ac(pair: &AcSeifertPair) -> Result<LaurentPoly1, SeifertError> {
    let n = pair.v_minus.rows();
    let t = LaurentPoly1::var(0);
    let m = Matrix::from_fn(n, n, |i, j| {
        &t.scaled(&BigInt::from(*pair.v_minus.get(i, j))) - &LaurentPoly1::constant(*pair.v_plus.get(i, j))
    });
    det_exact(&m)
}

/// `det(AT − Aᵀ)` with `T = diag(t1, …, t1, t2, …, t2)`.
pub fn mvap(bs: &BlockSeifert) -> Result<LaurentPoly2, SeifertError> {
    let a = bs.assembled();
    let split = bs.a_j.rows();
    let n = a.rows();
    let vars = [LaurentPoly2::var(0), LaurentPoly2::var(1)];
    let m = Matrix::from_fn(n, n, |i, j| {
        let tj = &vars[usize::from(j >= split)];
        &tj.scaled(&BigInt::from(*a.get(i, j))) - &LaurentPoly2::constant(*a.get(j, i))
    });
    det_exact(&m)
}

/// `V⁻ = A_K − BᵀA_J⁻¹B` and `V⁺ = A_Kᵀ − BᵀA_J⁻¹B`.
pub fn vpm_from_block(bs: &BlockSeifert) -> Result<AcSeifertPair, SeifertError> {
    let inv = inverse_unimodular(&bs.a_j)?;
    let correction = &(&bs.b.transpose() * &inv) * &bs.b;
    AcSeifertPair::new(&bs.a_k - &correction, &bs.a_k.transpose() - &correction)
}

/// Linking number of two curves on the second surface measured in the
/// complement of the first: `lk − l_yᵀ A_J⁻¹ l_x`.
pub fn lk_sigma(lk: i64, l_y: &[i64], l_x: &[i64], a_j: &IntMatrix) -> Result<i64, SeifertError> {
    if l_y.len() != a_j.rows() || l_x.len() != a_j.cols() {
        return Err(SeifertError::DimensionMismatch(format!(
            "vectors of length {} and {} against a {}x{} matrix",
            l_y.len(),
            l_x.len(),
            a_j.rows(),
            a_j.cols()
        )));
    }
    let inv = inverse_unimodular(a_j)?;
    Ok(lk - inv.bilinear(l_y, l_x)?)
}

/// Both sides of `det(tV⁻ − V⁺) = det(A_J)·t^{2g_K}·∇(0, t⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcBridgeReport {
    pub lhs: LaurentPoly1,
    pub rhs: LaurentPoly1,
    /// `det(A_J)`.
    pub sign: i8,
    pub pass: bool,
}

/// Compute the AC Alexander polynomial from the block data in two ways and
/// compare them exactly.
pub fn ac_bridge_check(bs: &BlockSeifert) -> Result<AcBridgeReport, SeifertError> {
    let det_j = det_int(&bs.a_j)?;
    if det_j.abs() != BigInt::one() {
        return Err(SeifertError::NotUnimodular { det: det_j.to_string() });
    }
    let sign: i8 = if det_j.is_positive() { 1 } else { -1 };
    let lhs = alexander_ac(&vpm_from_block(bs)?)?;
    let nabla = mvap(bs)?;
    let at_zero = specialize(&nabla, Substitution::Int(0), Substitution::TInv)
        .expect("first variable appears with nonnegative powers only");
    let shift = LaurentPoly1::monomial(sign, [2 * bs.genus_k() as i64]);
    let rhs = &shift * &at_zero;
    let pass = lhs == rhs;
    Ok(AcBridgeReport { lhs, rhs, sign, pass })
}

/// Block diagonal of `g` copies of `[[0, 1], [−1, 0]]`.
pub fn intersection_form(g: usize) -> IntMatrix {
    block_diagonal(g, [[0, 1], [-1, 0]])
}

/// Seifert matrix of a connected sum of `g` trefoils: `g` copies of
/// `[[−1, 1], [0, −1]]` on the diagonal.
pub fn trefoil_sum_seifert(g: usize) -> IntMatrix {
    block_diagonal(g, [[-1, 1], [0, -1]])
}

fn block_diagonal(g: usize, block: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_fn(
        2 * g,
        2 * g,
        |i, j| if i / 2 == j / 2 { block[i % 2][j % 2] } else { 0 },
    )
}
