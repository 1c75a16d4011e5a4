use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::abelian::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A skew-symmetric unimodular pairing on a free abelian group of rank `2g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingForm {
    matrix: IntMatrix,
    pub basis: String,
}

impl PairingForm {
    pub fn new(matrix: IntMatrix, basis: impl Into<String>) -> Result<Self> {
        if !matrix.is_square() || !matrix.rows().is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "pairing matrix must be square of even size, got {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.transpose() != matrix.neg() {
            return Err(Error::Invalid("pairing matrix is not skew-symmetric".into()));
        }
        if !matrix.det()?.abs().is_one() {
            return Err(Error::Invalid("pairing matrix is degenerate".into()));
        }
        Ok(PairingForm {
            matrix,
            basis: basis.into(),
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn genus(&self) -> usize {
        self.matrix.rows() / 2
    }

    /// `I(x, y) = xᵀ·J·y`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<BigInt> {
        let n = self.matrix.rows();
        if x.len() != n || y.len() != n {
            return Err(Error::Invalid(format!("vectors must have length {n}")));
        }
        let mut acc = BigInt::from(0);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += &self.matrix[(i, j)] * *xi * *yj;
            }
        }
        Ok(acc)
    }
}

/// The intersection form in the basis `a₁,b₁,…,a_g,b_g` with `I(aᵢ,bᵢ) = 1`.
pub fn standard_symplectic(genus: usize) -> PairingForm {
    let n = 2 * genus;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..genus {
        m[(2 * i, 2 * i + 1)] = BigInt::one();
        m[(2 * i + 1, 2 * i)] = -BigInt::one();
    }
    PairingForm {
        matrix: m,
        basis: format!("a1,b1,...,a{genus},b{genus}"),
    }
}

/// Whether `Mᵀ·J_dst·M = J_src`.
pub fn preserves_pairing(map: &IntMatrix, src: &PairingForm, dst: &PairingForm) -> Result<bool> {
    let (s, d) = (src.matrix.rows(), dst.matrix.rows());
    if map.rows() != d || map.cols() != s {
        return Err(Error::Invalid(format!(
            "map is {}×{} but the forms need {d}×{s}",
            map.rows(),
            map.cols()
        )));
    }
    let pulled = map.transpose().try_mul(&dst.matrix)?.try_mul(map)?;
    Ok(pulled == src.matrix)
}
