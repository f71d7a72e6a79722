use nalgebra::FullPivLU;
use num_complex::Complex64;

use super::poly::check_arity;
use crate::error::{NcError, Result};
use crate::linalg::{block_diag, max_hermitian_eigenvalue, op_norm, CMatrix};

/// A point `X = (X_1, …, X_d)` of `M_n^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple {
    n: usize,
    matrices: Vec<CMatrix>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<CMatrix>) -> Result<Self> {
        check_arity(matrices.len())?;
        let n = matrices[0].nrows();
        if n == 0 {
            return Err(NcError::Shape("matrix tuple level must be positive".into()));
        }
        for (j, m) in matrices.iter().enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(NcError::Shape(format!(
                    "matrix {j} has shape {}x{}, expected {n}x{n}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(Self { n, matrices })
    }

    pub fn zeros(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![CMatrix::zeros(n, n); d])
    }

    /// Level-one tuple (a point of the commutative ball `C^d`).
    pub fn scalar(values: &[Complex64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| CMatrix::from_element(1, 1, v))
                .collect(),
        )
    }

    /// `(b_1 I_n, …, b_d I_n)`.
    pub fn scalar_at_level(values: &[Complex64], n: usize) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| CMatrix::identity(n, n) * v)
                .collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.matrices.len()
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn get(&self, j: usize) -> &CMatrix {
        &self.matrices[j]
    }

    pub fn into_matrices(self) -> Vec<CMatrix> {
        self.matrices
    }

    /// `Σ_j X_j X_j*`.
    pub fn row_gram(&self) -> CMatrix {
        self.matrices
            .iter()
            .fold(CMatrix::zeros(self.n, self.n), |acc, x| acc + x * x.adjoint())
    }

    /// Row operator norm `‖Σ_j X_j X_j*‖^{1/2}`.
    pub fn row_norm(&self) -> f64 {
        max_hermitian_eigenvalue(&self.row_gram()).max(0.0).sqrt()
    }

    pub fn in_ball(&self) -> bool {
        self.row_norm() < 1.0
    }

    /// The `n × dn` block row `(X_1 ⋯ X_d)`.
    pub fn block_row(&self) -> CMatrix {
        let d = self.arity();
        let mut row = CMatrix::zeros(self.n, self.n * d);
        for (j, x) in self.matrices.iter().enumerate() {
            row.view_mut((0, j * self.n), (self.n, self.n)).copy_from(x);
        }
        row
    }

    pub fn from_block_row(row: &CMatrix, d: usize) -> Result<Self> {
        let n = row.nrows();
        if row.ncols() != n * d {
            return Err(NcError::Shape(format!(
                "block row has {} columns, expected {}",
                row.ncols(),
                n * d
            )));
        }
        Self::new(
            (0..d)
                .map(|j| row.view((0, j * n), (n, n)).into_owned())
                .collect(),
        )
    }

    pub fn scale(&self, t: Complex64) -> MatrixTuple {
        MatrixTuple {
            n: self.n,
            matrices: self.matrices.iter().map(|x| x * t).collect(),
        }
    }

    pub fn scale_real(&self, t: f64) -> MatrixTuple {
        self.scale(Complex64::new(t, 0.0))
    }

    /// Coordinate-wise block-diagonal direct sum `X ⊕ Y`.
    pub fn direct_sum(&self, other: &MatrixTuple) -> Result<MatrixTuple> {
        if self.arity() != other.arity() {
            return Err(NcError::DimensionMismatch {
                expected: self.arity(),
                found: other.arity(),
                context: "direct sum arity",
            });
        }
        Ok(MatrixTuple {
            n: self.n + other.n,
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| block_diag(a, b))
                .collect(),
        })
    }

    /// `(S⁻¹X_1S, …, S⁻¹X_dS)` together with the condition number of `S`.
    pub fn conjugate(&self, s: &CMatrix) -> Result<(MatrixTuple, f64)> {
        if s.nrows() != self.n || s.ncols() != self.n {
            return Err(NcError::Shape(format!(
                "similarity is {}x{}, tuple level is {}",
                s.nrows(),
                s.ncols(),
                self.n
            )));
        }
        let lu = FullPivLU::new(s.clone());
        let scale = op_norm(s);
        let u = lu.u();
        let min_pivot = (0..self.n).map(|i| u[(i, i)].norm()).fold(f64::INFINITY, f64::min);
        if !(min_pivot > 1e-12 * scale) {
            return Err(NcError::Singular(format!(
                "similarity pivot {min_pivot:e} below 1e-12·‖S‖"
            )));
        }
        let inv = lu
            .try_inverse()
            .ok_or_else(|| NcError::Singular("similarity not invertible".into()))?;
        let cond = scale * op_norm(&inv);
        let matrices = self.matrices.iter().map(|x| &inv * x * s).collect();
        Ok((
            MatrixTuple {
                n: self.n,
                matrices,
            },
            cond,
        ))
    }

    /// `U* X U` for unitary `U` (no inversion needed).
    pub fn unitary_conjugate(&self, u: &CMatrix) -> MatrixTuple {
        MatrixTuple {
            n: self.n,
            matrices: self.matrices.iter().map(|x| u.ad_mul(x) * u).collect(),
        }
    }

    /// Largest operator-norm distance between corresponding coordinates.
    pub fn distance(&self, other: &MatrixTuple) -> f64 {
        assert_eq!(self.arity(), other.arity());
        self.matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| op_norm(&(a - b)))
            .fold(0.0, f64::max)
    }
}
