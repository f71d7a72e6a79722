//! Automorphisms of the nc unit ball.
//!
//! An automorphism is stored as `T = [[a, v], [w, X]] ∈ SU(1,d)` and acts at level `n` on
//! the block row `Z = (Z_1 … Z_d)` by
//!
//! ```text
//! φ(Z) = (aZ + v⊗I_n) ((w⊗I_n) Z + X⊗I_n)^{-1}
//! ```
//!
//! so composition and inversion are products and inverses of `(d+1)×(d+1)` matrices.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{NcError, Result};
use crate::freealg::{check_arity, eval_poly, FreePoly, MatrixTuple};
use crate::linalg::{op_norm, CMatrix, ONE, ZERO};
use crate::random;

/// Allowed `‖T*JT − J‖` for explicitly supplied block matrices.
pub const SIGNATURE_TOL: f64 = 1e-9;

/// Default number of quadrature nodes for [`circle_average`].
pub const DEFAULT_NODES: usize = 64;

/// Finite-difference step for the derivative at the origin.
pub const FD_STEP: f64 = 1e-5;

/// Tolerance on `φ(0) = 0` and `φ'(0) = I` in [`BallAutomorphism::cartan_check`].
pub const CARTAN_JET_TOL: f64 = 1e-6;

/// Tolerance on `φ(Z) = Z` for samples in [`BallAutomorphism::cartan_check`].
pub const CARTAN_SAMPLE_TOL: f64 = 1e-9;

/// Resolvent condition number beyond which `apply` reports a singular block.
pub const MAX_RESOLVENT_COND: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Identity,
    /// The involution exchanging `0` and `b`.
    Point(Vec<Complex64>),
    /// `Z ↦ (Σ_j U_ij Z_j)_i`.
    Unitary(CMatrix),
    Composition,
    Inverse,
    Explicit,
}

#[derive(Clone, Debug)]
pub struct BallAutomorphism {
    d: usize,
    t: CMatrix,
    provenance: Provenance,
}

/// `diag(1, −I_d)`.
pub fn signature(d: usize) -> CMatrix {
    let mut j = CMatrix::identity(d + 1, d + 1).scale(-1.0);
    j[(0, 0)] = ONE;
    j
}

fn normalize_det(t: CMatrix) -> Result<CMatrix> {
    let det = t.determinant();
    if det.norm() == 0.0 || !det.is_finite() {
        return Err(NcError::Singular("block matrix has zero determinant".into()));
    }
    let root = (det.ln() / (t.nrows() as f64)).exp();
    Ok(t / root)
}

impl BallAutomorphism {
    pub fn identity(d: usize) -> Result<Self> {
        check_arity(d)?;
        Ok(Self {
            d,
            t: CMatrix::identity(d + 1, d + 1),
            provenance: Provenance::Identity,
        })
    }

    /// The involution `φ_b` with `φ_b(0) = b`; for `d = 1` it is `z ↦ (b − z)/(1 − b̄z)`.
    pub fn from_point(b: &[Complex64]) -> Result<Self> {
        let d = b.len();
        check_arity(d)?;
        let norm_sq: f64 = b.iter().map(|x| x.norm_sqr()).sum();
        if !(norm_sq < 1.0) {
            return Err(NcError::OutsideBall {
                row_norm: norm_sq.sqrt(),
            });
        }
        let s = (1.0 - norm_sq).sqrt();
        let mut t = CMatrix::zeros(d + 1, d + 1);
        t[(0, 0)] = Complex64::new(-1.0 / s, 0.0);
        for j in 0..d {
            t[(0, j + 1)] = b[j] / s;
            t[(j + 1, 0)] = -b[j].conj() / s;
        }
        // X = I + (1/s − 1) b*b / |b|²
        let c = if norm_sq > 0.0 { (1.0 / s - 1.0) / norm_sq } else { 0.0 };
        for i in 0..d {
            for j in 0..d {
                let delta = if i == j { ONE } else { ZERO };
                t[(i + 1, j + 1)] = delta + b[i].conj() * b[j] * c;
            }
        }
        Ok(Self {
            d,
            t: normalize_det(t)?,
            provenance: Provenance::Point(b.to_vec()),
        })
    }

    /// The linear automorphism `Z ↦ (Σ_j U_ij Z_j)_i`.
    pub fn from_unitary(u: &CMatrix) -> Result<Self> {
        let d = u.nrows();
        check_arity(d)?;
        if u.ncols() != d {
            return Err(NcError::Shape(format!("unitary is {}x{}", d, u.ncols())));
        }
        let residual = crate::linalg::unitarity_residual(u);
        if residual > SIGNATURE_TOL {
            return Err(NcError::NotUnitary { residual });
        }
        let mut t = CMatrix::zeros(d + 1, d + 1);
        t[(0, 0)] = ONE;
        t.view_mut((1, 1), (d, d)).copy_from(&u.map(|x| x.conj()));
        Ok(Self {
            d,
            t: normalize_det(t)?,
            provenance: Provenance::Unitary(u.clone()),
        })
    }

    /// Validated block matrix, rescaled to unit determinant.
    pub fn from_matrix(t: CMatrix) -> Result<Self> {
        if t.nrows() != t.ncols() || t.nrows() < 2 {
            return Err(NcError::Shape(format!(
                "block matrix is {}x{}, expected (d+1)x(d+1) with d >= 1",
                t.nrows(),
                t.ncols()
            )));
        }
        let d = t.nrows() - 1;
        check_arity(d)?;
        let residual = signature_residual_of(&t);
        if !(residual <= SIGNATURE_TOL) {
            return Err(NcError::NotSignaturePreserving { residual });
        }
        Ok(Self {
            d,
            t: normalize_det(t)?,
            provenance: Provenance::Explicit,
        })
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.t
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn a(&self) -> Complex64 {
        self.t[(0, 0)]
    }

    pub fn v(&self) -> CMatrix {
        self.t.view((0, 1), (1, self.d)).into_owned()
    }

    pub fn w(&self) -> CMatrix {
        self.t.view((1, 0), (self.d, 1)).into_owned()
    }

    pub fn x(&self) -> CMatrix {
        self.t.view((1, 1), (self.d, self.d)).into_owned()
    }

    /// `‖T*JT − J‖`.
    pub fn signature_residual(&self) -> f64 {
        signature_residual_of(&self.t)
    }

    /// `φ ∘ ψ`.
    pub fn compose(&self, other: &BallAutomorphism) -> Result<Self> {
        if self.d != other.d {
            return Err(NcError::DimensionMismatch {
                expected: self.d,
                found: other.d,
                context: "automorphism arity",
            });
        }
        Ok(Self {
            d: self.d,
            t: normalize_det(&self.t * &other.t)?,
            provenance: Provenance::Composition,
        })
    }

    /// `T^{-1} = J T* J`.
    pub fn inverse(&self) -> Self {
        let j = signature(self.d);
        let t = &j * self.t.adjoint() * &j;
        let provenance = match &self.provenance {
            Provenance::Identity => Provenance::Identity,
            Provenance::Point(b) => Provenance::Point(b.clone()),
            Provenance::Unitary(u) => Provenance::Unitary(u.adjoint()),
            _ => Provenance::Inverse,
        };
        // J T* J has the conjugate determinant of T, which is already 1
        Self {
            d: self.d,
            t,
            provenance,
        }
    }

    pub fn apply(&self, z: &MatrixTuple) -> Result<MatrixTuple> {
        self.apply_with_condition(z).map(|(image, _)| image)
    }

    /// Image of `z` together with the condition number of the resolvent block `CZ + D`.
    pub fn apply_with_condition(&self, z: &MatrixTuple) -> Result<(MatrixTuple, f64)> {
        if z.arity() != self.d {
            return Err(NcError::DimensionMismatch {
                expected: self.d,
                found: z.arity(),
                context: "tuple arity vs automorphism",
            });
        }
        let n = z.level();
        let d = self.d;
        let row = z.block_row();
        let ident = CMatrix::identity(n, n);
        let numerator = &row * self.a() + self.v().kronecker(&ident);
        let resolvent = self.w().kronecker(&ident) * &row + self.x().kronecker(&ident);
        let inverse = resolvent
            .clone()
            .try_inverse()
            .ok_or_else(|| NcError::Singular("resolvent block CZ + D is singular".into()))?;
        let cond = op_norm(&resolvent) * op_norm(&inverse);
        if !(cond < MAX_RESOLVENT_COND) {
            return Err(NcError::Singular(format!(
                "resolvent block CZ + D has condition number {cond:e}"
            )));
        }
        let image = MatrixTuple::from_block_row(&(numerator * inverse), d)?;
        Ok((image, cond))
    }

    /// True iff `φ(0) = 0`, `φ'(0) = I` and every one of `trials` seeded random samples at
    /// level `n` is fixed by `φ`.
    pub fn cartan_check(&self, n: usize, trials: usize, seed: u64) -> Result<bool> {
        let d = self.d;
        let origin = self.apply(&MatrixTuple::zeros(d, 1)?)?;
        if origin.block_row().norm() > CARTAN_JET_TOL {
            return Ok(false);
        }
        for k in 0..d {
            let point = |h: f64| -> Result<CMatrix> {
                let mut coords = vec![ZERO; d];
                coords[k] = Complex64::new(h, 0.0);
                Ok(self.apply(&MatrixTuple::scalar(&coords)?)?.block_row())
            };
            let derivative = (point(FD_STEP)? - point(-FD_STEP)?) / Complex64::new(2.0 * FD_STEP, 0.0);
            let mut expected = CMatrix::zeros(1, d);
            expected[(0, k)] = ONE;
            if (derivative - expected).norm() > CARTAN_JET_TOL {
                return Ok(false);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..trials {
            let radius = 0.9 * (k + 1) as f64 / trials as f64;
            let z = random::ball_tuple(&mut rng, d, n, radius)?;
            if self.apply(&z)?.distance(&z) > CARTAN_SAMPLE_TOL {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn signature_residual_of(t: &CMatrix) -> f64 {
    let j = signature(t.nrows() - 1);
    op_norm(&(t.adjoint() * &j * t - &j))
}

/// `(1/M) Σ_{j<M} f(ω^j Z) ω^{−jn}` with `ω = e^{2πi/M}`.
pub fn circle_average<F>(f: F, z: &MatrixTuple, n: usize, nodes: usize) -> Result<CMatrix>
where
    F: Fn(&MatrixTuple) -> Result<CMatrix>,
{
    if nodes == 0 {
        return Err(NcError::InvalidParameter(
            "circle average needs at least one node".into(),
        ));
    }
    let mut acc: Option<CMatrix> = None;
    for j in 0..nodes {
        let theta = 2.0 * PI * j as f64 / nodes as f64;
        let value = f(&z.scale(Complex64::from_polar(1.0, theta)))?;
        let weighted = value * Complex64::from_polar(1.0, -theta * n as f64);
        acc = Some(match acc {
            Some(sum) => sum + weighted,
            None => weighted,
        });
    }
    Ok(acc.expect("nodes > 0") / Complex64::new(nodes as f64, 0.0))
}

/// [`circle_average`] of a polynomial; exact when `deg p < nodes`.
pub fn circle_average_poly(p: &FreePoly, z: &MatrixTuple, n: usize, nodes: usize) -> Result<CMatrix> {
    circle_average(|x| eval_poly(p, x), z, n, nodes)
}
