//! Pick interpolation on the nc ball.
//!
//! Interpolation data `Z_i ↦ W_i` is reduced to the single node `Z = ⊕ Z_i` with target
//! `W = ⊕ W_i`. The data extends to a contractive multiplier exactly when the
//! de Branges–Rovnyak map
//!
//! ```text
//! Φ(P) = K(Z,Z)(P) ⊗ I_e − W [K(Z,Z)(P) ⊗ I_e] W*
//! ```
//!
//! is completely positive, which is decided on its Choi matrix.

use crate::error::{NcError, Result};
use crate::fock::SzegoSolver;
use crate::freealg::{eval_poly, FreePoly, MatrixTuple};
use crate::ideals::GradedIdeal;
use crate::linalg::{block_diag, hermitian_eigenvalues, op_norm, unvectorize, CMatrix};

/// Default relative PSD tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest supported coefficient dimension `e`.
pub const MAX_COEFFICIENT_DIM: usize = 4;

/// Generator residual allowed for samples claimed to lie on a variety.
pub const VARIETY_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct PickProblem {
    nodes: Vec<MatrixTuple>,
    targets: Vec<CMatrix>,
    e: usize,
    node: MatrixTuple,
    target: CMatrix,
}

impl PickProblem {
    pub fn new(nodes: Vec<MatrixTuple>, targets: Vec<CMatrix>, e: usize) -> Result<Self> {
        if e == 0 || e > MAX_COEFFICIENT_DIM {
            return Err(NcError::InvalidParameter(format!(
                "coefficient dimension {e} outside 1..={MAX_COEFFICIENT_DIM}"
            )));
        }
        if nodes.is_empty() {
            return Err(NcError::InvalidParameter("no interpolation nodes".into()));
        }
        if nodes.len() != targets.len() {
            return Err(NcError::DimensionMismatch {
                expected: nodes.len(),
                found: targets.len(),
                context: "number of targets vs nodes",
            });
        }
        let d = nodes[0].arity();
        for (i, (z, w)) in nodes.iter().zip(&targets).enumerate() {
            if z.arity() != d {
                return Err(NcError::DimensionMismatch {
                    expected: d,
                    found: z.arity(),
                    context: "node arity",
                });
            }
            let r = z.row_norm();
            if !(r < 1.0) {
                return Err(NcError::OutsideBall { row_norm: r });
            }
            let size = z.level() * e;
            if w.nrows() != size || w.ncols() != size {
                return Err(NcError::Shape(format!(
                    "target {i} is {}x{}, expected {size}x{size}",
                    w.nrows(),
                    w.ncols()
                )));
            }
        }
        let mut node = nodes[0].clone();
        let mut target = targets[0].clone();
        for (z, w) in nodes.iter().zip(&targets).skip(1) {
            node = node.direct_sum(z)?;
            target = block_diag(&target, w);
        }
        Ok(Self {
            nodes,
            targets,
            e,
            node,
            target,
        })
    }

    pub fn nodes(&self) -> &[MatrixTuple] {
        &self.nodes
    }

    pub fn targets(&self) -> &[CMatrix] {
        &self.targets
    }

    pub fn coefficient_dim(&self) -> usize {
        self.e
    }

    /// `Z = ⊕ Z_i`.
    pub fn reduced_node(&self) -> &MatrixTuple {
        &self.node
    }

    /// `W = ⊕ W_i`.
    pub fn reduced_target(&self) -> &CMatrix {
        &self.target
    }

    /// The same data with every target multiplied by `s`.
    pub fn scaled(&self, s: f64) -> PickProblem {
        PickProblem {
            nodes: self.nodes.clone(),
            targets: self.targets.iter().map(|w| w.scale(s)).collect(),
            e: self.e,
            node: self.node.clone(),
            target: self.target.scale(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    pub matrix: CMatrix,
    /// Eigenvalues of the Hermitian part, ascending.
    pub eigenvalues: Vec<f64>,
}

impl ChoiMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
    }

    /// `‖C − C*‖`.
    pub fn hermitian_defect(&self) -> f64 {
        op_norm(&(&self.matrix - self.matrix.adjoint()))
    }
}

/// Choi matrix `Σ_{a,b} E_ab ⊗ Φ(E_ab)` of the de Branges–Rovnyak map at the reduced node.
pub fn dbr_choi(problem: &PickProblem) -> Result<ChoiMatrix> {
    let z = problem.reduced_node();
    let w = problem.reduced_target();
    let n = z.level();
    let e = problem.e;
    let ne = n * e;
    let kernel = SzegoSolver::new(z, z)?.operator_matrix()?;
    let mut choi = CMatrix::zeros(n * ne, n * ne);
    let ident = CMatrix::identity(e, e);
    for b in 0..n {
        for a in 0..n {
            // column of vec(E_ab) under column stacking
            let k_ab = unvectorize(&kernel.column(b * n + a).into_owned(), n, n);
            let lifted = k_ab.kronecker(&ident);
            let phi = &lifted - w * &lifted * w.adjoint();
            choi.view_mut((a * ne, b * ne), (ne, ne)).copy_from(&phi);
        }
    }
    let eigenvalues = hermitian_eigenvalues(&choi);
    Ok(ChoiMatrix {
        matrix: choi,
        eigenvalues,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Feasibility {
    pub feasible: bool,
    /// Smallest Choi eigenvalue.
    pub margin: f64,
    pub choi_dim: usize,
}

/// Feasible iff the smallest Choi eigenvalue is at least `−tol·(1 + ‖C‖)`.
pub fn feasible(problem: &PickProblem, tol: f64) -> Result<Feasibility> {
    if !(tol > 0.0) {
        return Err(NcError::InvalidParameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let choi = dbr_choi(problem)?;
    let margin = choi.min_eigenvalue();
    Ok(Feasibility {
        feasible: margin >= -tol * (1.0 + choi.spectral_norm()),
        margin,
        choi_dim: choi.dim(),
    })
}

/// Multiplier norm of a homogeneous `p` on the variety of `J`: the ℓ² norm of the
/// projection of `p` onto `J_m^⊥`.
pub fn homogeneous_multiplier_norm(ideal: &GradedIdeal, p: &FreePoly) -> Result<f64> {
    if !p.is_homogeneous() {
        return Err(NcError::NotHomogeneous(
            "multiplier norm formula needs a homogeneous polynomial".into(),
        ));
    }
    ideal.quotient_coefficient_norm(p)
}

/// `max_k ‖p(X_k)‖` over sample points of the ball (and of the variety of `ideal`, when
/// given). Zero for an empty sample set.
pub fn sup_norm_lower_bound(
    p: &FreePoly,
    samples: &[MatrixTuple],
    ideal: Option<&GradedIdeal>,
) -> Result<f64> {
    let mut best = 0.0f64;
    for (k, x) in samples.iter().enumerate() {
        let r = x.row_norm();
        if !(r < 1.0) {
            return Err(NcError::OutsideBall { row_norm: r });
        }
        if let Some(j) = ideal {
            for g in j.generators() {
                let res = op_norm(&eval_poly(g, x)?);
                if res > VARIETY_TOL {
                    return Err(NcError::InvalidParameter(format!(
                        "sample {k} is off the variety (generator residual {res:e})"
                    )));
                }
            }
        }
        best = best.max(op_norm(&eval_poly(p, x)?));
    }
    Ok(best)
}
