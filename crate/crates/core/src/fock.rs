//! Truncated full Fock space, left creation operators and the nc Szegő kernel.
//!
//! The monomials `z^k` form an orthonormal basis, so a free polynomial is identified
//! with its coefficient sequence in ℓ². Kernel functions use the convention
//! `K_{W,v,y}(Z) = Σ_k ⟨y, W^k v⟩ Z^k` with the inner product linear in its first slot,
//! i.e. the coefficient of `z^k` is `(W^k v)* y`. That is the reading under which
//! `⟨h, K_{W,v,y}⟩ = ⟨h(W)v, y⟩` holds (see the `reproducing_property` test).

use nalgebra::LU;
use nalgebra::Dyn;
use num_complex::Complex64;

use crate::error::{NcError, Result};
use crate::freealg::{basis_dim, eval_poly, FreePoly, MatrixTuple, Word};
use crate::linalg::{unvectorize, vectorize, CMatrix, CVector, ONE, ZERO};
use crate::DIMENSION_GUARD;

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 10;

fn check_guard(d: usize, degree: usize) -> Result<usize> {
    crate::freealg::FreePoly::zero(d)?;
    // overflow-safe accumulation
    let mut dim = 0usize;
    let mut layer = 1usize;
    for _ in 0..=degree {
        dim = dim.saturating_add(layer);
        if dim > DIMENSION_GUARD {
            return Err(NcError::GuardExceeded {
                dim,
                limit: DIMENSION_GUARD,
            });
        }
        layer = layer.saturating_mul(d);
    }
    Ok(dim)
}

/// Words of length `≤ N` in graded-lex order; the empty word has index 0.
#[derive(Clone, Debug)]
pub struct TruncatedFock {
    d: usize,
    degree: usize,
    dim: usize,
}

impl TruncatedFock {
    pub fn new(d: usize, degree: usize) -> Result<Self> {
        let dim = check_guard(d, degree)?;
        Ok(Self { d, degree, dim })
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> impl Iterator<Item = Word> {
        Word::all_up_to(self.degree, self.d)
    }

    pub fn index(&self, w: &Word) -> Option<usize> {
        (w.len() <= self.degree).then(|| w.graded_index(self.d))
    }

    /// ℓ² coordinates of `p` (terms beyond the truncation are dropped).
    pub fn coordinates(&self, p: &FreePoly) -> CVector {
        let mut v = CVector::zeros(self.dim);
        for (w, c) in p.terms() {
            if let Some(i) = self.index(w) {
                v[i] = *c;
            }
        }
        v
    }

    pub fn polynomial(&self, coords: &CVector) -> Result<FreePoly> {
        FreePoly::from_terms(self.d, self.basis().zip(coords.iter().copied()))
    }
}

/// `P_N L_i P_N` for `i < d`, stored as one target index (or none) per basis column.
#[derive(Clone, Debug)]
pub struct CreationTuple {
    space: TruncatedFock,
    targets: Vec<Vec<Option<usize>>>,
}

impl CreationTuple {
    pub fn space(&self) -> &TruncatedFock {
        &self.space
    }

    /// Image of basis vector `col` under `L_i`.
    pub fn target(&self, i: usize, col: usize) -> Option<usize> {
        self.targets[i][col]
    }

    pub fn dense(&self, i: usize) -> CMatrix {
        let dim = self.space.dim;
        let mut m = CMatrix::zeros(dim, dim);
        for (col, t) in self.targets[i].iter().enumerate() {
            if let Some(row) = t {
                m[(*row, col)] = ONE;
            }
        }
        m
    }

    pub fn to_tuple(&self) -> MatrixTuple {
        MatrixTuple::new((0..self.space.d).map(|i| self.dense(i)).collect())
            .expect("creation operators form a valid tuple")
    }
}

/// The truncated left creation operators `L_i e_w = e_{iw}` (zero on length-`N` words).
pub fn creation_operators(d: usize, degree: usize) -> Result<CreationTuple> {
    if degree == 0 {
        return Err(NcError::InvalidParameter(
            "truncation degree must be at least 1".into(),
        ));
    }
    let space = TruncatedFock::new(d, degree)?;
    let words: Vec<Word> = space.basis().collect();
    let targets = (0..d)
        .map(|i| {
            let letter = Word::letter(i);
            words
                .iter()
                .map(|w| space.index(&letter.concat(w)))
                .collect()
        })
        .collect();
    Ok(CreationTuple { space, targets })
}

/// Factored solver for `T = P + Σ_j Z_j T W_j*`, i.e. `T = K(Z,W)(P)`.
///
/// Column-stacking vectorization turns the fixed point into
/// `(I − Σ_j conj(W_j) ⊗ Z_j) vec(T) = vec(P)`.
pub struct SzegoSolver {
    rows: usize,
    cols: usize,
    lu: LU<Complex64, Dyn, Dyn>,
}

impl SzegoSolver {
    pub fn new(z: &MatrixTuple, w: &MatrixTuple) -> Result<Self> {
        if z.arity() != w.arity() {
            return Err(NcError::DimensionMismatch {
                expected: z.arity(),
                found: w.arity(),
                context: "Szegő kernel node arities",
            });
        }
        for node in [z, w] {
            let r = node.row_norm();
            if !(r < 1.0) {
                return Err(NcError::OutsideBall { row_norm: r });
            }
        }
        let (rows, cols) = (z.level(), w.level());
        let size = rows * cols;
        let mut system = CMatrix::identity(size, size);
        for (zj, wj) in z.matrices().iter().zip(w.matrices()) {
            system -= wj.map(|c| c.conj()).kronecker(zj);
        }
        let lu = system.lu();
        if !lu.is_invertible() {
            return Err(NcError::Singular("Szegő system".into()));
        }
        Ok(Self { rows, cols, lu })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn apply(&self, p: &CMatrix) -> Result<CMatrix> {
        if p.shape() != (self.rows, self.cols) {
            return Err(NcError::Shape(format!(
                "kernel argument is {}x{}, expected {}x{}",
                p.nrows(),
                p.ncols(),
                self.rows,
                self.cols
            )));
        }
        let sol = self
            .lu
            .solve(&vectorize(p))
            .ok_or_else(|| NcError::Singular("Szegő system".into()))?;
        Ok(unvectorize(&sol, self.rows, self.cols))
    }

    /// Matrix of `P ↦ K(Z,W)(P)` acting on column-stacked `P`.
    pub fn operator_matrix(&self) -> Result<CMatrix> {
        self.lu
            .try_inverse()
            .ok_or_else(|| NcError::Singular("Szegő system".into()))
    }
}

/// `K(Z,W)(P) = Σ_k Z^k P W^{k*}` via the vectorized linear solve.
pub fn szego_apply(z: &MatrixTuple, w: &MatrixTuple, p: &CMatrix) -> Result<CMatrix> {
    SzegoSolver::new(z, w)?.apply(p)
}

fn check_vectors(w: &MatrixTuple, v: &CVector, y: &CVector) -> Result<()> {
    for (name, x) in [("v", v), ("y", y)] {
        if x.len() != w.level() {
            return Err(NcError::Shape(format!(
                "{name} has length {}, node level is {}",
                x.len(),
                w.level()
            )));
        }
    }
    Ok(())
}

/// Degree-`≤ N` Taylor truncation of `K_{W,v,y}`: coefficient `(W^k v)* y` on `z^k`.
pub fn kernel_coefficients(w: &MatrixTuple, v: &CVector, y: &CVector, degree: usize) -> Result<FreePoly> {
    check_vectors(w, v, y)?;
    let d = w.arity();
    check_guard(d, degree)?;
    let mut terms = Vec::with_capacity(basis_dim(d, degree));
    // layer[idx] = W^k v for the words k of the current length (lex order)
    let mut layer = vec![v.clone()];
    for len in 0..=degree {
        for (idx, wv) in layer.iter().enumerate() {
            terms.push((Word::from_index(idx, len, d), wv.dotc(y)));
        }
        if len < degree {
            let mut next = Vec::with_capacity(layer.len() * d);
            for i in 0..d {
                for wv in &layer {
                    next.push(w.get(i) * wv);
                }
            }
            layer = next;
        }
    }
    FreePoly::from_terms(d, terms)
}

/// ℓ² pairing `Σ_k a_k(f) conj(a_k(g))`.
pub fn fock_inner(f: &FreePoly, g: &FreePoly) -> Result<Complex64> {
    if f.arity() != g.arity() {
        return Err(NcError::DimensionMismatch {
            expected: f.arity(),
            found: g.arity(),
            context: "Fock inner product arities",
        });
    }
    Ok(f
        .terms()
        .map(|(w, a)| a * g.coefficient(w).conj())
        .fold(ZERO, |acc, t| acc + t))
}

/// Residual `‖M_p* K_{W,v,y} − K_{W,v,p(W)* y}‖` on the words of length `≤ N − deg p`.
///
/// Errors when the geometric tail bound `‖v‖‖y‖ r^{N−deg p+1}/(1−r)` (with `r` the row
/// norm of `W`) exceeds `tol`.
pub fn multiplier_adjoint_check(
    p: &FreePoly,
    w: &MatrixTuple,
    v: &CVector,
    y: &CVector,
    degree: usize,
    tol: f64,
) -> Result<f64> {
    check_vectors(w, v, y)?;
    if p.arity() != w.arity() {
        return Err(NcError::DimensionMismatch {
            expected: p.arity(),
            found: w.arity(),
            context: "multiplier arity vs node arity",
        });
    }
    let r = w.row_norm();
    if !(r < 1.0) {
        return Err(NcError::OutsideBall { row_norm: r });
    }
    let m = p.degree().unwrap_or(0);
    if degree < m {
        return Err(NcError::InvalidParameter(format!(
            "truncation degree {degree} below multiplier degree {m}"
        )));
    }
    let bound = v.norm() * y.norm() * r.powi((degree - m + 1) as i32) / (1.0 - r);
    if bound > tol {
        return Err(NcError::TruncationGuard { bound, tol });
    }
    let kernel = kernel_coefficients(w, v, y, degree)?;
    let shifted_y = eval_poly(p, w)?.adjoint() * y;
    let expected = kernel_coefficients(w, v, &shifted_y, degree - m)?;
    let d = w.arity();
    let mut sq = 0.0;
    for target in Word::all_up_to(degree - m, d) {
        let value = p
            .terms()
            .map(|(k, a)| a.conj() * kernel.coefficient(&k.concat(&target)))
            .fold(ZERO, |acc, t| acc + t);
        sq += (value - expected.coefficient(&target)).norm_sqr();
    }
    Ok(sq.sqrt())
}
