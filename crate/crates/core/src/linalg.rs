//! Dense complex linear algebra shared by the rest of the crate.
//!
//! Thin wrappers around `nalgebra`, a column-pivoted Gram–Schmidt used for every rank
//! decision, a Householder complement, and faster kernels for large products (split into
//! real products) and Hermitian spectra (faer).

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Relative rank tolerance for all orthonormalizations.
pub const RANK_TOL: f64 = 1e-10;

pub(crate) const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Operator (spectral) norm. Empty matrices have norm zero.
///
/// Largest eigenvalue of the smaller Gram matrix after scaling to unit max entry;
/// nalgebra's complex SVD can fail to converge on matrices of roundoff-sized entries.
pub fn op_norm(a: &CMatrix) -> f64 {
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let b = a.unscale(scale);
    let g = if b.nrows() >= b.ncols() {
        ad_mul(&b, &b)
    } else {
        mul(&b, &b.adjoint())
    };
    max_hermitian_eigenvalue(&g).max(0.0).sqrt() * scale
}

/// Eigenvalues of the Hermitian part `(H + H*)/2`, sorted ascending.
///
/// Computed by faer, whose blocked tridiagonalization is several times faster than
/// nalgebra's on the sizes met here; nalgebra is the fallback if faer does not converge.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    assert!(h.is_square(), "hermitian_eigenvalues: matrix must be square");
    let n = h.nrows();
    if n == 0 {
        return Vec::new();
    }
    let sym = faer::Mat::<Complex64>::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut values = match sym.self_adjoint_eigenvalues(faer::Side::Lower) {
        Ok(values) => values,
        Err(_) => {
            let sym = (h + h.adjoint()).scale(0.5);
            SymmetricEigen::new(sym).eigenvalues.iter().copied().collect()
        }
    };
    values.sort_by(|a, b| a.total_cmp(b));
    values
}

pub fn max_hermitian_eigenvalue(h: &CMatrix) -> f64 {
    hermitian_eigenvalues(h).last().copied().unwrap_or(0.0)
}

/// Column-stacking vectorization, `vec(A T B) = (Bᵀ ⊗ A) vec(T)`.
pub fn vectorize(m: &CMatrix) -> CVector {
    CVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    assert_eq!(v.len(), rows * cols, "unvectorize: length mismatch");
    CMatrix::from_column_slice(rows, cols, v.as_slice())
}

/// Block-diagonal `a ⊕ b`.
pub fn block_diag(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// `‖U*U − I‖` in operator norm.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    op_norm(&(u.ad_mul(u) - CMatrix::identity(n, n)))
}

/// Extends the orthonormal columns of `basis` by orthonormalized candidates.
///
/// Column-pivoted Gram–Schmidt with reorthogonalization: at each step the candidate
/// with the largest residual is accepted, until every residual falls below
/// `rel_tol` times the largest candidate norm.
pub fn extend_orthonormal(basis: &CMatrix, candidates: &CMatrix, rel_tol: f64) -> CMatrix {
    let scale = (0..candidates.ncols())
        .map(|j| candidates.column(j).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return basis.clone();
    }
    pivoted_extend(basis, candidates, |_, norm| norm > rel_tol * scale, usize::MAX)
}

/// Orthonormal basis of the column span of `candidates` (rows = ambient dimension).
pub fn orthonormal_span(candidates: &CMatrix, rel_tol: f64) -> CMatrix {
    let empty = CMatrix::zeros(candidates.nrows(), 0);
    extend_orthonormal(&empty, candidates, rel_tol)
}

/// Orthonormal basis of the orthogonal complement of the (orthonormal) columns of `basis`.
///
/// Householder QR of `basis` in compact WY form `Q = I − V T V*`; the complement is
/// `Q [0; I]`, which costs one large product.
pub fn orthogonal_complement(basis: &CMatrix) -> CMatrix {
    let (dim, rank) = basis.shape();
    if rank == 0 {
        return CMatrix::identity(dim, dim);
    }
    if rank >= dim {
        return CMatrix::zeros(dim, 0);
    }
    let mut a = basis.clone();
    let mut v = CMatrix::zeros(dim, rank);
    let mut t = CMatrix::zeros(rank, rank);
    for j in 0..rank {
        let mut u: CVector = a.view((j, j), (dim - j, 1)).column(0).into_owned();
        let norm = u.norm();
        let phase = if u[0].norm() > 0.0 { u[0] / u[0].norm() } else { ONE };
        u[0] += phase * norm;
        let un = u.norm();
        if un == 0.0 {
            continue;
        }
        u.unscale_mut(un);
        if j + 1 < rank {
            let mut rest = a.view_mut((j, j + 1), (dim - j, rank - j - 1));
            let w = u.ad_mul(&rest) * Complex64::new(2.0, 0.0);
            rest -= &u * w;
        }
        v.view_mut((j, j), (dim - j, 1)).copy_from(&u);
        if j > 0 {
            let z = v.view((j, 0), (dim - j, j)).ad_mul(&u);
            let tz = t.view((0, 0), (j, j)) * z * Complex64::new(-2.0, 0.0);
            t.view_mut((0, j), (j, 1)).copy_from(&tz);
        }
        t[(j, j)] = Complex64::new(2.0, 0.0);
    }
    let tail = v.rows(rank, dim - rank).adjoint();
    let mut out = CMatrix::zeros(dim, dim - rank);
    out.view_mut((rank, 0), (dim - rank, dim - rank))
        .fill_with_identity();
    out -= mul(&v, &mul(&t, &tail));
    out
}

fn split(a: &CMatrix) -> (DMatrix<f64>, DMatrix<f64>) {
    (a.map(|z| z.re), a.map(|z| z.im))
}

/// `a b` through four real products, which use the optimized real kernel; nalgebra's
/// generic complex product is much slower on large operands.
pub fn mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "mul: inner dimensions differ");
    if a.nrows() * a.ncols() * b.ncols() < 32_768 {
        return a * b;
    }
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

/// `a* b`, see [`mul`].
pub fn ad_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    mul(&a.adjoint(), b)
}

fn pivoted_extend(
    basis: &CMatrix,
    candidates: &CMatrix,
    accept: impl Fn(usize, f64) -> bool,
    max_new: usize,
) -> CMatrix {
    let dim = basis.nrows();
    assert_eq!(candidates.nrows(), dim, "candidate length mismatch");
    let mut residual = candidates.clone();
    if basis.ncols() > 0 {
        for _ in 0..2 {
            let coeffs = ad_mul(basis, &residual);
            residual -= mul(basis, &coeffs);
        }
    }
    let mut accepted: Vec<CVector> = Vec::new();
    let mut used = vec![false; residual.ncols()];
    let room = dim.saturating_sub(basis.ncols()).min(max_new);
    while accepted.len() < room {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..residual.ncols() {
            if used[j] {
                continue;
            }
            let norm = residual.column(j).norm();
            if best.is_none_or(|(_, b)| norm > b) {
                best = Some((j, norm));
            }
        }
        let Some((j, norm)) = best else { break };
        if norm == 0.0 || !accept(accepted.len(), norm) {
            break;
        }
        used[j] = true;
        let mut q: CVector = residual.column(j).into_owned();
        // second pass against everything accepted so far
        if basis.ncols() > 0 {
            let c = basis.ad_mul(&q);
            q -= basis * c;
        }
        for prev in &accepted {
            let c = prev.dotc(&q);
            q.axpy(-c, prev, ONE);
        }
        let qn = q.norm();
        if qn == 0.0 {
            continue;
        }
        q.unscale_mut(qn);
        let coeffs = q.ad_mul(&residual);
        residual -= &q * coeffs;
        accepted.push(q);
    }
    let mut out = CMatrix::zeros(dim, basis.ncols() + accepted.len());
    out.columns_mut(0, basis.ncols()).copy_from(basis);
    for (k, q) in accepted.iter().enumerate() {
        out.column_mut(basis.ncols() + k).copy_from(q);
    }
    out
}

/// Largest sine of the principal angles between two orthonormal column spans;
/// `1.0` when the dimensions differ.
pub fn subspace_gap(q1: &CMatrix, q2: &CMatrix) -> f64 {
    if q1.ncols() != q2.ncols() || q1.nrows() != q2.nrows() {
        return 1.0;
    }
    if q1.ncols() == 0 {
        return 0.0;
    }
    let r1 = q1 - q2 * q2.ad_mul(q1);
    let r2 = q2 - q1 * q1.ad_mul(q2);
    op_norm(&r1).max(op_norm(&r2)).min(1.0)
}

/// Applies `U^{⊗n}` to a vector indexed by words of length `n` (first letter most
/// significant).
pub fn apply_tensor_power(u: &CMatrix, n: usize, x: &CVector) -> CVector {
    let d = u.nrows();
    assert!(u.is_square());
    assert_eq!(x.len(), d.pow(n as u32), "apply_tensor_power: length mismatch");
    let mut cur = x.clone();
    let mut scratch = vec![ZERO; d];
    for mode in 0..n {
        let inner = d.pow((n - 1 - mode) as u32);
        let outer = d.pow(mode as u32);
        let mut next = CVector::zeros(cur.len());
        for o in 0..outer {
            for i in 0..inner {
                let base = o * d * inner + i;
                for (a, s) in scratch.iter_mut().enumerate() {
                    *s = cur[base + a * inner];
                }
                for r in 0..d {
                    let mut acc = ZERO;
                    for (a, s) in scratch.iter().enumerate() {
                        acc += u[(r, a)] * s;
                    }
                    next[base + r * inner] = acc;
                }
            }
        }
        cur = next;
    }
    cur
}
