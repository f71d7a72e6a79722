use crate::error::{NcError, Result};
use crate::freealg::{eval_poly, FreePoly, MatrixTuple};
use crate::linalg::{
    apply_tensor_power, op_norm, orthonormal_span, subspace_gap, unitarity_residual, CMatrix,
    CVector, RANK_TOL,
};
use crate::DIMENSION_GUARD;

use super::GradedIdeal;

pub const DEFAULT_WITNESS_T: f64 = 0.5;

/// Largest principal-angle sine accepted as "same subspace".
pub const SPAN_TOL: f64 = 1e-8;

/// Block of `p_k(S)` from `X(n)` to `X(n+k)` for the homogeneous component `p_k`.
fn shift_block(ideal: &GradedIdeal, pk: &FreePoly, k: usize, n: usize) -> Result<CMatrix> {
    let src = ideal.fiber_basis(n)?;
    let dst = ideal.fiber_basis(n + k)?;
    let (src, dst) = (src.get(), dst.get());
    let low = ideal.arity().pow(n as u32);
    let mut block = CMatrix::zeros(dst.ncols(), src.ncols());
    if src.ncols() == 0 || dst.ncols() == 0 {
        return Ok(block);
    }
    for (w, a) in pk.terms() {
        let rows = dst.rows(w.index_in_degree(ideal.arity()) * low, low);
        block += rows.ad_mul(src) * *a;
    }
    Ok(block)
}

/// `‖p(S^{(N)})‖` for homogeneous `p` of degree `m`: the blocks act between mutually
/// orthogonal degrees, so the norm is the largest block norm.
pub(crate) fn homogeneous_compression_norm(
    ideal: &GradedIdeal,
    p: &FreePoly,
    m: usize,
    degree: usize,
) -> Result<f64> {
    let mut best = 0.0f64;
    for n in 0..=degree - m {
        best = best.max(op_norm(&shift_block(ideal, p, m, n)?));
    }
    Ok(best)
}

/// `‖p(S^{(N)})‖`, the norm of `p` on the compressed shift truncated at degree `N`.
///
/// Nondecreasing in `N` and a lower bound for the quotient norm of `p`; for homogeneous
/// `p` it is already attained at `N = deg p`.
pub fn quotient_norm_estimate(ideal: &GradedIdeal, p: &FreePoly, degree: usize) -> Result<f64> {
    if p.arity() != ideal.arity() {
        return Err(NcError::DimensionMismatch {
            expected: ideal.arity(),
            found: p.arity(),
            context: "polynomial arity vs ideal arity",
        });
    }
    let Some(deg) = p.degree() else {
        return Ok(0.0);
    };
    if degree < deg {
        return Err(NcError::InvalidParameter(format!(
            "truncation degree {degree} below polynomial degree {deg}"
        )));
    }
    if let Some(m) = p.homogeneous_degree() {
        return homogeneous_compression_norm(ideal, p, m, degree);
    }
    let dims: Vec<usize> = (0..=degree)
        .map(|n| ideal.fiber_dim(n))
        .collect::<Result<_>>()?;
    let level: usize = dims.iter().sum();
    if level > DIMENSION_GUARD {
        return Err(NcError::GuardExceeded {
            dim: level,
            limit: DIMENSION_GUARD,
        });
    }
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &x| {
            let o = *acc;
            *acc += x;
            Some(o)
        })
        .collect();
    let mut full = CMatrix::zeros(level, level);
    for k in 0..=deg {
        let pk = p.homogeneous_component(k);
        if pk.is_zero() {
            continue;
        }
        for n in 0..=degree - k {
            let block = shift_block(ideal, &pk, k, n)?;
            let mut view = full.view_mut((offsets[n + k], offsets[n]), (dims[n + k], dims[n]));
            view += block;
        }
    }
    Ok(op_norm(&full))
}

/// A separating point for a non-member, with its diagnostics.
#[derive(Clone, Debug)]
pub struct WitnessPoint {
    /// `t · S^{(m)}`, `m = max(deg p, 1)`.
    pub point: MatrixTuple,
    pub t: f64,
    pub degree: usize,
    pub row_norm: f64,
    /// Largest `‖g(X)‖` over the generators.
    pub generator_residual: f64,
    /// `‖p(X)‖`.
    pub value_norm: f64,
    /// `‖P_{X(m)} p‖_{ℓ²}`, the absolute distance of `p` from the ideal.
    pub quotient_residual: f64,
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// `p ∈ J`; `coefficients` are the coordinates of `p` in the orthonormal basis of `J_m`.
    Member {
        coefficients: CVector,
        residual: f64,
    },
    Point(WitnessPoint),
}

/// For homogeneous `p ∉ J`, a strict row contraction `X = t·S^{(m)}` that annihilates every
/// generator of `J` while `p(X) ≠ 0`; for `p ∈ J`, the membership certificate.
pub fn nullstellensatz_witness(ideal: &GradedIdeal, p: &FreePoly, t: f64) -> Result<Witness> {
    if !(t > 0.0 && t < 1.0) {
        return Err(NcError::InvalidParameter(format!(
            "witness scale t = {t} must lie in (0, 1)"
        )));
    }
    let membership = ideal.membership(p)?;
    if membership.member {
        return Ok(Witness::Member {
            coefficients: membership.coefficients,
            residual: membership.residual,
        });
    }
    let m = p.homogeneous_degree().expect("non-members are nonzero and homogeneous");
    let degree = m.max(1);
    let point = ideal.compressed_shift(degree)?.scale_real(t);
    let generator_residual = ideal
        .generators()
        .iter()
        .map(|g| eval_poly(g, &point).map(|v| op_norm(&v)))
        .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)))?;
    let value_norm = op_norm(&eval_poly(p, &point)?);
    Ok(Witness::Point(WitnessPoint {
        row_norm: point.row_norm(),
        point,
        t,
        degree,
        generator_residual,
        value_norm,
        quotient_residual: ideal.quotient_coefficient_norm(p)?,
    }))
}

/// Orthonormal basis (columns of a `d × r` matrix) of the smallest `V ⊆ C^d` with every
/// point in `V ⊗ M_n`.
///
/// `V` is the common zero set of the functionals `f` with `Σ_i f_i X_i = 0` on all points,
/// which is the span of the entry vectors `(X_1[a,b], …, X_d[a,b])`.
pub fn matrix_span_subspace(d: usize, points: &[MatrixTuple]) -> Result<CMatrix> {
    FreePoly::zero(d)?;
    let Some(first) = points.first() else {
        return Ok(CMatrix::zeros(d, 0));
    };
    let n = first.level();
    for (k, x) in points.iter().enumerate() {
        if x.arity() != d {
            return Err(NcError::DimensionMismatch {
                expected: d,
                found: x.arity(),
                context: "matrix span point arity",
            });
        }
        if x.level() != n {
            return Err(NcError::Shape(format!(
                "point {k} has level {}, expected {n}",
                x.level()
            )));
        }
    }
    let mut entries = CMatrix::zeros(d, points.len() * n * n);
    let mut col = 0;
    for x in points {
        for b in 0..n {
            for a in 0..n {
                for i in 0..d {
                    entries[(i, col)] = x.get(i)[(a, b)];
                }
                col += 1;
            }
        }
    }
    Ok(orthonormal_span(&entries, RANK_TOL))
}

#[derive(Clone, Debug)]
pub struct Equivalence {
    pub equivalent: bool,
    /// Largest principal-angle sine over all checked degrees.
    pub max_gap: f64,
    /// Every degree `0..=degree` was compared.
    pub degree: usize,
}

/// Checks `U^{⊗n} J1_n = J2_n` for every `n ≤ N`, through the fibers: `U^{⊗n}` is unitary,
/// so it matches the components exactly when it matches their complements.
pub fn verify_unitary_equivalence(
    u: &CMatrix,
    first: &GradedIdeal,
    second: &GradedIdeal,
    degree: usize,
) -> Result<Equivalence> {
    let d = first.arity();
    if second.arity() != d || u.nrows() != d || u.ncols() != d {
        return Err(NcError::Shape(format!(
            "unitary is {}x{}, ideals have arities {} and {}",
            u.nrows(),
            u.ncols(),
            d,
            second.arity()
        )));
    }
    let residual = unitarity_residual(u);
    if residual > 1e-10 {
        return Err(NcError::NotUnitary { residual });
    }
    let needed = first.max_generator_degree().max(second.max_generator_degree());
    if degree < needed {
        return Err(NcError::InvalidParameter(format!(
            "degree {degree} below the largest generator degree {needed}"
        )));
    }
    let mut max_gap = 0.0f64;
    for n in 0..=degree {
        let b1 = first.fiber_basis(n)?;
        let b2 = second.fiber_basis(n)?;
        let (b1, b2) = (b1.get(), b2.get());
        let mut moved = CMatrix::zeros(b1.nrows(), b1.ncols());
        for k in 0..b1.ncols() {
            let col: CVector = b1.column(k).into_owned();
            moved.column_mut(k).copy_from(&apply_tensor_power(u, n, &col));
        }
        max_gap = max_gap.max(subspace_gap(&moved, b2));
    }
    Ok(Equivalence {
        equivalent: max_gap <= SPAN_TOL,
        max_gap,
        degree,
    })
}
