//! Seeded random instances: Haar unitaries, ball points, polynomials.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::freealg::{FreePoly, MatrixTuple, Word};
use crate::mobius::BallAutomorphism;
use crate::linalg::{CMatrix, CVector};

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| gaussian(rng))
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// Random tuple at level `n` rescaled to row norm exactly `radius`.
pub fn ball_tuple<R: Rng + ?Sized>(rng: &mut R, d: usize, n: usize, radius: f64) -> Result<MatrixTuple> {
    let x = MatrixTuple::new((0..d).map(|_| gaussian_matrix(rng, n, n)).collect())?;
    let r = x.row_norm();
    Ok(x.scale_real(radius / r))
}

/// Random homogeneous polynomial of degree `m` with up to `max_terms` Gaussian
/// coefficients (at least one term).
pub fn homogeneous_poly<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    m: usize,
    max_terms: usize,
) -> Result<FreePoly> {
    let words = d.pow(m as u32);
    let count = rng.random_range(1..=max_terms.max(1).min(words));
    let terms: Vec<(Word, Complex64)> = (0..count)
        .map(|_| {
            let idx = rng.random_range(0..words);
            (Word::from_index(idx, m, d), gaussian(rng))
        })
        .collect();
    FreePoly::from_terms(d, terms)
}

/// Random polynomial with dense Gaussian coefficients on all words of length `≤ max_degree`.
pub fn dense_poly<R: Rng + ?Sized>(rng: &mut R, d: usize, max_degree: usize) -> Result<FreePoly> {
    FreePoly::from_terms(
        d,
        Word::all_up_to(max_degree, d)
            .map(|w| (w, gaussian(rng)))
            .collect::<Vec<_>>(),
    )
}

/// Random polynomial with `terms` Gaussian terms of length `≤ max_degree`.
pub fn sparse_poly<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    max_degree: usize,
    terms: usize,
) -> Result<FreePoly> {
    let collected: Vec<(Word, Complex64)> = (0..terms)
        .map(|_| {
            let len = rng.random_range(0..=max_degree);
            let idx = rng.random_range(0..d.pow(len as u32));
            (Word::from_index(idx, len, d), gaussian(rng))
        })
        .collect();
    FreePoly::from_terms(d, collected)
}

/// `U_1 ∘ φ_b ∘ U_2` with Haar `U_1, U_2` and `‖b‖ = radius` uniformly oriented.
pub fn automorphism<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> Result<BallAutomorphism> {
    let g = gaussian_vector(rng, d);
    let b: Vec<Complex64> = g.iter().map(|x| x * (radius / g.norm())).collect();
    let left = BallAutomorphism::from_unitary(&unitary(rng, d))?;
    let right = BallAutomorphism::from_unitary(&unitary(rng, d))?;
    left.compose(&BallAutomorphism::from_point(&b)?)?.compose(&right)
}
