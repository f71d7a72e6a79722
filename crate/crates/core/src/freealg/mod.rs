//! The free monoid, the free algebra and matrix tuples.
//!
//! A word `k = i_1 ⋯ i_m` acts on a tuple `X` as the ordered product
//! `X^k = X_{i_1} ⋯ X_{i_m}`; the empty word acts as the identity.

mod poly;
mod tuple;
mod word;

use std::collections::HashMap;

pub use poly::FreePoly;
pub(crate) use poly::check_arity;
pub use tuple::MatrixTuple;
pub use word::{basis_dim, Word};

use crate::error::{NcError, Result};
use crate::linalg::CMatrix;

/// Evaluates `p` at `X`: `Σ_k a_k X^k`.
///
/// Word products are memoized on prefixes within the call, so every monomial costs one
/// extra matrix product beyond its longest already-computed prefix.
pub fn eval_poly(p: &FreePoly, x: &MatrixTuple) -> Result<CMatrix> {
    if p.arity() != x.arity() {
        return Err(NcError::DimensionMismatch {
            expected: p.arity(),
            found: x.arity(),
            context: "polynomial arity vs tuple arity",
        });
    }
    let n = x.level();
    let mut cache: HashMap<Vec<u8>, CMatrix> = HashMap::new();
    let mut out = CMatrix::zeros(n, n);
    for (w, c) in p.terms() {
        if w.is_empty() {
            for i in 0..n {
                out[(i, i)] += c;
            }
            continue;
        }
        let m = word_power(x, w.letters(), &mut cache);
        out += m * *c;
    }
    Ok(out)
}

fn word_power<'a>(
    x: &MatrixTuple,
    letters: &[u8],
    cache: &'a mut HashMap<Vec<u8>, CMatrix>,
) -> &'a CMatrix {
    if !cache.contains_key(letters) {
        let value = match letters.split_last() {
            Some((&last, [])) => x.get(last as usize).clone(),
            Some((&last, prefix)) => word_power(x, prefix, cache) * x.get(last as usize),
            None => CMatrix::identity(x.level(), x.level()),
        };
        cache.insert(letters.to_vec(), value);
    }
    &cache[letters]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn e(n: usize, i: usize, j: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        m[(i, j)] = c(1.0);
        m
    }

    #[test]
    fn unit_evaluates_to_identity() {
        let x = MatrixTuple::new(vec![e(3, 0, 2), e(3, 1, 1)]).unwrap();
        let one = FreePoly::one(2).unwrap();
        assert_eq!(eval_poly(&one, &x).unwrap(), CMatrix::identity(3, 3));
    }

    #[test]
    fn scalar_square() {
        let p = FreePoly::monomial(1, Word::from_usize(&[0, 0], 1).unwrap(), c(1.0)).unwrap();
        let x = MatrixTuple::scalar(&[c(2.0)]).unwrap();
        assert_eq!(eval_poly(&p, &x).unwrap()[(0, 0)], c(4.0));
    }

    #[test]
    fn commutator_on_matrix_units() {
        let z1 = FreePoly::variable(2, 0).unwrap();
        let z2 = FreePoly::variable(2, 1).unwrap();
        let p = &(&z1 * &z2) - &(&z2 * &z1);
        let x = MatrixTuple::new(vec![e(2, 0, 1), e(2, 1, 0)]).unwrap();
        // dense oracle: E12 E21 - E21 E12
        let oracle = e(2, 0, 1) * e(2, 1, 0) - e(2, 1, 0) * e(2, 0, 1);
        let value = eval_poly(&p, &x).unwrap();
        assert_eq!(value, oracle);
        assert_eq!(value, e(2, 0, 0) - e(2, 1, 1));
    }

    #[test]
    fn arity_mismatch() {
        let p = FreePoly::variable(3, 0).unwrap();
        let x = MatrixTuple::zeros(2, 2).unwrap();
        assert!(matches!(
            eval_poly(&p, &x),
            Err(NcError::DimensionMismatch { .. })
        ));
    }
}
