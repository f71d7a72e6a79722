use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::word::Word;
use crate::error::{NcError, Result};
use crate::linalg::{CVector, ZERO};
use crate::MAX_ARITY;

pub(crate) fn check_arity(d: usize) -> Result<()> {
    if d == 0 || d > MAX_ARITY {
        return Err(NcError::InvalidArity { d, max: MAX_ARITY });
    }
    Ok(())
}

/// A free polynomial: a finitely supported map from words to complex coefficients.
///
/// Exact zeros are never stored, so the support is the key set.
#[derive(Clone, Debug, PartialEq)]
pub struct FreePoly {
    d: usize,
    terms: BTreeMap<Word, Complex64>,
}

impl FreePoly {
    pub fn zero(d: usize) -> Result<Self> {
        check_arity(d)?;
        Ok(Self {
            d,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(d: usize, c: Complex64) -> Result<Self> {
        Self::monomial(d, Word::empty(), c)
    }

    pub fn one(d: usize) -> Result<Self> {
        Self::constant(d, Complex64::new(1.0, 0.0))
    }

    /// The coordinate function `z_{i+1}` (letters are zero-based).
    pub fn variable(d: usize, i: usize) -> Result<Self> {
        let w = Word::from_usize(&[i], d)?;
        Self::monomial(d, w, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(d: usize, word: Word, c: Complex64) -> Result<Self> {
        Self::from_terms(d, [(word, c)])
    }

    /// Builds a polynomial from (word, coefficient) pairs; repeated words are summed.
    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Word, Complex64)>) -> Result<Self> {
        check_arity(d)?;
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            if let Some(&bad) = w.letters().iter().find(|&&l| l as usize >= d) {
                return Err(NcError::LetterOutOfRange {
                    letter: bad as usize,
                    d,
                });
            }
            *map.entry(w).or_insert(ZERO) += c;
        }
        map.retain(|_, c: &mut Complex64| *c != ZERO);
        Ok(Self { d, terms: map })
    }

    /// Homogeneous polynomial of degree `n` from its dense coordinates over the `d^n`
    /// words of that length.
    pub fn from_degree_coordinates(d: usize, n: usize, coords: &CVector) -> Result<Self> {
        check_arity(d)?;
        if coords.len() != d.pow(n as u32) {
            return Err(NcError::DimensionMismatch {
                expected: d.pow(n as u32),
                found: coords.len(),
                context: "degree coordinates",
            });
        }
        Self::from_terms(
            d,
            coords
                .iter()
                .enumerate()
                .map(|(i, &c)| (Word::from_index(i, n, d), c)),
        )
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Complex64 {
        self.terms.get(w).copied().unwrap_or(ZERO)
    }

    /// Maximal word length in the support; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).min()
    }

    /// `Some(n)` when every term has length `n`. The zero polynomial is homogeneous of
    /// every degree and reports `None`; use [`FreePoly::is_homogeneous`] for a yes/no answer.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match (self.min_degree(), self.degree()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn homogeneous_component(&self, n: usize) -> FreePoly {
        FreePoly {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), *c))
                .collect(),
        }
    }

    /// Dense coordinates of the degree-`n` component over the `d^n` words of length `n`.
    pub fn degree_coordinates(&self, n: usize) -> CVector {
        let mut v = CVector::zeros(self.d.pow(n as u32));
        for (w, c) in self.terms.iter().filter(|(w, _)| w.len() == n) {
            v[w.index_in_degree(self.d)] = *c;
        }
        v
    }

    /// ℓ² norm of the coefficient sequence.
    pub fn l2_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> FreePoly {
        if s == ZERO {
            return FreePoly {
                d: self.d,
                terms: BTreeMap::new(),
            };
        }
        FreePoly {
            d: self.d,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> FreePoly {
        FreePoly {
            d: self.d,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.conj())).collect(),
        }
    }

    fn assert_same_arity(&self, other: &FreePoly) {
        assert_eq!(
            self.d, other.d,
            "free polynomials over different numbers of variables"
        );
    }

    fn combine(&self, other: &FreePoly, sign: f64) -> FreePoly {
        self.assert_same_arity(other);
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            *terms.entry(w.clone()).or_insert(ZERO) += c * sign;
        }
        terms.retain(|_, c| *c != ZERO);
        FreePoly { d: self.d, terms }
    }

    fn product(&self, other: &FreePoly) -> FreePoly {
        self.assert_same_arity(other);
        let mut terms = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                *terms.entry(u.concat(v)).or_insert(ZERO) += a * b;
            }
        }
        terms.retain(|_, c: &mut Complex64| *c != ZERO);
        FreePoly { d: self.d, terms }
    }
}

impl Add for &FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        self.product(rhs)
    }
}

impl Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for FreePoly {
            type Output = FreePoly;
            fn $method(self, rhs: FreePoly) -> FreePoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
