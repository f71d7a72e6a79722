//! Homogeneous two-sided ideals of the free algebra and their quotients.
//!
//! An ideal is stored as its homogeneous generators. The fibers `X(n) = I_n^⊥` are built
//! degree by degree and cached: since `I_{n+1} = C^d ⊗ I_n + Σ_k G_k ⊗ C^{d^{n+1−k}}`,
//! `X(n+1)` is the subspace of `C^d ⊗ X(n)` annihilated by the generators placed at the
//! first letter. The components `I_n` are complements of the fibers, formed on demand.

mod ops;

use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{NcError, Result};
use crate::freealg::{FreePoly, MatrixTuple};
use crate::Complex64;
use crate::linalg::{ad_mul, mul, op_norm, orthogonal_complement, orthonormal_span, CMatrix, CVector, RANK_TOL};
use crate::DIMENSION_GUARD;

pub use ops::{
    matrix_span_subspace, nullstellensatz_witness, quotient_norm_estimate,
    verify_unitary_equivalence, Equivalence, Witness, WitnessPoint, DEFAULT_WITNESS_T,
};

/// Relative residual below which a polynomial counts as an ideal member.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

struct Component {
    fiber: CMatrix,
    ideal: OnceLock<CMatrix>,
}

/// A homogeneous two-sided ideal with lazily computed graded components.
pub struct GradedIdeal {
    d: usize,
    generators: Vec<FreePoly>,
    components: Mutex<Vec<Arc<Component>>>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        let cached = self.components.lock().expect("ideal cache poisoned").clone();
        Self {
            d: self.d,
            generators: self.generators.clone(),
            components: Mutex::new(cached),
        }
    }
}

impl std::fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedIdeal")
            .field("d", &self.d)
            .field("generators", &self.generators)
            .finish()
    }
}

/// Orthonormal basis of `X(n) = I_n^⊥` inside the `d^n`-dimensional degree-`n` space.
#[derive(Clone, Debug)]
pub struct SubproductFiber {
    pub degree: usize,
    pub basis: CMatrix,
}

impl SubproductFiber {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// Outcome of a membership test for a homogeneous polynomial.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// `‖p − P_{I_m} p‖ / ‖p‖` (zero for the zero polynomial).
    pub residual: f64,
    /// `‖p(S^{(m)})‖ / ‖p‖` for the compressed shift truncated at `m = deg p`.
    pub compression_norm: f64,
    /// Coordinates of `P_{I_m} p` in the orthonormal basis of `I_m`.
    pub coefficients: CVector,
}

fn degree_dim(d: usize, n: usize) -> Result<usize> {
    let mut dim = 1usize;
    for _ in 0..n {
        dim = dim.saturating_mul(d);
        if dim > DIMENSION_GUARD {
            return Err(NcError::GuardExceeded {
                dim,
                limit: DIMENSION_GUARD,
            });
        }
    }
    Ok(dim)
}

impl GradedIdeal {
    /// Builds the ideal generated by homogeneous `generators`. Zero generators are dropped;
    /// an inhomogeneous generator is rejected.
    pub fn new(d: usize, generators: Vec<FreePoly>) -> Result<Self> {
        FreePoly::zero(d)?;
        let mut kept = Vec::with_capacity(generators.len());
        for (i, g) in generators.into_iter().enumerate() {
            if g.arity() != d {
                return Err(NcError::DimensionMismatch {
                    expected: d,
                    found: g.arity(),
                    context: "generator arity",
                });
            }
            if g.is_zero() {
                continue;
            }
            if g.homogeneous_degree().is_none() {
                return Err(NcError::NotHomogeneous(format!(
                    "generator {i} has terms of degrees {}..={}",
                    g.min_degree().unwrap_or(0),
                    g.degree().unwrap_or(0)
                )));
            }
            kept.push(g);
        }
        Ok(Self {
            d,
            generators: kept,
            components: Mutex::new(Vec::new()),
        })
    }

    /// The zero ideal `⟨0⟩`.
    pub fn zero(d: usize) -> Result<Self> {
        Self::new(d, Vec::new())
    }

    /// The ideal generated by all commutators `z_i z_j − z_j z_i`.
    pub fn commutator(d: usize) -> Result<Self> {
        Self::zero(d)?.commutatorize()
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[FreePoly] {
        &self.generators
    }

    pub fn max_generator_degree(&self) -> usize {
        self.generators
            .iter()
            .filter_map(FreePoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Adjoins every commutator `z_i z_j − z_j z_i` (`i < j`) to the generators.
    pub fn commutatorize(&self) -> Result<GradedIdeal> {
        let mut generators = self.generators.clone();
        for i in 0..self.d {
            for j in i + 1..self.d {
                let zi = FreePoly::variable(self.d, i)?;
                let zj = FreePoly::variable(self.d, j)?;
                generators.push(&(&zi * &zj) - &(&zj * &zi));
            }
        }
        GradedIdeal::new(self.d, generators)
    }

    fn component(&self, n: usize) -> Result<Arc<Component>> {
        degree_dim(self.d, n)?;
        let mut cache = self.components.lock().expect("ideal cache poisoned");
        while cache.len() <= n {
            let k = cache.len();
            let fiber = match k {
                0 => self.initial_fiber(),
                _ => self.next_fiber(&cache[k - 1].fiber, k - 1),
            };
            cache.push(Arc::new(Component {
                fiber,
                ideal: OnceLock::new(),
            }));
        }
        Ok(cache[n].clone())
    }

    /// Generators of degree `k`, scaled to unit coefficient norm.
    fn unit_generators(&self, k: usize) -> impl Iterator<Item = FreePoly> + '_ {
        self.generators
            .iter()
            .filter(move |g| g.homogeneous_degree() == Some(k))
            .map(|g| g.scale(Complex64::new(1.0 / g.l2_norm(), 0.0)))
    }

    fn initial_fiber(&self) -> CMatrix {
        match self.unit_generators(0).next() {
            Some(_) => CMatrix::zeros(1, 0),
            None => CMatrix::identity(1, 1),
        }
    }

    /// `X(n+1)` from `X(n)` (orthonormal columns `prev`). In coordinates `c` of
    /// `C^d ⊗ X(n)`, a generator `g` of degree `k` at the first letter imposes
    /// `Σ_h conj(g_h) (F c_{h_0})[h_1… t] = 0` for every tail word `t`.
    fn next_fiber(&self, prev: &CMatrix, n: usize) -> CMatrix {
        let d = self.d;
        let low = d.pow(n as u32);
        let f = prev.ncols();
        let cols = d * f;
        if cols == 0 {
            return CMatrix::zeros(low * d, 0);
        }
        let mut blocks: Vec<CMatrix> = Vec::new();
        for k in 1..=n + 1 {
            let tail = d.pow((n + 1 - k) as u32);
            let heads = d.pow((k - 1) as u32);
            for g in self.unit_generators(k) {
                // columns are the conjugated constraint rows
                let mut block = CMatrix::zeros(cols, tail);
                for (w, a) in g.terms() {
                    let idx = w.index_in_degree(d);
                    let (i, rest) = (idx / heads, idx % heads);
                    let rows = prev.rows(rest * tail, tail);
                    let mut view = block.view_mut((i * f, 0), (f, tail));
                    view += rows.adjoint() * *a;
                }
                blocks.push(block);
            }
        }
        let width: usize = blocks.iter().map(|b| b.ncols()).sum();
        let mut constraints = CMatrix::zeros(cols, width);
        let mut at = 0;
        for b in &blocks {
            constraints.columns_mut(at, b.ncols()).copy_from(b);
            at += b.ncols();
        }
        let rowspace = orthonormal_span(&constraints, RANK_TOL);
        let mut next = CMatrix::zeros(low * d, cols - rowspace.ncols());
        if rowspace.ncols() == 0 {
            for i in 0..d {
                next.view_mut((i * low, i * f), (low, f)).copy_from(prev);
            }
            return next;
        }
        let null = orthogonal_complement(&rowspace);
        for i in 0..d {
            let part = mul(prev, &null.rows(i * f, f).into_owned());
            next.rows_mut(i * low, low).copy_from(&part);
        }
        next
    }

    fn ideal_basis(&self, n: usize) -> Result<CMatrix> {
        let c = self.component(n)?;
        Ok(c.ideal.get_or_init(|| orthogonal_complement(&c.fiber)).clone())
    }

    /// Orthonormal basis (columns) of the degree-`n` component `I_n`.
    pub fn graded_basis(&self, n: usize) -> Result<CMatrix> {
        self.ideal_basis(n)
    }

    pub fn ideal_dim(&self, n: usize) -> Result<usize> {
        Ok(degree_dim(self.d, n)? - self.fiber_dim(n)?)
    }

    pub(crate) fn fiber_basis(&self, n: usize) -> Result<FiberRef> {
        Ok(FiberRef(self.component(n)?))
    }

    pub fn fiber(&self, n: usize) -> Result<SubproductFiber> {
        Ok(SubproductFiber {
            degree: n,
            basis: self.fiber_basis(n)?.get().clone(),
        })
    }

    pub fn fiber_dim(&self, n: usize) -> Result<usize> {
        Ok(self.component(n)?.fiber.ncols())
    }

    /// The compressed shift `S^{(N)} = P L^{(N)} P` on `⊕_{n≤N} X(n)`, in the basis formed
    /// by concatenating the fiber bases degree by degree.
    pub fn compressed_shift(&self, degree: usize) -> Result<MatrixTuple> {
        if degree == 0 {
            return Err(NcError::InvalidParameter(
                "compressed shift needs truncation degree at least 1".into(),
            ));
        }
        let fibers: Vec<FiberRef> = (0..=degree)
            .map(|n| self.fiber_basis(n))
            .collect::<Result<_>>()?;
        let dims: Vec<usize> = fibers.iter().map(|f| f.get().ncols()).collect();
        let level: usize = dims.iter().sum();
        if level == 0 {
            return Err(NcError::InvalidParameter(
                "the quotient by this ideal is zero".into(),
            ));
        }
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
        let mut mats = vec![CMatrix::zeros(level, level); self.d];
        for n in 0..degree {
            let low = self.d.pow(n as u32);
            let (src, dst) = (fibers[n].get(), fibers[n + 1].get());
            if src.ncols() == 0 || dst.ncols() == 0 {
                continue;
            }
            for (i, m) in mats.iter_mut().enumerate() {
                let block = dst.rows(i * low, low).ad_mul(src);
                m.view_mut((offsets[n + 1], offsets[n]), (dims[n + 1], dims[n]))
                    .copy_from(&block);
            }
        }
        MatrixTuple::new(mats)
    }

    fn homogeneous_input(&self, p: &FreePoly) -> Result<Option<usize>> {
        if p.arity() != self.d {
            return Err(NcError::DimensionMismatch {
                expected: self.d,
                found: p.arity(),
                context: "polynomial arity vs ideal arity",
            });
        }
        if p.is_zero() {
            return Ok(None);
        }
        p.homogeneous_degree().map(Some).ok_or_else(|| {
            NcError::NotHomogeneous(format!(
                "polynomial has terms of degrees {}..={}",
                p.min_degree().unwrap_or(0),
                p.degree().unwrap_or(0)
            ))
        })
    }

    /// Projection test for a homogeneous `p`, with the compression norm as cross-check.
    pub fn membership(&self, p: &FreePoly) -> Result<Membership> {
        let Some(m) = self.homogeneous_input(p)? else {
            return Ok(Membership {
                member: true,
                residual: 0.0,
                compression_norm: 0.0,
                coefficients: CVector::zeros(0),
            });
        };
        let coords = p.degree_coordinates(m);
        let norm = coords.norm();
        let residual = self.component(m)?.fiber.ad_mul(&coords).norm() / norm;
        let coefficients = self.ideal_basis(m)?.ad_mul(&coords);
        let compression_norm = ops::homogeneous_compression_norm(self, p, m, m)? / norm;
        Ok(Membership {
            member: residual <= MEMBERSHIP_TOL,
            residual,
            compression_norm,
            coefficients,
        })
    }

    pub fn contains(&self, p: &FreePoly) -> Result<bool> {
        Ok(self.membership(p)?.member)
    }

    /// `‖P_{X(m)} p‖_{ℓ²}` for homogeneous `p` of degree `m`.
    pub fn quotient_coefficient_norm(&self, p: &FreePoly) -> Result<f64> {
        let Some(m) = self.homogeneous_input(p)? else {
            return Ok(0.0);
        };
        let coords = p.degree_coordinates(m);
        Ok(self.component(m)?.fiber.ad_mul(&coords).norm())
    }

    /// `‖(I − P_{X(m)} ⊗ P_{X(n)}) P_{X(m+n)}‖`: how far `X(m+n)` sticks out of
    /// `X(m) ⊗ X(n)`.
    pub fn subproduct_residual(&self, m: usize, n: usize) -> Result<f64> {
        let fm = self.fiber_basis(m)?;
        let fn_ = self.fiber_basis(n)?;
        let top = self.fiber_basis(m + n)?;
        let (fm, fn_, top) = (fm.get(), fn_.get(), top.get());
        let (dm, dn, k) = (self.d.pow(m as u32), self.d.pow(n as u32), top.ncols());
        if k == 0 {
            return Ok(0.0);
        }
        // column-major, the entry for word (a, b) of column c sits at b + dn·(a + dm·c)
        let stacked = CMatrix::from_column_slice(dn, dm * k, top.as_slice());
        let right = mul(fn_, &ad_mul(fn_, &stacked));
        let mut swapped = CMatrix::zeros(dn * k, dm);
        for c in 0..k {
            for a in 0..dm {
                for b in 0..dn {
                    swapped[(b + dn * c, a)] = right[(b, a + dm * c)];
                }
            }
        }
        // right multiplication by P_{X(m)}ᵀ = conj(F) Fᵀ
        let both = mul(&mul(&swapped, &fm.map(|z| z.conj())), &fm.transpose());
        let residual = CMatrix::from_fn(dm * dn, k, |row, c| {
            let (a, b) = (row / dn, row % dn);
            top[(row, c)] - both[(b + dn * c, a)]
        });
        Ok(op_norm(&residual))
    }
}

/// Shared handle on a cached fiber basis.
pub(crate) struct FiberRef(Arc<Component>);

impl FiberRef {
    pub(crate) fn get(&self) -> &CMatrix {
        &self.0.fiber
    }
}
