use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncball::fock::{fock_inner, kernel_coefficients, szego_apply};
use ncball::ideals::{
    matrix_span_subspace, nullstellensatz_witness, quotient_norm_estimate, verify_unitary_equivalence,
    Witness,
};
use ncball::linalg::op_norm;
use ncball::pick::{feasible, sup_norm_lower_bound};
use ncball::{eval_poly, FreePoly, GradedIdeal, MatrixTuple};

use crate::args::{Command, Flags};
use crate::emit::{self, Json};
use crate::load::{CliError, Loader};

/// Exit code and output document of a successful run.
pub struct Response {
    pub code: i32,
    pub body: Json,
}

fn answer(affirmative: bool, body: Json) -> Response {
    Response {
        code: if affirmative { 0 } else { 1 },
        body,
    }
}

pub fn execute(command: &Command, flags: &Flags, loader: &mut Loader) -> Result<Response, CliError> {
    match command {
        Command::Eval { poly, tuple } => {
            let p = loader.poly(poly)?;
            let x = loader.tuple(tuple)?;
            let value = eval_poly(&p, &x)?;
            Ok(answer(
                true,
                Json::object([
                    ("d", x.arity().into()),
                    ("n", x.level().into()),
                    ("value", emit::matrix(&value)),
                    ("op_norm", op_norm(&value).into()),
                ]),
            ))
        }
        Command::Norm { poly, ideal } => {
            let p = loader.poly(poly)?;
            let j = match ideal {
                Some(path) => loader.ideal(path)?,
                None => GradedIdeal::zero(p.arity())?,
            };
            norm(&p, &j, flags)
        }
        Command::Kernel { tuple, v, y } => {
            let w = loader.tuple(tuple)?;
            let v = loader.vector(v)?;
            let y = loader.vector(y)?;
            let k = kernel_coefficients(&w, &v, &y, flags.degree)?;
            let truncated = fock_inner(&k, &k)?.re;
            let gram = szego_apply(&w, &w, &(&v * v.adjoint()))?;
            let exact = y.dotc(&(gram * &y)).re;
            let r = w.row_norm();
            let tail = v.norm_squared() * y.norm_squared() * r.powi(2 * (flags.degree as i32 + 1))
                / (1.0 - r * r);
            Ok(answer(
                true,
                Json::object([
                    ("d", w.arity().into()),
                    ("n", w.level().into()),
                    ("degree", flags.degree.into()),
                    ("norm_sq_exact", exact.into()),
                    ("norm_sq_truncated", truncated.into()),
                    ("tail_bound", tail.into()),
                    ("coefficients", emit::poly(&k)),
                ]),
            ))
        }
        Command::IdealBasis { ideal } => {
            let j = loader.ideal(ideal)?;
            let mut dims = Vec::with_capacity(flags.degree + 1);
            for n in 0..=flags.degree {
                dims.push(Json::object([
                    ("degree", n.into()),
                    ("ideal_dim", j.ideal_dim(n)?.into()),
                    ("fiber_dim", j.fiber_dim(n)?.into()),
                ]));
            }
            Ok(answer(
                true,
                Json::object([
                    ("d", j.arity().into()),
                    ("degree", flags.degree.into()),
                    ("dims", Json::Array(dims)),
                    ("basis", emit::matrix(&j.graded_basis(flags.degree)?)),
                ]),
            ))
        }
        Command::IdealMember { ideal, poly } => {
            let j = loader.ideal(ideal)?;
            let p = loader.poly(poly)?;
            let m = j.membership(&p)?;
            Ok(answer(
                m.member,
                Json::object([
                    ("member", m.member.into()),
                    ("residual", m.residual.into()),
                    ("compression_norm", m.compression_norm.into()),
                    ("degree", p.homogeneous_degree().into()),
                ]),
            ))
        }
        Command::Witness { ideal, poly } => {
            let j = loader.ideal(ideal)?;
            let p = loader.poly(poly)?;
            Ok(match nullstellensatz_witness(&j, &p, flags.t)? {
                Witness::Member { residual, .. } => answer(
                    false,
                    Json::object([
                        ("member", true.into()),
                        ("residual", residual.into()),
                        ("t", flags.t.into()),
                        ("degree", p.homogeneous_degree().into()),
                        ("row_norm", Json::Null),
                        ("generator_residual", Json::Null),
                        ("value_norm", Json::Null),
                        ("quotient_residual", Json::Null),
                        ("point", Json::Null),
                    ]),
                ),
                Witness::Point(w) => answer(
                    true,
                    Json::object([
                        ("member", false.into()),
                        ("residual", Json::Null),
                        ("t", w.t.into()),
                        ("degree", w.degree.into()),
                        ("row_norm", w.row_norm.into()),
                        ("generator_residual", w.generator_residual.into()),
                        ("value_norm", w.value_norm.into()),
                        ("quotient_residual", w.quotient_residual.into()),
                        ("point", emit::tuple(&w.point)),
                    ]),
                ),
            })
        }
        Command::PickCheck { problem } => {
            let problem = loader.problem(problem)?;
            let f = feasible(&problem, flags.tol)?;
            Ok(answer(
                f.feasible,
                Json::object([
                    ("feasible", f.feasible.into()),
                    ("margin", f.margin.into()),
                    ("choi_dim", f.choi_dim.into()),
                ]),
            ))
        }
        Command::Mobius { automorphism, tuple } => {
            let phi = loader.automorphism(automorphism)?;
            let z = loader.tuple(tuple)?;
            let (image, cond) = phi.apply_with_condition(&z)?;
            let cartan = phi.cartan_check(z.level(), flags.samples, flags.seed)?;
            Ok(answer(
                true,
                Json::object([
                    ("image", emit::tuple(&image)),
                    ("row_norm", image.row_norm().into()),
                    ("condition", cond.into()),
                    ("signature_residual", phi.signature_residual().into()),
                    ("cartan", cartan.into()),
                ]),
            ))
        }
        Command::Span { tuples } => {
            let points = tuples
                .iter()
                .map(|path| loader.tuple(path))
                .collect::<Result<Vec<MatrixTuple>, CliError>>()?;
            let d = points[0].arity();
            let basis = matrix_span_subspace(d, &points)?;
            Ok(answer(
                true,
                Json::object([
                    ("d", d.into()),
                    ("points", points.len().into()),
                    ("dim", basis.ncols().into()),
                    ("basis", emit::matrix(&basis)),
                ]),
            ))
        }
        Command::Equiv {
            ideal,
            ideal2,
            unitary,
        } => {
            let first = loader.ideal(ideal)?;
            let second = loader.ideal(ideal2)?;
            let u = loader.square(unitary)?;
            let e = verify_unitary_equivalence(&u, &first, &second, flags.degree)?;
            Ok(answer(
                e.equivalent,
                Json::object([
                    ("equivalent", e.equivalent.into()),
                    ("max_gap", e.max_gap.into()),
                    ("degree", e.degree.into()),
                ]),
            ))
        }
    }
}

/// Exact ℓ² formula for homogeneous `p`, compressed-shift estimate at degree `N` otherwise.
/// The sampled lower bound evaluates `p` at `r·S^{(m)}` with seeded radii `r ∈ [1/2, 1)`.
fn norm(p: &FreePoly, j: &GradedIdeal, flags: &Flags) -> Result<Response, CliError> {
    let homogeneous = p.is_homogeneous();
    let (value, truncation) = if homogeneous {
        (j.quotient_coefficient_norm(p)?, p.degree().unwrap_or(0))
    } else {
        (quotient_norm_estimate(j, p, flags.degree)?, flags.degree)
    };
    let m = p.degree().unwrap_or(0).max(1);
    let samples = if j.fiber_dim(0)? == 0 || flags.samples == 0 {
        Vec::new()
    } else {
        let shift = j.compressed_shift(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
        (0..flags.samples)
            .map(|_| shift.scale_real(rng.random_range(0.5..1.0)))
            .collect()
    };
    let bound = sup_norm_lower_bound(p, &samples, Some(j))?;
    Ok(answer(
        true,
        Json::object([
            ("homogeneous", homogeneous.into()),
            ("degree", p.degree().into()),
            ("multiplier_norm", value.into()),
            ("exact", homogeneous.into()),
            ("truncation_degree", truncation.into()),
            ("sup_lower_bound", bound.into()),
            ("samples", samples.len().into()),
        ]),
    ))
}
