//! Seeded property suites behind `polarity verify`.
//!
//! Each suite draws its own stream from `seed` and its position in the suite
//! list, so adding a suite never perturbs the others. A suite passes when every
//! trial produces equal sides; its record keeps the first failing pair, or the
//! last trial's pair when all pass.

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cube::{
    divergence_theorem_cross_check, face_couple_about_cube_center, face_couple_about_face_center,
    face_traction_sum, integrate_volume_vec, Cube, Face,
};
use crate::models::{
    conformal_map, couple_stress, curvature, nonlocal_stress, respond, strain, ConformalMapParams,
    IsotropicMaterial, Model, ModelKind,
};
use crate::poly::{
    curl_tensor, curl_vector, div_tensor, div_vector, grad_scalar, grad_tensor, grad_vector,
    PolyMat3, PolyVec3,
};
use crate::random::XorShift64;
use crate::rational::{abs, format_rational, int, Rational};
use crate::report::{to_value, CheckRecord, RunReport};
use crate::scenarios::{couple_translation_invariance, trace_free_family, yang_surface_identity, TraceFreeFamilyParams};
use crate::taylor::{
    angular_balance_residual, angular_balance_residual_by_integrals, couple_stress_field,
    couple_stress_from_gradients, expand_on, grad_tr_decomposition, polarity_criteria,
    semipolar_terms, split_bilinear, split_linear, PolarityClass,
};
use crate::tensor::{anti, axl_of_skew, cross, decompose, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: u32,
    pub max_degree: u32,
}

type Sides = (Value, Value);

struct Suite {
    id: &'static str,
    anchor: &'static str,
    detail: &'static str,
    trial: fn(&mut XorShift64, u32) -> Sides,
}

fn sides<T: Serialize>(lhs: &T, rhs: &T) -> Sides {
    (to_value(lhs), to_value(rhs))
}

fn scalars(lhs: &Rational, rhs: &Rational) -> Sides {
    (Value::String(format_rational(lhs)), Value::String(format_rational(rhs)))
}

fn holds(b: bool) -> Sides {
    (Value::Bool(b), Value::Bool(true))
}

fn positive(rng: &mut XorShift64) -> Rational {
    abs(&rng.nonzero_rational())
}

fn cube(rng: &mut XorShift64) -> Cube {
    let center = rng.vec3();
    Cube::new(center, positive(rng)).expect("edge is positive")
}

fn material(rng: &mut XorShift64) -> IsotropicMaterial {
    IsotropicMaterial::new(positive(rng), rng.rational(), positive(rng), rng.rational(), rng.rational(), rng.rational())
        .expect("mu and length are positive")
}

const SUITES: &[Suite] = &[
    Suite {
        id: "tensor.anti-cross",
        anchor: "tensor.anti",
        detail: "anti(a) b = a × b",
        trial: |r, _| {
            let (a, b) = (r.vec3(), r.vec3());
            sides(&anti(&a).mul_vec(&b), &cross(&a, &b))
        },
    },
    Suite {
        id: "tensor.axl-anti",
        anchor: "tensor.axl",
        detail: "axl(anti(a)) = a",
        trial: |r, _| {
            let a = r.vec3();
            sides(&axl_of_skew(&anti(&a)), &a)
        },
    },
    Suite {
        id: "tensor.decomposition-sum",
        anchor: "tensor.decomposition",
        detail: "dev sym X + skew X + spherical X = X",
        trial: |r, _| {
            let x = r.mat3();
            let d = decompose(&x);
            sides(&(&(&d.dev_sym + &d.skew) + &d.spherical), &x)
        },
    },
    Suite {
        id: "tensor.rotation-valid",
        anchor: "tensor.rotation",
        detail: "Cayley rotations are exact proper rotations",
        trial: |r, _| holds(r.rotation().is_rotation()),
    },
    Suite {
        id: "tensor.rotation-trace",
        anchor: "tensor.rotation",
        detail: "tr(Q X Qᵀ) = tr X",
        trial: |r, _| {
            let (q, x) = (r.rotation(), r.mat3());
            scalars(&q.matmul(&x).matmul(&q.transpose()).trace(), &x.trace())
        },
    },
    Suite {
        id: "poly.curl-grad",
        anchor: "calculus.curl",
        detail: "curl grad φ = 0",
        trial: |r, d| sides(&curl_vector(&grad_scalar(&r.poly_scalar(d))), &PolyVec3::zero()),
    },
    Suite {
        id: "poly.div-curl",
        anchor: "calculus.curl",
        detail: "div curl v = 0",
        trial: |r, d| holds(div_vector(&curl_vector(&r.poly_vec3(d))).is_zero()),
    },
    Suite {
        id: "poly.curl-axl",
        anchor: "calculus.curl",
        detail: "curl v = 2 axl skew Grad v",
        trial: |r, d| {
            let v = r.poly_vec3(d);
            sides(&curl_vector(&v), &grad_vector(&v).axl_of_skew().scale(&int(2)))
        },
    },
    Suite {
        id: "poly.div-curl-tensor",
        anchor: "calculus.curl",
        detail: "Div Curl X = 0",
        trial: |r, d| sides(&div_tensor(&curl_tensor(&r.poly_mat3(d))), &PolyVec3::zero()),
    },
    Suite {
        id: "poly.curl-grad-tensor",
        anchor: "calculus.curl",
        detail: "Curl Grad v = 0",
        trial: |r, d| sides(&curl_tensor(&grad_vector(&r.poly_vec3(d))), &PolyMat3::zero()),
    },
    Suite {
        id: "poly.shift-eval",
        anchor: "calculus.polynomial",
        detail: "f(· + o) evaluated at x equals f(x + o)",
        trial: |r, d| {
            let (f, o, x) = (r.poly_scalar(d), r.vec3(), r.vec3());
            scalars(&f.shift(&o).eval(&x), &f.eval(&(&x + &o)))
        },
    },
    Suite {
        id: "poly.product-rule",
        anchor: "calculus.polynomial",
        detail: "∂(fg) = (∂f)g + f(∂g)",
        trial: |r, d| {
            let (f, g) = (r.poly_scalar(d), r.poly_scalar(d));
            let axis = r.below(3) as usize;
            let lhs = (&f * &g).derivative(axis);
            let mut rhs = &f.derivative(axis) * &g;
            rhs += &(&f * &g.derivative(axis));
            sides(&lhs, &rhs)
        },
    },
    Suite {
        id: "cube.divergence-theorem",
        anchor: "cube.divergence",
        detail: "Σ ∫ σn dA = ∫ Div σ dV",
        trial: |r, d| {
            let (s, c) = (r.poly_mat3(d), cube(r));
            sides(&face_traction_sum(&s, &c), &integrate_volume_vec(&div_tensor(&s), &c))
        },
    },
    Suite {
        id: "cube.cross-divergence-theorem",
        anchor: "cube.cross-product-divergence",
        detail: "∫ x × A n dA = ∫ x × Div A + 2 axl skew A dV",
        trial: |r, d| {
            let (a, c) = (r.poly_mat3(d), cube(r));
            let (lhs, rhs) = divergence_theorem_cross_check(&a, &c);
            sides(&lhs, &rhs)
        },
    },
    Suite {
        id: "cube.constant-moment",
        anchor: "cube.constant-stress",
        detail: "net moment of a constant stress is 2 axl skew σ⁰ V",
        trial: |r, _| {
            let (s, c) = (r.mat3(), cube(r));
            let lhs = face_couple_about_cube_center(&PolyMat3::constant(&s), &c);
            sides(&lhs, &axl_of_skew(&s).scale(&(int(2) * c.volume())))
        },
    },
    Suite {
        id: "taylor.reconstruct",
        anchor: "taylor.expansion",
        detail: "second-order fields are rebuilt exactly from their Taylor data",
        trial: |r, d| {
            let (s, c) = (r.poly_mat3(d.min(2)), cube(r));
            sides(&expand_on(&s, &c).reconstruct(), &s)
        },
    },
    Suite {
        id: "taylor.pieces-sum",
        anchor: "taylor.expansion",
        detail: "σ⁰ + np + p1 + p2 + b1 + b2 + q equals the truncated field",
        trial: |r, d| {
            let (s, c) = (r.poly_mat3(d), cube(r));
            let t = expand_on(&s, &c);
            let (np, p1, p2) = split_linear(&t);
            let (b1, b2) = split_bilinear(&t);
            let mut sum = t.constant_term();
            for piece in [np, p1, p2, b1, b2, t.quadratic_term()] {
                sum += &piece;
            }
            sides(&sum, &t.reconstruct())
        },
    },
    Suite {
        id: "taylor.face-couple-columns",
        anchor: "cube.face-couple-pattern",
        detail: "face-i couple of the p2 piece equals L² times column i of m",
        trial: |r, d| {
            let (s, c) = (r.poly_mat3(d), cube(r));
            let t = expand_on(&s, &c);
            let p2 = split_linear(&t).2;
            let m = couple_stress_from_gradients(&t);
            let positive = Face::all().into_iter().filter(|f| f.is_positive());
            let lhs: Vec<Vec3> = positive.clone().map(|f| face_couple_about_face_center(&p2, &c, f)).collect();
            let rhs: Vec<Vec3> = positive.map(|f| m.column(f.axis()).scale(&c.face_area())).collect();
            sides(&lhs, &rhs)
        },
    },
    Suite {
        id: "taylor.trace-free",
        anchor: "couple-stress.trace-free",
        detail: "symmetric stress gives trace-free m",
        trial: |r, d| {
            let (s, c) = (r.symmetric_poly_mat3(d), cube(r));
            holds(couple_stress_from_gradients(&expand_on(&s, &c)).trace().is_zero())
        },
    },
    Suite {
        id: "taylor.piece-criteria",
        anchor: "polarity.table",
        detail: "np and b1 carry neither criterion, p2 no net moment, q no face couples",
        trial: |r, d| {
            let (s, c) = (r.poly_mat3(d), cube(r));
            let t = expand_on(&s, &c);
            let (np, _, p2) = split_linear(&t);
            let b1 = split_bilinear(&t).0;
            let class = |x: &PolyMat3| polarity_criteria(x, &c);
            let no_couples = |x: &PolyMat3| class(x).face_couples.iter().all(Vec3::is_zero);
            let ok = class(&np).class == PolarityClass::Nonpolar
                && class(&b1).class == PolarityClass::Nonpolar
                && class(&p2).net_moment.is_zero()
                && no_couples(&t.quadratic_term());
            holds(ok)
        },
    },
    Suite {
        id: "taylor.bipolar-identity",
        anchor: "cube.bipolar-divergence",
        detail: "net moment of b2 equals V Div m at the center",
        trial: |r, d| {
            let (s, c) = (r.poly_mat3(d), cube(r));
            let t = expand_on(&s, &c);
            let b2 = split_bilinear(&t).1;
            let div_m = div_tensor(&couple_stress_field(&t.reconstruct(), c.edge())).eval(c.center());
            sides(&face_couple_about_cube_center(&b2, &c), &div_m.scale(&c.volume()))
        },
    },
    Suite {
        id: "taylor.semipolar-identity",
        anchor: "cube.semipolar-chi-psi",
        detail: "net moment of q equals the chi term plus the psi term",
        trial: |r, d| {
            let (s, c) = (r.poly_mat3(d), cube(r));
            let t = expand_on(&s, &c);
            let (first, second) = semipolar_terms(&t);
            sides(&face_couple_about_cube_center(&t.quadratic_term(), &c), &(&first + &second))
        },
    },
    Suite {
        id: "taylor.linear-momentum",
        anchor: "cube.linear-momentum",
        detail: "second-order fields: Σ ∫ σn dA = V Div σ(x₀)",
        trial: |r, d| {
            let (s, c) = (r.poly_mat3(d.min(2)), cube(r));
            sides(&face_traction_sum(&s, &c), &div_tensor(&s).eval(c.center()).scale(&c.volume()))
        },
    },
    Suite {
        id: "taylor.angular-two-routes",
        anchor: "balance.angular",
        detail: "closed-form angular residual equals the surface-integral residual",
        trial: |r, d| {
            let (s, c, body) = (r.poly_mat3(d), cube(r), r.vec3());
            let t = expand_on(&s, &c);
            sides(&angular_balance_residual(&t, &body), &angular_balance_residual_by_integrals(&t, &body))
        },
    },
    Suite {
        id: "taylor.grad-trace",
        anchor: "couple-stress.grad-trace",
        detail: "diagonal divergence plus the axial term rebuilds grad tr σ",
        trial: |r, d| {
            let (s, edge) = (r.poly_mat3(d), positive(r));
            let (div_diag, axl_term) = grad_tr_decomposition(&s, &edge);
            sides(&(&div_diag + &axl_term), &grad_scalar(&s.trace()))
        },
    },
    Suite {
        id: "models.angular-identity",
        anchor: "models.nonlocal-stress",
        detail: "Div m + 2 axl τ̃ = 0",
        trial: |r, d| {
            let m = r.poly_mat3(d);
            let tau = nonlocal_stress(&m);
            sides(&(&div_tensor(&m) + &tau.axl_of_skew().scale(&int(2))), &PolyVec3::zero())
        },
    },
    Suite {
        id: "models.curvature-trace-free",
        anchor: "models.curvature",
        detail: "tr k̃ = 0",
        trial: |r, d| holds(curvature(&r.poly_vec3(d)).trace().is_zero()),
    },
    Suite {
        id: "models.symmetric-divergence",
        anchor: "models.symmetric-variant",
        detail: "Div(σ̃ − σ̂) = 0 and σ̂ is symmetric",
        trial: |r, d| {
            let (u, mat) = (r.poly_vec3(d), material(r));
            let tilde = respond(&u, &Model::projected(ModelKind::Indeterminate, mat.clone())).total_stress;
            let hat = respond(&u, &Model::projected(ModelKind::SymmetricStress, mat)).total_stress;
            holds(div_tensor(&(&tilde - &hat)).is_zero() && hat.is_symmetric())
        },
    },
    Suite {
        id: "models.angular-balance",
        anchor: "balance.angular",
        detail: "Div m + 2 axl skew σ̃ vanishes for the constitutive response",
        trial: |r, d| {
            let (u, mat) = (r.poly_vec3(d), material(r));
            let resp = respond(&u, &Model::projected(ModelKind::Indeterminate, mat));
            let residual = &div_tensor(&resp.couple_stress) + &resp.total_stress.axl_of_skew().scale(&int(2));
            sides(&residual, &PolyVec3::zero())
        },
    },
    Suite {
        id: "models.conformal-strain",
        anchor: "models.conformal",
        detail: "dev sym Grad φ_c = 0 and the modified model gives m = 0",
        trial: |r, _| {
            let params = ConformalMapParams {
                w_hat: anti(&r.vec3()),
                a_hat: anti(&r.vec3()),
                p_hat: r.rational(),
                b_hat: r.vec3(),
            };
            let phi = conformal_map(&params).expect("parameters are antisymmetric");
            let u = &phi - &PolyVec3::position();
            let model = Model::projected(ModelKind::ModifiedConformal, material(r));
            let m = couple_stress(&curvature(&u), &model).expect("curvature is trace free");
            holds(grad_vector(&phi).sym().dev().is_zero() && strain(&u).dev().is_zero() && m.is_zero())
        },
    },
    Suite {
        id: "models.third-order-gradient",
        anchor: "calculus.polynomial",
        detail: "Grad of Grad v agrees with Grad applied componentwise",
        trial: |r, d| {
            let v = r.poly_vec3(d);
            let g = grad_tensor(&grad_vector(&v));
            let ok = (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| g.0[i][j][k] == v.0[i].derivative(j).derivative(k))));
            holds(ok)
        },
    },
    Suite {
        id: "scenarios.yang-surface",
        anchor: "rigid-body.surface-identity",
        detail: "surface moment of m equals its volume form",
        trial: |r, d| {
            let (m, c) = (r.poly_mat3(d), cube(r));
            let id = yang_surface_identity(&m, &c);
            sides(&id.surface, &id.volume)
        },
    },
    Suite {
        id: "scenarios.trace-free-family",
        anchor: "couple-stress.trace-free-family",
        detail: "face integrals, closed form and gradient formula agree",
        trial: |r, _| {
            let p = TraceFreeFamilyParams { a: r.rational(), b: r.rational(), c: r.rational(), length: positive(r) };
            let f = trace_free_family(&p).expect("length is positive");
            holds(f.m_integral == f.m_closed && f.m_closed == f.m_gradients && f.div_sigma.is_zero())
        },
    },
    Suite {
        id: "scenarios.couple-translation",
        anchor: "rigid-body.free-couple",
        detail: "the moment of a force pair does not depend on the reference point",
        trial: |r, _| {
            let (f, x1, shift) = (r.vec3(), r.vec3(), r.vec3());
            let x2 = &x1 + &Vec3::from_ints(1, 0, 0);
            let (m, shifted) = couple_translation_invariance(&f, &x1, &x2, &shift).expect("lever is nonzero");
            sides(&m, &shifted)
        },
    },
];

/// Runs every suite for `trials` trials. `trials` must be positive.
pub fn run_verify(config: &VerifyConfig) -> RunReport {
    let params = json!({
        "seed": config.seed,
        "trials": config.trials,
        "max_degree": config.max_degree,
    });
    let mut report = RunReport::new("verify", params.clone(), params.to_string().as_bytes());
    for (index, suite) in SUITES.iter().enumerate() {
        let mut rng = XorShift64::new(config.seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut last = (Value::Null, Value::Null);
        let mut failed_at = None;
        for trial in 0..config.trials {
            let (lhs, rhs) = (suite.trial)(&mut rng, config.max_degree);
            let bad = lhs != rhs;
            last = (lhs, rhs);
            if bad {
                failed_at = Some(trial);
                break;
            }
        }
        let detail = match failed_at {
            Some(t) => format!("{} (failed at trial {t})", suite.detail),
            None => format!("{} ({} trials)", suite.detail, config.trials),
        };
        report.push(CheckRecord::new(suite.id, suite.anchor, failed_at.is_none(), last.0, last.1, &detail));
    }
    report.set_data("suites", SUITES.len());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_are_distinct() {
        let mut ids: Vec<_> = SUITES.iter().map(|s| s.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), SUITES.len());
        assert!(ids.len() >= 25);
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let config = VerifyConfig { seed: 7, trials: 2, max_degree: 2 };
        let a = run_verify(&config).to_json();
        let b = run_verify(&config).to_json();
        assert_eq!(a, b);
        let report = run_verify(&config);
        let failures: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
        assert!(failures.is_empty(), "{failures:?}");
    }
}
