//! Acceptance criteria. Prints one line per criterion and exits nonzero when
//! any criterion fails, except those marked as known failures.

use num_traits::{One, Zero};
use polarity_core::cube::{
    divergence_theorem_cross_check, face_couple_about_cube_center, face_couple_about_face_center,
    face_traction_sum, integrate_volume_vec, Cube, Face,
};
use polarity_core::models::{
    conformal_map, couple_stress, curvature, energies, nonlocal_stress, respond, ConformalMapParams,
    IsotropicMaterial, Model, ModelKind,
};
use polarity_core::poly::{
    curl_tensor, curl_vector, div_tensor, grad_vector, pushforward_rotation, PolyMat3, PolyScalar,
};
use polarity_core::random::{monomials, XorShift64};
use polarity_core::rational::{abs, int, rat, Rational};
use polarity_core::scenarios::{
    cantilever_default, torsion_scenario, trace_free_family, yang_surface_identity, yang_third_balance,
    AppliedCouple, TorsionParams, TraceFreeFamilyParams,
};
use polarity_core::taylor::{
    chi, chi_of, classify, couple_stress_field, couple_stress_from_gradients, expand_on, psi,
    split_bilinear, split_linear, PolarityClass,
};
use polarity_core::tensor::{anti, axl_of_skew, cayley_rotation, pythagorean_rotation, rotate_tensor, Mat3, Vec3};

type Criterion = (&'static str, fn() -> Outcome);

enum Outcome {
    Pass(String),
    Fail(String),
    /// The claim does not hold; the line documents the counterexample.
    Known(String),
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass(detail.into())
    } else {
        Outcome::Fail(detail.into())
    }
}

fn positive(g: &mut XorShift64) -> Rational {
    abs(&g.nonzero_rational())
}

fn cube(g: &mut XorShift64) -> Cube {
    let center = g.vec3();
    Cube::new(center, positive(g)).unwrap()
}

/// Every coefficient up to `degree` nonzero, so no piece vanishes by accident.
fn dense_field(g: &mut XorShift64, degree: u32) -> PolyMat3 {
    PolyMat3::from_fn(|_, _| PolyScalar::from_terms(monomials(degree).into_iter().map(|e| (g.nonzero_rational(), e))))
}

fn count(n: usize, mut f: impl FnMut() -> bool) -> usize {
    (0..n).filter(|_| f()).count()
}

fn boxed_m_formula() -> Outcome {
    let mut g = XorShift64::new(1);
    let ok = count(100, || {
        let (s, c) = (g.poly_mat3(3), cube(&mut g));
        let t = expand_on(&s, &c);
        let p2 = split_linear(&t).2;
        let m = couple_stress_from_gradients(&t);
        Face::all()
            .into_iter()
            .filter(|f| f.is_positive())
            .all(|f| m.column(f.axis()).scale(&c.face_area()) == face_couple_about_face_center(&p2, &c, f))
    });
    check(ok == 100, format!("{ok}/100 fields, 3 faces each"))
}

fn trace_free_theorem() -> Outcome {
    let mut g = XorShift64::new(2);
    let ok = count(100, || {
        let (s, c) = (g.symmetric_poly_mat3(3), cube(&mut g));
        couple_stress_from_gradients(&expand_on(&s, &c)).trace().is_zero()
    });
    check(ok == 100, format!("{ok}/100 symmetric fields with tr m = 0"))
}

fn polarity_table() -> Outcome {
    use PolarityClass::*;
    let mut g = XorShift64::new(3);
    let mut tally = Vec::new();
    let mut all = true;
    let mut record = |name: &str, hits: usize| {
        all &= hits == 20;
        tally.push(format!("{name} {hits}/20"));
    };
    let hits = count(20, || {
        let mut k = g.mat3();
        k.0[0][1] = &k.0[1][0] + int(1);
        classify(&PolyMat3::constant(&k), &cube(&mut g)) == Semipolar
    });
    record("nonsymmetric constant", hits);
    let hits = count(20, || {
        let k = g.mat3().sym();
        classify(&PolyMat3::constant(&k), &cube(&mut g)) == Nonpolar
    });
    record("symmetric constant", hits);
    let mut pieces = Vec::new();
    for _ in 0..20 {
        let c = cube(&mut g);
        let t = expand_on(&dense_field(&mut g, 2), &c);
        let (np, _, p2) = split_linear(&t);
        let (b1, b2) = split_bilinear(&t);
        pieces.push([
            classify(&np, &c) == Nonpolar,
            classify(&p2, &c) == Polar,
            classify(&b1, &c) == Nonpolar,
            classify(&b2, &c) == Bipolar,
            classify(&t.quadratic_term(), &c) == Semipolar,
        ]);
    }
    for (i, name) in ["np", "p2", "b1", "b2", "q"].iter().enumerate() {
        record(name, pieces.iter().filter(|p| p[i]).count());
    }
    check(all, tally.join(", "))
}

fn bipolar_identity() -> Outcome {
    let mut g = XorShift64::new(4);
    let ok = count(50, || {
        let (s, c) = (g.poly_mat3(3), cube(&mut g));
        let t = expand_on(&s, &c);
        let b2 = split_bilinear(&t).1;
        let div_m = div_tensor(&couple_stress_field(&t.reconstruct(), c.edge())).eval(c.center());
        face_couple_about_cube_center(&b2, &c) == div_m.scale(&c.volume())
    });
    check(ok == 50, format!("{ok}/50 fields"))
}

fn semipolar_identity() -> Outcome {
    let mut g = XorShift64::new(5);
    let ok = count(50, || {
        let (s, c) = (g.poly_mat3(3), cube(&mut g));
        let t = expand_on(&s, &c);
        let chi_term = axl_of_skew(&chi_of(&t)).scale(&int(2));
        let psi_term = div_tensor(&psi(&t.reconstruct(), c.edge())).eval(c.center());
        face_couple_about_cube_center(&t.quadratic_term(), &c) == (&chi_term + &psi_term).scale(&c.volume())
    });
    check(ok == 50, format!("{ok}/50 fields match V(2 axl skew χ + Div ψ)"))
}

fn linear_momentum() -> Outcome {
    let mut g = XorShift64::new(6);
    let ok = count(50, || {
        let (s, c) = (g.poly_mat3(2), cube(&mut g));
        face_traction_sum(&s, &c) == div_tensor(&s).eval(c.center()).scale(&c.volume())
    });
    let x = PolyScalar::var(0);
    let cubic = PolyMat3::single(0, 0, &(&x * &x) * &x);
    let c = Cube::new(Vec3::from_ints(1, 0, 0), int(1)).unwrap();
    let lhs = face_traction_sum(&cubic, &c);
    let rhs = div_tensor(&cubic).eval(c.center()).scale(&c.volume());
    check(ok == 50 && lhs != rhs, format!("{ok}/50 quadratic fields; x₁³ counterexample {lhs} vs {rhs}"))
}

fn trace_free_family_suite() -> Outcome {
    let mut g = XorShift64::new(7);
    let mut params: Vec<_> = (0..19).map(|_| (g.rational(), g.rational(), g.rational(), positive(&mut g))).collect();
    params.insert(0, (int(1), int(1), int(1), rat(3, 2)));
    let mut ok = 0;
    let mut ones_zero = false;
    for (a, b, c, length) in params {
        let f = &length * &length / int(12);
        let expected = Mat3::diag(
            &(int(2) * &a - &b - &c),
            &(int(2) * &b - &a - &c),
            &(int(2) * &c - &a - &b),
        )
        .scale(&f);
        let unit = a.is_one() && b.is_one() && c.is_one();
        let fam = trace_free_family(&TraceFreeFamilyParams { a, b, c, length }).unwrap();
        if fam.m_integral == expected && fam.m_closed == expected && fam.m_gradients == expected
            && expected.trace().is_zero()
            && fam.div_sigma.is_zero()
        {
            ok += 1;
        }
        if unit {
            ones_zero = fam.m_integral.is_zero();
        }
    }
    check(ok == 20 && ones_zero, format!("{ok}/20 parameter sets; (1,1,1) gives m = 0: {ones_zero}"))
}

fn torsion() -> Outcome {
    let alpha_bar = rat(1, 100);
    let mu = rat(3, 2);
    let length = int(1);
    let base = |alpha1: Rational, dx: Rational| TorsionParams {
        alpha_bar: alpha_bar.clone(),
        mu: mu.clone(),
        length: length.clone(),
        alpha1,
        dx,
    };
    let r = torsion_scenario(&base(rat(1, 12), int(1))).unwrap();
    let k = Mat3::diag(&rat(-1, 2), &rat(-1, 2), &int(1)).scale(&alpha_bar);
    let curvature_ok = r.curvature == PolyMat3::constant(&k);
    let s = &alpha_bar * &mu * rat(1, 12);
    let m_ok = r.m_constitutive == Mat3::diag(&-&s, &-&s, &(int(2) * &s));
    let face_ok = r.face_couples[0] == Vec3::new(-(&mu * &alpha_bar) / int(12), int(0), int(0));
    let mut matching = true;
    for dx in [int(1), rat(1, 2), rat(2, 3), int(3)] {
        let at = &dx * &dx / int(12);
        let hit = torsion_scenario(&base(at.clone(), dx.clone())).unwrap();
        let miss = torsion_scenario(&base(&at + rat(1, 7), dx.clone())).unwrap();
        let miss2 = torsion_scenario(&base(&at * rat(1, 2), dx)).unwrap();
        matching &= hit.matching_condition && hit.paths_agree;
        matching &= !miss.paths_agree && !miss2.paths_agree;
    }
    check(
        curvature_ok && m_ok && face_ok && matching,
        format!("k̃ {curvature_ok}, m {m_ok}, face-1 couple {face_ok}, match iff L²α₁ = dx²/12 {matching}"),
    )
}

fn material(g: &mut XorShift64) -> IsotropicMaterial {
    IsotropicMaterial::new(positive(g), g.rational(), positive(g), g.rational(), g.rational(), int(0)).unwrap()
}

fn conformal_invariance() -> Outcome {
    let mut g = XorShift64::new(9);
    let ok = count(20, || {
        let params = ConformalMapParams { w_hat: anti(&g.vec3()), a_hat: anti(&g.vec3()), p_hat: g.rational(), b_hat: g.vec3() };
        let phi = conformal_map(&params).unwrap();
        let u = &phi - &polarity_core::poly::PolyVec3::position();
        let mat = material(&mut g);
        let modified = Model::projected(ModelKind::ModifiedConformal, mat.clone());
        let skew = Model::projected(ModelKind::SkewHD, mat.clone());
        let m_mod = respond(&u, &modified).couple_stress;
        let (_, w_curv) = energies(&u, &modified);
        let m_skew = respond(&u, &skew).couple_stress;
        let factor = int(2) * &mat.mu * &mat.length * &mat.length * &mat.alpha2;
        let expected = anti(&axl_of_skew(&params.w_hat)).scale(&factor);
        grad_vector(&phi).sym().dev().is_zero()
            && m_mod.is_zero()
            && w_curv.is_zero()
            && m_skew == PolyMat3::constant(&expected)
            && expected.is_antisymmetric()
    });
    check(ok == 20, format!("{ok}/20 parameter sets"))
}

fn symmetric_variant() -> Outcome {
    let mut g = XorShift64::new(10);
    let ok = count(50, || {
        let u = g.poly_vec3(4);
        let mat = material(&mut g);
        let tilde = respond(&u, &Model::projected(ModelKind::Indeterminate, mat.clone()));
        let hat = respond(&u, &Model::projected(ModelKind::SymmetricStress, mat));
        div_tensor(&(&tilde.total_stress - &hat.total_stress)).is_zero()
            && hat.total_stress.is_symmetric()
            && hat.couple_stress.trace().is_zero()
    });
    check(ok == 50, format!("{ok}/50 displacement fields"))
}

fn chi_objectivity() -> Outcome {
    let mut g = XorShift64::new(11);
    let generic = [
        pythagorean_rotation(0, 3, 4, 5),
        pythagorean_rotation(1, 5, 12, 13),
        pythagorean_rotation(2, 8, 15, 17),
        cayley_rotation(&Vec3::from_ints(1, 2, 3)),
        cayley_rotation(&Vec3::new(rat(1, 2), rat(-1, 3), int(1))),
    ];
    let cube_symmetries: Vec<Mat3> = signed_permutations().into_iter().filter(|q| q.det().is_one()).collect();
    let mut generic_hits = 0;
    let mut symmetric_hits = 0;
    for _ in 0..20 {
        let s = g.poly_mat3(3);
        let x0 = g.vec3();
        let l = positive(&mut g);
        let objective = |q: &Mat3| {
            let pushed = pushforward_rotation(&s, q).unwrap();
            chi(&pushed, &q.mul_vec(&x0), &l) == rotate_tensor(q, &chi(&s, &x0, &l)).unwrap()
        };
        generic_hits += generic.iter().filter(|q| objective(q)).count();
        symmetric_hits += cube_symmetries.iter().filter(|q| objective(q)).count();
    }
    let detail = format!(
        "generic rotations {generic_hits}/100; cube symmetries {symmetric_hits}/{}",
        20 * cube_symmetries.len()
    );
    if generic_hits == 100 {
        Outcome::Pass(detail)
    } else if symmetric_hits == 20 * cube_symmetries.len() {
        Outcome::Known(format!("{detail}; the fixed-k rule is not a tensor contraction"))
    } else {
        Outcome::Fail(detail)
    }
}

fn signed_permutations() -> Vec<Mat3> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..8 {
            out.push(Mat3::from_fn(|i, j| {
                if p[i] != j {
                    Rational::zero()
                } else if signs >> i & 1 == 1 {
                    int(-1)
                } else {
                    int(1)
                }
            }));
        }
    }
    out
}

fn cross_divergence_theorem() -> Outcome {
    let mut g = XorShift64::new(12);
    let ok = count(50, || {
        let a = g.poly_mat3(3);
        let edge = positive(&mut g);
        let centered = Cube::centered(edge.clone()).unwrap();
        let shifted = Cube::new(g.vec3(), edge).unwrap();
        [centered, shifted].iter().all(|c| {
            let (lhs, rhs) = divergence_theorem_cross_check(&a, c);
            let id = yang_surface_identity(&a, c);
            let skew = integrate_volume_vec(&a.axl_of_skew().scale(&int(2)), c);
            lhs == rhs && id.skew_only == skew
        })
    });
    let balanced = curl_tensor(&g.poly_mat3(4));
    let c = cube(&mut g);
    let id = yang_surface_identity(&balanced, &c);
    let residual = id.surface == id.skew_only && !id.skew_only.is_zero();
    check(ok == 50 && residual, format!("{ok}/50 fields on two cubes; Div m = 0 leaves only the skew term: {residual}"))
}

fn yang_fallacy() -> Outcome {
    let couples = cantilever_default();
    let third = yang_third_balance(&couples);
    let at_origin: Vec<_> = couples.iter().map(|c| AppliedCouple { location: Vec3::zero(), couple: c.couple.clone() }).collect();
    let origin = yang_third_balance(&at_origin);
    check(
        third == Vec3::from_ints(0, 0, 1) && origin.is_zero(),
        format!("Σ xᵢ × Lᵢ = {third}; at the origin {origin}"),
    )
}

fn structural_identities() -> Outcome {
    let mut g = XorShift64::new(14);
    let angular = count(50, || {
        let m = g.poly_mat3(3);
        (&div_tensor(&m) + &nonlocal_stress(&m).axl_of_skew().scale(&int(2))).is_zero()
    });
    let curl = count(50, || {
        let v = g.poly_vec3(3);
        curl_vector(&v) == grad_vector(&v).axl_of_skew().scale(&int(2))
    });
    let trace = count(50, || {
        let u = g.poly_vec3(4);
        let k = curvature(&u);
        let m = couple_stress(&k, &Model::projected(ModelKind::Indeterminate, material(&mut g)));
        k.trace().is_zero() && m.is_ok()
    });
    check(
        angular == 50 && curl == 50 && trace == 50,
        format!("Div m + 2 axl τ̃ = 0 {angular}/50, curl {curl}/50, tr k̃ = 0 {trace}/50"),
    )
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("face couples reproduce the boxed m", boxed_m_formula),
        ("symmetric stress gives trace-free m", trace_free_theorem),
        ("polarity table", polarity_table),
        ("bipolar identity", bipolar_identity),
        ("semipolar identity", semipolar_identity),
        ("linear momentum on the cube", linear_momentum),
        ("trace-free family", trace_free_family_suite),
        ("torsion", torsion),
        ("conformal invariance", conformal_invariance),
        ("symmetric-stress variant", symmetric_variant),
        ("objectivity of chi", chi_objectivity),
        ("divergence theorem with cross product", cross_divergence_theorem),
        ("third balance law counterexample", yang_fallacy),
        ("structural identities", structural_identities),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (status, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Known(d) => ("FAIL (known)", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:2} {status}: {name} [{detail}] ({secs:.1}s)", n + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
