//! Report builders for each subcommand.

use polarity_core::analysis::{analyze, AnalysisOptions};
use polarity_core::cube::Cube;
use polarity_core::field_doc::parse_field_document;
use polarity_core::models::{
    bulk_energy, conformal_displacement, conformal_map, energies, respond, ConformalMapParams,
    IsotropicMaterial, Model, ModelKind,
};
use polarity_core::poly::{curl_tensor, grad_vector, PolyMat3, PolyVec3};
use polarity_core::random::XorShift64;
use polarity_core::rational::{format_rational, int, parse_rational, Rational};
use polarity_core::report::{CheckRecord, RunReport};
use polarity_core::scenarios::{
    cantilever, nonassociativity_witness, torsion_scenario, trace_free_family, yang_surface_identity,
    yang_third_balance, AppliedCouple, TorsionParams, TraceFreeFamilyParams,
};
use polarity_core::tensor::{anti, axl_of_skew, Mat3, Vec3};
use polarity_core::verify::{run_verify, VerifyConfig};
use serde_json::{json, Value};

/// A usage or input problem; the binary exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| format!("bad rational {text:?}: {e}"))
}

pub fn vector(text: &str) -> Result<Vec3, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated rationals, got {text:?}"));
    }
    Ok(Vec3::new(rational(parts[0])?, rational(parts[1])?, rational(parts[2])?))
}

fn show(v: &Rational) -> Value {
    Value::String(format_rational(v))
}

fn show_vec(v: &Vec3) -> Value {
    json!([show(&v[0]), show(&v[1]), show(&v[2])])
}

pub fn verify(seed: u64, trials: u32, max_degree: u32) -> Result<RunReport, InputError> {
    if trials == 0 {
        return Err(InputError("--trials must be at least 1".into()));
    }
    Ok(run_verify(&VerifyConfig { seed, trials, max_degree }))
}

pub struct AnalyzeArgs<'a> {
    pub text: &'a str,
    pub x0: Vec3,
    pub edge: Rational,
    pub merge_psi: bool,
    pub body_force: Vec3,
    pub body_couple: Vec3,
}

pub fn analyze_field(a: AnalyzeArgs) -> Result<RunReport, InputError> {
    let doc = parse_field_document(a.text)?;
    let sigma = match doc.get("sigma") {
        None => return Err(InputError("field document has no entry named \"sigma\"".into())),
        Some(_) => doc.tensor("sigma").ok_or_else(|| InputError("\"sigma\" must be a tensor".into()))?,
    };
    let params = json!({
        "x0": show_vec(&a.x0),
        "lc": show(&a.edge),
        "merge_psi": a.merge_psi,
        "body_force": show_vec(&a.body_force),
        "body_couple": show_vec(&a.body_couple),
    });
    let opts = AnalysisOptions { merge_psi: a.merge_psi, body_force: a.body_force, body_couple: a.body_couple };
    let report = analyze(sigma, &a.x0, &a.edge, &opts)?;
    let mut run = RunReport::new("analyze", params, a.text.as_bytes());
    run.extend(report.checks());
    run.truncation_error = Some(report.truncation_error.clone());
    run.set_data("polarity", &report);
    Ok(run)
}

pub fn torsion(p: TorsionParams) -> Result<RunReport, InputError> {
    let params = json!({
        "alpha_bar": show(&p.alpha_bar),
        "mu": show(&p.mu),
        "lc": show(&p.length),
        "alpha1": show(&p.alpha1),
        "dx": show(&p.dx),
    });
    let r = torsion_scenario(&p)?;
    let mut run = RunReport::new("scenario torsion", params.clone(), params.to_string().as_bytes());
    let scale = &p.alpha_bar * &p.mu * &p.length * &p.length * &p.alpha1;
    let expected_m = Mat3::diag(&-&scale, &-&scale, &(int(2) * &scale));
    let dx4 = &p.dx * &p.dx * &p.dx * &p.dx;
    let face1 = Vec3::new(-(&p.mu * &p.alpha_bar * dx4) / int(12), int(0), int(0));
    let special = trace_free_family(&TraceFreeFamilyParams {
        a: int(0),
        b: int(0),
        c: int(12) * &p.alpha_bar * &p.mu * &p.alpha1,
        length: p.length.clone(),
    })?;
    run.extend([
        CheckRecord::equal(
            "torsion.matching-iff-paths-agree",
            "torsion.length-identification",
            &r.paths_agree,
            &r.matching_condition,
            "the two couple stresses agree exactly when L²α₁ = dx²/12",
        ),
        CheckRecord::equal("torsion.m-constitutive", "torsion.couple-stress", &r.m_constitutive, &expected_m, "m = ᾱμL²α₁ diag(−1,−1,2)"),
        CheckRecord::equal("torsion.face-1-couple", "torsion.face-couples", &r.face_couples[0], &face1, "face-1 couple is −μᾱdx⁴/12 e₁"),
        CheckRecord::predicate("torsion.doubled-and-reversed", "torsion.face-couples", r.doubled_and_reversed, "the e₃ face couple is −2 times the e₁ one"),
        CheckRecord::equal("torsion.div-stress", "torsion.equilibrium", &r.div_stress, &PolyVec3::zero(), "the torsion stress is divergence free"),
        CheckRecord::equal(
            "torsion.trace-free-special-case",
            "couple-stress.trace-free-family",
            &special.m_closed,
            &r.m_constitutive,
            "the family with (a, b, c) = (0, 0, 12ᾱμα₁) reproduces m",
        ),
    ]);
    run.set_data("torsion", &r);
    Ok(run)
}

pub fn trace_free(p: TraceFreeFamilyParams) -> Result<RunReport, InputError> {
    let params = json!({"a": show(&p.a), "b": show(&p.b), "c": show(&p.c), "lc": show(&p.length)});
    let f = trace_free_family(&p)?;
    let mut run = RunReport::new("scenario trace-free", params.clone(), params.to_string().as_bytes());
    run.extend([
        CheckRecord::equal("trace-free.integral-closed", "couple-stress.trace-free-family", &f.m_integral, &f.m_closed, "face integrals give the closed form"),
        CheckRecord::equal("trace-free.gradients-closed", "couple-stress.trace-free-family", &f.m_gradients, &f.m_closed, "the gradient formula gives the closed form"),
        CheckRecord::predicate("trace-free.trace", "couple-stress.trace-free", f.m_closed.trace() == int(0), "tr m = 0"),
        CheckRecord::equal("trace-free.div-sigma", "torsion.equilibrium", &f.div_sigma, &PolyVec3::zero(), "Div σ = 0"),
    ]);
    run.set_data("family", &f);
    Ok(run)
}

pub fn yang_cantilever(span: Rational, magnitude: Rational) -> Result<RunReport, InputError> {
    let params = json!({"span": show(&span), "magnitude": show(&magnitude)});
    let couples = cantilever(&span, &magnitude);
    let third = yang_third_balance(&couples);
    let zero = int(0);
    let expected = Vec3::new(zero.clone(), zero.clone(), &span * &magnitude);
    let at_origin: Vec<AppliedCouple> = couples
        .iter()
        .map(|c| AppliedCouple { location: Vec3::zero(), couple: c.couple.clone() })
        .collect();
    let mut total = Vec3::zero();
    for c in &couples {
        total += &c.couple;
    }
    let e2 = Vec3::new(zero.clone(), int(1), zero.clone());
    let f2 = Vec3::new(int(-1), zero.clone(), zero);
    let (lhs, rhs) = nonassociativity_witness(&e2, &f2)?;
    let mut run = RunReport::new("scenario yang-cantilever", params.clone(), params.to_string().as_bytes());
    run.extend([
        CheckRecord::equal("yang.couples-balance", "rigid-body.free-couple", &total, &Vec3::zero(), "the applied couples sum to zero"),
        CheckRecord::equal("yang.third-balance-value", "rigid-body.cantilever", &third, &expected, "Σ xᵢ × Lᵢ = (0, 0, ℓL)"),
        CheckRecord::differ(
            "yang.third-balance-violated",
            "rigid-body.cantilever",
            &third,
            &Vec3::zero(),
            "an equilibrated beam violates the proposed third balance law",
        ),
        CheckRecord::equal("yang.third-balance-origin", "rigid-body.cantilever", &yang_third_balance(&at_origin), &Vec3::zero(), "couples placed at the origin give zero"),
        CheckRecord::differ("yang.nonassociativity", "rigid-body.free-couple", &lhs, &rhs, "Δx × (Δx × F) differs from (Δx × Δx) × F"),
    ]);
    run.set_data("couples", &couples);
    run.set_data("third_balance", &third);
    run.set_data("nonassociativity", json!({"lhs": show_vec(&lhs), "rhs": show_vec(&rhs)}));
    Ok(run)
}

pub fn yang_surface(seed: u64, max_degree: u32, x0: Vec3, edge: Rational) -> Result<RunReport, InputError> {
    let params = json!({"seed": seed, "max_degree": max_degree, "x0": show_vec(&x0), "lc": show(&edge)});
    let cube = Cube::new(x0, edge)?;
    let mut rng = XorShift64::new(seed);
    let m = rng.poly_mat3(max_degree);
    // Div Curl X = 0, so only the skew part survives on the volume side.
    let balanced = curl_tensor(&rng.poly_mat3(max_degree + 1));
    let general = yang_surface_identity(&m, &cube);
    let free = yang_surface_identity(&balanced, &cube);
    let mut run = RunReport::new("scenario yang-surface", params.clone(), params.to_string().as_bytes());
    run.extend([
        CheckRecord::equal("yang-surface.identity", "rigid-body.surface-identity", &general.surface, &general.volume, "∫ x × m n dA = ∫ x × Div m + 2 axl skew m dV"),
        CheckRecord::equal("yang-surface.balanced", "rigid-body.surface-identity", &free.surface, &free.volume, "identity for a divergence-free m"),
        CheckRecord::equal("yang-surface.skew-residual", "rigid-body.surface-identity", &free.surface, &free.skew_only, "with Div m = 0 only ∫ 2 axl skew m dV remains"),
    ]);
    run.set_data("m", &m);
    run.set_data("general", &general);
    run.set_data("divergence_free_m", &balanced);
    run.set_data("divergence_free", &free);
    Ok(run)
}

pub struct ConformalArgs {
    pub w: Vec3,
    pub a: Vec3,
    pub p: Rational,
    pub b: Vec3,
    pub kind: ModelKind,
    pub mu: Rational,
    pub lambda: Rational,
    pub length: Rational,
    pub alpha1: Option<Rational>,
    pub alpha2: Option<Rational>,
}

pub fn conformal(c: ConformalArgs) -> Result<RunReport, InputError> {
    let one = || int(1);
    let material = IsotropicMaterial::new(
        c.mu,
        c.lambda,
        c.length,
        c.alpha1.clone().unwrap_or_else(one),
        c.alpha2.clone().unwrap_or_else(one),
        int(0),
    )?;
    let explicit = |given: &Option<Rational>| given.as_ref().is_some_and(|v| *v != int(0));
    let model = match c.kind {
        ModelKind::ModifiedConformal if explicit(&c.alpha2) => Model::new(c.kind, material)?,
        ModelKind::SkewHD if explicit(&c.alpha1) => Model::new(c.kind, material)?,
        kind => Model::projected(kind, material),
    };
    let params = ConformalMapParams { w_hat: anti(&c.w), a_hat: anti(&c.a), p_hat: c.p, b_hat: c.b };
    let phi = conformal_map(&params)?;
    let u = conformal_displacement(&params)?;
    let r = respond(&u, &model);
    let (w_lin, w_curv) = energies(&u, &model);
    let mat = model.material();
    let two_mu_l2_a2 = int(2) * &mat.mu * &mat.length * &mat.length * &mat.alpha2;
    let expected_m = PolyMat3::constant(&anti(&axl_of_skew(&params.w_hat)).scale(&two_mu_l2_a2));
    let input = json!({"params": &params, "model": &model});
    let mut run = RunReport::new("scenario conformal", input.clone(), input.to_string().as_bytes());
    run.push(CheckRecord::equal(
        "conformal.dev-sym-grad",
        "models.conformal",
        &grad_vector(&phi).sym().dev(),
        &PolyMat3::zero(),
        "dev sym Grad φ_c = 0",
    ));
    run.push(CheckRecord::equal("conformal.bulk-energy", "models.conformal", &w_lin, &bulk_energy(&u, mat), "W_lin is purely volumetric"));
    match model.kind() {
        ModelKind::ModifiedConformal => {
            run.push(CheckRecord::equal("conformal.m-zero", "models.conformal", &r.couple_stress, &PolyMat3::zero(), "m = 0"));
            run.push(CheckRecord::predicate("conformal.curvature-energy-zero", "models.conformal", w_curv.is_zero(), "W_curv = 0"));
        }
        ModelKind::SkewHD | ModelKind::Indeterminate => {
            run.push(CheckRecord::equal("conformal.m-skew-constant", "models.conformal", &r.couple_stress, &expected_m, "m = 2μL²α₂ anti(axl Ŵ)"));
        }
        ModelKind::SymmetricStress => {
            run.push(CheckRecord::predicate("conformal.m-trace-free", "models.symmetric-variant", r.couple_stress.trace().is_zero(), "tr m̂ = 0"));
        }
    }
    run.set_data("displacement", &u);
    run.set_data("couple_stress", &r.couple_stress);
    run.set_data("total_stress", &r.total_stress);
    run.set_data("energies", json!({"w_lin": &w_lin, "w_curv": &w_curv}));
    Ok(run)
}
