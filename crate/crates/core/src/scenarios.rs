//! Worked examples: a symmetric trace-free stress family, a twisted beam,
//! and the rigid-body facts behind the argument against a third balance law.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cube::{
    divergence_theorem_cross_check, face_couple_about_face_center, integrate_volume_vec, Cube,
    CubeError, Face,
};
use crate::models::{self, IsotropicMaterial, Model, ModelKind};
use crate::poly::{div_tensor, grad_vector, PolyMat3, PolyScalar, PolyVec3};
use crate::rational::{pow, rat, Rational};
use crate::taylor::{couple_stress_from_gradients, expand_on};
use crate::tensor::{cross, Mat3, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error("application points coincide; the force pair has no lever arm")]
    ZeroLever,
    #[error("lever arm and force are parallel; there is no couple")]
    ParallelPair,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

fn x(a: usize) -> PolyScalar {
    PolyScalar::var(a)
}

/// `B_a = [[0,−z,y],[−z,0,0],[y,0,0]]`.
pub fn basis_a() -> PolyMat3 {
    let z = PolyScalar::zero();
    PolyMat3([
        [z.clone(), -x(2), x(1)],
        [-x(2), z.clone(), z.clone()],
        [x(1), z.clone(), z],
    ])
}

/// `B_b = [[0,z,0],[z,0,−x],[0,−x,0]]`.
pub fn basis_b() -> PolyMat3 {
    let z = PolyScalar::zero();
    PolyMat3([
        [z.clone(), x(2), z.clone()],
        [x(2), z.clone(), -x(0)],
        [z.clone(), -x(0), z],
    ])
}

/// `B_c = [[0,0,−y],[0,0,x],[−y,x,0]]`.
pub fn basis_c() -> PolyMat3 {
    let z = PolyScalar::zero();
    PolyMat3([
        [z.clone(), z.clone(), -x(1)],
        [z.clone(), z.clone(), x(0)],
        [-x(1), x(0), z],
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFreeFamilyParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub length: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceFreeFamily {
    pub sigma: PolyMat3,
    pub div_sigma: PolyVec3,
    /// Column `i` is the face-`i` couple about the face center over `L²`.
    pub m_integral: Mat3,
    /// `(L²/12) diag(2a−b−c, 2b−a−c, 2c−a−b)`.
    pub m_closed: Mat3,
    /// The constant couple stress read off the stress gradients.
    pub m_gradients: Mat3,
}

/// Couple stress assembled from the three positive-face couples of a cube.
pub fn couple_stress_from_faces(sigma: &PolyMat3, cube: &Cube) -> Mat3 {
    let mut m = Mat3::zero();
    let inv_area = Rational::from_integer(1.into()) / cube.face_area();
    for face in Face::all().into_iter().filter(|f| f.is_positive()) {
        let couple = face_couple_about_face_center(sigma, cube, face).scale(&inv_area);
        m.set_column(face.axis(), &couple);
    }
    m
}

pub fn trace_free_family(p: &TraceFreeFamilyParams) -> Result<TraceFreeFamily, ScenarioError> {
    let cube = Cube::centered(p.length.clone())?;
    let sigma = &(&basis_a().scale(&p.a) + &basis_b().scale(&p.b)) + &basis_c().scale(&p.c);
    let two = rat(2, 1);
    let f = &p.length * &p.length * rat(1, 12);
    let m_closed = Mat3::diag(
        &(&two * &p.a - &p.b - &p.c),
        &(&two * &p.b - &p.a - &p.c),
        &(&two * &p.c - &p.a - &p.b),
    )
    .scale(&f);
    Ok(TraceFreeFamily {
        div_sigma: div_tensor(&sigma),
        m_integral: couple_stress_from_faces(&sigma, &cube),
        m_gradients: couple_stress_from_gradients(&expand_on(&sigma, &cube)),
        m_closed,
        sigma,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionParams {
    /// Twist rate `ᾱ = α₀/H`.
    pub alpha_bar: Rational,
    pub mu: Rational,
    pub length: Rational,
    pub alpha1: Rational,
    /// Edge of the cube cut from the beam.
    pub dx: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    /// `(−ᾱyz, ᾱxz, 0)`, the small-rotation form of the twist.
    pub displacement: PolyVec3,
    pub grad_displacement: PolyMat3,
    pub strain: PolyMat3,
    /// `S₂ = 2μ ε`, trace free so `λ` drops out.
    pub stress: PolyMat3,
    pub div_stress: PolyVec3,
    pub curvature: PolyMat3,
    /// `2μL²α₁ dev sym k̃`.
    pub m_constitutive: Mat3,
    /// `m` from the stress gradients of `S₂` on a cube of edge `dx`.
    pub m_gradients: Mat3,
    /// Couples about the face centers, faces 1..6.
    pub face_couples: [Vec3; 6],
    /// `L²α₁ = dx²/12`.
    pub matching_condition: bool,
    /// `m_constitutive = m_gradients`.
    pub paths_agree: bool,
    /// The `e₃` face couple is `−2` times the `e₁` one.
    pub doubled_and_reversed: bool,
}

pub fn torsion_scenario(p: &TorsionParams) -> Result<TorsionReport, ScenarioError> {
    if p.dx <= Rational::zero() {
        return Err(ScenarioError::NonPositive("dx"));
    }
    let a = &p.alpha_bar;
    let u = PolyVec3([-(&x(1) * &x(2)).scale(a), (&x(0) * &x(2)).scale(a), PolyScalar::zero()]);
    let material = IsotropicMaterial::new(
        p.mu.clone(),
        Rational::zero(),
        p.length.clone(),
        p.alpha1.clone(),
        Rational::zero(),
        Rational::zero(),
    )
    .map_err(|_| ScenarioError::NonPositive("mu and length"))?;
    let model = Model::new(ModelKind::ModifiedConformal, material).expect("alpha2 is zero");
    let r = models::respond(&u, &model);
    let origin = Vec3::zero();
    let m_constitutive = r.couple_stress.eval(&origin);
    let cube = Cube::centered(p.dx.clone())?;
    let m_gradients = couple_stress_from_gradients(&expand_on(&r.local_stress, &cube));
    let face_couples = Face::all().map(|f| face_couple_about_face_center(&r.local_stress, &cube, f));
    let doubled_and_reversed = face_couples[2][2] == &face_couples[0][0] * rat(-2, 1);
    let matching_condition = &p.length * &p.length * &p.alpha1 == &p.dx * &p.dx * rat(1, 12);
    Ok(TorsionReport {
        grad_displacement: grad_vector(&u),
        displacement: u,
        strain: r.strain,
        div_stress: div_tensor(&r.local_stress),
        stress: r.local_stress,
        curvature: r.curvature,
        paths_agree: m_constitutive == m_gradients,
        m_constitutive,
        m_gradients,
        face_couples,
        matching_condition,
        doubled_and_reversed,
    })
}

/// A concentrated couple `couple` applied at `location`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppliedCouple {
    pub location: Vec3,
    pub couple: Vec3,
}

/// `Σ xᵢ × Lᵢ`, the quantity a third balance law would require to vanish.
pub fn yang_third_balance(couples: &[AppliedCouple]) -> Vec3 {
    let mut total = Vec3::zero();
    for c in couples {
        total += &cross(&c.location, &c.couple);
    }
    total
}

/// A clamped beam of length `span` along `e₁` with the couple `(0, magnitude, 0)`
/// at the tip and the equilibrating reaction couple at the clamp.
pub fn cantilever(span: &Rational, magnitude: &Rational) -> Vec<AppliedCouple> {
    let load = Vec3::new(Rational::zero(), magnitude.clone(), Rational::zero());
    vec![
        AppliedCouple { location: Vec3::zero(), couple: -&load },
        AppliedCouple {
            location: Vec3::new(span.clone(), Rational::zero(), Rational::zero()),
            couple: load,
        },
    ]
}

/// Unit span and unit couple, with the couple perpendicular to the beam.
pub fn cantilever_default() -> Vec<AppliedCouple> {
    cantilever(&rat(1, 1), &rat(1, 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceIdentity {
    /// `∫_∂V x × m·n dA`.
    pub surface: Vec3,
    /// `∫_V x × Div m + 2 axl skew m dV`.
    pub volume: Vec3,
    /// `∫_V 2 axl skew m dV`, what remains once `Div m` vanishes.
    pub skew_only: Vec3,
}

pub fn yang_surface_identity(m: &PolyMat3, cube: &Cube) -> SurfaceIdentity {
    let (surface, volume) = divergence_theorem_cross_check(m, cube);
    let skew_only = integrate_volume_vec(&m.axl_of_skew().scale(&rat(2, 1)), cube);
    SurfaceIdentity { surface, volume, skew_only }
}

/// Moment of the force pair `−F₂` at `x₁`, `F₂` at `x₂`, computed as
/// `(x₂ − x₁) × F₂` and again about the origin after translating both points.
pub fn couple_translation_invariance(
    f2: &Vec3,
    x1: &Vec3,
    x2: &Vec3,
    shift: &Vec3,
) -> Result<(Vec3, Vec3), ScenarioError> {
    let lever = x2 - x1;
    if lever.is_zero() {
        return Err(ScenarioError::ZeroLever);
    }
    let moment = cross(&lever, f2);
    let y1 = x1 + shift;
    let y2 = x2 + shift;
    let shifted = &cross(&y1, &-f2) + &cross(&y2, f2);
    Ok((moment, shifted))
}

/// `(Δx × (Δx × F₂), (Δx × Δx) × F₂)`; the first is nonzero, the second is zero.
pub fn nonassociativity_witness(dx: &Vec3, f2: &Vec3) -> Result<(Vec3, Vec3), ScenarioError> {
    let moment = cross(dx, f2);
    if moment.is_zero() {
        return Err(ScenarioError::ParallelPair);
    }
    Ok((cross(dx, &moment), cross(&cross(dx, dx), f2)))
}

/// `J_p = L⁴/6`, the polar moment of a square face.
pub fn polar_moment(length: &Rational) -> Rational {
    pow(length, 4) * rat(1, 6)
}

/// `J₁ = J₂ = J₃ = L⁴/12`.
pub fn axial_moment(length: &Rational) -> Rational {
    pow(length, 4) * rat(1, 12)
}
