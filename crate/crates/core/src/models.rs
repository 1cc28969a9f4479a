//! Linear isotropic couple-stress models driven by a polynomial displacement.
//!
//! The local stress is `σ = 2μ ε + λ tr(ε) 1` with `ε = sym Grad u`. The
//! curvature `k̃ = Grad axl skew Grad u` produces the couple stress
//! `m = 2μL²(α₁ dev sym k̃ + α₂ skew k̃)` and the skew nonlocal stress
//! `τ̃ = −½ anti Div m`. The variant with a symmetric total stress uses the
//! measure `Curl sym Grad u` instead and adds `sym Curl m̂`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{
    anti_field, curl_tensor, div_tensor, grad_vector, PolyMat3, PolyScalar, PolyVec3,
};
use crate::rational::{rat, Rational};
use crate::tensor::{axl, Mat3, TensorError, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("shear modulus must be positive")]
    NonPositiveShear,
    #[error("characteristic length must be positive")]
    NonPositiveLength,
    #[error("{kind:?} requires {param} = 0")]
    Constraint { kind: ModelKind, param: &'static str },
    #[error("strain field is not symmetric")]
    NonsymmetricStrain,
    #[error("curvature field is not trace free")]
    TracefulCurvature,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropicMaterial {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub mu: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lambda: Rational,
    /// Characteristic length `L_c`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub length: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha1: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha2: Rational,
    /// Multiplies `tr k̃`, which vanishes identically; kept for completeness.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha3: Rational,
}

impl IsotropicMaterial {
    pub fn new(
        mu: Rational,
        lambda: Rational,
        length: Rational,
        alpha1: Rational,
        alpha2: Rational,
        alpha3: Rational,
    ) -> Result<Self, ModelError> {
        if mu <= Rational::zero() {
            return Err(ModelError::NonPositiveShear);
        }
        if length <= Rational::zero() {
            return Err(ModelError::NonPositiveLength);
        }
        Ok(IsotropicMaterial { mu, lambda, length, alpha1, alpha2, alpha3 })
    }

    /// `2μL²`.
    fn curvature_modulus(&self) -> Rational {
        rat(2, 1) * &self.mu * &self.length * &self.length
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModelKind {
    /// Both `α₁` and `α₂` free.
    Indeterminate,
    /// `α₂ = 0`: symmetric trace-free couple stress.
    ModifiedConformal,
    /// `α₁ = 0`: skew-symmetric couple stress.
    SkewHD,
    /// Symmetric total stress from the measure `Curl sym Grad u`.
    SymmetricStress,
}

/// A model kind paired with a material that satisfies its constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Model {
    kind: ModelKind,
    material: IsotropicMaterial,
}

impl Model {
    pub fn new(kind: ModelKind, material: IsotropicMaterial) -> Result<Self, ModelError> {
        match kind {
            ModelKind::ModifiedConformal if !material.alpha2.is_zero() => {
                Err(ModelError::Constraint { kind, param: "alpha2" })
            }
            ModelKind::SkewHD if !material.alpha1.is_zero() => {
                Err(ModelError::Constraint { kind, param: "alpha1" })
            }
            _ => Ok(Model { kind, material }),
        }
    }

    /// Builds the model after zeroing whichever parameter the kind forbids.
    pub fn projected(kind: ModelKind, mut material: IsotropicMaterial) -> Self {
        match kind {
            ModelKind::ModifiedConformal => material.alpha2 = Rational::zero(),
            ModelKind::SkewHD => material.alpha1 = Rational::zero(),
            _ => {}
        }
        Model { kind, material }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn material(&self) -> &IsotropicMaterial {
        &self.material
    }
}

/// `ε = sym Grad u`.
pub fn strain(u: &PolyVec3) -> PolyMat3 {
    grad_vector(u).sym()
}

/// `σ = 2μ ε + λ tr(ε) 1`.
pub fn local_stress(eps: &PolyMat3, mat: &IsotropicMaterial) -> Result<PolyMat3, ModelError> {
    if !eps.is_symmetric() {
        return Err(ModelError::NonsymmetricStrain);
    }
    let tr = eps.trace().scale(&mat.lambda);
    let mut sigma = eps.scale(&(rat(2, 1) * &mat.mu));
    for i in 0..3 {
        sigma.0[i][i] += &tr;
    }
    Ok(sigma)
}

/// `k̃ = Grad axl skew Grad u = ½ Grad curl u`.
pub fn curvature(u: &PolyVec3) -> PolyMat3 {
    grad_vector(&grad_vector(u).axl_of_skew())
}

/// `Curl sym Grad u`, the curvature measure of the symmetric-stress variant.
pub fn symmetric_curvature(u: &PolyVec3) -> PolyMat3 {
    curl_tensor(&strain(u))
}

/// The curvature measure each model feeds into [`couple_stress`].
pub fn curvature_measure(u: &PolyVec3, kind: ModelKind) -> PolyMat3 {
    match kind {
        ModelKind::SymmetricStress => symmetric_curvature(u),
        _ => curvature(u),
    }
}

/// `m = 2μL²(α₁ dev sym k + α₂ skew k) + μL²α₃ tr(k) 1`, with the parameter
/// the model forbids already zero. Rejects `k` with nonzero trace, so the
/// `α₃` term is always zero.
pub fn couple_stress(k: &PolyMat3, model: &Model) -> Result<PolyMat3, ModelError> {
    if !k.trace().is_zero() {
        return Err(ModelError::TracefulCurvature);
    }
    let mat = &model.material;
    let modulus = mat.curvature_modulus();
    let mut m = PolyMat3::zero();
    if !mat.alpha1.is_zero() {
        m += &k.sym().dev().scale(&(&modulus * &mat.alpha1));
    }
    if !mat.alpha2.is_zero() {
        m += &k.skew().scale(&(&modulus * &mat.alpha2));
    }
    let spherical = k.trace().scale(&(&mat.mu * &mat.length * &mat.length * &mat.alpha3));
    assert!(spherical.is_zero(), "alpha3 term must vanish");
    Ok(m)
}

/// `τ̃ = −½ anti Div m`.
pub fn nonlocal_stress(m: &PolyMat3) -> PolyMat3 {
    anti_field(&div_tensor(m)).scale(&rat(-1, 2))
}

/// Everything computed from one displacement field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub strain: PolyMat3,
    pub local_stress: PolyMat3,
    /// `k̃`, or `Curl sym Grad u` for the symmetric variant.
    pub curvature: PolyMat3,
    pub couple_stress: PolyMat3,
    /// `τ̃`, or `sym Curl m̂` for the symmetric variant.
    pub nonlocal_stress: PolyMat3,
    pub total_stress: PolyMat3,
}

pub fn respond(u: &PolyVec3, model: &Model) -> Response {
    let eps = strain(u);
    let sigma = local_stress(&eps, &model.material).expect("sym Grad u is symmetric");
    let k = curvature_measure(u, model.kind);
    let m = couple_stress(&k, model).expect("curvature measures are trace free");
    let tau = match model.kind {
        ModelKind::SymmetricStress => curl_tensor(&m).sym(),
        _ => nonlocal_stress(&m),
    };
    let total = &sigma + &tau;
    Response {
        strain: eps,
        local_stress: sigma,
        curvature: k,
        couple_stress: m,
        nonlocal_stress: tau,
        total_stress: total,
    }
}

/// `σ̃ = σ + τ̃`, or `σ̂ = σ + sym Curl m̂` for the symmetric variant.
pub fn total_stress(u: &PolyVec3, model: &Model) -> PolyMat3 {
    respond(u, model).total_stress
}

fn norm_squared(x: &PolyMat3) -> PolyScalar {
    let mut s = PolyScalar::zero();
    for p in x.0.iter().flatten() {
        s += &(p * p);
    }
    s
}

/// Energy densities `(W_lin, W_curv)`:
/// `W_lin = μ‖ε‖² + (λ/2) tr(ε)²`,
/// `W_curv = μL²(α₁‖dev sym k‖² + α₂‖skew k‖²)`.
pub fn energies(u: &PolyVec3, model: &Model) -> (PolyScalar, PolyScalar) {
    let mat = &model.material;
    let eps = strain(u);
    let tr = eps.trace();
    let w_lin = &norm_squared(&eps).scale(&mat.mu) + &(&tr * &tr).scale(&(&mat.lambda * rat(1, 2)));
    let k = curvature_measure(u, model.kind);
    let base = &mat.mu * &mat.length * &mat.length;
    let mut w_curv = PolyScalar::zero();
    if !mat.alpha1.is_zero() {
        w_curv += &norm_squared(&k.sym().dev()).scale(&(&base * &mat.alpha1));
    }
    if !mat.alpha2.is_zero() {
        w_curv += &norm_squared(&k.skew()).scale(&(&base * &mat.alpha2));
    }
    (w_lin, w_curv)
}

/// `((3λ + 2μ)/6) tr(ε)²`, which equals `W_lin` whenever `ε` is spherical.
pub fn bulk_energy(u: &PolyVec3, mat: &IsotropicMaterial) -> PolyScalar {
    let tr = strain(u).trace();
    (&tr * &tr).scale(&((rat(3, 1) * &mat.lambda + rat(2, 1) * &mat.mu) * rat(1, 6)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConformalMapParams {
    pub w_hat: Mat3,
    pub a_hat: Mat3,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub p_hat: Rational,
    pub b_hat: Vec3,
}

/// `φ_c(x) = ⟨w, x⟩x − ½ w‖x‖² + (p̂ 1 + Â)x + b̂` with `w = axl Ŵ`.
pub fn conformal_map(params: &ConformalMapParams) -> Result<PolyVec3, ModelError> {
    let w = axl(&params.w_hat)?;
    axl(&params.a_hat)?;
    let x = PolyVec3::position();
    let wx = x.dot(&PolyVec3::constant(&w));
    let xx = x.dot(&x);
    let linear = &Mat3::identity().scale(&params.p_hat) + &params.a_hat;
    let mut phi = x.mul_scalar(&wx);
    phi -= &PolyVec3::constant(&w).mul_scalar(&xx.scale(&rat(1, 2)));
    phi += &PolyMat3::constant(&linear).mul_vec_field(&x);
    phi += &PolyVec3::constant(&params.b_hat);
    Ok(phi)
}

/// Displacement of a conformal map, `u = φ_c(x) − x`.
pub fn conformal_displacement(params: &ConformalMapParams) -> Result<PolyVec3, ModelError> {
    Ok(&conformal_map(params)? - &PolyVec3::position())
}

/// `(Div σ̃ + f, Div m + 2 axl skew σ̃ + c)` as fields.
pub fn balance_residuals(u: &PolyVec3, f: &Vec3, c: &Vec3, model: &Model) -> (PolyVec3, PolyVec3) {
    let r = respond(u, model);
    let linear = &div_tensor(&r.total_stress) + &PolyVec3::constant(f);
    let two = Rational::one() + Rational::one();
    let angular = &(&div_tensor(&r.couple_stress) + &r.total_stress.axl_of_skew().scale(&two))
        + &PolyVec3::constant(c);
    (linear, angular)
}
