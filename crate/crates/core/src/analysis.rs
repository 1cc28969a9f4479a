//! One-call analysis of a stress field on a cube: every Taylor piece with
//! its polarity, the couple stress and its torsion/bending split, `χ`, `ψ`,
//! and the balance residuals, plus the identities tying them together.

use serde::Serialize;

use crate::cube::{face_couple_about_cube_center, face_couple_about_face_center, face_traction_sum, Cube, CubeError, Face};
use crate::poly::{div_tensor, PolyMat3};
use crate::rational::Rational;
use crate::report::{ser_rational, CheckRecord};
use crate::taylor::{
    angular_balance_residual, angular_balance_residual_by_integrals, chi_of, couple_stress_field,
    couple_stress_from_gradients, expand_on, linear_balance_residual, polarity_criteria, psi,
    rotational_invariance_check, semipolar_terms, split_bilinear, split_linear,
    split_torsion_bending, symmetry_conditions_check, ConditionCheck, PolarityVerdict,
    TaylorDecomposition,
};
use crate::tensor::{Mat3, Vec3};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Report `m + ψ(x₀)` in place of `m` (and `ψ = 0`).
    pub merge_psi: bool,
    pub body_force: Vec3,
    pub body_couple: Vec3,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { merge_psi: false, body_force: Vec3::zero(), body_couple: Vec3::zero() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    pub name: &'static str,
    /// The family the piece is grouped under in the derivation.
    pub group: &'static str,
    pub field: PolyMat3,
    pub verdict: PolarityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarityReport {
    pub cube: Cube,
    #[serde(serialize_with = "ser_rational")]
    pub truncation_error: Rational,
    pub pieces: Vec<PieceReport>,
    pub couple_stress: Mat3,
    pub torsion: Mat3,
    pub bending: Mat3,
    pub chi: Mat3,
    pub psi: PolyMat3,
    pub merged_psi: bool,
    pub linear_residual: Vec3,
    pub angular_residual: Vec3,
    pub angular_residual_by_integrals: Vec3,
    pub symmetry_conditions: ConditionCheck,
    pub rotational_invariance: ConditionCheck,
    #[serde(skip)]
    taylor: TaylorDecomposition,
    #[serde(skip)]
    body_couple: Vec3,
}

pub fn analyze(sigma: &PolyMat3, x0: &Vec3, edge: &Rational, opts: &AnalysisOptions) -> Result<PolarityReport, CubeError> {
    let cube = Cube::new(x0.clone(), edge.clone())?;
    let t = expand_on(sigma, &cube);
    let (np, p1, p2) = split_linear(&t);
    let (b1, b2) = split_bilinear(&t);
    let named = [
        ("sigma0", "constant", t.constant_term()),
        ("np", "nonpolar", np),
        ("p1", "polar split", p1),
        ("p2", "polar split", p2),
        ("b1", "nonpolar", b1),
        ("b2", "bipolar", b2),
        ("q", "semipolar", t.quadratic_term()),
    ];
    let pieces = named
        .into_iter()
        .map(|(name, group, field)| PieceReport { name, group, verdict: polarity_criteria(&field, &cube), field })
        .collect();
    let truncated = t.reconstruct();
    let mut m = couple_stress_from_gradients(&t);
    let mut psi_field = psi(&truncated, edge);
    if opts.merge_psi {
        m += &psi_field.eval(x0);
        psi_field = PolyMat3::zero();
    }
    let (torsion, bending) = split_torsion_bending(&m);
    Ok(PolarityReport {
        truncation_error: t.truncation_error.clone(),
        pieces,
        torsion,
        bending,
        couple_stress: m,
        chi: chi_of(&t),
        psi: psi_field,
        merged_psi: opts.merge_psi,
        linear_residual: linear_balance_residual(&t, &opts.body_force),
        angular_residual: angular_balance_residual(&t, &opts.body_couple),
        angular_residual_by_integrals: angular_balance_residual_by_integrals(&t, &opts.body_couple),
        symmetry_conditions: symmetry_conditions_check(&t),
        rotational_invariance: rotational_invariance_check(&t),
        cube,
        taylor: t,
        body_couple: opts.body_couple.clone(),
    })
}

impl PolarityReport {
    pub fn taylor(&self) -> &TaylorDecomposition {
        &self.taylor
    }

    fn piece(&self, name: &str) -> &PieceReport {
        self.pieces.iter().find(|p| p.name == name).expect("all pieces are present")
    }

    /// Identities every analysis must satisfy, whatever the input.
    pub fn checks(&self) -> Vec<CheckRecord> {
        let cube = &self.cube;
        let t = &self.taylor;
        let area = cube.face_area();
        let inv_volume = Rational::from_integer(1.into()) / cube.volume();
        let p2 = &self.piece("p2").field;
        let b2 = &self.piece("b2").field;
        let q = &self.piece("q").field;
        let m = couple_stress_from_gradients(t);
        let mut out = Vec::new();

        for face in Face::all().into_iter().filter(|f| f.is_positive()) {
            let couple = face_couple_about_face_center(p2, cube, face);
            let column = m.column(face.axis()).scale(&area);
            out.push(CheckRecord::equal(
                &format!("analysis.m-column-{}", face.index()),
                "cube.face-couple-pattern",
                &couple,
                &column,
                "face couple of the p2 piece equals L² times the matching column of m",
            ));
        }

        let second = &(&self.piece("b1").field + b2) + q;
        out.push(CheckRecord::equal(
            "analysis.second-order-force-free",
            "cube.linear-momentum",
            &face_traction_sum(&second, cube),
            &Vec3::zero(),
            "bilinear and quadratic pieces carry no net force",
        ));
        out.push(CheckRecord::equal(
            "analysis.p2-moment-free",
            "cube.polar-neutrality",
            &face_couple_about_cube_center(p2, cube),
            &Vec3::zero(),
            "the p2 piece has no net moment about the cube center",
        ));

        let div_m = div_tensor(&couple_stress_field(&t.reconstruct(), cube.edge())).eval(cube.center());
        out.push(CheckRecord::equal(
            "analysis.bipolar-identity",
            "cube.bipolar-divergence",
            &face_couple_about_cube_center(b2, cube).scale(&inv_volume),
            &div_m,
            "net moment of b2 over V equals Div m at the center",
        ));

        let (first, lap) = semipolar_terms(t);
        out.push(CheckRecord::equal(
            "analysis.semipolar-identity",
            "cube.semipolar-chi-psi",
            &face_couple_about_cube_center(q, cube),
            &(&first + &lap),
            "net moment of q equals the chi term plus the psi term",
        ));

        out.push(CheckRecord::equal(
            "analysis.angular-two-routes",
            "balance.angular",
            &self.angular_residual,
            &self.angular_residual_by_integrals,
            "closed-form residual equals the surface-integral residual",
        ));
        let whole = &face_couple_about_cube_center(&t.reconstruct(), cube).scale(&inv_volume) + &self.body_couple;
        out.push(CheckRecord::equal(
            "analysis.angular-whole-field",
            "balance.angular",
            &self.angular_residual,
            &whole,
            "residual equals the moment of the whole truncated field",
        ));
        out.push(CheckRecord::equal(
            "analysis.torsion-bending-sum",
            "couple-stress.torsion-bending",
            &(&self.torsion + &self.bending),
            &self.couple_stress,
            "diagonal plus off-diagonal parts rebuild m",
        ));
        out
    }
}
