//! Second-order Taylor decomposition of a stress field at a cube center,
//! polarity classification of the pieces, and the couple stress tensor read
//! off from stress gradients.
//!
//! With `Δx = x − x₀` the truncated field is
//!
//! ```text
//! σ(x) ≈ σ⁰ + σ_ij,k Δx_k + Σ_{k<l} σ_ij,kl Δx_k Δx_l + ½ Σ_k σ_ij,kk Δx_k²
//! ```
//!
//! and each group is split further by which faces its components act on.
//! All pieces are returned as fields in absolute coordinates.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cube::{
    face_couple_about_cube_center, face_couple_about_face_center, face_traction_sum, Cube,
    CubeError, Face,
};
use crate::poly::{div_tensor, grad_vector, PolyMat3, PolyScalar, PolyVec3};
use crate::rational::{rat, Rational};
use crate::tensor::{axl_of_skew, levi_civita, Mat3, Vec3};

/// Index pairs `(k, l)` with `k < l`, in storage order.
pub const MIXED_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

type Coeffs = [[[Rational; 3]; 3]; 3];

fn zero_coeffs() -> Coeffs {
    std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorDecomposition {
    /// `σ(x₀)`.
    pub sigma0: Mat3,
    /// `d1[i][j][k] = σ_ij,k(x₀)`.
    pub d1: Coeffs,
    /// `d2_mixed[i][j][p] = σ_ij,kl(x₀)` for `(k, l) = MIXED_PAIRS[p]`.
    pub d2_mixed: Coeffs,
    /// `d2_pure[i][j][k] = σ_ij,kk(x₀)`.
    pub d2_pure: Coeffs,
    pub cube: Cube,
    /// Largest absolute coefficient, in powers of `Δx`, dropped by the truncation.
    pub truncation_error: Rational,
}

/// Polarity of a stress piece, from two integral criteria:
/// A = some face carries a couple about its own center,
/// B = the faces give a net moment about the cube center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PolarityClass {
    /// A and not B.
    Polar,
    /// Neither.
    Nonpolar,
    /// B and not A.
    Semipolar,
    /// Both.
    Bipolar,
}

impl PolarityClass {
    pub fn from_criteria(face_couples: bool, net_moment: bool) -> Self {
        match (face_couples, net_moment) {
            (true, false) => PolarityClass::Polar,
            (false, false) => PolarityClass::Nonpolar,
            (false, true) => PolarityClass::Semipolar,
            (true, true) => PolarityClass::Bipolar,
        }
    }
}

/// The integrals behind a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarityVerdict {
    pub class: PolarityClass,
    /// `∫ rᵢ × σ·nᵢ dA` for faces 1..6.
    pub face_couples: [Vec3; 6],
    /// `Σᵢ ∫ x_P × σ·nᵢ dA`.
    pub net_moment: Vec3,
}

fn delta(cube: &Cube, k: usize) -> PolyScalar {
    &PolyScalar::var(k) - &PolyScalar::constant(cube.center()[k].clone())
}

/// Taylor coefficients of `σ` at `x₀`, truncated after second order.
pub fn expand(sigma: &PolyMat3, x0: &Vec3, edge: &Rational) -> Result<TaylorDecomposition, CubeError> {
    let cube = Cube::new(x0.clone(), edge.clone())?;
    Ok(expand_on(sigma, &cube))
}

/// [`expand`] with the cube already built.
pub fn expand_on(sigma: &PolyMat3, cube: &Cube) -> TaylorDecomposition {
    let mut sigma0 = Mat3::zero();
    let mut d1 = zero_coeffs();
    let mut d2_mixed = zero_coeffs();
    let mut d2_pure = zero_coeffs();
    let mut truncation_error = Rational::zero();
    for i in 0..3 {
        for j in 0..3 {
            let local = sigma.0[i][j].shift(cube.center());
            for (e, c) in local.terms() {
                match e[0] + e[1] + e[2] {
                    0 => sigma0[(i, j)] = c.clone(),
                    1 => {
                        let k = e.iter().position(|&n| n == 1).unwrap();
                        d1[i][j][k] = c.clone();
                    }
                    2 => {
                        if let Some(k) = e.iter().position(|&n| n == 2) {
                            d2_pure[i][j][k] = c * rat(2, 1);
                        } else {
                            let p = MIXED_PAIRS
                                .iter()
                                .position(|&(k, l)| e[k] == 1 && e[l] == 1)
                                .unwrap();
                            d2_mixed[i][j][p] = c.clone();
                        }
                    }
                    _ => {
                        if c.abs() > truncation_error {
                            truncation_error = c.abs();
                        }
                    }
                }
            }
        }
    }
    TaylorDecomposition { sigma0, d1, d2_mixed, d2_pure, cube: cube.clone(), truncation_error }
}

impl TaylorDecomposition {
    pub fn x0(&self) -> &Vec3 {
        self.cube.center()
    }

    pub fn edge(&self) -> &Rational {
        self.cube.edge()
    }

    fn linear_where(&self, keep: impl Fn(usize, usize, usize) -> bool) -> PolyMat3 {
        let dx: [PolyScalar; 3] = std::array::from_fn(|k| delta(&self.cube, k));
        PolyMat3::from_fn(|i, j| {
            let mut s = PolyScalar::zero();
            for k in (0..3).filter(|&k| keep(i, j, k)) {
                s += &dx[k].scale(&self.d1[i][j][k]);
            }
            s
        })
    }

    fn mixed_where(&self, keep: impl Fn(usize, usize, (usize, usize)) -> bool) -> PolyMat3 {
        PolyMat3::from_fn(|i, j| {
            let mut s = PolyScalar::zero();
            for (p, &(k, l)) in MIXED_PAIRS.iter().enumerate() {
                if keep(i, j, (k, l)) && !self.d2_mixed[i][j][p].is_zero() {
                    let term = &delta(&self.cube, k) * &delta(&self.cube, l);
                    s += &term.scale(&self.d2_mixed[i][j][p]);
                }
            }
            s
        })
    }

    pub fn constant_term(&self) -> PolyMat3 {
        PolyMat3::constant(&self.sigma0)
    }

    /// `σ_ij,k Δx_k`.
    pub fn linear_term(&self) -> PolyMat3 {
        self.linear_where(|_, _, _| true)
    }

    /// `Σ_{k<l} σ_ij,kl Δx_k Δx_l`.
    pub fn bilinear_term(&self) -> PolyMat3 {
        self.mixed_where(|_, _, _| true)
    }

    /// `½ Σ_k σ_ij,kk Δx_k²`, the `q` piece.
    pub fn quadratic_term(&self) -> PolyMat3 {
        let half = rat(1, 2);
        PolyMat3::from_fn(|i, j| {
            let mut s = PolyScalar::zero();
            for k in 0..3 {
                let c = &self.d2_pure[i][j][k] * &half;
                if !c.is_zero() {
                    let dk = delta(&self.cube, k);
                    s += &(&dk * &dk).scale(&c);
                }
            }
            s
        })
    }

    /// The truncated field `σ⁰ + linear + bilinear + q`.
    pub fn reconstruct(&self) -> PolyMat3 {
        &(&(&self.constant_term() + &self.linear_term()) + &self.bilinear_term())
            + &self.quadratic_term()
    }
}

/// Linear pieces `(np, p1, p2)`:
/// np holds `σ_ij,j` (a column varying along its own normal),
/// p1 holds `σ_ij,i` with `i ≠ j` (shear varying along its own direction),
/// p2 holds everything else.
pub fn split_linear(t: &TaylorDecomposition) -> (PolyMat3, PolyMat3, PolyMat3) {
    (
        t.linear_where(|_, j, k| k == j),
        t.linear_where(|i, j, k| k == i && i != j),
        t.linear_where(|i, j, k| k != i && k != j),
    )
}

/// Whether `σ_ij,kl` belongs to the bipolar piece: the column `j` is one of
/// the two varying directions and the row is not the other one.
fn is_bipolar_entry(i: usize, j: usize, (k, l): (usize, usize)) -> bool {
    if j == k {
        i != l
    } else if j == l {
        i != k
    } else {
        false
    }
}

/// Bilinear pieces `(b1, b2)`.
pub fn split_bilinear(t: &TaylorDecomposition) -> (PolyMat3, PolyMat3) {
    (
        t.mixed_where(|i, j, p| !is_bipolar_entry(i, j, p)),
        t.mixed_where(is_bipolar_entry),
    )
}

/// Evaluates both polarity criteria on `term` and returns the integrals.
pub fn polarity_criteria(term: &PolyMat3, cube: &Cube) -> PolarityVerdict {
    let face_couples = Face::all().map(|f| face_couple_about_face_center(term, cube, f));
    let net_moment = face_couple_about_cube_center(term, cube);
    let class = PolarityClass::from_criteria(
        face_couples.iter().any(|c| !c.is_zero()),
        !net_moment.is_zero(),
    );
    PolarityVerdict { class, face_couples, net_moment }
}

pub fn classify(term: &PolyMat3, cube: &Cube) -> PolarityClass {
    polarity_criteria(term, cube).class
}

/// `m_aj = (L²/12) Σ_{b≠j} ε_abc σ_cj,b`; column `j` times `L²` is the couple
/// of the linear stress on face `j` about its center.
fn boxed_couple_stress<T>(
    gradient: impl Fn(usize, usize, usize) -> T,
    mut accumulate: impl FnMut(usize, usize, i8, T),
) {
    for a in 0..3 {
        for j in 0..3 {
            for b in (0..3).filter(|&b| b != j) {
                for c in 0..3 {
                    let sign = levi_civita(a, b, c);
                    if sign != 0 {
                        accumulate(a, j, sign, gradient(c, j, b));
                    }
                }
            }
        }
    }
}

/// Constant couple stress tensor from the first stress gradients at `x₀`.
pub fn couple_stress_from_gradients(t: &TaylorDecomposition) -> Mat3 {
    let mut m = Mat3::zero();
    boxed_couple_stress(
        |c, j, b| t.d1[c][j][b].clone(),
        |a, j, sign, g| {
            if sign > 0 {
                m[(a, j)] += g;
            } else {
                m[(a, j)] -= g;
            }
        },
    );
    m.scale(&(t.edge() * t.edge() / Rational::from_integer(12.into())))
}

/// The same formula applied pointwise to a polynomial field, giving `m(x)`.
pub fn couple_stress_field(sigma: &PolyMat3, edge: &Rational) -> PolyMat3 {
    let mut m = PolyMat3::zero();
    boxed_couple_stress(
        |c, j, b| sigma.0[c][j].derivative(b),
        |a, j, sign, g| {
            if sign > 0 {
                m.0[a][j] += &g;
            } else {
                m.0[a][j] -= &g;
            }
        },
    );
    m.scale(&(edge * edge / Rational::from_integer(12.into())))
}

/// Diagonal (torsion) and off-diagonal (bending) parts.
pub fn split_torsion_bending(m: &Mat3) -> (Mat3, Mat3) {
    let torsion = m.diagonal_part();
    let bending = m - &torsion;
    (torsion, bending)
}

/// `χ_ik = (L²/12) σ_ik,kk(x₀)`, no sum over `k`.
pub fn chi(sigma: &PolyMat3, x0: &Vec3, edge: &Rational) -> Mat3 {
    let factor = edge * edge / Rational::from_integer(12.into());
    Mat3::from_fn(|i, k| sigma.0[i][k].derivative(k).derivative(k).eval(x0) * &factor)
}

/// [`chi`] read from a decomposition.
pub fn chi_of(t: &TaylorDecomposition) -> Mat3 {
    let factor = t.edge() * t.edge() / Rational::from_integer(12.into());
    Mat3::from_fn(|i, k| &t.d2_pure[i][k][k] * &factor)
}

/// `ψ = (L²/24) Grad(2 axl skew σ)`.
pub fn psi(sigma: &PolyMat3, edge: &Rational) -> PolyMat3 {
    let factor = edge * edge / Rational::from_integer(12.into());
    grad_vector(&sigma.axl_of_skew()).scale(&factor)
}

/// `Div m(x₀) + Div ψ(x₀) + 2 axl skew(σ⁰ + χ) + c`, all built from the
/// truncated expansion.
pub fn angular_balance_residual(t: &TaylorDecomposition, c: &Vec3) -> Vec3 {
    let field = t.reconstruct();
    let x0 = t.x0();
    let div_m = div_tensor(&couple_stress_field(&field, t.edge())).eval(x0);
    let div_psi = div_tensor(&psi(&field, t.edge())).eval(x0);
    let two = Rational::from_integer(2.into());
    let skew = axl_of_skew(&(&t.sigma0 + &chi_of(t))).scale(&two);
    &(&(&div_m + &div_psi) + &skew) + c
}

/// The same residual from surface integrals:
/// `(1/V) Σᵢ ∫ x_P × (σ⁰ + b2 + q)·nᵢ dA + c`.
pub fn angular_balance_residual_by_integrals(t: &TaylorDecomposition, c: &Vec3) -> Vec3 {
    let (_, b2) = split_bilinear(t);
    let pieces = &(&t.constant_term() + &b2) + &t.quadratic_term();
    let moment = face_couple_about_cube_center(&pieces, &t.cube);
    &moment.scale(&(Rational::from_integer(1.into()) / t.cube.volume())) + c
}

/// `Div σ(x₀) + f` from the truncated expansion, via the face tractions.
pub fn linear_balance_residual(t: &TaylorDecomposition, f: &Vec3) -> Vec3 {
    let total = face_traction_sum(&t.reconstruct(), &t.cube);
    &total.scale(&(Rational::from_integer(1.into()) / t.cube.volume())) + f
}

/// The two closed-form terms of the `q`-piece moment:
/// `(L⁵/12) 2 axl skew[σ_ik,kk]` and `(L⁵/24) Δ(2 axl skew σ)(x₀)`.
pub fn semipolar_terms(t: &TaylorDecomposition) -> (Vec3, Vec3) {
    let l = t.edge();
    let l5 = l * l * l * l * l;
    let pure = Mat3::from_fn(|i, k| t.d2_pure[i][k][k].clone());
    let first = axl_of_skew(&pure).scale(&(&l5 * rat(2, 12)));
    // Δ(2 axl skew σ) needs only the pure second derivatives.
    let lap = Mat3::from_fn(|i, j| (0..3).map(|k| t.d2_pure[i][j][k].clone()).sum());
    let second = axl_of_skew(&lap).scale(&(&l5 * rat(2, 24)));
    (first, second)
}

/// `grad tr σ = Div(Diag σ) + (24/L²) axl(skew m)`, returned as the two summands.
pub fn grad_tr_decomposition(sigma: &PolyMat3, edge: &Rational) -> (PolyVec3, PolyVec3) {
    let div_diag = PolyVec3::from_fn(|i| sigma.0[i][i].derivative(i));
    let factor = Rational::from_integer(24.into()) / (edge * edge);
    let axl_term = couple_stress_field(sigma, edge).axl_of_skew().scale(&factor);
    (div_diag, axl_term)
}

/// Three gradient conditions evaluated at `x₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub conditions: [bool; 3],
}

impl ConditionCheck {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|&b| b)
    }
}

/// `σ₁₁,₃ = −σ₂₂,₃`, `−σ₁₁,₂ = σ₃₃,₂`, `σ₂₂,₁ = −σ₃₃,₁`; together they make `m` symmetric.
pub fn symmetry_conditions_check(t: &TaylorDecomposition) -> ConditionCheck {
    let d = &t.d1;
    ConditionCheck {
        conditions: [
            d[0][0][2] == -&d[1][1][2],
            -&d[0][0][1] == d[2][2][1],
            d[1][1][0] == -&d[2][2][0],
        ],
    }
}

/// `σ₃₁,₂ = −σ₂₁,₃`, `σ₁₂,₃ = −σ₃₂,₁`, `σ₂₃,₁ = −σ₁₃,₂`: coplanar shear
/// gradients that rotate consistently on each face pair.
pub fn rotational_invariance_check(t: &TaylorDecomposition) -> ConditionCheck {
    let d = &t.d1;
    ConditionCheck {
        conditions: [
            d[2][0][1] == -&d[1][0][2],
            d[0][1][2] == -&d[2][1][0],
            d[1][2][0] == -&d[0][2][1],
        ],
    }
}
