//! Exact integration over an axis-aligned cube and its six faces.
//!
//! Faces are numbered by outward normal: `n₁ = e₁`, `n₂ = e₂`, `n₃ = e₃`,
//! `n₄ = −e₁`, `n₅ = −e₂`, `n₆ = −e₃`. Moments are taken either about the
//! face center (lever arm `rᵢ`, tangent to the face) or about the cube
//! center (`x_P = x − x₀`).

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{div_tensor, PolyMat3, PolyScalar, PolyVec3};
use crate::rational::{pow, rat, Rational};
use crate::tensor::Vec3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("edge length must be positive, got {0}")]
    NonPositiveEdge(Rational),
    #[error("face index must be in 1..=6, got {0}")]
    BadFace(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cube {
    center: Vec3,
    #[serde(serialize_with = "crate::report::ser_rational")]
    edge: Rational,
}

impl Cube {
    pub fn new(center: Vec3, edge: Rational) -> Result<Self, CubeError> {
        if edge <= Rational::zero() {
            return Err(CubeError::NonPositiveEdge(edge));
        }
        Ok(Cube { center, edge })
    }

    /// Cube of edge `edge` centered at the origin.
    pub fn centered(edge: Rational) -> Result<Self, CubeError> {
        Self::new(Vec3::zero(), edge)
    }

    pub fn center(&self) -> &Vec3 {
        &self.center
    }

    pub fn edge(&self) -> &Rational {
        &self.edge
    }

    pub fn volume(&self) -> Rational {
        pow(&self.edge, 3)
    }

    pub fn face_area(&self) -> Rational {
        pow(&self.edge, 2)
    }

    fn bounds(&self, axis: usize) -> (Rational, Rational) {
        let half = &self.edge * rat(1, 2);
        (&self.center[axis] - &half, &self.center[axis] + &half)
    }

    /// Position relative to the cube center, `x_P = x − x₀`.
    pub fn relative_position(&self) -> PolyVec3 {
        &PolyVec3::position() - &PolyVec3::constant(&self.center)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face(usize);

impl Face {
    pub fn new(index: usize) -> Result<Self, CubeError> {
        if (1..=6).contains(&index) {
            Ok(Face(index))
        } else {
            Err(CubeError::BadFace(index))
        }
    }

    pub fn all() -> [Face; 6] {
        std::array::from_fn(|k| Face(k + 1))
    }

    pub fn index(self) -> usize {
        self.0
    }

    /// Zero-based coordinate axis normal to the face.
    pub fn axis(self) -> usize {
        (self.0 - 1) % 3
    }

    pub fn is_positive(self) -> bool {
        self.0 <= 3
    }

    /// The face on the other side of the cube.
    pub fn opposite(self) -> Face {
        Face((self.0 + 2) % 6 + 1)
    }

    pub fn normal(self) -> Vec3 {
        let e = Vec3::unit(self.axis());
        if self.is_positive() {
            e
        } else {
            -e
        }
    }

    /// Lever arm from the face center, `rᵢ`: `x − x₀` with the normal component removed.
    pub fn lever_arm(self, cube: &Cube) -> PolyVec3 {
        let mut r = cube.relative_position();
        r.0[self.axis()] = PolyScalar::zero();
        r
    }

    fn offset(self, cube: &Cube) -> Rational {
        let (lo, hi) = cube.bounds(self.axis());
        if self.is_positive() {
            hi
        } else {
            lo
        }
    }
}

/// `∫ φ dA` over one face.
pub fn integrate_face(phi: &PolyScalar, cube: &Cube, face: Face) -> Rational {
    let a = face.axis();
    let mut p = phi.restrict(a, &face.offset(cube));
    for t in (0..3).filter(|&t| t != a) {
        let (lo, hi) = cube.bounds(t);
        p = p.integrate_interval(t, &lo, &hi);
    }
    p.constant_term()
}

/// `∫ φ dV` over the cube.
pub fn integrate_volume(phi: &PolyScalar, cube: &Cube) -> Rational {
    let mut p = phi.clone();
    for t in 0..3 {
        let (lo, hi) = cube.bounds(t);
        p = p.integrate_interval(t, &lo, &hi);
    }
    p.constant_term()
}

pub fn integrate_face_vec(v: &PolyVec3, cube: &Cube, face: Face) -> Vec3 {
    Vec3(std::array::from_fn(|i| integrate_face(&v.0[i], cube, face)))
}

pub fn integrate_volume_vec(v: &PolyVec3, cube: &Cube) -> Vec3 {
    Vec3(std::array::from_fn(|i| integrate_volume(&v.0[i], cube)))
}

/// `∫ σ·nᵢ dA` on one face.
pub fn face_traction(sigma: &PolyMat3, cube: &Cube, face: Face) -> Vec3 {
    integrate_face_vec(&sigma.mul_vec(&face.normal()), cube, face)
}

/// `Σᵢ ∫ σ·nᵢ dA`.
pub fn face_traction_sum(sigma: &PolyMat3, cube: &Cube) -> Vec3 {
    let mut total = Vec3::zero();
    for face in Face::all() {
        total += &face_traction(sigma, cube, face);
    }
    total
}

/// `∫ rᵢ × σ·nᵢ dA`, the couple about the face center.
pub fn face_couple_about_face_center(sigma: &PolyMat3, cube: &Cube, face: Face) -> Vec3 {
    let integrand = face.lever_arm(cube).cross(&sigma.mul_vec(&face.normal()));
    integrate_face_vec(&integrand, cube, face)
}

/// `∫ x_P × σ·nᵢ dA` on one face.
pub fn face_moment_about_cube_center(sigma: &PolyMat3, cube: &Cube, face: Face) -> Vec3 {
    let integrand = cube.relative_position().cross(&sigma.mul_vec(&face.normal()));
    integrate_face_vec(&integrand, cube, face)
}

/// `Σᵢ ∫ x_P × σ·nᵢ dA`, the resultant moment about the cube center.
pub fn face_couple_about_cube_center(sigma: &PolyMat3, cube: &Cube) -> Vec3 {
    let mut total = Vec3::zero();
    for face in Face::all() {
        total += &face_moment_about_cube_center(sigma, cube, face);
    }
    total
}

/// Both sides of `∫_∂V x × A·n dA = ∫_V 2 axl skew A + x × Div A dV`, with
/// `x` the absolute position. Computed independently; they agree exactly.
pub fn divergence_theorem_cross_check(a: &PolyMat3, cube: &Cube) -> (Vec3, Vec3) {
    let x = PolyVec3::position();
    let mut lhs = Vec3::zero();
    for face in Face::all() {
        let integrand = x.cross(&a.mul_vec(&face.normal()));
        lhs += &integrate_face_vec(&integrand, cube, face);
    }
    let two = Rational::one() + Rational::one();
    let body = &a.axl_of_skew().scale(&two) + &x.cross(&div_tensor(a));
    (lhs, integrate_volume_vec(&body, cube))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::random::XorShift64;
    use crate::tensor::{anti, Mat3};
    use proptest::prelude::*;

    fn x(a: usize) -> PolyScalar {
        PolyScalar::var(a)
    }

    fn face(i: usize) -> Face {
        Face::new(i).unwrap()
    }

    #[test]
    fn face_geometry() {
        let expected = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)];
        for (f, (a, b, c)) in Face::all().into_iter().zip(expected) {
            assert_eq!(f.normal(), Vec3::from_ints(a, b, c));
            assert_eq!(f.opposite().normal(), -f.normal());
        }
        let cube = Cube::new(Vec3::from_ints(1, 2, 3), int(2)).unwrap();
        for f in Face::all() {
            let r = f.lever_arm(&cube);
            assert!(r.0[f.axis()].is_zero());
        }
        assert!(Face::new(0).is_err() && Face::new(7).is_err());
        assert!(Cube::centered(int(0)).is_err());
        assert!(Cube::centered(int(-1)).is_err());
    }

    #[test]
    fn face_integral_examples() {
        let l = rat(3, 2);
        let cube = Cube::centered(l.clone()).unwrap();
        for f in Face::all() {
            assert_eq!(integrate_face(&PolyScalar::constant(int(1)), &cube, f), &l * &l);
        }
        assert_eq!(integrate_face(&x(1), &cube, face(1)), int(0));
        assert_eq!(integrate_face(&(&x(1) * &x(1)), &cube, face(1)), pow(&l, 4) / int(12));
    }

    #[test]
    fn volume_integral_examples() {
        let l = rat(5, 3);
        let cube = Cube::centered(l.clone()).unwrap();
        assert_eq!(integrate_volume(&PolyScalar::constant(int(1)), &cube), pow(&l, 3));
        assert_eq!(integrate_volume(&x(0), &cube), int(0));
        assert_eq!(integrate_volume(&(&x(0) * &x(0)), &cube), pow(&l, 5) / int(12));
    }

    #[test]
    fn traction_sum_examples() {
        let l = int(2);
        let cube = Cube::new(Vec3::from_ints(1, -1, 0), l.clone()).unwrap();
        let mut g = XorShift64::new(1);
        let constant = PolyMat3::constant(&g.mat3());
        assert!(face_traction_sum(&constant, &cube).is_zero());
        let s11 = PolyMat3::single(0, 0, x(0));
        assert_eq!(face_traction_sum(&s11, &cube), Vec3::new(pow(&l, 3), int(0), int(0)));
    }

    #[test]
    fn face_couple_examples() {
        let l = rat(1, 2);
        let cube = Cube::centered(l.clone()).unwrap();
        let sigma0 = PolyMat3::constant(&Mat3::from_ints([[1, 2, 3], [4, 5, 6], [7, 8, 9]]));
        for f in Face::all() {
            assert!(face_couple_about_face_center(&sigma0, &cube, f).is_zero());
        }
        let s33 = PolyMat3::single(2, 2, x(1));
        assert_eq!(
            face_couple_about_face_center(&s33, &cube, face(3)),
            Vec3::new(pow(&l, 4) / int(12), int(0), int(0))
        );
    }

    #[test]
    fn cube_center_couple_examples() {
        let l = rat(2, 3);
        let cube = Cube::new(Vec3::from_ints(1, 0, -2), l.clone()).unwrap();
        let k = Mat3::from_ints([[1, 2, 3], [-4, 5, 6], [7, 0, 9]]);
        let expected = crate::tensor::axl_of_skew(&k).scale(&(int(2) * cube.volume()));
        assert_eq!(face_couple_about_cube_center(&PolyMat3::constant(&k), &cube), expected);
        assert!(face_couple_about_cube_center(&PolyMat3::constant(&k.sym()), &cube).is_zero());

        let centered = Cube::centered(l.clone()).unwrap();
        let s33 = PolyMat3::single(2, 2, &x(1) * &x(2));
        assert_eq!(
            face_couple_about_cube_center(&s33, &centered),
            Vec3::new(pow(&l, 5) / int(12), int(0), int(0))
        );
    }

    #[test]
    fn cross_divergence_examples() {
        let cube = Cube::new(Vec3::from_ints(1, 1, 0), int(2)).unwrap();
        let (lhs, rhs) = divergence_theorem_cross_check(&PolyMat3::identity(), &cube);
        assert!(lhs.is_zero() && rhs.is_zero());
        let c = Vec3::from_ints(1, -2, 3);
        let (lhs, rhs) = divergence_theorem_cross_check(&PolyMat3::constant(&anti(&c)), &cube);
        assert_eq!(lhs, c.scale(&(int(2) * cube.volume())));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_three_breaks_center_representation() {
        // σ₁₁ = x₁³: Div σ(0) = 0, yet the faces carry a net traction.
        let cube = Cube::centered(int(2)).unwrap();
        let s = PolyMat3::single(0, 0, &(&x(0) * &x(0)) * &x(0));
        let sum = face_traction_sum(&s, &cube);
        let at_center = div_tensor(&s).eval(cube.center()).scale(&cube.volume());
        assert_ne!(sum, at_center);
    }

    fn cube_strategy() -> impl Strategy<Value = Cube> {
        ((-3i64..=3, -3i64..=3, -3i64..=3), (1i64..=4, 1i64..=3))
            .prop_map(|((a, b, c), (n, d))| Cube::new(Vec3::from_ints(a, b, c), rat(n, d)).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn gauss_consistency(seed in any::<u64>(), cube in cube_strategy()) {
            let s = XorShift64::new(seed).poly_mat3(3);
            prop_assert_eq!(face_traction_sum(&s, &cube), integrate_volume_vec(&div_tensor(&s), &cube));
        }

        #[test]
        fn cross_product_divergence_theorem(seed in any::<u64>(), cube in cube_strategy()) {
            let a = XorShift64::new(seed).poly_mat3(3);
            let (lhs, rhs) = divergence_theorem_cross_check(&a, &cube);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
