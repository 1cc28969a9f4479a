//! Constant vectors and second-order tensors over exact rationals.
//!
//! Index convention: for a stress-like tensor `X`, the first index is the
//! direction of the traction component and the second names the plane
//! normal, so the traction on a plane with normal `n` is `X · n`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rational::{format_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("tensor is not antisymmetric")]
    NotAntisymmetric,
    #[error("tensor is not symmetric")]
    NotSymmetric,
    #[error("tensor is not a proper rotation (requires QᵀQ = 1 and det Q = +1)")]
    NotRotation,
}

/// Alternating symbol with `ε_123 = ε_231 = ε_312 = +1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LeviCivita;

impl LeviCivita {
    /// Component for zero-based indices.
    pub fn get(self, i: usize, j: usize, k: usize) -> i8 {
        levi_civita(i, j, k)
    }
}

/// `ε_ijk` for zero-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i8 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (1, 0, 2) | (2, 1, 0) => -1,
        _ => 0,
    }
}

/// Nonzero `(j, k, ε_ijk)` triples for a fixed `i`.
pub(crate) fn levi_civita_row(i: usize) -> [(usize, usize, i8); 2] {
    let j = (i + 1) % 3;
    let k = (i + 2) % 3;
    [(j, k, 1), (k, j, -1)]
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec3(pub [Rational; 3]);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[Rational; 3]; 3]);

impl Vec3 {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Vec3([a, b, c])
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Vec3([rat(a, 1), rat(b, 1), rat(c, 1)])
    }

    pub fn zero() -> Self {
        Vec3(std::array::from_fn(|_| Rational::zero()))
    }

    /// Unit basis vector for a zero-based axis.
    pub fn unit(axis: usize) -> Self {
        let mut v = Self::zero();
        v.0[axis] = Rational::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Vec3) -> Rational {
        (0..3).map(|i| &self.0[i] * &other.0[i]).sum()
    }

    pub fn norm_squared(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, factor: &Rational) -> Vec3 {
        Vec3(std::array::from_fn(|i| &self.0[i] * factor))
    }

    /// `self × other`, i.e. `a_i b_j ε_ijk e_k`.
    pub fn cross(&self, other: &Vec3) -> Vec3 {
        cross(self, other)
    }

    /// Dyadic product `self ⊗ other`.
    pub fn outer(&self, other: &Vec3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i] * &other.0[j])
        }))
    }
}

/// `a × b` with components `(a₂b₃ − a₃b₂, a₃b₁ − a₁b₃, a₁b₂ − a₂b₁)`.
pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    let [a1, a2, a3] = &a.0;
    let [b1, b2, b3] = &b.0;
    Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
}

impl Mat3 {
    pub fn zero() -> Self {
        Mat3(std::array::from_fn(|_| {
            std::array::from_fn(|_| Rational::zero())
        }))
    }

    pub fn identity() -> Self {
        Self::diag(&Rational::one(), &Rational::one(), &Rational::one())
    }

    pub fn diag(a: &Rational, b: &Rational, c: &Rational) -> Self {
        let mut m = Self::zero();
        m.0[0][0] = a.clone();
        m.0[1][1] = b.clone();
        m.0[2][2] = c.clone();
        m
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| rat(rows[i][j], 1))
        }))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3(std::array::from_fn(|i| self.0[i][j].clone()))
    }

    pub fn set_column(&mut self, j: usize, v: &Vec3) {
        for i in 0..3 {
            self.0[i][j] = v.0[i].clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn trace(&self) -> Rational {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    pub fn scale(&self, factor: &Rational) -> Mat3 {
        Mat3::from_fn(|i, j| &self.0[i][j] * factor)
    }

    pub fn sym(&self) -> Mat3 {
        let half = rat(1, 2);
        Mat3::from_fn(|i, j| (&self.0[i][j] + &self.0[j][i]) * &half)
    }

    pub fn skew(&self) -> Mat3 {
        let half = rat(1, 2);
        Mat3::from_fn(|i, j| (&self.0[i][j] - &self.0[j][i]) * &half)
    }

    /// `X − (1/3) tr(X) 1`.
    pub fn dev(&self) -> Mat3 {
        self - &self.spherical()
    }

    /// `(1/3) tr(X) 1`.
    pub fn spherical(&self) -> Mat3 {
        let p = self.trace() * rat(1, 3);
        Mat3::diag(&p, &p, &p)
    }

    /// Diagonal part, off-diagonal entries zeroed.
    pub fn diagonal_part(&self) -> Mat3 {
        Mat3::diag(&self.0[0][0], &self.0[1][1], &self.0[2][2])
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.0[i][j] == -&self.0[j][i]))
    }

    /// Frobenius inner product `tr(X Yᵀ)`.
    pub fn inner(&self, other: &Mat3) -> Rational {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_squared(&self) -> Rational {
        self.inner(self)
    }

    pub fn det(&self) -> Rational {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| {
            (0..3).map(|j| &self.0[i][j] * &v.0[j]).sum()
        }))
    }

    pub fn matmul(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| (0..3).map(|k| &self.0[i][k] * &other.0[k][j]).sum())
    }

    /// Exact test for `QᵀQ = 1` and `det Q = +1`.
    pub fn is_rotation(&self) -> bool {
        self.transpose().matmul(self) == Mat3::identity() && self.det() == Rational::one()
    }
}

/// Orthogonal split `X = dev sym X + skew X + (1/3) tr(X) 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub dev_sym: Mat3,
    pub skew: Mat3,
    pub spherical: Mat3,
}

pub fn decompose(x: &Mat3) -> Decomposition {
    Decomposition {
        dev_sym: x.sym().dev(),
        skew: x.skew(),
        spherical: x.spherical(),
    }
}

/// Axial vector of an antisymmetric tensor, `a_k = −½ A_ij ε_ijk`.
pub fn axl(a: &Mat3) -> Result<Vec3, TensorError> {
    if !a.is_antisymmetric() {
        return Err(TensorError::NotAntisymmetric);
    }
    Ok(axl_of_skew(a))
}

/// `axl(skew X)` for an arbitrary `X`.
pub fn axl_of_skew(x: &Mat3) -> Vec3 {
    let half = rat(1, 2);
    let m = &x.0;
    Vec3([
        (&m[2][1] - &m[1][2]) * &half,
        (&m[0][2] - &m[2][0]) * &half,
        (&m[1][0] - &m[0][1]) * &half,
    ])
}

/// Skew tensor of an axial vector, `A_ab = −ε_abk a_k`, so `anti(a)·b = a × b`.
pub fn anti(a: &Vec3) -> Mat3 {
    let [a1, a2, a3] = &a.0;
    let z = Rational::zero();
    Mat3([
        [z.clone(), -a3, a2.clone()],
        [a3.clone(), z.clone(), -a1],
        [-a2, a1.clone(), z],
    ])
}

/// Pushes a tensor into a rotated frame: `Q X Qᵀ`.
pub fn rotate_tensor(q: &Mat3, x: &Mat3) -> Result<Mat3, TensorError> {
    if !q.is_rotation() {
        return Err(TensorError::NotRotation);
    }
    Ok(q.matmul(x).matmul(&q.transpose()))
}

/// Exact rational rotation from the Cayley parametrization
/// `Q = ((1 − |v|²) 1 + 2 v⊗v + 2 anti(v)) / (1 + |v|²)`.
///
/// Every rational `v` yields a rational proper rotation, which keeps the
/// orthogonality checks exact.
pub fn cayley_rotation(v: &Vec3) -> Mat3 {
    let n2 = v.norm_squared();
    let denom = Rational::one() + &n2;
    let two = rat(2, 1);
    let base = Mat3::identity().scale(&(Rational::one() - &n2));
    let m = &(&base + &v.outer(v).scale(&two)) + &anti(v).scale(&two);
    m.scale(&(Rational::one() / denom))
}

/// Rotation about a coordinate axis by the angle with `cos = a/c`, `sin = b/c`
/// for a Pythagorean triple `a² + b² = c²`.
pub fn pythagorean_rotation(axis: usize, a: i64, b: i64, c: i64) -> Mat3 {
    assert_eq!(a * a + b * b, c * c, "not a Pythagorean triple");
    let cos = rat(a, c);
    let sin = rat(b, c);
    let (p, q) = ((axis + 1) % 3, (axis + 2) % 3);
    let mut m = Mat3::identity();
    m.0[p][p] = cos.clone();
    m.0[q][q] = cos;
    m.0[p][q] = -sin.clone();
    m.0[q][p] = sin;
    m
}

macro_rules! impl_binops {
    ($ty:ident) => {
        impl<'a> Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &'a $ty) -> $ty {
                let mut out = self.clone();
                out += rhs;
                out
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(mut self, rhs: $ty) -> $ty {
                self += &rhs;
                self
            }
        }
        impl<'a> Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &'a $ty) -> $ty {
                let mut out = self.clone();
                out -= rhs;
                out
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(mut self, rhs: $ty) -> $ty {
                self -= &rhs;
                self
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self.scale(&rat(-1, 1))
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self.scale(&rat(-1, 1))
            }
        }
        impl Mul<&Rational> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &Rational) -> $ty {
                self.scale(rhs)
            }
        }
    };
}

impl AddAssign<&Vec3> for Vec3 {
    fn add_assign(&mut self, rhs: &Vec3) {
        for i in 0..3 {
            self.0[i] += &rhs.0[i];
        }
    }
}

impl SubAssign<&Vec3> for Vec3 {
    fn sub_assign(&mut self, rhs: &Vec3) {
        for i in 0..3 {
            self.0[i] -= &rhs.0[i];
        }
    }
}

impl AddAssign<&Mat3> for Mat3 {
    fn add_assign(&mut self, rhs: &Mat3) {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += &rhs.0[i][j];
            }
        }
    }
}

impl SubAssign<&Mat3> for Mat3 {
    fn sub_assign(&mut self, rhs: &Mat3) {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] -= &rhs.0[i][j];
            }
        }
    }
}

impl_binops!(Vec3);
impl_binops!(Mat3);

impl Index<usize> for Vec3 {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.0[i][j]
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

// Rationals go over the wire as "p/q" strings.
impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(format_rational).collect();
        strings.serialize(serializer)
    }
}

impl Serialize for Mat3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .0
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        rows.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    fn any_vec() -> impl Strategy<Value = Vec3> {
        [small_rational(), small_rational(), small_rational()].prop_map(Vec3)
    }

    fn any_mat() -> impl Strategy<Value = Mat3> {
        [any_vec(), any_vec(), any_vec()]
            .prop_map(|[a, b, c]| Mat3([a.0, b.0, c.0]))
    }

    #[test]
    fn levi_civita_table() {
        let eps = LeviCivita;
        assert_eq!(eps.get(0, 1, 2), 1);
        assert_eq!(eps.get(1, 2, 0), 1);
        assert_eq!(eps.get(2, 0, 1), 1);
        assert_eq!(eps.get(0, 2, 1), -1);
        assert_eq!(eps.get(1, 0, 2), -1);
        assert_eq!(eps.get(2, 1, 0), -1);
        assert_eq!(eps.get(0, 0, 1), 0);
        let nonzero = (0..27)
            .filter(|n| eps.get(n / 9, (n / 3) % 3, n % 3) != 0)
            .count();
        assert_eq!(nonzero, 6);
    }

    #[test]
    fn decompose_examples() {
        let x = Mat3::from_ints([[1, 2, 0], [0, 1, 0], [0, 0, 1]]);
        let d = decompose(&x);
        assert_eq!(d.dev_sym, Mat3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 0]]));
        assert_eq!(d.skew, Mat3::from_ints([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]));
        assert_eq!(d.spherical, Mat3::identity());

        let d = decompose(&Mat3::identity());
        assert!(d.dev_sym.is_zero() && d.skew.is_zero());
        assert_eq!(d.spherical, Mat3::identity());

        let a = anti(&Vec3::from_ints(1, 2, 3));
        let d = decompose(&a);
        assert!(d.dev_sym.is_zero() && d.spherical.is_zero());
        assert_eq!(d.skew, a);
    }

    #[test]
    fn axl_anti_displayed_matrix() {
        let a = Mat3::from_ints([[0, -3, 2], [3, 0, -1], [-2, 1, 0]]);
        assert_eq!(anti(&Vec3::from_ints(1, 2, 3)), a);
        assert_eq!(axl(&a).unwrap(), Vec3::from_ints(1, 2, 3));
        assert_eq!(axl(&Mat3::zero()).unwrap(), Vec3::zero());
        assert!(anti(&Vec3::zero()).is_zero());
    }

    #[test]
    fn axl_rejects_non_antisymmetric() {
        assert_eq!(axl(&Mat3::identity()), Err(TensorError::NotAntisymmetric));
    }

    #[test]
    fn cross_examples() {
        let e1 = Vec3::unit(0);
        let e2 = Vec3::unit(1);
        assert_eq!(cross(&e1, &e2), Vec3::unit(2));
        let a = Vec3::from_ints(1, 2, 3);
        assert!(cross(&a, &a).is_zero());
        assert_eq!(cross(&a, &Vec3::from_ints(4, 5, 6)), Vec3::from_ints(-3, 6, -3));
    }

    #[test]
    fn rotate_examples() {
        let q = Mat3([
            [rat(3, 5), rat(-4, 5), int(0)],
            [rat(4, 5), rat(3, 5), int(0)],
            [int(0), int(0), int(1)],
        ]);
        let x = Mat3::diag(&int(1), &int(0), &int(0));
        let expected = Mat3([
            [rat(9, 25), rat(12, 25), int(0)],
            [rat(12, 25), rat(16, 25), int(0)],
            [int(0), int(0), int(0)],
        ]);
        assert_eq!(rotate_tensor(&q, &x).unwrap(), expected);
        assert_eq!(q, pythagorean_rotation(2, 3, 4, 5));
        assert_eq!(rotate_tensor(&Mat3::identity(), &expected).unwrap(), expected);
    }

    #[test]
    fn rotate_rejects_reflections_and_shears() {
        let reflect = Mat3::diag(&int(1), &int(1), &int(-1));
        assert_eq!(rotate_tensor(&reflect, &Mat3::identity()), Err(TensorError::NotRotation));
        let shear = Mat3::from_ints([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(rotate_tensor(&shear, &Mat3::identity()), Err(TensorError::NotRotation));
    }

    #[test]
    fn anti_matches_cross_on_random_pairs() {
        // 100 seeded rational pairs; the oracle is the component formula of cross().
        let mut rng = crate::random::XorShift64::new(7);
        for _ in 0..100 {
            let a = rng.vec3();
            let b = rng.vec3();
            let by_formula = Vec3([
                &a[1] * &b[2] - &a[2] * &b[1],
                &a[2] * &b[0] - &a[0] * &b[2],
                &a[0] * &b[1] - &a[1] * &b[0],
            ]);
            assert_eq!(anti(&a).mul_vec(&b), by_formula);
        }
    }

    proptest! {
        #[test]
        fn decomposition_reconstructs(x in any_mat()) {
            let d = decompose(&x);
            prop_assert!(d.dev_sym.trace().is_zero());
            prop_assert!(d.dev_sym.is_symmetric());
            prop_assert!(d.skew.trace().is_zero());
            prop_assert!(d.skew.is_antisymmetric());
            prop_assert_eq!(&(&d.dev_sym + &d.skew) + &d.spherical, x);
        }

        #[test]
        fn axl_anti_round_trip(v in any_vec(), x in any_mat()) {
            prop_assert_eq!(axl(&anti(&v)).unwrap(), v);
            let s = x.skew();
            prop_assert_eq!(anti(&axl(&s).unwrap()), s);
        }

        #[test]
        fn axl_defining_property(x in any_mat(), b in any_vec()) {
            let a = x.skew();
            prop_assert_eq!(a.mul_vec(&b), cross(&axl(&a).unwrap(), &b));
        }

        #[test]
        fn cross_alternating(a in any_vec(), b in any_vec()) {
            prop_assert_eq!(cross(&a, &b), -cross(&b, &a));
            prop_assert!(cross(&a, &b).dot(&a).is_zero());
        }

        #[test]
        fn frobenius_is_sum_of_squares(x in any_mat()) {
            let direct: Rational = x.0.iter().flatten().map(|v| v * v).sum();
            prop_assert_eq!(x.norm_squared(), direct);
        }

        #[test]
        fn rotation_preserves_trace(v in any_vec(), x in any_mat()) {
            let q = cayley_rotation(&v);
            prop_assert!(q.is_rotation());
            prop_assert_eq!(rotate_tensor(&q, &x).unwrap().trace(), x.trace());
        }
    }
}
