//! Polynomial fields over `(x₁, x₂, x₃)` with exact coefficients, and the
//! differential operators acting on them.
//!
//! A [`PolyScalar`] is a sparse map from exponent triples to nonzero
//! coefficients. Vector, second- and third-order fields are fixed-size arrays
//! of scalars. Cost grows with the number of stored monomials; fields of
//! degree up to about 8 stay cheap.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::rational::{pow, rat, Rational};
use crate::tensor::{levi_civita_row, Mat3, TensorError, Vec3};

/// Exponents of `x₁`, `x₂`, `x₃` in a monomial.
pub type Exps = [u32; 3];

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyScalar {
    terms: BTreeMap<Exps, Rational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(coeff: Rational, exps: Exps) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, coeff);
        p
    }

    /// The coordinate function `x_{axis+1}`.
    pub fn var(axis: usize) -> Self {
        let mut exps = [0; 3];
        exps[axis] = 1;
        Self::monomial(Rational::one(), exps)
    }

    /// Builds from `(coeff, exps)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Exps)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Exps, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: Exps) -> Rational {
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        PolyScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[axis] == 0 {
                continue;
            }
            let mut d = *e;
            d[axis] -= 1;
            out.add_term(d, c * Rational::from_integer(e[axis].into()));
        }
        out
    }

    pub fn eval(&self, point: &Vec3) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| c * pow(&point[0], e[0]) * pow(&point[1], e[1]) * pow(&point[2], e[2]))
            .sum()
    }

    /// Replaces every coordinate `x_a` by the polynomial `subs[a]`.
    pub fn substitute(&self, subs: &[PolyScalar; 3]) -> Self {
        let mut powers: [Vec<PolyScalar>; 3] = Default::default();
        for (a, list) in powers.iter_mut().enumerate() {
            let max = self.terms.keys().map(|e| e[a]).max().unwrap_or(0);
            list.push(PolyScalar::constant(Rational::one()));
            for k in 1..=max as usize {
                let next = &list[k - 1] * &subs[a];
                list.push(next);
            }
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let term = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize])
                * &powers[2][e[2] as usize];
            out += &term.scale(c);
        }
        out
    }

    /// `x ↦ f(x + offset)`.
    pub fn shift(&self, offset: &Vec3) -> Self {
        let subs = std::array::from_fn(|a| {
            &PolyScalar::var(a) + &PolyScalar::constant(offset[a].clone())
        });
        self.substitute(&subs)
    }

    /// `x ↦ f(M x)` for a constant matrix `M`.
    pub fn compose_linear(&self, m: &Mat3) -> Self {
        let subs = std::array::from_fn(|a| {
            PolyScalar::from_terms((0..3).map(|b| {
                let mut e = [0; 3];
                e[b] = 1;
                (m[(a, b)].clone(), e)
            }))
        });
        self.substitute(&subs)
    }

    /// Fixes `x_axis = value`.
    pub fn restrict(&self, axis: usize, value: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut r = *e;
            r[axis] = 0;
            out.add_term(r, c * pow(value, e[axis]));
        }
        out
    }

    /// Definite integral `∫_lo^hi f dx_axis`; the result no longer depends on `x_axis`.
    pub fn integrate_interval(&self, axis: usize, lo: &Rational, hi: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e[axis] + 1;
            let weight = (pow(hi, k) - pow(lo, k)) / Rational::from_integer(k.into());
            let mut r = *e;
            r[axis] = 0;
            out.add_term(r, c * weight);
        }
        out
    }

    /// Drops every monomial of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        PolyScalar {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[0] + e[1] + e[2] <= max_degree)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Constant term, i.e. the value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.coeff([0, 0, 0])
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&PolyScalar> for PolyScalar {
    fn sub_assign(&mut self, rhs: &PolyScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Mul<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: PolyScalar) -> PolyScalar {
        &self * &rhs
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (a, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", a + 1)?,
                    _ => write!(f, "*x{}^{}", a + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyVec3(pub [PolyScalar; 3]);

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyMat3(pub [[PolyScalar; 3]; 3]);

/// Third-order field with components `T_ijk`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyTen3(pub [[[PolyScalar; 3]; 3]; 3]);

impl PolyVec3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_fn(f: impl FnMut(usize) -> PolyScalar) -> Self {
        PolyVec3(std::array::from_fn(f))
    }

    pub fn constant(v: &Vec3) -> Self {
        Self::from_fn(|i| PolyScalar::constant(v[i].clone()))
    }

    /// The position field `x`.
    pub fn position() -> Self {
        Self::from_fn(PolyScalar::var)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(PolyScalar::is_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.iter().filter_map(PolyScalar::degree).max()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::from_fn(|i| self.0[i].scale(factor))
    }

    pub fn eval(&self, point: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| self.0[i].eval(point)))
    }

    pub fn map(&self, f: impl Fn(&PolyScalar) -> PolyScalar) -> Self {
        Self::from_fn(|i| f(&self.0[i]))
    }

    pub fn dot(&self, other: &PolyVec3) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for i in 0..3 {
            out += &(&self.0[i] * &other.0[i]);
        }
        out
    }

    pub fn cross(&self, other: &PolyVec3) -> PolyVec3 {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &other.0;
        PolyVec3([
            &(a2 * b3) - &(a3 * b2),
            &(a3 * b1) - &(a1 * b3),
            &(a1 * b2) - &(a2 * b1),
        ])
    }

    /// Multiplies every component by a scalar field.
    pub fn mul_scalar(&self, s: &PolyScalar) -> PolyVec3 {
        Self::from_fn(|i| &self.0[i] * s)
    }
}

impl PolyMat3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> PolyScalar) -> Self {
        PolyMat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn constant(m: &Mat3) -> Self {
        Self::from_fn(|i, j| PolyScalar::constant(m[(i, j)].clone()))
    }

    pub fn identity() -> Self {
        Self::constant(&Mat3::identity())
    }

    /// Single nonzero component `(i, j)`, zero-based.
    pub fn single(i: usize, j: usize, value: PolyScalar) -> Self {
        let mut m = Self::zero();
        m.0[i][j] = value;
        m
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(PolyScalar::is_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.iter().flatten().filter_map(PolyScalar::degree).max()
    }

    pub fn map(&self, f: impl Fn(&PolyScalar) -> PolyScalar) -> Self {
        Self::from_fn(|i, j| f(&self.0[i][j]))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map(|p| p.scale(factor))
    }

    pub fn eval(&self, point: &Vec3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j].eval(point))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn trace(&self) -> PolyScalar {
        let mut t = self.0[0][0].clone();
        t += &self.0[1][1];
        t += &self.0[2][2];
        t
    }

    pub fn sym(&self) -> Self {
        let half = rat(1, 2);
        Self::from_fn(|i, j| (&self.0[i][j] + &self.0[j][i]).scale(&half))
    }

    pub fn skew(&self) -> Self {
        let half = rat(1, 2);
        Self::from_fn(|i, j| (&self.0[i][j] - &self.0[j][i]).scale(&half))
    }

    pub fn dev(&self) -> Self {
        let p = self.trace().scale(&rat(1, 3));
        Self::from_fn(|i, j| {
            if i == j {
                &self.0[i][j] - &p
            } else {
                self.0[i][j].clone()
            }
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..i).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|i| (0..=i).all(|j| (&self.0[i][j] + &self.0[j][i]).is_zero()))
    }

    pub fn column(&self, j: usize) -> PolyVec3 {
        PolyVec3::from_fn(|i| self.0[i][j].clone())
    }

    /// `X · v` for a constant vector.
    pub fn mul_vec(&self, v: &Vec3) -> PolyVec3 {
        PolyVec3::from_fn(|i| {
            let mut s = PolyScalar::zero();
            for j in 0..3 {
                s += &self.0[i][j].scale(&v[j]);
            }
            s
        })
    }

    /// `X · v` for a vector field `v`.
    pub fn mul_vec_field(&self, v: &PolyVec3) -> PolyVec3 {
        PolyVec3::from_fn(|i| {
            let mut s = PolyScalar::zero();
            for j in 0..3 {
                s += &(&self.0[i][j] * &v.0[j]);
            }
            s
        })
    }

    /// `A · X · B` with constant `A` and `B`.
    pub fn sandwich(&self, a: &Mat3, b: &Mat3) -> Self {
        Self::from_fn(|i, l| {
            let mut s = PolyScalar::zero();
            for j in 0..3 {
                for k in 0..3 {
                    let w = &a[(i, j)] * &b[(k, l)];
                    if !w.is_zero() {
                        s += &self.0[j][k].scale(&w);
                    }
                }
            }
            s
        })
    }

    /// `axl(skew X)` componentwise.
    pub fn axl_of_skew(&self) -> PolyVec3 {
        let half = rat(1, 2);
        let m = &self.0;
        PolyVec3([
            (&m[2][1] - &m[1][2]).scale(&half),
            (&m[0][2] - &m[2][0]).scale(&half),
            (&m[1][0] - &m[0][1]).scale(&half),
        ])
    }

    /// `axl` of an antisymmetric field, rejecting other input.
    pub fn axl(&self) -> Result<PolyVec3, TensorError> {
        if !self.is_antisymmetric() {
            return Err(TensorError::NotAntisymmetric);
        }
        Ok(self.axl_of_skew())
    }

    /// Drops monomials above `max_degree` in every component.
    pub fn truncate(&self, max_degree: u32) -> Self {
        self.map(|p| p.truncate(max_degree))
    }
}

/// `anti(a)` for a vector field.
pub fn anti_field(a: &PolyVec3) -> PolyMat3 {
    let [a1, a2, a3] = &a.0;
    let z = PolyScalar::zero();
    PolyMat3([
        [z.clone(), -a3, a2.clone()],
        [a3.clone(), z.clone(), -a1],
        [-a2, a1.clone(), z],
    ])
}

impl PolyTen3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> PolyScalar) -> Self {
        PolyTen3(std::array::from_fn(|i| {
            std::array::from_fn(|j| std::array::from_fn(|k| f(i, j, k)))
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().flatten().all(PolyScalar::is_zero)
    }
}

macro_rules! impl_assign_ops {
    ($ty:ident, $($flat:ident),*) => {
        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                for (a, b) in self.0.iter_mut()$(.$flat())*.zip(rhs.0.iter()$(.$flat())*) {
                    *a += b;
                }
            }
        }
        impl SubAssign<&$ty> for $ty {
            fn sub_assign(&mut self, rhs: &$ty) {
                for (a, b) in self.0.iter_mut()$(.$flat())*.zip(rhs.0.iter()$(.$flat())*) {
                    *a -= b;
                }
            }
        }
    };
}

macro_rules! impl_field_ops {
    ($ty:ident) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out += rhs;
                out
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out -= rhs;
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
                let mut out = $ty::default();
                out -= self;
                out
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

impl_assign_ops!(PolyVec3,);
impl_assign_ops!(PolyMat3, flatten);
impl_assign_ops!(PolyTen3, flatten, flatten);
impl_field_ops!(PolyScalar);
impl_field_ops!(PolyVec3);
impl_field_ops!(PolyMat3);
impl_field_ops!(PolyTen3);

/// `(grad φ)_i = φ,_i`.
pub fn grad_scalar(phi: &PolyScalar) -> PolyVec3 {
    PolyVec3::from_fn(|i| phi.derivative(i))
}

/// `(Grad b)_ij = b_i,_j`.
pub fn grad_vector(b: &PolyVec3) -> PolyMat3 {
    PolyMat3::from_fn(|i, j| b.0[i].derivative(j))
}

/// `(GRAD X)_ijk = X_ij,_k`.
pub fn grad_tensor(x: &PolyMat3) -> PolyTen3 {
    PolyTen3::from_fn(|i, j, k| x.0[i][j].derivative(k))
}

/// `div b = b_i,_i`.
pub fn div_vector(b: &PolyVec3) -> PolyScalar {
    let mut out = PolyScalar::zero();
    for i in 0..3 {
        out += &b.0[i].derivative(i);
    }
    out
}

/// `(Div X)_i = X_ij,_j`, the row-wise divergence.
pub fn div_tensor(x: &PolyMat3) -> PolyVec3 {
    PolyVec3::from_fn(|i| {
        let mut s = PolyScalar::zero();
        for j in 0..3 {
            s += &x.0[i][j].derivative(j);
        }
        s
    })
}

/// `(DIV m)_ij = m_ijk,_k`.
pub fn div_third(m: &PolyTen3) -> PolyMat3 {
    PolyMat3::from_fn(|i, j| {
        let mut s = PolyScalar::zero();
        for k in 0..3 {
            s += &m.0[i][j][k].derivative(k);
        }
        s
    })
}

/// `curl v = −v_a,_b ε_abi e_i`; equals the usual right-handed curl, so
/// `(curl v)₃ = v₂,₁ − v₁,₂`.
pub fn curl_vector(v: &PolyVec3) -> PolyVec3 {
    PolyVec3::from_fn(|i| {
        let mut s = PolyScalar::zero();
        for (a, b, sign) in levi_civita_row(i) {
            // ε_abi = ε_iab
            let d = v.0[a].derivative(b);
            if sign > 0 {
                s -= &d;
            } else {
                s += &d;
            }
        }
        s
    })
}

/// Row-wise curl `(Curl X)_ij = −X_ia,_b ε_abj`.
pub fn curl_tensor(x: &PolyMat3) -> PolyMat3 {
    let rows: [PolyVec3; 3] = std::array::from_fn(|i| {
        curl_vector(&PolyVec3::from_fn(|a| x.0[i][a].clone()))
    });
    PolyMat3::from_fn(|i, j| rows[i].0[j].clone())
}

/// Expresses `X` in a rotated frame: `ξ ↦ Q · X(Qᵀ ξ) · Qᵀ`.
pub fn pushforward_rotation(x: &PolyMat3, q: &Mat3) -> Result<PolyMat3, TensorError> {
    if !q.is_rotation() {
        return Err(TensorError::NotRotation);
    }
    let qt = q.transpose();
    let composed = x.map(|p| p.compose_linear(&qt));
    Ok(composed.sandwich(q, &qt))
}
