//! Exact tensor-field calculus for couple-stress continua.
//!
//! Stress, displacement and couple-stress fields are polynomials in
//! `(x₁, x₂, x₃)` with rational coefficients, so every identity is checked
//! by exact equality. The crate covers:
//!
//! - constant tensor algebra ([`tensor`]) and polynomial fields with their
//!   differential operators ([`poly`]);
//! - exact integration over a cube and its faces ([`cube`]);
//! - the second-order Taylor split of a stress field at a cube center, the
//!   polarity of each piece, and the couple stress read off the stress
//!   gradients ([`taylor`], [`analysis`]);
//! - constitutive couple-stress models and conformal maps ([`models`]);
//! - worked scenarios ([`scenarios`]), JSON formats ([`field_doc`],
//!   [`report`]) and seeded property suites ([`verify`]).
//!
//! ```
//! use polarity_core::cube::Cube;
//! use polarity_core::poly::{PolyMat3, PolyScalar};
//! use polarity_core::rational::{int, rat};
//! use polarity_core::taylor::{classify, expand_on, split_bilinear, PolarityClass};
//!
//! // σ₃₃ = x₂ x₃ on a unit cube at the origin
//! let sigma = PolyMat3::single(2, 2, &PolyScalar::var(1) * &PolyScalar::var(2));
//! let cube = Cube::centered(int(1)).unwrap();
//! let t = expand_on(&sigma, &cube);
//! let (_, b2) = split_bilinear(&t);
//! assert_eq!(classify(&b2, &cube), PolarityClass::Bipolar);
//! # let _ = rat(1, 2);
//! ```

pub mod analysis;
pub mod cube;
pub mod field_doc;
pub mod models;
pub mod poly;
pub mod random;
pub mod rational;
pub mod report;
pub mod scenarios;
pub mod taylor;
pub mod tensor;
pub mod verify;

pub use rational::Rational;
pub use tensor::{Mat3, Vec3};

/// The guide's chapters, compiled so their snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/cube.md")]
    mod cube {}
    #[doc = include_str!("../../../book/src/polarity.md")]
    mod polarity {}
    #[doc = include_str!("../../../book/src/couple-stress.md")]
    mod couple_stress {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
}
