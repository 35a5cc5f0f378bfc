//! Exact-arithmetic and numeric toolkit for the universal family of degree-`d`
//! hypersurfaces in projective `n`-space.
//!
//! The crate works in the affine chart where the family is cut out by
//! `F = sum_{|alpha| <= d} a_alpha z^alpha` and provides:
//!
//! * sparse multivariate polynomial algebra over exact rationals or complex
//!   doubles ([`poly`], [`scalar`]),
//! * the chart equation and points on it ([`universal`]),
//! * the two families of tangent vector fields (the `d/da` telescoping fields
//!   and the lifts of linear fields on the base) together with exact tangency
//!   certificates ([`fields`]),
//! * pointwise generation certificates via exact rank computation
//!   ([`generation`], [`linalg`]),
//! * the numeric side: polynomial disc-to-family maps, Jacobian wedge norms,
//!   the Poincare volume form and its Laplacian, and the Ahlfors-Schwarz
//!   comparison ([`curvature`]).
//!
//! All randomized routines are seeded through [`sampling`] so runs are
//! bit-reproducible.

pub mod curvature;
pub mod error;
pub mod fields;
pub mod generation;
pub mod linalg;
pub mod multiindex;
pub mod parse;
pub mod poly;
pub mod sampling;
pub mod scalar;
pub mod universal;

pub use error::{Error, Result};
pub use multiindex::{dimension_count, enumerate_multiindices, EnumMode, MultiIndex};
pub use poly::{Monomial, PolyContext, SparsePoly, Variable};
pub use scalar::{Scalar, ScalarMode};
