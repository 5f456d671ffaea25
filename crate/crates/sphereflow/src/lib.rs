//! Cubic polynomial vector fields tangent to the unit sphere.
//!
//! The crate builds the three families of cubic fields on
//! `S^2 = {x^2 + y^2 + z^2 = 1}` (general cubic, Kolmogorov, homogeneous),
//! verifies tangency exactly over the rationals, detects invariant circles
//! and first integrals through Lie-derivative and extactic machinery, pushes
//! fields to the plane through stereographic projection from the south pole,
//! classifies singular points, and renders phase portraits of the closed
//! unit disk as SVG.
//!
//! Everything before the integration and rendering layers is exact rational
//! arithmetic; divisibility tests, cofactors, and tangency checks never go
//! through floating point.

pub mod darboux;
pub mod dynamics;
mod error;
pub mod field;
pub mod poly;
pub mod portrait;
pub mod specfile;
pub mod stereo;
pub mod sturm;

pub use error::{Error, Result};
pub use field::{CubicDecomposition, Family, KolmogorovParams, SphereField};
pub use poly::{Polynomial, Var, VarSpace};
