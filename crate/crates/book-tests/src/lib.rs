//! Runs every code snippet in the guide as a doc-test, keeping the book in
//! sync with the library: `cargo test --doc -p sphereflow-book-tests`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/sphere-fields.md")]
pub mod sphere_fields {}

#[doc = include_str!("../../../book/src/invariant-circles.md")]
pub mod invariant_circles {}

#[doc = include_str!("../../../book/src/stereographic.md")]
pub mod stereographic {}

#[doc = include_str!("../../../book/src/singular-points.md")]
pub mod singular_points {}

#[doc = include_str!("../../../book/src/portraits.md")]
pub mod portraits {}
