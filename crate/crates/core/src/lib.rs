//! Smooth loops on the circle G/H ≅ S¹, where G = SL₂(ℝ) and H is its
//! upper triangular subgroup, built from sections
//! `σ(t) = rot(t) · [[f(t), g(t)], [0, 1/f(t)]]`.
//!
//! [`builder`] turns Fourier data for a weight `R` and a shear `g` into a
//! validated [`LoopSpec`]; [`loops::CircleLoop`] provides the loop
//! operations; [`verify`] checks loop axioms and related properties.

// `!(x > m)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod builder;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod fourier;
pub mod loops;
pub mod sl2;
pub mod specfile;
pub mod tolerances;
pub mod verify;

pub use builder::{build_loop_spec, reflect_spec, LoopSpec, ValidationReport};
pub use error::{Error, Result};
pub use fourier::TruncatedFourierSeries;
pub use loops::CircleLoop;
pub use sl2::{CosetAngle, Mat2};
pub use tolerances::Tolerances;
