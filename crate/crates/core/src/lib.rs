//! Weierstrass-type representations of surfaces in Minkowski 4-space.
//!
//! From holomorphic data `(φ, ω)` the crate builds the closed
//! so(3,1)-valued 1-form `ζ` (in the spinor picture the sl(2,ℂ)-valued form
//! `ξ`), integrates it by quadrature or through the flat-connection frame
//! equation, and produces zero mean curvature surfaces in the three affine
//! 3-spaces, constant mean curvature surfaces in hyperbolic and de Sitter
//! space, flat surfaces in the lightcone, and linear Weingarten surfaces of
//! Bryant type. The `verify` module checks each output against the curvature
//! property it should have.

pub mod algebra;
pub mod config;
pub mod data;
pub mod domain;
pub mod error;
pub mod export;
pub mod expr;
pub mod integrate;
pub mod pipeline;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
