//! Numerical differential geometry of sampled surfaces: fundamental forms,
//! curvatures and the residuals the construction predicts to vanish.
//!
//! Derivatives are central differences with the grid step; nodes within
//! [`BOUNDARY_RING`] of the edge are never checked.

pub mod curvature;
pub mod fd;
pub mod residuals;
pub mod suite;

pub use curvature::{
    curvatures, first_form_field, fundamental_forms, intrinsic_curvature, shape, surface_jets,
    Forms, Jet2, BOUNDARY_RING,
};
pub use residuals::{
    christoffel_residual, conformality_residual, lw_residual, marginally_trapped_residual,
    mean_curvature_vector,
};
pub use suite::{verify_surface, Check, CurvatureReport, NodeDiagnostics, Tolerances};
