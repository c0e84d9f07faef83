//! Construction of ξ and ζ from sampled data, closed-form quadrature, and the
//! flat-connection frame solver.

pub mod forms;
pub mod frame;
pub mod quadrature;

pub use forms::{
    build_xi, xi_matrix, zeta_apply, HoloForm, HoloXi, OneForm, XiField, XiSource, ZetaForm,
};
pub use frame::{
    path_independence_check, secondary_sample, solve_psi, FrameField, FrameSide, GaugedXi,
    SecondaryXi,
};
pub use quadrature::{
    field_max, integrate_closed_form, plaquette_residuals, simpson_edge, FieldValue, Staircase,
};
