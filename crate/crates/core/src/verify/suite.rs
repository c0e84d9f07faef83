//! Geometry-specific residual suites.

use serde::{Deserialize, Serialize};

use super::curvature::{
    curvatures, first_form_field, fundamental_forms, intrinsic_curvature, surface_jets,
    BOUNDARY_RING,
};
use super::residuals::{
    christoffel_residual, conformality_residual, lw_residual, marginally_trapped_residual,
};
use crate::domain::Field;
use crate::surface::{GeometryKind, SurfaceSample};

/// Tolerances of every check. Hyperplane tolerance is relative to the grid
/// diameter, the Christoffel and H-frame tolerances are `c · h²` with `c` the
/// value given here, conformality is relative to `E`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub zero_mean_curvature: f64,
    pub perturbed_mean_curvature: f64,
    pub constant_mean_curvature: f64,
    pub quadric: f64,
    pub lightcone: f64,
    pub hyperplane: f64,
    pub intrinsic_flatness: f64,
    pub lw: f64,
    pub marginally_trapped: f64,
    pub alignment: f64,
    pub conformality: f64,
    pub christoffel: f64,
    pub h_frame: f64,
    pub det_drift: f64,
    pub path_independence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero_mean_curvature: 1e-5,
            perturbed_mean_curvature: 1e-4,
            constant_mean_curvature: 1e-4,
            quadric: 1e-8,
            lightcone: 1e-10,
            hyperplane: 1e-9,
            intrinsic_flatness: 1e-3,
            lw: 1e-3,
            marginally_trapped: 1e-5,
            alignment: 1e-5,
            conformality: 1e-8,
            christoffel: 10.0,
            h_frame: 10.0,
            det_drift: 1e-9,
            path_independence: 1e-7,
        }
    }
}

/// One residual maximum against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    /// Nodes that contributed; a check over no nodes fails.
    pub nodes: usize,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, value: f64, tolerance: f64, nodes: usize) -> Self {
        Self {
            name: name.to_string(),
            value,
            tolerance,
            nodes,
            pass: nodes > 0 && value <= tolerance,
        }
    }

    fn from_field(name: &str, f: &Field<f64>, tolerance: f64) -> Self {
        let vals: Vec<f64> = f.values.iter().flatten().copied().collect();
        let max = vals
            .iter()
            .fold(0.0f64, |a, &b| if b.is_nan() { f64::NAN } else { a.max(b) });
        Self::new(name, max, tolerance, vals.len())
    }
}

/// Per-node diagnostics; `None` where a quantity is undefined or masked.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NodeDiagnostics {
    pub h: Option<f64>,
    pub k: Option<f64>,
    pub k_int: Option<f64>,
    pub e_minus_g: Option<f64>,
    pub f: Option<f64>,
    /// `(x,x) − μ` for quadric targets, `(x − x_base, p)` for affine ones.
    pub constraint: Option<f64>,
    pub trapped: Option<f64>,
    pub alignment: Option<f64>,
    pub lw: Option<f64>,
    pub christoffel_scalar: Option<f64>,
    pub christoffel_wedge: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub kind: GeometryKind,
    pub nodes: Field<NodeDiagnostics>,
    pub checks: Vec<Check>,
}

impl CurvatureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn column<T: Copy>(
    nodes: &Field<NodeDiagnostics>,
    get: impl Fn(&NodeDiagnostics) -> Option<T>,
) -> Field<T> {
    nodes.map(get)
}

/// Runs the residual suite that matches the surface's target geometry.
pub fn verify_surface(s: &SurfaceSample, tol: &Tolerances) -> CurvatureReport {
    let grid = s.positions.grid;
    let target = s.target;
    let kind = target.kind;
    let jets = surface_jets(s);
    let forms = fundamental_forms(s);
    let hk = curvatures(&forms);
    let first = first_form_field(s);
    let k_int = intrinsic_curvature(&first);
    let conf = conformality_residual(&first);
    let trapped = marginally_trapped_residual(&jets, &s.gauss);
    let christoffel = s
        .dual
        .as_ref()
        .map(|d| christoffel_residual(&s.positions, d));

    let (bi, bj) = grid.base;
    let base_level = s.positions.get(bi, bj).map(|x| x.ip(target.p));
    let constraint = s.positions.map(|x| {
        if kind.is_affine() {
            Some(x.ip(target.p) - base_level?)
        } else {
            Some(
                x.ip(*x)
                    - if kind == GeometryKind::LwBryant {
                        -1.0
                    } else {
                        target.mu
                    },
            )
        }
    });

    let nodes = Field::from_fn(grid, |i, j| {
        s.positions.get(i, j)?;
        let interior = grid.is_interior(i, j, BOUNDARY_RING);
        let hk = hk.get(i, j).copied();
        let e = first.get(i, j).map(|f| f[0]);
        let conf = conf.get(i, j).copied();
        Some(NodeDiagnostics {
            h: hk.map(|v| v.0),
            k: hk.map(|v| v.1),
            k_int: k_int.get(i, j).copied(),
            e_minus_g: conf.zip(e).map(|(c, e)| c.0 / e.abs()).filter(|_| interior),
            f: conf.zip(e).map(|(c, e)| c.1 / e.abs()).filter(|_| interior),
            constraint: constraint.get(i, j).copied(),
            trapped: trapped.get(i, j).map(|v| v.0),
            alignment: trapped.get(i, j).map(|v| v.1),
            lw: hk
                .filter(|_| kind == GeometryKind::LwBryant)
                .map(|(h, k)| lw_residual(h, k, target.mu)),
            christoffel_scalar: christoffel.as_ref().and_then(|c| c.get(i, j)).map(|v| v.0),
            christoffel_wedge: christoffel.as_ref().and_then(|c| c.get(i, j)).map(|v| v.1),
        })
    });

    let abs_h = column(&nodes, |n| n.h.map(f64::abs));
    let abs_constraint = column(&nodes, |n| n.constraint.map(f64::abs));
    let h = grid.hu().max(grid.hv());
    let mut checks = Vec::new();
    let mut push = |name: &str, f: Field<f64>, t: f64| checks.push(Check::from_field(name, &f, t));

    let general = |push: &mut dyn FnMut(&str, Field<f64>, f64)| {
        push(
            "marginally_trapped",
            column(&nodes, |n| n.trapped),
            tol.marginally_trapped,
        );
        push("alignment", column(&nodes, |n| n.alignment), tol.alignment);
        push(
            "christoffel_scalar",
            column(&nodes, |n| n.christoffel_scalar),
            tol.christoffel * h * h,
        );
        push(
            "christoffel_wedge",
            column(&nodes, |n| n.christoffel_wedge),
            tol.christoffel * h * h,
        );
    };

    match kind {
        GeometryKind::AffineE3 | GeometryKind::AffineL3 | GeometryKind::AffineIsotropic => {
            if kind != GeometryKind::AffineIsotropic {
                let t = if target.m != 0.0 {
                    tol.perturbed_mean_curvature
                } else {
                    tol.zero_mean_curvature
                };
                push("mean_curvature", abs_h, t);
            }
            push(
                "hyperplane",
                abs_constraint,
                tol.hyperplane * grid.diameter(),
            );
            push(
                "conformality_e_minus_g",
                column(&nodes, |n| n.e_minus_g),
                tol.conformality,
            );
            push("conformality_f", column(&nodes, |n| n.f), tol.conformality);
            general(&mut push);
        }
        GeometryKind::QuadricH3 | GeometryKind::QuadricDeSitter => {
            let want = 1.0 / target.mu.abs().sqrt();
            let dev = if kind == GeometryKind::QuadricH3 {
                column(&nodes, |n| n.h.map(|h| (h - want).abs()))
            } else {
                column(&nodes, |n| n.h.map(|h| (h.abs() - want).abs()))
            };
            push("mean_curvature", dev, tol.constant_mean_curvature);
            push("quadric", abs_constraint, tol.quadric);
            push(
                "conformality_e_minus_g",
                column(&nodes, |n| n.e_minus_g),
                tol.conformality,
            );
            push("conformality_f", column(&nodes, |n| n.f), tol.conformality);
            general(&mut push);
        }
        GeometryKind::QuadricLightcone => {
            push("quadric", abs_constraint, tol.lightcone);
            push(
                "intrinsic_flatness",
                column(&nodes, |n| n.k_int.map(f64::abs)),
                tol.intrinsic_flatness,
            );
        }
        GeometryKind::LwBryant => {
            push("lw", column(&nodes, |n| n.lw), tol.lw);
            push("quadric", abs_constraint, tol.quadric);
        }
    }

    CurvatureReport {
        kind,
        nodes,
        checks,
    }
}
