//! Meshes, per-node CSV tables and verification reports.

pub mod mesh;

use std::io::Write;

use serde::Serialize;

pub use mesh::{build_mesh, default_projection, project, write_mesh, write_obj, write_ply, Mesh};

use crate::config::ProjectionModel;
use crate::surface::SurfaceSample;
use crate::verify::{Check, CurvatureReport};

/// Mesh of `surface` in the given chart, with `|H|` as vertex quality.
pub fn surface_mesh(
    surface: &SurfaceSample,
    report: &CurvatureReport,
    model: ProjectionModel,
    eps: f64,
) -> crate::Result<Mesh> {
    let model = match model {
        ProjectionModel::Auto => default_projection(surface.target.kind),
        m => m,
    };
    let points = surface.positions.map(|x| project(*x, model, eps));
    let quality = report.nodes.map(|n| n.h.map(f64::abs));
    build_mesh(&points, &quality)
}

const COLUMNS: [&str; 20] = [
    "u",
    "v",
    "re_z",
    "im_z",
    "valid",
    "x0",
    "x1",
    "x2",
    "x3",
    "H",
    "K",
    "K_int",
    "e_minus_g",
    "f",
    "constraint",
    "marginally_trapped",
    "alignment",
    "lw",
    "christoffel_scalar",
    "christoffel_wedge",
];

/// One row per grid node, row-major from the lower-left corner. Undefined
/// entries are left empty.
pub fn write_curvature_csv(
    surface: &SurfaceSample,
    report: &CurvatureReport,
    out: impl Write,
) -> csv::Result<()> {
    let grid = surface.positions.grid;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    let fmt = |v: Option<f64>| v.map_or_else(String::new, |v| v.to_string());
    for j in 0..grid.nv {
        for i in 0..grid.nu {
            let z = grid.z(i, j);
            let x = surface.positions.get(i, j);
            let n = report.nodes.get(i, j).copied().unwrap_or_default();
            let mut row = vec![
                i.to_string(),
                j.to_string(),
                z.re.to_string(),
                z.im.to_string(),
            ];
            row.push(if x.is_some() { "1" } else { "0" }.to_string());
            row.extend((0..4).map(|k| fmt(x.map(|x| x.to_array()[k]))));
            row.extend(
                [
                    n.h,
                    n.k,
                    n.k_int,
                    n.e_minus_g,
                    n.f,
                    n.constraint,
                    n.trapped,
                    n.alignment,
                    n.lw,
                    n.christoffel_scalar,
                    n.christoffel_wedge,
                ]
                .map(fmt),
            );
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nu: usize,
    pub nv: usize,
    pub base: [f64; 2],
    pub valid_nodes: usize,
}

/// Extremes of the per-node fields over nodes where they are defined.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Ranges {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_int: Option<[f64; 2]>,
}

/// The structured report written next to the mesh.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub passed: bool,
    pub kind: String,
    pub mu: f64,
    pub m: f64,
    pub p: [f64; 4],
    pub grid: GridSummary,
    pub ranges: Ranges,
    pub checks: Vec<Check>,
}

fn range(values: impl Iterator<Item = f64>) -> Option<[f64; 2]> {
    values.fold(None, |acc, v| match acc {
        None => Some([v, v]),
        Some([lo, hi]) => Some([lo.min(v), hi.max(v)]),
    })
}

impl RunReport {
    /// `checks` extends the surface report with run-level checks.
    pub fn new(surface: &SurfaceSample, report: &CurvatureReport, extra: &[Check]) -> Self {
        let g = surface.positions.grid;
        let t = surface.target;
        let nodes = || report.nodes.values.iter().flatten();
        let mut checks = report.checks.clone();
        checks.extend_from_slice(extra);
        Self {
            passed: checks.iter().all(|c| c.pass),
            kind: t.kind.name().to_string(),
            mu: t.mu,
            m: t.m,
            p: t.p.to_array(),
            grid: GridSummary {
                re_min: g.re_min,
                re_max: g.re_max,
                im_min: g.im_min,
                im_max: g.im_max,
                nu: g.nu,
                nv: g.nv,
                base: [surface.base.re, surface.base.im],
                valid_nodes: surface.positions.valid_count(),
            },
            ranges: Ranges {
                h: range(nodes().filter_map(|n| n.h)),
                k: range(nodes().filter_map(|n| n.k)),
                k_int: range(nodes().filter_map(|n| n.k_int)),
            },
            checks,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report fields are plain numbers and strings")
    }
}
