//! parse → sample → integrate → build → verify → export.

use std::path::{Path, PathBuf};

use crate::algebra::Sl2;
use crate::config::RunConfig;
use crate::data::{sample_data, HoloPair, SampledData, SamplingOptions};
use crate::error::{Error, Result};
use crate::export::{surface_mesh, write_curvature_csv, write_mesh, Mesh, RunReport};
use crate::integrate::{
    path_independence_check, solve_psi, FrameField, FrameSide, HoloXi, SecondaryXi, Staircase,
    XiSource,
};
use crate::surface::{
    h_frame_check, make_affine_surface, make_lw_bryant, quadric_from_frame, secondary_gauss,
    uy_perturb, GeometryKind, SurfaceSample, TargetGeometry,
};
use crate::verify::{verify_surface, Check, CurvatureReport, Tolerances};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const MASKED_BASE: i32 = 4;
    pub const VERIFICATION: i32 = 5;
    pub const UNMESHABLE: i32 = 6;
    pub const INTERNAL: i32 = 7;
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => exit::IO,
        Error::Config(_)
        | Error::InvalidDomain(_)
        | Error::InvalidTarget(_)
        | Error::MissingSecondary => exit::CONFIG,
        Error::Syntax { .. } | Error::UnknownIdentifier { .. } => exit::PARSE,
        Error::MaskedBasePoint { .. } => exit::MASKED_BASE,
        Error::Unmeshable => exit::UNMESHABLE,
        _ => exit::INTERNAL,
    }
}

/// Command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Skip the mesh and CSV; the report is still written when a path is set.
    pub verify_only: bool,
    pub report_path: Option<PathBuf>,
    pub mesh_path: Option<PathBuf>,
}

/// A built surface with the run-level checks of its frames.
#[derive(Debug, Clone)]
pub struct Built {
    pub surface: SurfaceSample,
    pub frame_checks: Vec<Check>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub surface: SurfaceSample,
    pub curvature: CurvatureReport,
    pub report: RunReport,
    pub mesh: Option<Mesh>,
    pub written: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.passed {
            exit::OK
        } else {
            exit::VERIFICATION
        }
    }
}

fn frame_checks(frames: &[(&FrameField, f64)], tol: &Tolerances) -> Vec<Check> {
    let drift = frames
        .iter()
        .fold(0.0f64, |a, (f, _)| a.max(f.max_det_drift));
    let path = frames.iter().fold(0.0f64, |a, (_, p)| a.max(*p));
    let nodes = frames
        .iter()
        .map(|(f, _)| f.field.valid_count())
        .min()
        .unwrap_or(0);
    vec![
        Check::new("det_drift", drift, tol.det_drift, nodes),
        Check::new("path_independence", path, tol.path_independence, nodes),
    ]
}

fn left_frame(source: &impl XiSource, data: &SampledData, m: f64) -> (FrameField, f64) {
    let grid = data.grid();
    let mask = data.mask();
    let frame = solve_psi(
        source,
        m,
        FrameSide::Left,
        grid,
        &mask,
        Sl2::identity(),
        Staircase::RowFirst,
    );
    let dev = path_independence_check(source, m, FrameSide::Left, grid, &mask);
    (frame, dev)
}

/// Builds the surface the configuration describes.
pub fn build(cfg: &RunConfig) -> Result<Built> {
    let grid = cfg.domain.grid()?;
    let target = cfg.target.geometry()?;
    let opts = SamplingOptions::from(cfg.sampling);
    let tol = &cfg.verify;
    let pair = HoloPair::parse(&cfg.data.phi, &cfg.data.omega)?;

    if target.kind == GeometryKind::LwBryant {
        return build_lw(cfg, &pair, &grid, target, &opts);
    }
    let data = sample_data(&pair, &grid, &opts)?;
    let source = HoloXi { pair: &pair };
    if target.kind.is_affine() {
        if cfg.target.perturb {
            let (frame, dev) = left_frame(&source, &data, target.m);
            let surface = uy_perturb(&pair, &data, target.m, target.mu)?;
            return Ok(Built {
                surface,
                frame_checks: frame_checks(&[(&frame, dev)], tol),
            });
        }
        let surface = make_affine_surface(&pair, &data, target.p)?;
        return Ok(Built {
            surface,
            frame_checks: vec![],
        });
    }
    let (frame, dev) = left_frame(&source, &data, target.m);
    let surface = quadric_from_frame(&frame, &data, target);
    Ok(Built {
        surface,
        frame_checks: frame_checks(&[(&frame, dev)], tol),
    })
}

fn build_lw(
    cfg: &RunConfig,
    pair: &HoloPair,
    grid: &crate::domain::DomainGrid,
    target: TargetGeometry,
    opts: &SamplingOptions,
) -> Result<Built> {
    let tol = &cfg.verify;
    let (m, mu) = (target.m, target.mu);
    let h = grid.hu().max(grid.hv());
    let lw_checks = |lw: &crate::surface::LwSurface, mut checks: Vec<Check>| {
        let n = lw.surface.positions.valid_count();
        checks.push(Check::new(
            "h_frame",
            h_frame_check(lw),
            tol.h_frame * h * h,
            n,
        ));
        checks
    };
    match (&cfg.data.psi, &cfg.data.eta) {
        (Some(psi), Some(eta)) => {
            let secondary = HoloPair::parse(psi, eta)?;
            let data = sample_data(&secondary, grid, opts)?;
            let source = HoloXi { pair: &secondary };
            let lw = make_lw_bryant(&source, &data, m, mu)?;
            let dev = path_independence_check(&source, m, FrameSide::Right, grid, &lw.data.mask());
            let checks = lw_checks(&lw, frame_checks(&[(&lw.frame, dev)], tol));
            Ok(Built {
                surface: lw.surface,
                frame_checks: checks,
            })
        }
        _ => {
            // secondary data extracted through the frame of dΨ = −mξΨ
            let data = sample_data(pair, grid, opts)?;
            let (left, left_dev) = left_frame(&HoloXi { pair }, &data, m);
            let sec = secondary_gauss(&left, &data);
            let source = SecondaryXi::new(pair, &left);
            let lw = make_lw_bryant(&source, &sec, m, mu)?;
            let dev = path_independence_check(&source, m, FrameSide::Right, grid, &lw.data.mask());
            let checks = lw_checks(
                &lw,
                frame_checks(&[(&left, left_dev), (&lw.frame, dev)], tol),
            );
            Ok(Built {
                surface: lw.surface,
                frame_checks: checks,
            })
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(path, bytes).map_err(io)
}

/// Runs the whole pipeline and writes the configured artifacts. A failed
/// verification is not an error here; see [`RunOutcome::exit_code`].
pub fn run(cfg: &RunConfig, opts: &RunOptions) -> Result<RunOutcome> {
    cfg.validate()?;
    let built = build(cfg)?;
    let surface = built.surface;
    let curvature = verify_surface(&surface, &cfg.verify);
    let report = RunReport::new(&surface, &curvature, &built.frame_checks);

    let mesh_path = opts
        .mesh_path
        .clone()
        .or_else(|| cfg.output.mesh_path.clone());
    let report_path = opts
        .report_path
        .clone()
        .or_else(|| cfg.output.report_path.clone());
    let csv_path = cfg.output.curvature_csv_path.clone();
    let mut written = Vec::new();
    let mut mesh = None;
    if !opts.verify_only {
        if let Some(path) = mesh_path {
            let m = surface_mesh(
                &surface,
                &curvature,
                cfg.projection.model,
                cfg.projection.eps,
            )?;
            let mut buf = Vec::new();
            write_mesh(&m, cfg.output.mesh_format, &mut buf).expect("writing to memory");
            write_file(&path, &buf)?;
            written.push(path);
            mesh = Some(m);
        }
        if let Some(path) = csv_path {
            let mut buf = Vec::new();
            write_curvature_csv(&surface, &curvature, &mut buf).expect("writing to memory");
            write_file(&path, &buf)?;
            written.push(path);
        }
    }
    if let Some(path) = report_path {
        write_file(&path, report.to_toml().as_bytes())?;
        written.push(path);
    }
    Ok(RunOutcome {
        surface,
        curvature,
        report,
        mesh,
        written,
    })
}
