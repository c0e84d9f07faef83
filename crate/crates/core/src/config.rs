//! Run configuration, one TOML document per run.
//!
//! ```toml
//! [data]
//! phi = "z"
//! omega = "1"
//!
//! [domain]
//! re_min = -1.0
//! re_max = 1.0
//! im_min = -1.0
//! im_max = 1.0
//! nu = 41
//! nv = 41
//! base = [0.0, 0.0]
//!
//! [target]
//! kind = "affine-e3"
//! p = [1.0, 0.0, 0.0, 0.0]
//!
//! [output]
//! mesh_path = "enneper.obj"
//! report_path = "enneper.toml"
//! ```
//!
//! Unknown keys are rejected everywhere. Relative output paths are resolved
//! against the directory holding the config file.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::Vec31;
use crate::data::SamplingOptions;
use crate::domain::DomainGrid;
use crate::error::{Error, Result};
use crate::surface::{quadric_constant, GeometryKind, TargetGeometry, EPS_NULL};
use crate::verify::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub data: DataConfig,
    pub domain: DomainConfig,
    pub target: TargetConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub verify: Tolerances,
    #[serde(default)]
    pub projection: ProjectionConfig,
    #[serde(default)]
    pub sampling: SamplingConfig,
}

/// Holomorphic data. `psi` and `eta` feed `lw-bryant` directly; without them
/// the secondary data is extracted from `(phi, omega)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    pub phi: String,
    pub omega: String,
    pub psi: Option<String>,
    pub eta: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nu: usize,
    pub nv: usize,
    /// `[re, im]`; the nearest node becomes the base node.
    #[serde(default)]
    pub base: [f64; 2],
}

impl DomainConfig {
    pub fn grid(&self) -> Result<DomainGrid> {
        DomainGrid::with_base_point(
            (self.re_min, self.re_max),
            (self.im_min, self.im_max),
            self.nu,
            self.nv,
            Complex64::new(self.base[0], self.base[1]),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub kind: GeometryKind,
    #[serde(default)]
    pub mu: f64,
    #[serde(default)]
    pub m: f64,
    /// Hyperplane normal of the affine kinds.
    pub p: Option<[f64; 4]>,
    /// Affine kinds only: build the perturbation of the quadric surface with
    /// `(m, mu)` instead of integrating `−ζp`. Then `p` is `diag(1, −mu)`.
    #[serde(default)]
    pub perturb: bool,
}

impl TargetConfig {
    /// The geometry this section describes, after every consistency check.
    pub fn geometry(&self) -> Result<TargetGeometry> {
        let bad = |msg: String| Err(Error::Config(msg));
        let kind = self.kind;
        if self.perturb && !kind.is_affine() {
            return bad(format!(
                "perturb applies to affine kinds, not {}",
                kind.name()
            ));
        }
        let t = if kind.is_affine() {
            let p = if self.perturb {
                if self.p.is_some() {
                    return bad("perturb derives p from mu; remove p".into());
                }
                if self.m == 0.0 {
                    return bad("perturb requires m != 0".into());
                }
                quadric_constant(self.mu)
            } else {
                match self.p {
                    Some(p) => Vec31::from_array(p),
                    None => return bad(format!("{} requires p", kind.name())),
                }
            };
            let mut t = TargetGeometry::affine(p).map_err(|e| Error::Config(e.to_string()))?;
            if t.kind != kind {
                return bad(format!(
                    "p = {:?} is {:?}, which gives {}, not {}",
                    p.to_array(),
                    p.causal_type(EPS_NULL),
                    t.kind.name(),
                    kind.name()
                ));
            }
            if self.perturb {
                t.m = self.m;
                t.mu = self.mu;
            }
            t
        } else {
            if self.p.is_some() {
                return bad(format!("p does not apply to {}", kind.name()));
            }
            let t = if kind == GeometryKind::LwBryant {
                TargetGeometry::lw(self.m, self.mu)
            } else {
                TargetGeometry::quadric(self.m, self.mu)
            };
            let t = t.map_err(|e| Error::Config(e.to_string()))?;
            if t.kind != kind {
                return bad(format!(
                    "mu = {} gives {}, not {}",
                    self.mu,
                    t.kind.name(),
                    kind.name()
                ));
            }
            t
        };
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshFormat {
    #[default]
    Obj,
    Ply,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub mesh_path: Option<PathBuf>,
    #[serde(default)]
    pub mesh_format: MeshFormat,
    pub report_path: Option<PathBuf>,
    pub curvature_csv_path: Option<PathBuf>,
}

/// Chart from ℝ^{3,1} to ℝ³ for meshes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionModel {
    /// The default chart of the target geometry.
    #[default]
    Auto,
    /// `(x1, x2, x3)`.
    Euclidean,
    /// `(x1, x2, x0)`.
    Lorentzian,
    /// `(x1, x2, (x0 − x3)/2)`.
    Isotropic,
    /// `(x1, x2, x3) / (1 + x0)`.
    PoincareBall,
    /// `(x0, x1, x2) / (1 + x3)`.
    DeSitter,
    /// `(x1, x2, x3) / x0`.
    Lightcone,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProjectionConfig {
    pub model: ProjectionModel,
    /// Nodes whose projection denominator is below this are dropped.
    pub eps: f64,
}

impl Default for ProjectionConfig {
    fn default() -> Self {
        Self {
            model: ProjectionModel::Auto,
            eps: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplingConfig {
    pub eps_crit: f64,
    pub jump_factor: f64,
    pub pole_tolerance: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        let d = SamplingOptions::default();
        Self {
            eps_crit: d.eps_crit,
            jump_factor: d.jump_factor,
            pole_tolerance: d.pole_tolerance,
        }
    }
}

impl From<SamplingConfig> for SamplingOptions {
    fn from(c: SamplingConfig) -> Self {
        Self {
            eps_crit: c.eps_crit,
            jump_factor: c.jump_factor,
            pole_tolerance: c.pole_tolerance,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut cfg = Self::from_toml(&text)?;
        if let Some(dir) = path.parent() {
            cfg.output.resolve_against(dir);
        }
        Ok(cfg)
    }

    /// Checks everything that can be checked without evaluating the data.
    pub fn validate(&self) -> Result<()> {
        self.domain
            .grid()
            .map_err(|e| Error::Config(e.to_string()))?;
        self.target.geometry()?;
        if self.data.psi.is_some() != self.data.eta.is_some() {
            return Err(Error::Config("psi and eta must be given together".into()));
        }
        if self.data.psi.is_some() && self.target.kind != GeometryKind::LwBryant {
            return Err(Error::Config("psi and eta apply to lw-bryant only".into()));
        }
        let t = &self.verify;
        let all = [
            t.zero_mean_curvature,
            t.perturbed_mean_curvature,
            t.constant_mean_curvature,
            t.quadric,
            t.lightcone,
            t.hyperplane,
            t.intrinsic_flatness,
            t.lw,
            t.marginally_trapped,
            t.alignment,
            t.conformality,
            t.christoffel,
            t.h_frame,
            t.det_drift,
            t.path_independence,
        ];
        if all.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Config(
                "tolerances must be finite and non-negative".into(),
            ));
        }
        let s = &self.sampling;
        if ![s.eps_crit, s.jump_factor, s.pole_tolerance]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0)
        {
            return Err(Error::Config(
                "sampling thresholds must be finite and positive".into(),
            ));
        }
        if !(self.projection.eps.is_finite() && self.projection.eps >= 0.0) {
            return Err(Error::Config(
                "projection eps must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}

impl OutputConfig {
    fn resolve_against(&mut self, dir: &Path) {
        for p in [
            &mut self.mesh_path,
            &mut self.report_path,
            &mut self.curvature_csv_path,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
    }
}
