//! Surface factories: zero mean curvature surfaces in the three affine
//! 3-spaces, the quadric surfaces `x = Ψ 𝔠 Ψ*`, the Umehara–Yamada
//! perturbation, and linear Weingarten surfaces of Bryant type.

mod affine;
mod lw;
mod quadric;

pub use affine::{affine_from_source, make_affine_surface, uy_perturb};
pub use lw::{h_frame_check, make_lw_bryant, LwSurface};
pub use quadric::{make_quadric_surface, quadric_constant, quadric_from_frame, secondary_gauss};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{CausalType, Vec31};
use crate::domain::Field;
use crate::error::{Error, Result};

/// The seven target geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeometryKind {
    /// Euclidean 3-space, timelike 𝔭.
    AffineE3,
    /// Lorentzian 3-space, spacelike 𝔭.
    AffineL3,
    /// Isotropic 3-space, lightlike 𝔭.
    AffineIsotropic,
    QuadricH3,
    #[serde(rename = "quadric-desitter")]
    QuadricDeSitter,
    QuadricLightcone,
    LwBryant,
}

impl GeometryKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::AffineE3 => "affine-e3",
            Self::AffineL3 => "affine-l3",
            Self::AffineIsotropic => "affine-isotropic",
            Self::QuadricH3 => "quadric-h3",
            Self::QuadricDeSitter => "quadric-desitter",
            Self::QuadricLightcone => "quadric-lightcone",
            Self::LwBryant => "lw-bryant",
        }
    }

    pub fn is_affine(self) -> bool {
        matches!(
            self,
            Self::AffineE3 | Self::AffineL3 | Self::AffineIsotropic
        )
    }

    pub fn is_quadric(self) -> bool {
        matches!(
            self,
            Self::QuadricH3 | Self::QuadricDeSitter | Self::QuadricLightcone
        )
    }

    /// Affine kind for a hyperplane normal of the given causal type.
    pub fn affine_for(t: CausalType) -> Self {
        match t {
            CausalType::Timelike => Self::AffineE3,
            CausalType::Spacelike => Self::AffineL3,
            CausalType::Lightlike => Self::AffineIsotropic,
        }
    }

    /// Quadric kind for the sign of μ.
    pub fn quadric_for(mu: f64) -> Self {
        if mu < 0.0 {
            Self::QuadricH3
        } else if mu > 0.0 {
            Self::QuadricDeSitter
        } else {
            Self::QuadricLightcone
        }
    }
}

/// Relative tolerance for classifying 𝔭.
pub const EPS_NULL: f64 = 1e-9;

/// A target geometry with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetGeometry {
    pub kind: GeometryKind,
    /// Quadric / LW parameter.
    pub mu: f64,
    /// Spectral parameter, nonzero for quadric, LW and perturbed surfaces.
    pub m: f64,
    /// Hyperplane normal for affine surfaces.
    pub p: Vec31,
}

impl TargetGeometry {
    pub fn affine(p: Vec31) -> Result<Self> {
        let t = Self {
            kind: GeometryKind::affine_for(p.causal_type(EPS_NULL)),
            mu: 0.0,
            m: 0.0,
            p,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn quadric(m: f64, mu: f64) -> Result<Self> {
        let t = Self {
            kind: GeometryKind::quadric_for(mu),
            mu,
            m,
            p: Vec31::ZERO,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn lw(m: f64, mu: f64) -> Result<Self> {
        let t = Self {
            kind: GeometryKind::LwBryant,
            mu,
            m,
            p: Vec31::ZERO,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTarget(msg));
        if !self.mu.is_finite() || !self.m.is_finite() || !self.p.is_finite() {
            return bad("parameters must be finite".into());
        }
        if self.kind.is_affine() {
            if self.p.euclid_norm() == 0.0 {
                return bad("hyperplane normal p must be nonzero".into());
            }
            let want = GeometryKind::affine_for(self.p.causal_type(EPS_NULL));
            if want != self.kind {
                return bad(format!(
                    "p is {:?}, which gives {}, not {}",
                    self.p.causal_type(EPS_NULL),
                    want.name(),
                    self.kind.name()
                ));
            }
        } else {
            if self.m == 0.0 {
                return bad(format!("{} requires m != 0", self.kind.name()));
            }
            if self.kind.is_quadric() && GeometryKind::quadric_for(self.mu) != self.kind {
                return bad(format!(
                    "mu = {} is inconsistent with {}",
                    self.mu,
                    self.kind.name()
                ));
            }
        }
        Ok(())
    }
}

/// A gridded surface in ℝ^{3,1}.
#[derive(Debug, Clone)]
pub struct SurfaceSample {
    pub target: TargetGeometry,
    pub positions: Field<Vec31>,
    /// Exact `∂x/∂u`, `∂x/∂v` from the integrated 1-form, where available.
    pub tangents: Option<Field<[Vec31; 2]>>,
    /// Unit normal tangent to the ambient 3-space.
    pub normal: Option<Field<Vec31>>,
    /// The lift `g` of the Gauss map.
    pub gauss: Field<Vec31>,
    /// The section of the Gauss map that is Christoffel dual to `x`.
    pub dual: Option<Field<Vec31>>,
    pub base: Complex64,
}

impl SurfaceSample {
    pub fn mask(&self) -> Vec<bool> {
        self.positions.mask()
    }
}

/// `g = (1+|φ|²)e0 + (φ+φ̄)e1 − i(φ−φ̄)e2 + (|φ|²−1)e3`, whose Hermitian form is `2vv*`, `v = (φ, 1)`.
pub fn gauss_lift(phi: Complex64) -> Vec31 {
    let s = phi.norm_sqr();
    Vec31::new(1.0 + s, 2.0 * phi.re, 2.0 * phi.im, s - 1.0)
}

/// Threshold on `|(g, a)| / (|g|·|a|)` below which `a ⊥ G` and the surface does not immerse.
pub const EPS_IMMERSION: f64 = 1e-9;

pub(crate) fn perpendicular_to_gauss(g: Vec31, a: Vec31) -> bool {
    g.ip(a).abs() <= EPS_IMMERSION * g.euclid_norm() * a.euclid_norm()
}
