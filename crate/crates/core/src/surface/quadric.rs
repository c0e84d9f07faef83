use num_complex::Complex64;

use super::{gauss_lift, perpendicular_to_gauss, GeometryKind, SurfaceSample, TargetGeometry};
use crate::algebra::mat2::sl2alg_act_mat;
use crate::algebra::{Sl2, Vec31};
use crate::data::{HoloPair, SampledData};
use crate::domain::Field;
use crate::error::Result;
use crate::integrate::frame::SECONDARY_EPS;
use crate::integrate::{
    secondary_sample, solve_psi, xi_matrix, FrameField, FrameSide, HoloXi, Staircase,
};

/// `𝔠 = diag(1, −μ) = ½((1−μ)e0 + (1+μ)e3)`, with `(𝔠, 𝔠) = μ`.
pub fn quadric_constant(mu: f64) -> Vec31 {
    Vec31::new(0.5 * (1.0 - mu), 0.0, 0.0, 0.5 * (1.0 + mu))
}

/// Unit normal of `x` inside the quadric `(x,x) = μ`, built from the Gauss
/// lift `g̃` normalized by `(g̃, x) = −1`.
fn quadric_normal(x: Vec31, dual: Vec31, mu: f64) -> Option<Vec31> {
    if mu < 0.0 {
        let r = (-mu).sqrt();
        Some(dual * r - x * (1.0 / r))
    } else if mu > 0.0 {
        let r = mu.sqrt();
        Some(dual * (-r) - x * (1.0 / r))
    } else {
        None
    }
}

/// `x = Ψ 𝔠 Ψ*` for the frame of `dΨ = −mξΨ`. Nodes where `x ⊥ G` are masked.
pub fn make_quadric_surface(
    pair: &HoloPair,
    data: &SampledData,
    m: f64,
    mu: f64,
) -> Result<SurfaceSample> {
    let target = TargetGeometry::quadric(m, mu)?;
    let frame = solve_psi(
        &HoloXi { pair },
        m,
        FrameSide::Left,
        data.grid(),
        &data.mask(),
        Sl2::identity(),
        Staircase::RowFirst,
    );
    Ok(quadric_from_frame(&frame, data, target))
}

/// The quadric surface carried by an already solved left frame.
pub fn quadric_from_frame(
    frame: &FrameField,
    data: &SampledData,
    target: TargetGeometry,
) -> SurfaceSample {
    let grid = *data.grid();
    let (m, mu) = (target.m, target.mu);
    let c = quadric_constant(mu);
    let positions = Field::from_fn(grid, |i, j| {
        let x = frame.field.get(i, j)?.act(c);
        let g = gauss_lift(data.samples.get(i, j)?.map);
        (!perpendicular_to_gauss(g, x)).then_some(x)
    });
    let tangents = Field::from_fn(grid, |i, j| {
        let x = *positions.get(i, j)?;
        let s = data.samples.get(i, j)?;
        let b = xi_matrix(s.map, s.density).scale_re(-m);
        Some([
            sl2alg_act_mat(&b, x),
            sl2alg_act_mat(&b.scale(Complex64::new(0.0, 1.0)), x),
        ])
    });
    let gauss = Field::from_fn(grid, |i, j| {
        positions.get(i, j)?;
        Some(gauss_lift(data.samples.get(i, j)?.map))
    });
    let dual = Field::from_fn(grid, |i, j| {
        let g = *gauss.get(i, j)?;
        Some(g * (-1.0 / g.ip(*positions.get(i, j)?)))
    });
    let normal = (target.kind != GeometryKind::QuadricLightcone).then(|| {
        Field::from_fn(grid, |i, j| {
            quadric_normal(*positions.get(i, j)?, *dual.get(i, j)?, mu)
        })
    });
    SurfaceSample {
        target,
        positions,
        tangents: Some(tangents),
        normal,
        gauss,
        dual: Some(dual),
        base: grid.base_z(),
    }
}

/// Secondary data `(ψ, ψ′, η̂)` at the nodes, through the gauge `F` of the
/// frame. Nodes where the Möbius denominator vanishes are masked.
pub fn secondary_gauss(frame: &FrameField, data: &SampledData) -> SampledData {
    let grid = *data.grid();
    SampledData {
        samples: Field::from_fn(grid, |i, j| {
            let f = frame.gauge_at(i, j)?;
            secondary_sample(&f, data.samples.get(i, j)?, SECONDARY_EPS)
        }),
    }
}
