use num_complex::Complex64;

use super::{gauss_lift, quadric_constant, SurfaceSample, TargetGeometry};
use crate::algebra::mat2::sl2alg_act_mat;
use crate::algebra::{vec_from_herm, Herm2, Mat2, Sl2, Vec31};
use crate::data::SampledData;
use crate::domain::Field;
use crate::error::{Error, Result};
use crate::integrate::{solve_psi, xi_matrix, FrameField, FrameSide, Staircase, XiSource};

/// Nodes with `|1 − μ|ψ|²|` below this are masked.
pub const EPS_LW: f64 = 1e-8;

/// A linear Weingarten surface of Bryant type with its middle sphere
/// congruence and the frame that carries both.
#[derive(Debug, Clone)]
pub struct LwSurface {
    pub surface: SurfaceSample,
    /// `x^M = Ψ 𝔠 Ψ*`.
    pub middle: Field<Vec31>,
    pub frame: FrameField,
    /// The secondary data `(ψ, ψ′, η̂)` the surface was built from.
    pub data: SampledData,
}

/// `(1+s, (μ+1)ψ; (μ+1)ψ̄, 1+μ²s) / D` and its derivative along `dψ`,
/// with `s = |ψ|²`, `D = 1 − μs`.
fn lw_matrix(psi: Complex64, dpsi: Complex64, mu: f64) -> (Herm2, Herm2) {
    let s = psi.norm_sqr();
    let d = 1.0 - mu * s;
    let ds = 2.0 * (psi.conj() * dpsi).re;
    let a = Herm2 {
        a11: (1.0 + s) / d,
        a22: (1.0 + mu * mu * s) / d,
        a12: psi * ((mu + 1.0) / d),
    };
    let d2 = d * d;
    let da = Herm2 {
        a11: (1.0 + mu) * ds / d2,
        a22: mu * (1.0 + mu) * ds / d2,
        a12: (dpsi * d + psi * (mu * ds)) * ((mu + 1.0) / d2),
    };
    (a, da)
}

/// Builds the surface from secondary data: the frame solves `dΨ = −m Ψ ξ_m`
/// with `ξ_m = ((−ψ, ψ²), (−1, ψ))·η̂` from `source`, and
/// `x = Ψ (1+|ψ|², (μ+1)ψ; (μ+1)ψ̄, 1+μ²|ψ|²) Ψ* / (1 − μ|ψ|²)`.
///
/// `data` holds `(ψ, ψ′, η̂)` at the nodes.
pub fn make_lw_bryant(
    source: &impl XiSource,
    data: &SampledData,
    m: f64,
    mu: f64,
) -> Result<LwSurface> {
    let target = TargetGeometry::lw(m, mu)?;
    let grid = *data.grid();
    let data = SampledData {
        samples: data
            .samples
            .map(|s| ((1.0 - mu * s.map.norm_sqr()).abs() >= EPS_LW).then_some(*s)),
    };
    if !data.samples.is_valid(grid.base.0, grid.base.1) {
        let z = grid.base_z();
        return Err(Error::MaskedBasePoint { re: z.re, im: z.im });
    }
    let frame = solve_psi(
        source,
        m,
        FrameSide::Right,
        &grid,
        &data.mask(),
        Sl2::identity(),
        Staircase::RowFirst,
    );

    let node = |i: usize, j: usize| Some((frame.field.get(i, j)?, data.samples.get(i, j)?));
    let positions = Field::from_fn(grid, |i, j| {
        let (psi_frame, s) = node(i, j)?;
        let (a, _) = lw_matrix(s.map, Complex64::new(0.0, 0.0), mu);
        Some(psi_frame.act(vec_from_herm(a)))
    });
    let tangents = Field::from_fn(grid, |i, j| {
        let (psi_frame, s) = node(i, j)?;
        let xi = xi_matrix(s.map, s.density).scale_re(-m);
        let t = |dir: Complex64| {
            let (a, da) = lw_matrix(s.map, s.deriv * dir, mu);
            let inner = sl2alg_herm(&xi.scale(dir), a) + vec_from_herm(da);
            psi_frame.act(inner)
        };
        Some([t(Complex64::new(1.0, 0.0)), t(Complex64::new(0.0, 1.0))])
    });
    let gauss = Field::from_fn(grid, |i, j| {
        let (psi_frame, s) = node(i, j)?;
        Some(psi_frame.act(gauss_lift(s.map)))
    });
    let normal = Field::from_fn(grid, |i, j| {
        let s = data.samples.get(i, j)?;
        let d = 1.0 - mu * s.map.norm_sqr();
        Some(*gauss.get(i, j)? * (1.0 / d) - *positions.get(i, j)?)
    });
    let c = quadric_constant(mu);
    let middle = frame.field.map(|p| Some(p.act(c)));

    Ok(LwSurface {
        surface: SurfaceSample {
            target,
            positions,
            tangents: Some(tangents),
            normal: Some(normal),
            gauss,
            dual: None,
            base: grid.base_z(),
        },
        middle,
        frame,
        data,
    })
}

/// `B A + A B*` for Hermitian `A`.
fn sl2alg_herm(b: &Mat2, a: Herm2) -> Vec31 {
    sl2alg_act_mat(b, vec_from_herm(a))
}

/// Largest deviation of `H⁻¹dH`, computed by central differences of
/// `H = Ψ (iψ, i; i, 0)`, from `(0, mη̂; ψ′, 0)dz`, over nodes whose four
/// neighbours are valid.
pub fn h_frame_check(lw: &LwSurface) -> f64 {
    let grid = *lw.frame.grid();
    let m = lw.frame.m;
    let i_unit = Complex64::new(0.0, 1.0);
    let h_at = |i: usize, j: usize| -> Option<Mat2> {
        let psi = lw.data.samples.get(i, j)?.map;
        let p = Mat2::new(i_unit * psi, i_unit, i_unit, Complex64::new(0.0, 0.0));
        Some(*lw.frame.field.get(i, j)?.mat() * p)
    };
    let mut worst = 0.0f64;
    for j in 1..grid.nv - 1 {
        for i in 1..grid.nu - 1 {
            let (Some(h), Some(s)) = (h_at(i, j), lw.data.samples.get(i, j)) else {
                continue;
            };
            let nbrs = (
                h_at(i + 1, j),
                h_at(i - 1, j),
                h_at(i, j + 1),
                h_at(i, j - 1),
            );
            let (Some(ue), Some(uw), Some(vn), Some(vs)) = nbrs else {
                continue;
            };
            let hinv = h.sl2_inverse();
            let want = Mat2::new(
                Complex64::new(0.0, 0.0),
                s.density * m,
                s.deriv,
                Complex64::new(0.0, 0.0),
            );
            let du = hinv * (ue - uw).scale_re(0.5 / grid.hu());
            let dv = hinv * (vn - vs).scale_re(0.5 / grid.hv());
            worst = worst
                .max((du - want).norm())
                .max((dv - want.scale(i_unit)).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{sample_data, HoloPair, SamplingOptions};
    use crate::domain::DomainGrid;
    use crate::integrate::HoloXi;

    fn setup(psi: &str, eta: &str, r: f64, n: usize) -> (HoloPair, SampledData) {
        let grid = DomainGrid::centered_square(r, n).unwrap();
        let pair = HoloPair::parse(psi, eta).unwrap();
        let data = sample_data(&pair, &grid, &SamplingOptions::default()).unwrap();
        (pair, data)
    }

    fn lw_matrix_in_h3(psi: Complex64, mu: f64) -> f64 {
        let (a, _) = lw_matrix(psi, Complex64::new(0.0, 0.0), mu);
        -a.det()
    }

    #[test]
    fn lw_matrix_has_unit_determinant() {
        for mu in [-1.0, -0.5, 0.0, 0.5, 3.0] {
            for psi in [
                Complex64::new(0.3, -0.2),
                Complex64::new(0.0, 0.0),
                Complex64::new(-0.1, 0.5),
            ] {
                assert!((lw_matrix_in_h3(psi, mu) + 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn surface_lies_in_h3_with_unit_normal() {
        let (pair, data) = setup("z", "0.3", 0.5, 21);
        for mu in [-0.5, 0.0, 0.5] {
            let lw = make_lw_bryant(&HoloXi { pair: &pair }, &data, 1.0, mu).unwrap();
            let s = &lw.surface;
            for k in 0..s.positions.values.len() {
                let x = s.positions.values[k].unwrap();
                let n = s.normal.as_ref().unwrap().values[k].unwrap();
                let t = s.tangents.as_ref().unwrap().values[k].unwrap();
                assert!((x.ip(x) + 1.0).abs() < 1e-12);
                assert!((n.ip(n) - 1.0).abs() < 1e-12);
                assert!(n.ip(x).abs() < 1e-12);
                assert!(n.ip(t[0]).abs() < 1e-12 && n.ip(t[1]).abs() < 1e-12);
                assert!(x.ip(t[0]).abs() < 1e-12);
                let xm = lw.middle.values[k].unwrap();
                assert!((xm.ip(xm) - mu).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn middle_sphere_congruence_relation() {
        // x^M = x − ((μ+1)/2) g̃ with g̃ = g / (1 − μ|ψ|²)
        let (pair, data) = setup("z", "0.3", 0.5, 11);
        let mu = 0.5;
        let lw = make_lw_bryant(&HoloXi { pair: &pair }, &data, 1.0, mu).unwrap();
        for k in 0..lw.middle.values.len() {
            let s = lw.data.samples.values[k].unwrap();
            let gt = lw.surface.gauss.values[k].unwrap() * (1.0 / (1.0 - mu * s.map.norm_sqr()));
            let want = lw.surface.positions.values[k].unwrap() - gt * (0.5 * (mu + 1.0));
            assert!((lw.middle.values[k].unwrap() - want).euclid_norm() < 1e-12);
        }
    }

    #[test]
    fn psi_zero_gives_the_horosphere() {
        // constant ψ = 0 is a critical map, so the samples are built by hand
        let grid = DomainGrid::centered_square(0.5, 11).unwrap();
        let zero = Complex64::new(0.0, 0.0);
        let samples = Field::from_fn(grid, |_, _| {
            Some(crate::data::HoloSample {
                map: zero,
                deriv: zero,
                density: Complex64::new(1.0, 0.0),
            })
        });
        let data = SampledData { samples };
        let src = move |_z: Complex64| Some(xi_matrix(zero, Complex64::new(1.0, 0.0)));
        for mu in [-1.0, 0.3] {
            let lw = make_lw_bryant(&src, &data, 1.0, mu).unwrap();
            for j in 0..11 {
                for i in 0..11 {
                    // Ψ = ((1,0),(z,1)) from the right-hand equation as well, so x = ΨΨ*
                    let z = grid.z(i, j);
                    let want = vec_from_herm(Herm2 {
                        a11: 1.0,
                        a22: 1.0 + z.norm_sqr(),
                        a12: z.conj(),
                    });
                    let x = lw.surface.positions.get(i, j).unwrap();
                    assert!((*x - want).euclid_norm() < 1e-13);
                }
            }
            assert!(h_frame_check(&lw) < 1e-12);
        }
    }

    #[test]
    fn h_frame_residual_converges_at_second_order() {
        let res = |n: usize| {
            let (pair, data) = setup("z", "0.3", 0.5, n);
            let lw = make_lw_bryant(&HoloXi { pair: &pair }, &data, 1.0, 0.5).unwrap();
            h_frame_check(&lw)
        };
        let (a, b) = (res(11), res(21));
        assert!(a / b > 3.5, "{a} {b}");
    }

    #[test]
    fn masked_where_the_denominator_vanishes() {
        // μ = 4, |ψ| = 1/2 on the circle through z = 0.5
        let (pair, data) = setup("z", "0.3", 0.5, 11);
        let lw = make_lw_bryant(&HoloXi { pair: &pair }, &data, 1.0, 4.0).unwrap();
        assert!(lw.surface.positions.get(10, 5).is_none());
        assert!(lw.surface.positions.get(5, 5).is_some());
    }
}
