use num_complex::Complex64;

use super::{
    gauss_lift, perpendicular_to_gauss, quadric_constant, secondary_gauss, SurfaceSample,
    TargetGeometry,
};
use crate::algebra::{CausalType, Sl2, Vec31};
use crate::data::{HoloPair, SampledData};
use crate::domain::Field;
use crate::error::{Error, Result};
use crate::integrate::{
    integrate_closed_form, solve_psi, FrameSide, GaugedXi, HoloXi, OneForm, Staircase, XiSource,
    ZetaForm,
};

/// Integrates `dx = scale·ζp` for the form `ζ` of `source`, whose Gauss map
/// at the nodes is `gauss_map`. Nodes where `G ⊥ p` are masked.
pub fn affine_from_source<S: XiSource>(
    source: S,
    gauss_map: &Field<Complex64>,
    p: Vec31,
    scale: f64,
    target: TargetGeometry,
) -> SurfaceSample {
    let grid = gauss_map.grid;
    let gauss = gauss_map.map(|phi| Some(gauss_lift(*phi)));
    let gauss = gauss.map(|g| (!perpendicular_to_gauss(*g, p)).then_some(*g));
    let mask = gauss.mask();

    let form = ZetaForm {
        source,
        a: p,
        scale,
    };
    let positions = integrate_closed_form(&form, &grid, &mask, Vec31::ZERO, Staircase::RowFirst);
    let tangents = Field::from_fn(grid, |i, j| {
        positions.get(i, j)?;
        let z = grid.z(i, j);
        Some([
            form.eval(z, Complex64::new(1.0, 0.0))?,
            form.eval(z, Complex64::new(0.0, 1.0))?,
        ])
    });
    let positions = positions.restricted(&tangents.mask());
    let gauss = gauss.restricted(&positions.mask());

    let normal = match p.causal_type(super::EPS_NULL) {
        CausalType::Lightlike => None,
        _ => {
            let unit = p * (1.0 / p.ip(p).abs().sqrt());
            Some(gauss.map(|g| Some(*g * (unit.ip(unit) / g.ip(unit)) - unit)))
        }
    };
    let dual = gauss.map(|g| Some(*g * (-1.0 / g.ip(p))));

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

/// Zero mean curvature surface `dx = −ζp`, `x = 0` at the base node.
pub fn make_affine_surface(pair: &HoloPair, data: &SampledData, p: Vec31) -> Result<SurfaceSample> {
    let target = TargetGeometry::affine(p)?;
    let phi = data.samples.map(|s| Some(s.map));
    Ok(affine_from_source(HoloXi { pair }, &phi, p, -1.0, target))
}

/// Umehara–Yamada perturbation: `dx_m = −m ζ_m 𝔠` with `ζ_m` the form gauged
/// by the frame of `dΨ = −mξΨ`, `𝔠 = diag(1, −μ)`.
///
/// The result lies in the affine hyperplane normal to `𝔠`; its Gauss map is
/// the secondary Gauss map ψ.
pub fn uy_perturb(pair: &HoloPair, data: &SampledData, m: f64, mu: f64) -> Result<SurfaceSample> {
    if m == 0.0 || !m.is_finite() || !mu.is_finite() {
        return Err(Error::InvalidTarget(
            "perturbation requires finite m != 0".into(),
        ));
    }
    let grid = data.grid();
    let source = HoloXi { pair };
    let frame = solve_psi(
        &source,
        m,
        FrameSide::Left,
        grid,
        &data.mask(),
        Sl2::identity(),
        Staircase::RowFirst,
    );
    let secondary = secondary_gauss(&frame, data);
    let psi = secondary.samples.map(|s| Some(s.map));

    let c = quadric_constant(mu);
    let mut target = TargetGeometry::affine(c)?;
    target.m = m;
    target.mu = mu;
    Ok(affine_from_source(
        GaugedXi {
            source,
            frame: &frame,
        },
        &psi,
        c,
        -m,
        target,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{sample_data, SamplingOptions};
    use crate::domain::DomainGrid;
    use crate::surface::GeometryKind;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn enneper(z: Complex64) -> Vec31 {
        let a = z - z * z * z / 3.0;
        let b = c(0.0, 1.0) * (z + z * z * z / 3.0);
        Vec31::new(0.0, a.re, b.re, (z * z).re)
    }

    fn setup(phi: &str, omega: &str, r: f64, n: usize) -> (HoloPair, SampledData) {
        let grid = DomainGrid::centered_square(r, n).unwrap();
        let pair = HoloPair::parse(phi, omega).unwrap();
        let data = sample_data(&pair, &grid, &SamplingOptions::default()).unwrap();
        (pair, data)
    }

    #[test]
    fn enneper_matches_antiderivative() {
        let (pair, data) = setup("z", "1", 1.0, 21);
        let s = make_affine_surface(&pair, &data, Vec31::E0).unwrap();
        assert_eq!(s.target.kind, GeometryKind::AffineE3);
        let g = data.grid();
        let x1 = s.positions.get(20, 10).unwrap();
        assert!(
            (*x1 - Vec31::new(0.0, 2.0 / 3.0, 0.0, 1.0)).euclid_norm() < 1e-12,
            "{x1:?}"
        );
        let xi = s.positions.get(10, 20).unwrap();
        assert!((*xi - Vec31::new(0.0, 0.0, -2.0 / 3.0, -1.0)).euclid_norm() < 1e-12);
        for j in 0..21 {
            for i in 0..21 {
                assert!(
                    (*s.positions.get(i, j).unwrap() - enneper(g.z(i, j))).euclid_norm() < 1e-12
                );
            }
        }
    }

    #[test]
    fn normals_are_unit_and_tangent_to_the_hyperplane() {
        let (pair, data) = setup("z", "1", 0.6, 11);
        for (p, eps) in [
            (Vec31::E0, 1.0),
            (Vec31::E3, -1.0),
            (Vec31::new(2.0, 0.0, 0.0, 0.0), 1.0),
        ] {
            let s = make_affine_surface(&pair, &data, p).unwrap();
            let normal = s.normal.as_ref().unwrap();
            let tangents = s.tangents.as_ref().unwrap();
            for k in 0..s.positions.values.len() {
                let (Some(n), Some(t)) = (normal.values[k], tangents.values[k]) else {
                    continue;
                };
                assert!((n.ip(n) - eps).abs() < 1e-12);
                assert!(n.ip(p).abs() < 1e-12);
                assert!(n.ip(t[0]).abs() < 1e-12 && n.ip(t[1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn isotropic_case_has_no_normal_and_stays_in_the_hyperplane() {
        let (pair, data) = setup("exp(z)", "1 + z", 0.8, 15);
        let p = Vec31::new(0.5, 0.0, 0.0, 0.5);
        let s = make_affine_surface(&pair, &data, p).unwrap();
        assert!(s.normal.is_none());
        assert_eq!(s.target.kind, GeometryKind::AffineIsotropic);
        for x in s.positions.values.iter().flatten() {
            assert!(x.ip(p).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_circle_of_the_gauss_map_is_masked_for_spacelike_p() {
        // (g, e3) = |φ|² − 1 vanishes on |z| = 1: node z = 1 sits on it
        let (pair, data) = setup("z", "1", 1.0, 11);
        let s = make_affine_surface(&pair, &data, Vec31::E3).unwrap();
        assert!(s.positions.get(10, 5).is_none());
        assert!(s.positions.get(5, 5).is_some());
    }

    #[test]
    fn zero_normal_is_rejected() {
        let (pair, data) = setup("z", "1", 1.0, 5);
        assert!(matches!(
            make_affine_surface(&pair, &data, Vec31::ZERO),
            Err(Error::InvalidTarget(_))
        ));
    }

    #[test]
    fn perturbation_scaling() {
        // (φ, ω̂/m, m) and (φ, ω̂, 1) give the same surface
        let grid = DomainGrid::centered_square(0.5, 11).unwrap();
        let opts = SamplingOptions::default();
        let a = HoloPair::parse("z", "1").unwrap();
        let b = HoloPair::parse("z", "1/2.5").unwrap();
        let sa = uy_perturb(&a, &sample_data(&a, &grid, &opts).unwrap(), 1.0, -1.0).unwrap();
        let sb = uy_perturb(&b, &sample_data(&b, &grid, &opts).unwrap(), 2.5, -1.0).unwrap();
        for (x, y) in sa.positions.values.iter().zip(&sb.positions.values) {
            assert!((x.unwrap() - y.unwrap()).euclid_norm() < 1e-12);
        }
    }

    #[test]
    fn small_perturbation_approaches_the_affine_surface() {
        let (pair, data) = setup("z", "1", 0.5, 11);
        let affine = make_affine_surface(&pair, &data, Vec31::E0).unwrap();
        let mut errs = Vec::new();
        for m in [1e-2, 1e-3] {
            let s = uy_perturb(&pair, &data, m, -1.0).unwrap();
            let err = s
                .positions
                .values
                .iter()
                .zip(&affine.positions.values)
                .map(|(x, y)| (x.unwrap() * (1.0 / m) - y.unwrap()).euclid_norm())
                .fold(0.0, f64::max);
            errs.push(err);
        }
        assert!(errs[1] < 1e-3 && errs[0] / errs[1] > 8.0, "{errs:?}");
    }

    #[test]
    fn perturbed_surface_lies_in_the_hyperplane_of_c() {
        let (pair, data) = setup("z", "1", 0.5, 21);
        for mu in [-1.0, 0.5, 0.0] {
            let s = uy_perturb(&pair, &data, 1.0, mu).unwrap();
            let cvec = quadric_constant(mu);
            for x in s.positions.values.iter().flatten() {
                assert!(x.ip(cvec).abs() < 1e-12, "mu={mu}");
            }
        }
        assert!(uy_perturb(&pair, &data, 0.0, -1.0).is_err());
    }
}
