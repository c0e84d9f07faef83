//! The closed forms ξ (sl(2,ℂ)-valued) and ζ (so(3,1)-valued) built from
//! holomorphic data, and their action on vectors of ℝ^{3,1}.

use num_complex::Complex64;

use crate::algebra::mat2::sl2alg_act_mat;
use crate::algebra::{Mat2, Sl2Alg, Vec31};
use crate::data::{HoloPair, SampledData};
use crate::domain::Field;

/// `((−φ, φ²), (−1, φ))·ω̂`: the density of ξ = ξ̂ dz.
///
/// Trace-free and nilpotent; `(φ, 1)ᵀ` spans its kernel and image.
pub fn xi_matrix(phi: Complex64, omega: Complex64) -> Mat2 {
    Mat2::new(-phi * omega, phi * phi * omega, -omega, phi * omega)
}

/// Something that can evaluate the density `ξ̂(z)` of an sl(2,ℂ)-valued
/// holomorphic 1-form at any point of the domain.
pub trait XiSource: Sync {
    /// `None` at singular points.
    fn xi(&self, z: Complex64) -> Option<Mat2>;
}

/// ξ built from a data pair `(φ, ω̂)` (or `(ψ, η̂)`).
#[derive(Debug, Clone, Copy)]
pub struct HoloXi<'a> {
    pub pair: &'a HoloPair,
}

impl XiSource for HoloXi<'_> {
    fn xi(&self, z: Complex64) -> Option<Mat2> {
        let (phi, omega) = self.pair.eval(z)?;
        Some(xi_matrix(phi, omega))
    }
}

impl<F> XiSource for F
where
    F: Fn(Complex64) -> Option<Mat2> + Sync,
{
    fn xi(&self, z: Complex64) -> Option<Mat2> {
        self(z)
    }
}

/// Per-node ξ̂, checked trace-free.
pub type XiField = Field<Sl2Alg>;

/// Nodewise ξ̂ over the unmasked nodes of `data`.
pub fn build_xi(data: &SampledData) -> XiField {
    data.samples
        .map(|s| Sl2Alg::new(xi_matrix(s.map, s.density)).ok())
}

/// A real closed 1-form, evaluated as its density along a unit direction
/// `dir` in the parameter plane (`dir = 1` is ∂/∂u, `dir = i` is ∂/∂v).
pub trait OneForm<T>: Sync {
    fn eval(&self, z: Complex64, dir: Complex64) -> Option<T>;
}

/// The ℝ^{3,1}-valued form `scale · ζa`, computed through the Hermitian route:
/// `ζ(X)a ↔ B A + A B*` with `B = ξ̂·dz(X)`, `A = herm(a)`.
#[derive(Debug, Clone, Copy)]
pub struct ZetaForm<S> {
    pub source: S,
    pub a: Vec31,
    pub scale: f64,
}

impl<S: XiSource> OneForm<Vec31> for ZetaForm<S> {
    fn eval(&self, z: Complex64, dir: Complex64) -> Option<Vec31> {
        let b = self.source.xi(z)?.scale(dir * self.scale);
        let v = sl2alg_act_mat(&b, self.a);
        v.is_finite().then_some(v)
    }
}

/// A holomorphic scalar form `f(z) dz`, for complex-valued integrals.
pub struct HoloForm<F>(pub F);

impl<F> OneForm<Complex64> for HoloForm<F>
where
    F: Fn(Complex64) -> Option<Complex64> + Sync,
{
    fn eval(&self, z: Complex64, dir: Complex64) -> Option<Complex64> {
        (self.0)(z).map(|w| w * dir)
    }
}

/// `ζa` at every unmasked node: the `∂/∂u` and `∂/∂v` components.
pub fn zeta_apply(data: &SampledData, a: Vec31) -> Field<[Vec31; 2]> {
    data.samples.map(|s| {
        let b = xi_matrix(s.map, s.density);
        Some([
            sl2alg_act_mat(&b, a),
            sl2alg_act_mat(&b.scale(Complex64::new(0.0, 1.0)), a),
        ])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Skew31;
    use crate::data::{sample_data, SamplingOptions};
    use crate::domain::DomainGrid;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent route: the real part of the complex bivector
    /// `(P ∧ Q) a · ω(X)` with `P = e0 + φe1 − iφe2 − e3`, `Q = φe0 + e1 + ie2 + φe3`.
    fn zeta_direct(phi: Complex64, omega: Complex64, dir: Complex64, a: Vec31) -> Vec31 {
        let i = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        let p = [one, phi, -i * phi, -one];
        let q = [phi, one, i, phi];
        let eta = [-1.0, 1.0, 1.0, 1.0];
        let ip = |u: &[Complex64; 4]| -> Complex64 { (0..4).map(|k| u[k] * eta[k] * a[k]).sum() };
        let (pa, qa) = (ip(&p), ip(&q));
        let w = omega * dir;
        let comp = |k: usize| ((pa * q[k] - qa * p[k]) * w).re;
        Vec31::new(comp(0), comp(1), comp(2), comp(3))
    }

    #[test]
    fn xi_examples() {
        assert_eq!(
            xi_matrix(c(0.0, 0.0), c(1.0, 0.0)),
            Mat2::real(0.0, 0.0, -1.0, 0.0)
        );
        assert_eq!(
            xi_matrix(c(0.0, 1.0), c(2.0, 0.0)),
            Mat2::new(c(0.0, -2.0), c(-2.0, 0.0), c(-2.0, 0.0), c(0.0, 2.0))
        );
    }

    proptest! {
        #[test]
        fn xi_is_tracefree_and_nilpotent(pr in -5.0f64..5.0, pi in -5.0f64..5.0, wr in -5.0f64..5.0, wi in -5.0f64..5.0) {
            let x = xi_matrix(c(pr, pi), c(wr, wi));
            let scale = 1.0 + x.norm() * x.norm();
            prop_assert!(x.trace().norm() <= 1e-12 * scale);
            prop_assert!(x.det().norm() <= 1e-12 * scale);
        }

        #[test]
        fn hermitian_route_matches_direct_expansion(
            pr in -2.0f64..2.0, pi in -2.0f64..2.0, wr in -2.0f64..2.0, wi in -2.0f64..2.0,
            a0 in -2.0f64..2.0, a1 in -2.0f64..2.0, a2 in -2.0f64..2.0, a3 in -2.0f64..2.0,
            vdir in proptest::bool::ANY,
        ) {
            let (phi, omega) = (c(pr, pi), c(wr, wi));
            let a = Vec31::new(a0, a1, a2, a3);
            let dir = if vdir { c(0.0, 1.0) } else { c(1.0, 0.0) };
            let form = ZetaForm { source: move |_z: Complex64| Some(xi_matrix(phi, omega)), a, scale: 1.0 };
            let herm = form.eval(c(0.0, 0.0), dir).unwrap();
            let direct = zeta_direct(phi, omega, dir, a);
            prop_assert!((herm - direct).euclid_norm() <= 1e-11 * (1.0 + direct.euclid_norm()));
        }
    }

    #[test]
    fn zeta_e0_on_identity_data() {
        // ζe0 = −Re{((1−z²)e1 + i(1+z²)e2 + 2z e3)} along ∂/∂u
        let grid = DomainGrid::centered_square(1.0, 5).unwrap();
        let pair = HoloPair::parse("z", "1").unwrap();
        let data = sample_data(&pair, &grid, &SamplingOptions::default()).unwrap();
        let za = zeta_apply(&data, Vec31::E0);
        for j in 0..5 {
            for i in 0..5 {
                let z = grid.z(i, j);
                let one = c(1.0, 0.0);
                let ii = c(0.0, 1.0);
                let want = Vec31::new(
                    0.0,
                    -(one - z * z).re,
                    -(ii * (one + z * z)).re,
                    -(2.0 * z).re,
                );
                assert!((za.get(i, j).unwrap()[0] - want).euclid_norm() < 1e-14);
            }
        }
    }

    #[test]
    fn zeta_e3_matches_lorentzian_integrand() {
        // −ζe3 = Re{(2φe0 + (1+φ²)e1 + i(1−φ²)e2)ω}
        let phi = c(0.3, -0.7);
        let one = c(1.0, 0.0);
        let ii = c(0.0, 1.0);
        let form = ZetaForm {
            source: move |_z: Complex64| Some(xi_matrix(phi, one)),
            a: Vec31::E3,
            scale: -1.0,
        };
        let got = form.eval(c(0.0, 0.0), one).unwrap();
        let want = Vec31::new(
            (2.0 * phi).re,
            (one + phi * phi).re,
            (ii * (one - phi * phi)).re,
            0.0,
        );
        assert!((got - want).euclid_norm() < 1e-14);
    }

    #[test]
    fn zeta_values_are_skew_endomorphisms() {
        // ζ(X) is Minkowski-skew: read off its matrix from the basis images
        let phi = c(0.4, 0.9);
        let omega = c(-1.2, 0.3);
        let mut m = [[0.0; 4]; 4];
        for k in 0..4 {
            let form = ZetaForm {
                source: move |_z: Complex64| Some(xi_matrix(phi, omega)),
                a: Vec31::basis(k),
                scale: 1.0,
            };
            let col = form.eval(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
            for (r, row) in m.iter_mut().enumerate() {
                row[k] = col[r];
            }
        }
        assert!(Skew31::new(m, 1e-13).is_ok());
    }

    #[test]
    fn build_xi_skips_masked_nodes() {
        let grid = DomainGrid::new((-1.0, 1.0), (-1.0, 1.0), 11, 11, (0, 0)).unwrap();
        let pair = HoloPair::parse("1/z", "1").unwrap();
        let data = sample_data(&pair, &grid, &SamplingOptions::default()).unwrap();
        let xi = build_xi(&data);
        assert!(xi.get(5, 5).is_none());
        assert!(xi.get(0, 0).is_some());
    }
}
