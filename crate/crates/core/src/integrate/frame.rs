//! The frame equation `dΨ = −m ξ Ψ` (left) or `dΨ = −m Ψ ξ` (right),
//! integrated by RK4 along staircase paths.

use num_complex::Complex64;

use super::forms::{xi_matrix, XiSource};
use super::quadrature::{staircase, Staircase};
use crate::algebra::{Mat2, Sl2};
use crate::data::{HoloPair, HoloSample};
use crate::domain::{DomainGrid, Field};

/// RK4 substeps per grid edge.
pub const SUBSTEPS: usize = 4;

/// Which side of Ψ the connection form multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameSide {
    /// `dΨ = −m ξ Ψ`.
    Left,
    /// `dΨ = −m Ψ ξ`.
    Right,
}

/// A solved frame.
#[derive(Debug, Clone)]
pub struct FrameField {
    pub field: Field<Sl2>,
    pub m: f64,
    pub side: FrameSide,
    /// Largest `|det Ψ − 1|` per unit path length accumulated over one edge,
    /// before renormalization.
    pub max_det_drift: f64,
}

impl FrameField {
    pub fn grid(&self) -> &DomainGrid {
        &self.field.grid
    }

    pub fn mask(&self) -> Vec<bool> {
        self.field.mask()
    }

    /// The gauge `F` with `ξ_F = F ξ F⁻¹`: `Ψ⁻¹` for a left frame, `Ψ` for a right one.
    pub fn gauge_at(&self, i: usize, j: usize) -> Option<Mat2> {
        let psi = *self.field.get(i, j)?.mat();
        Some(match self.side {
            FrameSide::Left => psi.sl2_inverse(),
            FrameSide::Right => psi,
        })
    }

    /// Ψ at an arbitrary point, continued by RK4 from the nearest valid node.
    pub fn continued(&self, source: &impl XiSource, z: Complex64, steps: usize) -> Option<Mat2> {
        let (i, j) = self.grid().nearest(z);
        let psi = *self.field.get(i, j)?.mat();
        let zn = self.grid().z(i, j);
        if (z - zn).norm() == 0.0 {
            return Some(psi);
        }
        rk4_line(source, self.m, self.side, psi, zn, z, steps).map(|(p, _)| p.normalize_det())
    }
}

fn rhs(
    source: &impl XiSource,
    m: f64,
    side: FrameSide,
    z: Complex64,
    delta: Complex64,
    psi: &Mat2,
) -> Option<Mat2> {
    let a = source.xi(z)?.scale(delta * (-m));
    Some(match side {
        FrameSide::Left => a * *psi,
        FrameSide::Right => *psi * a,
    })
}

/// RK4 along the segment `za → zb` in `steps` equal substeps. Returns the raw
/// (unnormalized) end value and `|det − 1|` at the end.
fn rk4_line(
    source: &impl XiSource,
    m: f64,
    side: FrameSide,
    psi0: Mat2,
    za: Complex64,
    zb: Complex64,
    steps: usize,
) -> Option<(Mat2, f64)> {
    let delta = zb - za;
    let k = 1.0 / steps as f64;
    let mut psi = psi0;
    for n in 0..steps {
        let s = n as f64 * k;
        let z0 = za + delta * s;
        let zh = za + delta * (s + 0.5 * k);
        let z1 = za + delta * (s + k);
        let k1 = rhs(source, m, side, z0, delta, &psi)?;
        let k2 = rhs(source, m, side, zh, delta, &(psi + k1.scale_re(0.5 * k)))?;
        let k3 = rhs(source, m, side, zh, delta, &(psi + k2.scale_re(0.5 * k)))?;
        let k4 = rhs(source, m, side, z1, delta, &(psi + k3.scale_re(k)))?;
        psi = psi + (k1 + k2.scale_re(2.0) + k3.scale_re(2.0) + k4).scale_re(k / 6.0);
    }
    if !psi.is_finite() {
        return None;
    }
    let drift = (psi.det() - Complex64::new(1.0, 0.0)).norm();
    Some((psi, drift))
}

/// Solves the frame equation from `psi0` at the base node.
///
/// Each edge takes [`SUBSTEPS`] RK4 steps; the result is divided by the
/// principal square root of its determinant at every node.
pub fn solve_psi(
    source: &impl XiSource,
    m: f64,
    side: FrameSide,
    grid: &DomainGrid,
    mask: &[bool],
    psi0: Sl2,
    order: Staircase,
) -> FrameField {
    let raw = staircase(
        grid,
        mask,
        (*psi0.mat(), 0.0f64),
        order,
        |za, zb, (psi, drift)| {
            let (next, d) = rk4_line(source, m, side, psi, za, zb, SUBSTEPS)?;
            Some((next.normalize_det(), drift.max(d / (zb - za).norm())))
        },
    );
    let max_det_drift = raw.values.iter().flatten().fold(0.0f64, |a, v| a.max(v.1));
    FrameField {
        field: raw.map(|(psi, _)| Some(Sl2::from_normalized(*psi))),
        m,
        side,
        max_det_drift,
    }
}

/// Largest Frobenius distance between the row-first and column-first solutions.
pub fn path_independence_check(
    source: &impl XiSource,
    m: f64,
    side: FrameSide,
    grid: &DomainGrid,
    mask: &[bool],
) -> f64 {
    let a = solve_psi(
        source,
        m,
        side,
        grid,
        mask,
        Sl2::identity(),
        Staircase::RowFirst,
    );
    let b = solve_psi(
        source,
        m,
        side,
        grid,
        mask,
        Sl2::identity(),
        Staircase::ColumnFirst,
    );
    a.field
        .values
        .iter()
        .zip(&b.field.values)
        .filter_map(|(x, y)| Some((*x.as_ref()?.mat() - *y.as_ref()?.mat()).norm()))
        .fold(0.0, f64::max)
}

/// RK4 steps used when continuing a frame off the grid.
pub const CONTINUATION_STEPS: usize = 8;

/// The gauged form `F ξ F⁻¹` evaluated anywhere, with `F` taken from a solved
/// frame (see [`FrameField::gauge_at`]) and continued off the nodes.
pub struct GaugedXi<'a, S> {
    pub source: S,
    pub frame: &'a FrameField,
}

impl<S: XiSource> GaugedXi<'_, S> {
    pub fn gauge(&self, z: Complex64) -> Option<Mat2> {
        let psi = self.frame.continued(&self.source, z, CONTINUATION_STEPS)?;
        Some(match self.frame.side {
            FrameSide::Left => psi.sl2_inverse(),
            FrameSide::Right => psi,
        })
    }
}

impl<S: XiSource> XiSource for GaugedXi<'_, S> {
    fn xi(&self, z: Complex64) -> Option<Mat2> {
        let f = self.gauge(z)?;
        Some(f * self.source.xi(z)? * f.sl2_inverse())
    }
}

/// Secondary data `(ψ, ψ′, η̂)` from the gauge `F` and a primary sample:
/// `ψ = (F₁₁φ + F₁₂)/(F₂₁φ + F₂₂)`, `ψ′ = φ′/D²`, `η̂ = ω̂ D²` with `D` the denominator.
pub fn secondary_sample(f: &Mat2, s: &HoloSample, eps: f64) -> Option<HoloSample> {
    let num = f.m[0][0] * s.map + f.m[0][1];
    let den = f.m[1][0] * s.map + f.m[1][1];
    if den.norm() < eps {
        return None;
    }
    let d2 = den * den;
    Some(HoloSample {
        map: num / den,
        deriv: s.deriv / d2,
        density: s.density * d2,
    })
}

/// Denominator threshold below which the secondary map is treated as a pole.
pub const SECONDARY_EPS: f64 = 1e-8;

/// The secondary form `((−ψ, ψ²), (−1, ψ))·η̂` built from the data extracted
/// through a gauge continued off the grid.
pub struct SecondaryXi<'a> {
    pub pair: &'a HoloPair,
    pub gauged: GaugedXi<'a, super::forms::HoloXi<'a>>,
}

impl<'a> SecondaryXi<'a> {
    /// `frame` must be the frame of `pair`'s own form.
    pub fn new(pair: &'a HoloPair, frame: &'a FrameField) -> Self {
        Self {
            pair,
            gauged: GaugedXi {
                source: super::forms::HoloXi { pair },
                frame,
            },
        }
    }

    pub fn sample(&self, z: Complex64) -> Option<HoloSample> {
        let f = self.gauged.gauge(z)?;
        secondary_sample(&f, &self.pair.sample(z)?, SECONDARY_EPS)
    }
}

impl XiSource for SecondaryXi<'_> {
    fn xi(&self, z: Complex64) -> Option<Mat2> {
        let s = self.sample(z)?;
        Some(xi_matrix(s.map, s.density))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::forms::HoloXi;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn full(g: &DomainGrid) -> Vec<bool> {
        vec![true; g.len()]
    }

    #[test]
    fn zero_parameter_keeps_the_initial_frame() {
        let g = DomainGrid::centered_square(1.0, 9).unwrap();
        let pair = HoloPair::parse("z", "1").unwrap();
        let psi0 = Sl2::new(Mat2::real(2.0, 1.0, 1.0, 1.0)).unwrap();
        let f = solve_psi(
            &HoloXi { pair: &pair },
            0.0,
            FrameSide::Left,
            &g,
            &full(&g),
            psi0,
            Staircase::RowFirst,
        );
        for v in f.field.values.iter().flatten() {
            assert_eq!(v, &psi0);
        }
        assert_eq!(
            path_independence_check(&HoloXi { pair: &pair }, 0.0, FrameSide::Left, &g, &full(&g)),
            0.0
        );
    }

    #[test]
    fn constant_data_gives_exact_nilpotent_exponential() {
        let g = DomainGrid::centered_square(1.0, 11).unwrap();
        for (phi, m) in [(c(0.0, 0.0), 1.0), (c(0.4, -0.3), 1.0), (c(-1.1, 0.2), 0.7)] {
            let src = move |_z: Complex64| Some(xi_matrix(phi, c(1.0, 0.0)));
            for side in [FrameSide::Left, FrameSide::Right] {
                let f = solve_psi(
                    &src,
                    m,
                    side,
                    &g,
                    &full(&g),
                    Sl2::identity(),
                    Staircase::RowFirst,
                );
                for j in 0..11 {
                    for i in 0..11 {
                        let z = g.z(i, j);
                        let mz = z * m;
                        let want = Mat2::new(
                            c(1.0, 0.0) + mz * phi,
                            -mz * phi * phi,
                            mz,
                            c(1.0, 0.0) - mz * phi,
                        );
                        let got = f.field.get(i, j).unwrap().mat();
                        assert!((*got - want).norm() < 1e-13, "{side:?} {phi} at {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn enneper_frame_is_path_independent() {
        let g = DomainGrid::centered_square(1.0, 41).unwrap();
        let pair = HoloPair::parse("z", "1").unwrap();
        let src = HoloXi { pair: &pair };
        let dev = path_independence_check(&src, 1.0, FrameSide::Left, &g, &full(&g));
        assert!(dev <= 1e-7, "{dev}");
        let f = solve_psi(
            &src,
            1.0,
            FrameSide::Left,
            &g,
            &full(&g),
            Sl2::identity(),
            Staircase::RowFirst,
        );
        assert!(f.max_det_drift <= 1e-9, "{}", f.max_det_drift);
    }

    #[test]
    fn left_frame_solves_the_right_equation_for_the_gauged_form() {
        // dΨ = −mξΨ = −mΨ(Ψ⁻¹ξΨ)
        let g = DomainGrid::centered_square(0.5, 21).unwrap();
        let pair = HoloPair::parse("z", "1").unwrap();
        let src = HoloXi { pair: &pair };
        let left = solve_psi(
            &src,
            1.0,
            FrameSide::Left,
            &g,
            &full(&g),
            Sl2::identity(),
            Staircase::RowFirst,
        );
        let gauged = GaugedXi {
            source: src,
            frame: &left,
        };
        let right = solve_psi(
            &gauged,
            1.0,
            FrameSide::Right,
            &g,
            &full(&g),
            Sl2::identity(),
            Staircase::ColumnFirst,
        );
        let dev = left
            .field
            .values
            .iter()
            .zip(&right.field.values)
            .map(|(a, b)| (*a.unwrap().mat() - *b.unwrap().mat()).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-8, "{dev}");
    }

    #[test]
    fn secondary_map_is_a_mobius_image() {
        // Ψ = ((1,0),(z,1)) ⇒ F = ((1,0),(−z,1)) ⇒ ψ = φ/(1 − zφ)
        let f = Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(-0.3, 0.2), c(1.0, 0.0));
        let s = HoloSample {
            map: c(0.5, 0.5),
            deriv: c(1.0, 0.0),
            density: c(1.0, 0.0),
        };
        let out = secondary_sample(&f, &s, SECONDARY_EPS).unwrap();
        let z = c(0.3, -0.2);
        assert!((out.map - s.map / (c(1.0, 0.0) - z * s.map)).norm() < 1e-15);
        assert_eq!(
            secondary_sample(&Mat2::identity(), &s, SECONDARY_EPS).unwrap(),
            s
        );
    }

    #[test]
    fn continuation_matches_a_finer_grid() {
        let g = DomainGrid::centered_square(0.5, 11).unwrap();
        let fine = DomainGrid::centered_square(0.5, 21).unwrap();
        let pair = HoloPair::parse("exp(z)", "1 + z^2").unwrap();
        let src = HoloXi { pair: &pair };
        let coarse = solve_psi(
            &src,
            1.0,
            FrameSide::Left,
            &g,
            &full(&g),
            Sl2::identity(),
            Staircase::RowFirst,
        );
        let reference = solve_psi(
            &src,
            1.0,
            FrameSide::Left,
            &fine,
            &full(&fine),
            Sl2::identity(),
            Staircase::RowFirst,
        );
        let z = fine.z(13, 7);
        let cont = coarse.continued(&src, z, CONTINUATION_STEPS).unwrap();
        let err = (cont - *reference.field.get(13, 7).unwrap().mat()).norm();
        assert!(err < 1e-7, "{err}");
    }
}
