//! Holomorphic input data and its sampling over a grid.
//!
//! A data pair is a meromorphic map together with the density of a
//! holomorphic 1-form in the grid chart: `(φ, ω̂)` with `ω = ω̂ dz`, or the
//! secondary pair `(ψ, η̂)`.

use num_complex::Complex64;

use crate::domain::{dilate_mask, DomainGrid, Field};
use crate::error::{Error, Result};
use crate::expr::ComplexExpr;

/// A meromorphic map and a 1-form density, with the symbolic derivatives
/// needed for sampling.
#[derive(Debug, Clone)]
pub struct HoloPair {
    map: ComplexExpr,
    map_deriv: ComplexExpr,
    map_deriv2: ComplexExpr,
    density: ComplexExpr,
    density_deriv: ComplexExpr,
    density_deriv2: ComplexExpr,
}

/// A value with its first two derivatives.
type Jet = [Complex64; 3];

impl HoloPair {
    pub fn new(map: ComplexExpr, density: ComplexExpr) -> Self {
        let map_deriv = map.differentiate();
        let density_deriv = density.differentiate();
        Self {
            map_deriv2: map_deriv.differentiate(),
            density_deriv2: density_deriv.differentiate(),
            map_deriv,
            density_deriv,
            map,
            density,
        }
    }

    pub fn parse(map: &str, density: &str) -> Result<Self> {
        Ok(Self::new(
            ComplexExpr::parse(map)?,
            ComplexExpr::parse(density)?,
        ))
    }

    pub fn map_expr(&self) -> &ComplexExpr {
        &self.map
    }

    pub fn density_expr(&self) -> &ComplexExpr {
        &self.density
    }

    /// `(map, density)` at `z`, `None` at singular points.
    pub fn eval(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        Some((self.map.eval(z).ok()?, self.density.eval(z).ok()?))
    }

    fn jets(&self, z: Complex64) -> Option<[Jet; 2]> {
        Some([
            [
                self.map.eval(z).ok()?,
                self.map_deriv.eval(z).ok()?,
                self.map_deriv2.eval(z).ok()?,
            ],
            [
                self.density.eval(z).ok()?,
                self.density_deriv.eval(z).ok()?,
                self.density_deriv2.eval(z).ok()?,
            ],
        ])
    }

    /// Map, its derivative and the density at `z`.
    pub fn sample(&self, z: Complex64) -> Option<HoloSample> {
        Some(HoloSample {
            map: self.map.eval(z).ok()?,
            deriv: self.map_deriv.eval(z).ok()?,
            density: self.density.eval(z).ok()?,
        })
    }
}

/// Values of a data pair at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoloSample {
    /// φ (or ψ).
    pub map: Complex64,
    /// φ′ (or ψ′).
    pub deriv: Complex64,
    /// ω̂ (or η̂).
    pub density: Complex64,
}

impl HoloSample {
    /// Coefficient of the Hopf differential `q = h dz²`, `h = φ′ ω̂`.
    pub fn hopf(&self) -> Complex64 {
        self.deriv * self.density
    }
}

/// Sampled data; masked nodes are `None`.
#[derive(Debug, Clone)]
pub struct SampledData {
    pub samples: Field<HoloSample>,
}

impl SampledData {
    pub fn grid(&self) -> &DomainGrid {
        &self.samples.grid
    }

    pub fn mask(&self) -> Vec<bool> {
        self.samples.mask()
    }
}

/// Thresholds for the sampling mask.
#[derive(Debug, Clone, Copy)]
pub struct SamplingOptions {
    /// Critical points: `|φ′| < eps_crit · diam` is masked.
    pub eps_crit: f64,
    /// An edge whose increment exceeds this multiple of `h·max|f′|` is treated
    /// as crossing a branch cut.
    pub jump_factor: f64,
    /// A cell whose centre value misses the corner Taylor predictions by more
    /// than this fraction of the local magnitude is treated as holding a pole.
    pub pole_tolerance: f64,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        Self {
            eps_crit: 1e-8,
            jump_factor: 8.0,
            pole_tolerance: 0.5,
        }
    }
}

/// Samples `pair` on `grid` and builds the validity mask.
///
/// Singular evaluations, critical points of the map, edges across which a
/// value jumps, and cells containing a pole are masked; the mask is then
/// dilated by one cell ring. A masked base node is an error.
pub fn sample_data(
    pair: &HoloPair,
    grid: &DomainGrid,
    opts: &SamplingOptions,
) -> Result<SampledData> {
    let eps_crit = opts.eps_crit * grid.diameter();
    let jets = Field::from_fn(*grid, |i, j| pair.jets(grid.z(i, j)));

    let mut ok: Vec<bool> = jets
        .values
        .iter()
        .map(|jet| jet.is_some_and(|[m, _]| m[1].norm() >= eps_crit))
        .collect();

    let jumps = |a: &Jet, b: &Jet, h: f64| {
        let bound = opts.jump_factor * h * a[1].norm().max(b[1].norm())
            + 1e-12 * (1.0 + a[0].norm().max(b[0].norm()));
        (b[0] - a[0]).norm() > bound
    };
    for j in 0..grid.nv {
        for i in 0..grid.nu {
            for (di, dj, h) in [(1usize, 0usize, grid.hu()), (0, 1, grid.hv())] {
                let (i2, j2) = (i + di, j + dj);
                if i2 >= grid.nu || j2 >= grid.nv {
                    continue;
                }
                let (Some(a), Some(b)) = (jets.get(i, j), jets.get(i2, j2)) else {
                    continue;
                };
                if jumps(&a[0], &b[0], h) || jumps(&a[1], &b[1], h) {
                    ok[grid.index(i, j)] = false;
                    ok[grid.index(i2, j2)] = false;
                }
            }
        }
    }

    // poles strictly inside a cell leave every node finite; compare the value
    // at the cell centre with second-order predictions from the corners
    let predicts = |fc: Complex64, w: &Jet, step: Complex64| {
        let t1 = w[1] * step;
        let t2 = w[2] * step * step * 0.5;
        let err = (fc - (w[0] + t1 + t2)).norm();
        let scale = fc.norm().max(w[0].norm()).max(t1.norm()).max(t2.norm());
        err <= opts.pole_tolerance * scale + 1e-12
    };
    let half = Complex64::new(0.5 * grid.hu(), 0.5 * grid.hv());
    for j in 0..grid.nv - 1 {
        for i in 0..grid.nu - 1 {
            let corners = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)];
            let c = grid.z(i, j) + half;
            let smooth = pair.jets(c).is_some_and(|centre| {
                corners.iter().all(|&(ci, cj)| match jets.get(ci, cj) {
                    Some(w) => {
                        let step = c - grid.z(ci, cj);
                        predicts(centre[0][0], &w[0], step) && predicts(centre[1][0], &w[1], step)
                    }
                    None => true,
                })
            });
            if !smooth {
                for (ci, cj) in corners {
                    ok[grid.index(ci, cj)] = false;
                }
            }
        }
    }

    let ok = dilate_mask(grid, &ok);
    if !ok[grid.index(grid.base.0, grid.base.1)] {
        let z = grid.base_z();
        return Err(Error::MaskedBasePoint { re: z.re, im: z.im });
    }
    let samples = jets.map(|[m, d]| {
        Some(HoloSample {
            map: m[0],
            deriv: m[1],
            density: d[0],
        })
    });
    Ok(SampledData {
        samples: samples.restricted(&ok),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> DomainGrid {
        DomainGrid::new((-1.0, 1.0), (-1.0, 1.0), n, n, (0, 0)).unwrap()
    }

    #[test]
    fn identity_data_is_fully_valid() {
        let pair = HoloPair::parse("z", "1").unwrap();
        let d = sample_data(&pair, &grid(11), &SamplingOptions::default()).unwrap();
        assert_eq!(d.samples.valid_count(), 121);
        let s = d.samples.get(10, 10).unwrap();
        assert_eq!(s.map, Complex64::new(1.0, 1.0));
        assert_eq!(s.deriv, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn pole_is_masked_with_its_ring() {
        let pair = HoloPair::parse("1/z", "1").unwrap();
        let g = grid(11);
        let d = sample_data(&pair, &g, &SamplingOptions::default()).unwrap();
        for j in 4..=6 {
            for i in 4..=6 {
                assert!(!d.samples.is_valid(i, j), "({i},{j})");
            }
        }
        assert!(d.samples.is_valid(2, 5));
    }

    #[test]
    fn critical_point_is_masked() {
        let pair = HoloPair::parse("z^2", "1").unwrap();
        let d = sample_data(&pair, &grid(11), &SamplingOptions::default()).unwrap();
        assert!(!d.samples.is_valid(5, 5));
        assert!(d.samples.is_valid(3, 5));
    }

    #[test]
    fn branch_cut_crossing_is_masked() {
        // log(z) on a rectangle straddling the negative real axis away from nodes
        let g = DomainGrid::new((-2.0, -1.0), (-0.55, 0.45), 11, 11, (0, 10)).unwrap();
        let pair = HoloPair::parse("log(z)", "1").unwrap();
        let d = sample_data(&pair, &g, &SamplingOptions::default()).unwrap();
        // nodes at im = -0.05 and im = 0.05 sit on either side of the cut
        assert!(!d.samples.is_valid(5, 5));
        assert!(!d.samples.is_valid(5, 6));
        assert!(d.samples.is_valid(5, 0));
    }

    #[test]
    fn masked_base_point_is_fatal() {
        let g = DomainGrid::centered_square(1.0, 11).unwrap();
        let pair = HoloPair::parse("1/z", "1").unwrap();
        assert!(matches!(
            sample_data(&pair, &g, &SamplingOptions::default()),
            Err(Error::MaskedBasePoint { .. })
        ));
    }

    #[test]
    fn refinement_never_unmasks_the_pole_cell() {
        let pair = HoloPair::parse("1/(z - 0.13 - 0.07*i)", "1").unwrap();
        for n in [11, 21, 41, 81] {
            let g = grid(n);
            let d = sample_data(&pair, &g, &SamplingOptions::default()).unwrap();
            // the four corners of the cell containing the pole
            let (h, i0, j0) = (
                g.hu(),
                ((0.13 + 1.0) / g.hu()) as usize,
                ((0.07 + 1.0) / g.hv()) as usize,
            );
            assert!(h > 0.0);
            for (di, dj) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                assert!(!d.samples.is_valid(i0 + di, j0 + dj), "n={n}");
            }
        }
    }
}
