//! Residuals that the theory predicts to vanish.

use super::curvature::{Jet2, BOUNDARY_RING};
use super::fd::central2;
use crate::algebra::{wedge_to_skew, Vec31};
use crate::domain::Field;

/// Christoffel pairing residuals of `(x, x*)` from second-order central
/// differences: `|(x_u, x*_v) − (x_v, x*_u)|` and
/// `‖x_u ∧ x*_v − x_v ∧ x*_u‖` (Frobenius norm of the endomorphism), both
/// divided by `|x_u||x*_v| + |x_v||x*_u|` in the Euclidean norm.
pub fn christoffel_residual(x: &Field<Vec31>, xs: &Field<Vec31>) -> Field<(f64, f64)> {
    Field::from_fn(x.grid, |i, j| {
        if !x.grid.is_interior(i, j, BOUNDARY_RING) {
            return None;
        }
        let (xu, xv) = central2(x, i, j)?;
        let (su, sv) = central2(xs, i, j)?;
        let scale = xu.euclid_norm() * sv.euclid_norm() + xv.euclid_norm() * su.euclid_norm();
        if scale == 0.0 {
            return Some((0.0, 0.0));
        }
        let scalar = (xu.ip(sv) - xv.ip(su)).abs();
        let wedge = wedge_to_skew(xu, sv).sub(&wedge_to_skew(xv, su)).norm();
        Some((scalar / scale, wedge / scale))
    })
}

/// Mean curvature vector `½(Δx)^⊥` in ℝ^{3,1}, with `Δx = I^{ij} x_ij` and the
/// tangential part removed through the induced metric.
pub fn mean_curvature_vector(jet: &Jet2) -> Option<Vec31> {
    let [e, f, g] = [jet.xu.ip(jet.xu), jet.xu.ip(jet.xv), jet.xv.ip(jet.xv)];
    let det = e * g - f * f;
    if det <= super::curvature::EPS_DEGENERATE * (e * g).abs() || det <= 0.0 || e <= 0.0 {
        return None;
    }
    let (ie, if_, ig) = (g / det, -f / det, e / det);
    let lap = jet.xuu * ie + jet.xuv * (2.0 * if_) + jet.xvv * ig;
    let (a, b) = (lap.ip(jet.xu), lap.ip(jet.xv));
    let tangential = jet.xu * (ie * a + if_ * b) + jet.xv * (if_ * a + ig * b);
    Some((lap - tangential) * 0.5)
}

/// Marginally-trapped residual `|(𝐇,𝐇)| / (|𝐇|² + 1)` and alignment
/// `|(𝐇, ĝ)| / (|𝐇| + 1)` with `ĝ = g/|g|`, Euclidean norms throughout.
pub fn marginally_trapped_residual(jets: &Field<Jet2>, gauss: &Field<Vec31>) -> Field<(f64, f64)> {
    Field::from_fn(jets.grid, |i, j| {
        if !jets.grid.is_interior(i, j, BOUNDARY_RING) {
            return None;
        }
        let h = mean_curvature_vector(jets.get(i, j)?)?;
        let g = *gauss.get(i, j)?;
        let hn = h.euclid_norm();
        let trapped = h.ip(h).abs() / (hn * hn + 1.0);
        let align = h.ip(g * (1.0 / g.euclid_norm())).abs() / (hn + 1.0);
        Some((trapped, align))
    })
}

/// `(|E − G|, |F|)` per node.
pub fn conformality_residual(first: &Field<[f64; 3]>) -> Field<(f64, f64)> {
    first.map(|[e, f, g]| Some(((e - g).abs(), f.abs())))
}

/// `|(μ+1)K − 2μH + μ − 1|`.
pub fn lw_residual(h: f64, k: f64, mu: f64) -> f64 {
    ((mu + 1.0) * k - 2.0 * mu * h + mu - 1.0).abs()
}
