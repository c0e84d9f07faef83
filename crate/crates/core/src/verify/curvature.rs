//! Fundamental forms, extrinsic and intrinsic curvature.

use super::fd::{d_u, d_uu, d_uv, d_v, d_vv};
use crate::algebra::Vec31;
use crate::domain::Field;
use crate::surface::SurfaceSample;

/// Nodes within this many nodes of the boundary are excluded from every check.
pub const BOUNDARY_RING: usize = 2;

/// Position derivatives up to second order at a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub xu: Vec31,
    pub xv: Vec31,
    pub xuu: Vec31,
    pub xuv: Vec31,
    pub xvv: Vec31,
}

/// Derivatives of the position field. Exact tangents are used when the
/// surface carries them, with second derivatives from their differences;
/// otherwise everything comes from positions.
pub fn surface_jets(s: &SurfaceSample) -> Field<Jet2> {
    let grid = s.positions.grid;
    match &s.tangents {
        Some(t) => {
            let tu = t.map(|v| Some(v[0]));
            let tv = t.map(|v| Some(v[1]));
            Field::from_fn(grid, |i, j| {
                s.positions.get(i, j)?;
                let [xu, xv] = *t.get(i, j)?;
                Some(Jet2 {
                    xu,
                    xv,
                    xuu: d_u(&tu, i, j)?,
                    xuv: (d_v(&tu, i, j)? + d_u(&tv, i, j)?) * 0.5,
                    xvv: d_v(&tv, i, j)?,
                })
            })
        }
        None => {
            let x = &s.positions;
            Field::from_fn(grid, |i, j| {
                Some(Jet2 {
                    xu: d_u(x, i, j)?,
                    xv: d_v(x, i, j)?,
                    xuu: d_uu(x, i, j)?,
                    xuv: d_uv(x, i, j)?,
                    xvv: d_vv(x, i, j)?,
                })
            })
        }
    }
}

/// First and second fundamental forms at a node, as `[E, F, G]` and `[L, M, N]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Forms {
    pub first: [f64; 3],
    pub second: Option<[f64; 3]>,
    /// `(n, n)`: `+1` for a spacelike normal, `−1` for a timelike one.
    pub eps: f64,
}

pub(crate) fn gram(a: Vec31, b: Vec31) -> [f64; 3] {
    [a.ip(a), a.ip(b), b.ip(b)]
}

/// `I` and `II = ((x_ij, n))`. Pairing with a normal tangent to the ambient
/// space form discards the component of `x_ij` normal to the ambient.
pub fn fundamental_forms(s: &SurfaceSample) -> Field<Forms> {
    let jets = surface_jets(s);
    Field::from_fn(jets.grid, |i, j| {
        if !jets.grid.is_interior(i, j, BOUNDARY_RING) {
            return None;
        }
        let jet = jets.get(i, j)?;
        let n = s.normal.as_ref().and_then(|f| f.get(i, j).copied());
        Some(Forms {
            first: gram(jet.xu, jet.xv),
            second: n.map(|n| [jet.xuu.ip(n), jet.xuv.ip(n), jet.xvv.ip(n)]),
            eps: n.map_or(0.0, |n| n.ip(n).signum()),
        })
    })
}

/// Threshold on `det I` relative to `E·G`.
pub const EPS_DEGENERATE: f64 = 1e-12;

/// `(H, K)` with shape operator `S = ε I⁻¹ II`, `H = ½ tr S`, `K = det S`.
pub fn shape(first: [f64; 3], second: [f64; 3], eps: f64) -> Option<(f64, f64)> {
    let [e, f, g] = first;
    let [l, m, n] = second;
    let det = e * g - f * f;
    if det <= EPS_DEGENERATE * (e * g).abs() || det <= 0.0 {
        return None;
    }
    let h = eps * (e * n - 2.0 * f * m + g * l) / (2.0 * det);
    let k = (l * n - m * m) / det;
    Some((h, k))
}

/// `(H, K)` per node; masked where the metric degenerates or no normal exists.
pub fn curvatures(forms: &Field<Forms>) -> Field<(f64, f64)> {
    forms.map(|f| shape(f.first, f.second?, f.eps))
}

/// First fundamental form at every node with usable first derivatives.
pub fn first_form_field(s: &SurfaceSample) -> Field<[f64; 3]> {
    match &s.tangents {
        Some(t) => Field::from_fn(t.grid, |i, j| {
            s.positions.get(i, j)?;
            let [a, b] = *t.get(i, j)?;
            Some(gram(a, b))
        }),
        None => Field::from_fn(s.positions.grid, |i, j| {
            Some(gram(d_u(&s.positions, i, j)?, d_v(&s.positions, i, j)?))
        }),
    }
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Gauss curvature of the metric `I` by the Brioschi formula.
pub fn intrinsic_curvature(first: &Field<[f64; 3]>) -> Field<f64> {
    Field::from_fn(first.grid, |i, j| {
        if !first.grid.is_interior(i, j, BOUNDARY_RING) {
            return None;
        }
        let [e, f, g] = *first.get(i, j)?;
        let [eu, fu, gu] = d_u(first, i, j)?;
        let [ev, fv, gv] = d_v(first, i, j)?;
        let evv = d_vv(first, i, j)?[0];
        let fuv = d_uv(first, i, j)?[1];
        let guu = d_uu(first, i, j)?[2];
        let det = e * g - f * f;
        if det <= EPS_DEGENERATE * (e * g).abs() || det <= 0.0 {
            return None;
        }
        let a = det3([
            [-0.5 * evv + fuv - 0.5 * guu, 0.5 * eu, fu - 0.5 * ev],
            [fv - 0.5 * gu, e, f],
            [0.5 * gv, f, g],
        ]);
        let b = det3([
            [0.0, 0.5 * ev, 0.5 * gu],
            [0.5 * ev, e, f],
            [0.5 * gu, f, g],
        ]);
        Some((a - b) / (det * det))
    })
}
