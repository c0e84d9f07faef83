//! Line integrals of closed 1-forms along staircase paths.

use num_complex::Complex64;
use rayon::prelude::*;

use super::forms::OneForm;
use crate::algebra::Vec31;
use crate::domain::{DomainGrid, Field};

/// Values that can be accumulated by quadrature.
pub trait FieldValue: Copy + Send + Sync {
    fn zero() -> Self;
    fn plus(self, o: Self) -> Self;
    fn scaled(self, s: f64) -> Self;
    /// Any norm; used for residuals.
    fn magnitude(self) -> f64;
}

impl FieldValue for Vec31 {
    fn zero() -> Self {
        Vec31::ZERO
    }
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn scaled(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.euclid_norm()
    }
}

impl FieldValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn scaled(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

impl FieldValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn scaled(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl<const N: usize> FieldValue for [f64; N] {
    fn zero() -> Self {
        [0.0; N]
    }
    fn plus(self, o: Self) -> Self {
        std::array::from_fn(|k| self[k] + o[k])
    }
    fn scaled(self, s: f64) -> Self {
        self.map(|v| v * s)
    }
    fn magnitude(self) -> f64 {
        self.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Order of the two legs of a staircase path from the base node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Staircase {
    /// Along the base row, then along each column.
    RowFirst,
    /// Along the base column, then along each row.
    ColumnFirst,
}

/// Integral of `form` over the straight edge from `za` to `zb` by Simpson's rule.
pub fn simpson_edge<T: FieldValue>(
    form: &impl OneForm<T>,
    za: Complex64,
    zb: Complex64,
) -> Option<T> {
    let delta = zb - za;
    let len = delta.norm();
    let dir = delta / len;
    let fa = form.eval(za, dir)?;
    let fm = form.eval(za + delta * 0.5, dir)?;
    let fb = form.eval(zb, dir)?;
    Some(fa.plus(fm.scaled(4.0)).plus(fb).scaled(len / 6.0))
}

/// Walks from `start` outward in both directions along a line of `n` nodes,
/// stepping with `step(from, to)`; stops at the first failure.
pub(crate) fn sweep_line<T: Copy>(
    n: usize,
    start: usize,
    v0: T,
    ok: impl Fn(usize) -> bool,
    mut step: impl FnMut(usize, usize, T) -> Option<T>,
) -> Vec<Option<T>> {
    let mut out = vec![None; n];
    if !ok(start) {
        return out;
    }
    out[start] = Some(v0);
    for (range, dirn) in [
        (start + 1..n).collect::<Vec<_>>(),
        (0..start).rev().collect(),
    ]
    .into_iter()
    .zip([1isize, -1])
    {
        let mut prev = start;
        let mut val = v0;
        for k in range {
            debug_assert_eq!(k as isize, prev as isize + dirn);
            if !ok(k) {
                break;
            }
            match step(prev, k, val) {
                Some(v) => {
                    out[k] = Some(v);
                    val = v;
                    prev = k;
                }
                None => break,
            }
        }
    }
    out
}

/// Generic staircase driver: `edge(z_from, z_to, value)` advances a value along
/// one grid edge. The second leg runs in parallel.
pub(crate) fn staircase<T, E>(
    grid: &DomainGrid,
    mask: &[bool],
    base: T,
    order: Staircase,
    edge: E,
) -> Field<T>
where
    T: Copy + Send + Sync,
    E: Fn(Complex64, Complex64, T) -> Option<T> + Sync,
{
    let (bi, bj) = grid.base;
    let valid = |i: usize, j: usize| mask[grid.index(i, j)];
    let mut field = Field::masked(*grid);
    match order {
        Staircase::RowFirst => {
            let row = sweep_line(
                grid.nu,
                bi,
                base,
                |i| valid(i, bj),
                |a, b, v| edge(grid.z(a, bj), grid.z(b, bj), v),
            );
            let cols: Vec<Vec<Option<T>>> = (0..grid.nu)
                .into_par_iter()
                .map(|i| match row[i] {
                    Some(v0) => sweep_line(
                        grid.nv,
                        bj,
                        v0,
                        |j| valid(i, j),
                        |a, b, v| edge(grid.z(i, a), grid.z(i, b), v),
                    ),
                    None => vec![None; grid.nv],
                })
                .collect();
            for (i, col) in cols.into_iter().enumerate() {
                for (j, v) in col.into_iter().enumerate() {
                    field.set(i, j, v);
                }
            }
        }
        Staircase::ColumnFirst => {
            let col = sweep_line(
                grid.nv,
                bj,
                base,
                |j| valid(bi, j),
                |a, b, v| edge(grid.z(bi, a), grid.z(bi, b), v),
            );
            let rows: Vec<Vec<Option<T>>> = (0..grid.nv)
                .into_par_iter()
                .map(|j| match col[j] {
                    Some(v0) => sweep_line(
                        grid.nu,
                        bi,
                        v0,
                        |i| valid(i, j),
                        |a, b, v| edge(grid.z(a, j), grid.z(b, j), v),
                    ),
                    None => vec![None; grid.nu],
                })
                .collect();
            for (j, row) in rows.into_iter().enumerate() {
                for (i, v) in row.into_iter().enumerate() {
                    field.set(i, j, v);
                }
            }
        }
    }
    field
}

/// Integrates a closed form from the base node, whose value is `base`.
///
/// Nodes the staircase cannot reach through valid nodes stay masked.
pub fn integrate_closed_form<T: FieldValue>(
    form: &impl OneForm<T>,
    grid: &DomainGrid,
    mask: &[bool],
    base: T,
    order: Staircase,
) -> Field<T> {
    staircase(grid, mask, base, order, |za, zb, v| {
        simpson_edge(form, za, zb).map(|d| v.plus(d))
    })
}

/// Loop integral of `form` around every cell whose corners are all valid,
/// stored at the cell's lower-left node.
pub fn plaquette_residuals<T: FieldValue>(
    form: &impl OneForm<T>,
    grid: &DomainGrid,
    mask: &[bool],
) -> Field<f64> {
    let mut out = Field::masked(*grid);
    for j in 0..grid.nv - 1 {
        for i in 0..grid.nu - 1 {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            if !corners.iter().all(|&(a, b)| mask[grid.index(a, b)]) {
                continue;
            }
            let mut acc = T::zero();
            let mut ok = true;
            for k in 0..4 {
                let (a, b) = corners[k];
                let (c, d) = corners[(k + 1) % 4];
                match simpson_edge(form, grid.z(a, b), grid.z(c, d)) {
                    Some(v) => acc = acc.plus(v),
                    None => ok = false,
                }
            }
            if ok {
                out.set(i, j, Some(acc.magnitude()));
            }
        }
    }
    out
}

/// Largest value of a scalar field over its valid nodes (0 when empty).
pub fn field_max(f: &Field<f64>) -> f64 {
    f.values.iter().flatten().fold(0.0, |a: f64, &b| a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::forms::HoloForm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_density_integrates_to_linear() {
        let g = DomainGrid::centered_square(1.0, 9).unwrap();
        let w = c(0.7, -0.2);
        let form = HoloForm(move |_z: Complex64| Some(w));
        let mask = vec![true; g.len()];
        let f = integrate_closed_form(&form, &g, &mask, c(0.0, 0.0), Staircase::RowFirst);
        for j in 0..9 {
            for i in 0..9 {
                assert!((f.get(i, j).unwrap() - w * g.z(i, j)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn integral_of_z_reaches_i() {
        // step 0.05 on [0,1]^2, base at 0
        let g = DomainGrid::new((0.0, 1.0), (0.0, 1.0), 21, 21, (0, 0)).unwrap();
        let form = HoloForm(|z: Complex64| Some(z));
        let mask = vec![true; g.len()];
        for order in [Staircase::RowFirst, Staircase::ColumnFirst] {
            let f = integrate_closed_form(&form, &g, &mask, c(0.0, 0.0), order);
            assert!((f.get(20, 20).unwrap() - c(0.0, 1.0)).norm() <= 1e-10);
        }
    }

    #[test]
    fn plaquettes_shrink_at_quadrature_order() {
        let form = HoloForm(|z: Complex64| Some((2.0 * z).exp()));
        let res = |n: usize| {
            let g = DomainGrid::centered_square(0.5, n).unwrap();
            field_max(&plaquette_residuals(&form, &g, &vec![true; g.len()]))
        };
        let (a, b) = (res(11), res(21));
        // Simpson per edge: loop error O(h^5) per cell
        assert!(a / b > 16.0, "{a} {b}");
    }

    #[test]
    fn masked_column_blocks_only_what_it_must() {
        let g = DomainGrid::centered_square(1.0, 5).unwrap();
        let mut mask = vec![true; g.len()];
        mask[g.index(3, 2)] = false;
        let form = HoloForm(|_z: Complex64| Some(c(1.0, 0.0)));
        let f = integrate_closed_form(&form, &g, &mask, c(0.0, 0.0), Staircase::RowFirst);
        // the base row is cut at i = 3, so columns 3 and 4 are unreachable
        assert!(f.get(4, 2).is_none());
        assert!(f.get(4, 0).is_none());
        assert!(f.get(1, 4).is_some());
        let f = integrate_closed_form(&form, &g, &mask, c(0.0, 0.0), Staircase::ColumnFirst);
        assert!(f.get(4, 4).is_some());
        assert!(f.get(4, 2).is_none());
    }
}
