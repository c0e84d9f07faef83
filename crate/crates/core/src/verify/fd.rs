//! Central finite-difference stencils on node fields.

use crate::domain::Field;
use crate::integrate::FieldValue;

/// Fourth-order first derivative, offsets −2..=2, divided by `h`.
pub const D1: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
/// Fourth-order second derivative, offsets −2..=2, divided by `h²`.
pub const D2: [f64; 5] = [
    -1.0 / 12.0,
    16.0 / 12.0,
    -30.0 / 12.0,
    16.0 / 12.0,
    -1.0 / 12.0,
];

fn stencil<T: FieldValue>(
    f: &Field<T>,
    i: usize,
    j: usize,
    w: &[f64; 5],
    along_u: bool,
) -> Option<T> {
    let mut acc = T::zero();
    for (k, &c) in w.iter().enumerate() {
        let o = k as isize - 2;
        let (di, dj) = if along_u { (o, 0) } else { (0, o) };
        let v = *f.get_offset(i, j, di, dj)?;
        if c != 0.0 {
            acc = acc.plus(v.scaled(c));
        }
    }
    Some(acc)
}

pub fn d_u<T: FieldValue>(f: &Field<T>, i: usize, j: usize) -> Option<T> {
    stencil(f, i, j, &D1, true).map(|v| v.scaled(1.0 / f.grid.hu()))
}

pub fn d_v<T: FieldValue>(f: &Field<T>, i: usize, j: usize) -> Option<T> {
    stencil(f, i, j, &D1, false).map(|v| v.scaled(1.0 / f.grid.hv()))
}

pub fn d_uu<T: FieldValue>(f: &Field<T>, i: usize, j: usize) -> Option<T> {
    let h = f.grid.hu();
    stencil(f, i, j, &D2, true).map(|v| v.scaled(1.0 / (h * h)))
}

pub fn d_vv<T: FieldValue>(f: &Field<T>, i: usize, j: usize) -> Option<T> {
    let h = f.grid.hv();
    stencil(f, i, j, &D2, false).map(|v| v.scaled(1.0 / (h * h)))
}

/// Mixed derivative: the tensor product of two first-derivative stencils.
pub fn d_uv<T: FieldValue>(f: &Field<T>, i: usize, j: usize) -> Option<T> {
    let mut acc = T::zero();
    for (a, &ca) in D1.iter().enumerate() {
        for (b, &cb) in D1.iter().enumerate() {
            if ca == 0.0 || cb == 0.0 {
                continue;
            }
            let v = *f.get_offset(i, j, a as isize - 2, b as isize - 2)?;
            acc = acc.plus(v.scaled(ca * cb));
        }
    }
    Some(acc.scaled(1.0 / (f.grid.hu() * f.grid.hv())))
}

/// Second-order central first derivatives `(∂u, ∂v)`.
pub fn central2<T: FieldValue>(f: &Field<T>, i: usize, j: usize) -> Option<(T, T)> {
    let du = f
        .get_offset(i, j, 1, 0)?
        .plus(f.get_offset(i, j, -1, 0)?.scaled(-1.0));
    let dv = f
        .get_offset(i, j, 0, 1)?
        .plus(f.get_offset(i, j, 0, -1)?.scaled(-1.0));
    Some((du.scaled(0.5 / f.grid.hu()), dv.scaled(0.5 / f.grid.hv())))
}
