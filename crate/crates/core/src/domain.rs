//! Rectangular parameter domains in the complex plane and node-indexed fields.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Rectangular grid of `nu × nv` nodes over `[re_min, re_max] × [im_min, im_max]`.
///
/// Node `(i, j)` sits at `re_min + i·hu + (im_min + j·hv)·i`. A rectangle is
/// simply connected, which the integration routines rely on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainGrid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nu: usize,
    pub nv: usize,
    /// Node used as the integration base point.
    pub base: (usize, usize),
}

impl DomainGrid {
    pub fn new(
        re: (f64, f64),
        im: (f64, f64),
        nu: usize,
        nv: usize,
        base: (usize, usize),
    ) -> Result<Self> {
        let g = Self {
            re_min: re.0,
            re_max: re.1,
            im_min: im.0,
            im_max: im.1,
            nu,
            nv,
            base,
        };
        g.validate()?;
        Ok(g)
    }

    /// Grid with the base node nearest to `base_z`.
    pub fn with_base_point(
        re: (f64, f64),
        im: (f64, f64),
        nu: usize,
        nv: usize,
        base_z: Complex64,
    ) -> Result<Self> {
        let mut g = Self::new(re, im, nu, nv, (0, 0))?;
        g.base = g.nearest(base_z);
        Ok(g)
    }

    /// Square grid `[-r, r]²` with `n × n` nodes, based at the centre node.
    pub fn centered_square(r: f64, n: usize) -> Result<Self> {
        Self::new((-r, r), (-r, r), n, n, (n / 2, n / 2))
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max]
            .iter()
            .all(|x| x.is_finite());
        if !finite || self.re_max <= self.re_min || self.im_max <= self.im_min {
            return Err(Error::InvalidDomain(
                "extent must be finite and strictly positive".into(),
            ));
        }
        if self.nu < 2 || self.nv < 2 {
            return Err(Error::InvalidDomain(
                "need at least 2 nodes per direction".into(),
            ));
        }
        if self.base.0 >= self.nu || self.base.1 >= self.nv {
            return Err(Error::InvalidDomain("base node out of range".into()));
        }
        Ok(())
    }

    pub fn hu(&self) -> f64 {
        (self.re_max - self.re_min) / (self.nu - 1) as f64
    }

    pub fn hv(&self) -> f64 {
        (self.im_max - self.im_min) / (self.nv - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx % self.nu, idx / self.nu)
    }

    pub fn z(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(
            self.re_min + i as f64 * self.hu(),
            self.im_min + j as f64 * self.hv(),
        )
    }

    pub fn base_z(&self) -> Complex64 {
        self.z(self.base.0, self.base.1)
    }

    /// Nearest node to `z`, clamped to the grid.
    pub fn nearest(&self, z: Complex64) -> (usize, usize) {
        let fi = ((z.re - self.re_min) / self.hu()).round();
        let fj = ((z.im - self.im_min) / self.hv()).round();
        let clamp = |f: f64, n: usize| f.max(0.0).min((n - 1) as f64) as usize;
        (clamp(fi, self.nu), clamp(fj, self.nv))
    }

    /// Length of the diagonal.
    pub fn diameter(&self) -> f64 {
        (self.re_max - self.re_min).hypot(self.im_max - self.im_min)
    }

    /// Same rectangle and base point with a different resolution.
    pub fn refined(&self, nu: usize, nv: usize) -> Result<Self> {
        Self::with_base_point(
            (self.re_min, self.re_max),
            (self.im_min, self.im_max),
            nu,
            nv,
            self.base_z(),
        )
    }

    /// Whether `(i, j)` is at least `ring` nodes away from every edge.
    pub fn is_interior(&self, i: usize, j: usize, ring: usize) -> bool {
        i >= ring && j >= ring && i + ring < self.nu && j + ring < self.nv
    }
}

/// Values attached to grid nodes; `None` marks a masked node.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    pub grid: DomainGrid,
    pub values: Vec<Option<T>>,
}

impl<T: Clone> Field<T> {
    pub fn masked(grid: DomainGrid) -> Self {
        Self {
            grid,
            values: vec![None; grid.len()],
        }
    }

    pub fn from_fn(grid: DomainGrid, mut f: impl FnMut(usize, usize) -> Option<T>) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.nv {
            for i in 0..grid.nu {
                values.push(f(i, j));
            }
        }
        Self { grid, values }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.values[self.grid.index(i, j)].as_ref()
    }

    /// Value at an offset from `(i, j)`, `None` when off the grid or masked.
    pub fn get_offset(&self, i: usize, j: usize, di: isize, dj: isize) -> Option<&T> {
        let ii = i as isize + di;
        let jj = j as isize + dj;
        if ii < 0 || jj < 0 || ii >= self.grid.nu as isize || jj >= self.grid.nv as isize {
            return None;
        }
        self.get(ii as usize, jj as usize)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Option<T>) {
        let k = self.grid.index(i, j);
        self.values[k] = v;
    }

    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_some()
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> Option<U>) -> Field<U> {
        Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .map(|v| v.as_ref().and_then(&mut f))
                .collect(),
        }
    }

    pub fn valid_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// Boolean validity mask in node order.
    pub fn mask(&self) -> Vec<bool> {
        self.values.iter().map(Option::is_some).collect()
    }

    /// Drops values where `mask` is false.
    pub fn restricted(&self, mask: &[bool]) -> Self {
        Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(mask)
                .map(|(v, &ok)| if ok { v.clone() } else { None })
                .collect(),
        }
    }
}

/// Marks every node within one cell of a masked node as masked.
pub fn dilate_mask(grid: &DomainGrid, mask: &[bool]) -> Vec<bool> {
    let mut out = mask.to_vec();
    for j in 0..grid.nv {
        for i in 0..grid.nu {
            if mask[grid.index(i, j)] {
                continue;
            }
            for dj in -1isize..=1 {
                for di in -1isize..=1 {
                    let ii = i as isize + di;
                    let jj = j as isize + dj;
                    if ii >= 0 && jj >= 0 && (ii as usize) < grid.nu && (jj as usize) < grid.nv {
                        out[grid.index(ii as usize, jj as usize)] = false;
                    }
                }
            }
        }
    }
    out
}
