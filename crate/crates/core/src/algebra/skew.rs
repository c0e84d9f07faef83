//! Skew-symmetric endomorphisms of ℝ^{3,1} (bivectors) and their sl(2,ℂ) images.

use super::mat2::{sl2alg_act_mat, wedge_basis_sl2, Mat2, Sl2Alg};
use super::vec31::Vec31;
use crate::error::{Error, Result};

const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Real 4×4 matrix acting on coordinate columns, skew with respect to the
/// Minkowski form: `(W u, v) = −(u, W v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Skew31 {
    pub m: [[f64; 4]; 4],
}

impl Skew31 {
    pub fn zero() -> Self {
        Self { m: [[0.0; 4]; 4] }
    }

    /// Accepts `m` if it is Minkowski-skew within `eps` (relative to its size).
    pub fn new(m: [[f64; 4]; 4], eps: f64) -> Result<Self> {
        // ηW + Wᵀη = 0
        let mut defect: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for r in 0..4 {
            for k in 0..4 {
                defect = defect.max((ETA[r] * m[r][k] + m[k][r] * ETA[k]).abs());
                scale = scale.max(m[r][k].abs());
            }
        }
        if defect > eps * (1.0 + scale) {
            return Err(Error::NotSkew { defect });
        }
        Ok(Self { m })
    }

    pub fn apply(&self, v: Vec31) -> Vec31 {
        let a = v.to_array();
        let mut out = [0.0; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| self.m[r][k] * a[k]).sum();
        }
        Vec31::from_array(out)
    }

    /// Frobenius norm of the coordinate matrix.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn add(&self, o: &Skew31) -> Skew31 {
        let mut m = self.m;
        for (r, row) in m.iter_mut().enumerate() {
            for (k, x) in row.iter_mut().enumerate() {
                *x += o.m[r][k];
            }
        }
        Skew31 { m }
    }

    pub fn sub(&self, o: &Skew31) -> Skew31 {
        let mut m = self.m;
        for (r, row) in m.iter_mut().enumerate() {
            for (k, x) in row.iter_mut().enumerate() {
                *x -= o.m[r][k];
            }
        }
        Skew31 { m }
    }

    /// Coefficient of `e_i ∧ e_j` (`i < j`) in the bivector expansion.
    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        // (e_i ∧ e_j) e_i = η_ii e_j, and no other basis bivector sends e_i to e_j
        self.m[j][i] * ETA[i]
    }
}

/// `(a ∧ b) v = (a, v) b − (b, v) a`.
pub fn wedge_to_skew(a: Vec31, b: Vec31) -> Skew31 {
    let (aa, bb) = (a.to_array(), b.to_array());
    let mut m = [[0.0; 4]; 4];
    for (r, row) in m.iter_mut().enumerate() {
        for (k, x) in row.iter_mut().enumerate() {
            *x = bb[r] * ETA[k] * aa[k] - aa[r] * ETA[k] * bb[k];
        }
    }
    Skew31 { m }
}

/// The sl(2,ℂ) element acting on Hermitian matrices like `w` acts on ℝ^{3,1}.
pub fn skew_to_sl2(w: &Skew31) -> Sl2Alg {
    let mut out = Mat2::zero();
    for ((i, j), e) in wedge_basis_sl2() {
        out = out + e.scale_re(w.coefficient(i, j));
    }
    Sl2Alg::new(out).expect("combination of trace-free basis elements")
}

/// Inverse of [`skew_to_sl2`], read off from the action on the basis.
pub fn sl2_to_skew(b: &Mat2) -> Skew31 {
    let mut m = [[0.0; 4]; 4];
    for k in 0..4 {
        let img = sl2alg_act_mat(b, Vec31::basis(k));
        for (r, row) in m.iter_mut().enumerate() {
            row[k] = img[r];
        }
    }
    Skew31 { m }
}
