//! Complex 2×2 matrices, the Hermitian model of ℝ^{3,1}, and the
//! SL(2,ℂ) ≅ O(3,1) / sl(2,ℂ) ≅ so(3,1) identifications.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::vec31::Vec31;
use crate::error::{Error, Result};

pub type C64 = Complex64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Complex 2×2 matrix, row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[C64; 2]; 2],
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self {
            m: [[a, b], [c, d]],
        }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(
            C64::new(a, 0.0),
            C64::new(b, 0.0),
            C64::new(c, 0.0),
            C64::new(d, 0.0),
        )
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Self::real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Self::new(a, C64::new(0.0, 0.0), C64::new(0.0, 0.0), d)
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    /// Inverse, or `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        let m = &self.m;
        Some(Self::new(m[1][1], -m[0][1], -m[1][0], m[0][0]).scale(d.inv()))
    }

    /// Inverse of a unit-determinant matrix (adjugate).
    pub fn sl2_inverse(&self) -> Self {
        let m = &self.m;
        Self::new(m[1][1], -m[0][1], -m[1][0], m[0][0])
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.m;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c(s))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.is_finite())
    }

    /// Matrix applied to a column vector.
    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Divides by the principal square root of the determinant.
    pub fn normalize_det(&self) -> Self {
        self.scale(self.det().sqrt().inv())
    }

    /// Matrix exponential of a trace-free matrix, `cosh(s)·I + sinh(s)/s·B`
    /// with `s² = −det B`.
    pub fn exp_tracefree(&self) -> Self {
        let s2 = -self.det();
        let s = s2.sqrt();
        let (ch, sh_over_s) = if s.norm() < 1e-4 {
            // series, accurate to O(s^8)
            (
                c(1.0) + s2 / 2.0 + s2 * s2 / 24.0 + s2 * s2 * s2 / 720.0,
                c(1.0) + s2 / 6.0 + s2 * s2 / 120.0 + s2 * s2 * s2 / 5040.0,
            )
        } else {
            (s.cosh(), s.sinh() / s)
        };
        Self::identity().scale(ch) + self.scale(sh_over_s)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(c(-1.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// Hermitian 2×2 matrix: a point of ℝ^{3,1} in the Hermitian model.
///
/// Stored as the two real diagonal entries and the upper off-diagonal entry;
/// the lower entry is its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Herm2 {
    pub a11: f64,
    pub a22: f64,
    pub a12: C64,
}

impl Herm2 {
    pub fn to_mat(self) -> Mat2 {
        Mat2::new(c(self.a11), self.a12, self.a12.conj(), c(self.a22))
    }

    /// Accepts a general matrix if it is Hermitian within `eps` (relative to its size).
    pub fn from_mat(a: &Mat2, eps: f64) -> Result<Self> {
        let m = &a.m;
        let scale = 1.0 + a.norm();
        let defect = (m[1][0] - m[0][1].conj()).norm() + m[0][0].im.abs() + m[1][1].im.abs();
        if defect > eps * scale {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Herm2 {
            a11: m[0][0].re,
            a22: m[1][1].re,
            a12: (m[0][1] + m[1][0].conj()) * 0.5,
        })
    }

    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12.norm_sqr()
    }
}

/// Hermitian model map `x0e0 + x1e1 + x2e2 + x3e3 ↦ [[x0+x3, x1+ix2], [x1−ix2, x0−x3]]`.
pub fn herm_from_vec(v: Vec31) -> Herm2 {
    Herm2 {
        a11: v.x0 + v.x3,
        a22: v.x0 - v.x3,
        a12: C64::new(v.x1, v.x2),
    }
}

/// Inverse of [`herm_from_vec`].
pub fn vec_from_herm(a: Herm2) -> Vec31 {
    Vec31::new(
        0.5 * (a.a11 + a.a22),
        a.a12.re,
        a.a12.im,
        0.5 * (a.a11 - a.a22),
    )
}

/// Tolerance used when reading a numerically Hermitian product back as a vector.
pub const HERMITIAN_EPS: f64 = 1e-9;

/// Reads `a` as a point of ℝ^{3,1}, rejecting non-Hermitian input.
pub fn vec_from_mat(a: &Mat2) -> Result<Vec31> {
    Herm2::from_mat(a, HERMITIAN_EPS).map(vec_from_herm)
}

/// Reads the Hermitian part `(A + A*)/2` as a vector; for products that are
/// Hermitian by construction.
pub(crate) fn vec_from_mat_sym(a: &Mat2) -> Vec31 {
    let m = &a.m;
    vec_from_herm(Herm2 {
        a11: m[0][0].re,
        a22: m[1][1].re,
        a12: (m[0][1] + m[1][0].conj()) * 0.5,
    })
}

/// Element of SL(2,ℂ): determinant checked to be 1 within `eps_det`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2(Mat2);

/// Default determinant tolerance for [`Sl2::new`].
pub const EPS_DET: f64 = 1e-8;

impl Sl2 {
    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tolerance(m, EPS_DET)
    }

    pub fn with_tolerance(m: Mat2, eps_det: f64) -> Result<Self> {
        let drift = (m.det() - c(1.0)).norm();
        if drift > eps_det || !m.is_finite() {
            return Err(Error::NotUnitDeterminant { drift });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    /// Wraps a matrix already normalized to unit determinant.
    pub(crate) fn from_normalized(m: Mat2) -> Self {
        Self(m)
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.sl2_inverse())
    }

    /// `A·v = A v A*`.
    pub fn act(&self, v: Vec31) -> Vec31 {
        let a = self.0;
        vec_from_mat_sym(&(a * herm_from_vec(v).to_mat() * a.adjoint()))
    }

    /// The Lorentz transformation as a real 4×4 matrix (columns are images of `e_k`).
    pub fn to_lorentz(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for k in 0..4 {
            let img = self.act(Vec31::basis(k));
            for (r, row) in out.iter_mut().enumerate() {
                row[k] = img[r];
            }
        }
        out
    }
}

/// Element of sl(2,ℂ): trace checked to vanish within `eps_tr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2Alg(Mat2);

/// Default trace tolerance for [`Sl2Alg::new`].
pub const EPS_TR: f64 = 1e-10;

impl Sl2Alg {
    pub fn new(m: Mat2) -> Result<Self> {
        let tr = m.trace().norm();
        if tr > EPS_TR * (1.0 + m.norm()) || !m.is_finite() {
            return Err(Error::NotTraceFree { trace: tr });
        }
        Ok(Self(m))
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }

    /// `B·v = B v + v B*`.
    pub fn act(&self, v: Vec31) -> Vec31 {
        sl2alg_act_mat(&self.0, v)
    }

    pub fn exp(&self) -> Sl2 {
        Sl2(self.0.exp_tracefree())
    }
}

/// `B·v = B v + v B*` without the trace-free check; for hot loops where the
/// matrix is trace-free by construction.
pub(crate) fn sl2alg_act_mat(b: &Mat2, v: Vec31) -> Vec31 {
    let x = herm_from_vec(v).to_mat();
    vec_from_mat_sym(&(*b * x + x * b.adjoint()))
}

/// Group action `A·v = A v A*`.
pub fn sl2_act_vec(a: &Sl2, v: Vec31) -> Vec31 {
    a.act(v)
}

/// Infinitesimal action `B·v = B v + v B*`.
pub fn sl2alg_act_vec(b: &Sl2Alg, v: Vec31) -> Vec31 {
    b.act(v)
}

/// Pauli-type basis matrices `e0..e3` of the Hermitian model.
pub fn basis_matrix(k: usize) -> Mat2 {
    herm_from_vec(Vec31::basis(k)).to_mat()
}

/// sl(2,ℂ) images of the bivectors `e_i ∧ e_j`, `i < j`, in the order
/// `01, 02, 03, 12, 13, 23`.
pub fn wedge_basis_sl2() -> [((usize, usize), Mat2); 6] {
    let half = c(-0.5);
    let ihalf = C64::new(0.0, 0.5);
    [
        ((0, 1), basis_matrix(1).scale(half)),
        ((0, 2), basis_matrix(2).scale(half)),
        ((0, 3), basis_matrix(3).scale(half)),
        ((1, 2), basis_matrix(3).scale(ihalf)),
        ((1, 3), basis_matrix(2).scale(-ihalf)),
        ((2, 3), basis_matrix(1).scale(ihalf)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn model_map_examples() {
        assert_eq!(basis_matrix(1), Mat2::real(0.0, 1.0, 1.0, 0.0));
        assert_eq!(basis_matrix(0), Mat2::identity());
        let a = herm_from_vec(Vec31::new(1.0, 2.0, 3.0, 4.0)).to_mat();
        assert_eq!(
            a,
            Mat2::new(cx(5.0, 0.0), cx(2.0, 3.0), cx(2.0, -3.0), cx(-3.0, 0.0))
        );
    }

    #[test]
    fn minus_det_is_the_metric() {
        let v = Vec31::new(1.5, -0.25, 2.0, 0.75);
        assert_relative_eq!(-herm_from_vec(v).det(), v.norm_sq(), epsilon = 1e-14);
        assert_eq!(-herm_from_vec(Vec31::E0).det(), -1.0);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Mat2::new(cx(1.0, 0.0), cx(0.0, 1.0), cx(0.0, 1.0), cx(2.0, 0.0));
        assert!(matches!(vec_from_mat(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn boost_of_e0() {
        let lam: f64 = 1.7;
        let a = Sl2::new(Mat2::real(lam, 0.0, 0.0, 1.0 / lam)).unwrap();
        let out = a.act(Vec31::E0);
        // A e0 A* = diag(λ², λ⁻²): x0 = cosh(2 ln λ), x3 = sinh(2 ln λ)
        let r = 2.0 * lam.ln();
        assert_relative_eq!(out.x0, r.cosh(), epsilon = 1e-12);
        assert_relative_eq!(out.x3, r.sinh(), epsilon = 1e-12);
        assert_eq!(out.x1, 0.0);
        assert_eq!(out.x2, 0.0);
    }

    #[test]
    fn unit_det_flag_is_enforced() {
        assert!(Sl2::new(Mat2::real(2.0, 0.0, 0.0, 1.0)).is_err());
        assert!(Sl2Alg::new(Mat2::identity()).is_err());
        assert!(Sl2Alg::new(Mat2::zero()).is_ok());
    }

    #[test]
    fn identity_and_zero_actions() {
        let v = Vec31::new(0.1, 0.2, -0.3, 0.4);
        assert!((Sl2::identity().act(v) - v).euclid_norm() < 1e-16);
        assert_eq!(Sl2Alg::new(Mat2::zero()).unwrap().act(v), Vec31::ZERO);
    }

    #[test]
    fn e01_moves_e0_to_minus_e1() {
        let e01 = Sl2Alg::new(basis_matrix(1).scale_re(-0.5)).unwrap();
        assert_eq!(e01.act(Vec31::E0), -Vec31::E1);
    }

    #[test]
    fn exp_matches_series_on_nilpotent() {
        let n = Mat2::real(0.0, 0.0, -1.0, 0.0);
        let e = n.scale(cx(0.3, -0.2)).exp_tracefree();
        assert_eq!(e, Mat2::identity() + n.scale(cx(0.3, -0.2)));
    }

    #[test]
    fn exp_of_diagonal() {
        let b = Mat2::diag(cx(0.5, 0.1), cx(-0.5, -0.1));
        let e = b.exp_tracefree();
        assert_relative_eq!(
            (e.m[0][0] - cx(0.5, 0.1).exp()).norm(),
            0.0,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            (e.m[1][1] - cx(-0.5, -0.1).exp()).norm(),
            0.0,
            epsilon = 1e-14
        );
    }
}
