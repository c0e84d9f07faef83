//! Vectors of Minkowski space ℝ^{3,1}.
//!
//! The basis is `{e0, e1, e2, e3}` with `e0` timelike, so the inner product
//! has signature `(−,+,+,+)`.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Point or vector of ℝ^{3,1}.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec31 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalType {
    Timelike,
    Spacelike,
    Lightlike,
}

impl Vec31 {
    pub const ZERO: Vec31 = Vec31::new(0.0, 0.0, 0.0, 0.0);
    pub const E0: Vec31 = Vec31::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Vec31 = Vec31::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Vec31 = Vec31::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Vec31 = Vec31::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Basis vector `e_k`.
    pub fn basis(k: usize) -> Self {
        let mut a = [0.0; 4];
        a[k] = 1.0;
        Self::from_array(a)
    }

    /// Minkowski inner product `−u0·v0 + u1·v1 + u2·v2 + u3·v3`.
    pub fn ip(self, other: Vec31) -> f64 {
        -self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    /// Minkowski squared norm `(v, v)`.
    pub fn norm_sq(self) -> f64 {
        self.ip(self)
    }

    /// Euclidean norm of the coordinate vector. Used only as a scale.
    pub fn euclid_norm(self) -> f64 {
        (self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// Classifies `self` with tolerance `eps_null · |v|²_E` on `|(v, v)|`.
    pub fn causal_type(self, eps_null: f64) -> CausalType {
        let q = self.norm_sq();
        let scale = self.euclid_norm().powi(2).max(f64::MIN_POSITIVE);
        if q.abs() <= eps_null * scale {
            CausalType::Lightlike
        } else if q < 0.0 {
            CausalType::Timelike
        } else {
            CausalType::Spacelike
        }
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Generalized cross product: the vector `n` with `(n, w) = det[a, b, c, w]`.
    ///
    /// It is Minkowski-orthogonal to each of `a`, `b`, `c`.
    pub fn cross3(a: Vec31, b: Vec31, c: Vec31) -> Vec31 {
        let m = [a.to_array(), b.to_array(), c.to_array()];
        // cofactor expansion along the last row of [a; b; c; w]
        let minor = |skip: usize| -> f64 {
            let cols: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
            let e = |r: usize, k: usize| m[r][cols[k]];
            e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
        };
        // det = Σ_k (−1)^{3+k} w_k minor(k); raise the index with η.
        let d = [-minor(0), minor(1), -minor(2), minor(3)];
        Vec31::new(-d[0], d[1], d[2], d[3])
    }
}

impl Add for Vec31 {
    type Output = Vec31;
    fn add(self, o: Vec31) -> Vec31 {
        Vec31::new(
            self.x0 + o.x0,
            self.x1 + o.x1,
            self.x2 + o.x2,
            self.x3 + o.x3,
        )
    }
}

impl AddAssign for Vec31 {
    fn add_assign(&mut self, o: Vec31) {
        *self = *self + o;
    }
}

impl Sub for Vec31 {
    type Output = Vec31;
    fn sub(self, o: Vec31) -> Vec31 {
        Vec31::new(
            self.x0 - o.x0,
            self.x1 - o.x1,
            self.x2 - o.x2,
            self.x3 - o.x3,
        )
    }
}

impl SubAssign for Vec31 {
    fn sub_assign(&mut self, o: Vec31) {
        *self = *self - o;
    }
}

impl Neg for Vec31 {
    type Output = Vec31;
    fn neg(self) -> Vec31 {
        Vec31::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Vec31 {
    type Output = Vec31;
    fn mul(self, s: f64) -> Vec31 {
        Vec31::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Vec31> for f64 {
    type Output = Vec31;
    fn mul(self, v: Vec31) -> Vec31 {
        v * self
    }
}

impl Index<usize> for Vec31 {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        match k {
            0 => &self.x0,
            1 => &self.x1,
            2 => &self.x2,
            3 => &self.x3,
            _ => panic!("Vec31 index {k} out of range"),
        }
    }
}

/// Minkowski inner product.
pub fn ip31(u: Vec31, v: Vec31) -> f64 {
    u.ip(v)
}
