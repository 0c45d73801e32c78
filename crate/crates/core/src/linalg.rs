//! Fixed-size complex linear algebra for the two-component system.

use core::ops::{Add, Mul, Neg, Sub};

use crate::C64;

/// Complex 2-vector.
pub type V2 = [C64; 2];

/// Complex 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M2(pub [[C64; 2]; 2]);

impl M2 {
    /// Identity.
    pub const IDENTITY: M2 = M2([[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]]);

    /// Real matrix from rows.
    pub fn real(m: [[f64; 2]; 2]) -> M2 {
        M2([[C64::from(m[0][0]), C64::from(m[0][1])], [C64::from(m[1][0]), C64::from(m[1][1])]])
    }

    /// Diagonal matrix.
    pub fn diag(a: f64, b: f64) -> M2 {
        M2::real([[a, 0.0], [0.0, b]])
    }

    /// Determinant.
    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: V2) -> V2 {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Row-vector times matrix, `u^T M`.
    pub fn left_apply(&self, u: V2) -> V2 {
        let m = &self.0;
        [u[0] * m[0][0] + u[1] * m[1][0], u[0] * m[0][1] + u[1] * m[1][1]]
    }

    /// Solve `M x = b` by Cramer's rule; `None` when `|det|` is below `tiny`
    /// relative to the matrix scale.
    pub fn solve(&self, b: V2, tiny: f64) -> Option<V2> {
        let det = self.det();
        let m = &self.0;
        let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if det.norm() <= tiny * scale * scale {
            return None;
        }
        Some([(b[0] * m[1][1] - m[0][1] * b[1]) / det, (m[0][0] * b[1] - b[0] * m[1][0]) / det])
    }

    /// Scalar multiple.
    pub fn scale(&self, s: C64) -> M2 {
        let m = &self.0;
        M2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }
}

impl Add for M2 {
    type Output = M2;
    fn add(self, o: M2) -> M2 {
        let (a, b) = (self.0, o.0);
        M2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl Sub for M2 {
    type Output = M2;
    fn sub(self, o: M2) -> M2 {
        self + (-o)
    }
}

impl Neg for M2 {
    type Output = M2;
    fn neg(self) -> M2 {
        self.scale(C64::from(-1.0))
    }
}

impl Mul<f64> for M2 {
    type Output = M2;
    fn mul(self, s: f64) -> M2 {
        self.scale(C64::from(s))
    }
}

/// `u . v` without conjugation.
pub fn dot(u: V2, v: V2) -> C64 {
    u[0] * v[0] + u[1] * v[1]
}

/// Componentwise conjugate.
pub fn conj(v: V2) -> V2 {
    [v[0].conj(), v[1].conj()]
}

/// `a u + b v`.
pub fn axpby(a: C64, u: V2, b: C64, v: V2) -> V2 {
    [a * u[0] + b * v[0], a * u[1] + b * v[1]]
}

/// Max-norm.
pub fn norm_inf(v: V2) -> f64 {
    v[0].norm().max(v[1].norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_round_trip() {
        let m = M2([[C64::new(1.0, 2.0), C64::new(-0.5, 0.0)], [C64::new(0.3, -1.0), C64::new(2.0, 0.1)]]);
        let b = [C64::new(0.7, 0.2), C64::new(-1.1, 0.4)];
        let x = m.solve(b, 1e-14).unwrap();
        let r = m.apply(x);
        assert!(norm_inf([r[0] - b[0], r[1] - b[1]]) < 1e-14);
    }

    #[test]
    fn singular_is_rejected() {
        let m = M2::real([[1.0, 2.0], [2.0, 4.0]]);
        assert!(m.solve([C64::from(1.0), C64::from(0.0)], 1e-14).is_none());
    }
}
