//! Coefficient vectors `F_{mnk}` and `F_{y_i(θ) z_j}` of the projected nonlinearity.

use super::derivs::{DerivTable, Var};
use super::eigen::EigenData;
use crate::linalg::V2;
use crate::C64;

/// Columns `F_{y1(0)z}, F_{y2(0)z}, F_{y1(-1)z}, F_{y2(-1)z}` for one direction `z`.
pub type FyzRows = [V2; 4];

/// All appendix vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AppendixVectors {
    /// `F_200`.
    pub f200: V2,
    /// `F_110`.
    pub f110: V2,
    /// `F_101`.
    pub f101: V2,
    /// `F_002`.
    pub f002: V2,
    /// `F_020 = conj F_200`.
    pub f020: V2,
    /// `F_011 = conj F_101`.
    pub f011: V2,
    /// `F_210`.
    pub f210: V2,
    /// `F_102`.
    pub f102: V2,
    /// `F_111`.
    pub f111: V2,
    /// `F_003`.
    pub f003: V2,
    /// Rows for `z₁`.
    pub fy_z1: FyzRows,
    /// Rows for `z₂`.
    pub fy_z2: FyzRows,
}

struct Acc(V2);

impl Acc {
    fn new() -> Self {
        Acc([C64::from(0.0); 2])
    }

    fn add(&mut self, c: C64, f: [f64; 2]) -> &mut Self {
        self.0[0] += c * f[0];
        self.0[1] += c * f[1];
        self
    }

    fn scaled(&self, s: f64) -> V2 {
        [self.0[0] * s, self.0[1] * s]
    }
}

fn conj(v: V2) -> V2 {
    crate::linalg::conj(v)
}

/// Evaluate every appendix formula with `q₁`, `p₁` and `e^{±iω₀τ₀}`.
pub fn appendix_vectors(ed: &EigenData, dt: &DerivTable) -> AppendixVectors {
    use Var::{At as S, Mt as T, A, M};
    let f2 = |i, j| dt.d2(i, j);
    let f3 = |i, j, k| dt.d3(i, j, k);
    let one = C64::from(1.0);
    let q = ed.q[1];
    let qb = q.conj();
    let p = C64::from(ed.p[1]);
    let e = C64::new(0.0, -ed.th.omega0 * ed.th.tau0).exp();
    let eb = e.conj();
    let two = 2.0;

    let fy = |y0: [f64; 2], y1: [f64; 2], y2: [f64; 2], y3: [f64; 2], c: [C64; 4]| {
        Acc::new().add(c[0], y0).add(c[1], y1).add(c[2], y2).add(c[3], y3).scaled(two)
    };
    let fy_z1 = [
        fy(f2(M, M), f2(M, A), f2(M, T), f2(M, S), [one, q, e, q * e]),
        fy(f2(M, A), f2(A, A), f2(T, A), f2(A, S), [one, q, e, q * e]),
        fy(f2(M, T), f2(T, A), f2(T, T), f2(T, S), [one, q, e, q * e]),
        fy(f2(M, S), f2(A, S), f2(T, S), f2(S, S), [one, q, e, q * e]),
    ];
    let fy_z2 = [
        fy(f2(M, M), f2(M, T), f2(M, A), f2(M, S), [one, one, p, p]),
        fy(f2(M, A), f2(T, A), f2(A, A), f2(A, S), [one, one, p, p]),
        fy(f2(M, T), f2(T, T), f2(T, S), f2(T, A), [one, one, p, p]),
        fy(f2(M, S), f2(T, S), f2(A, S), f2(S, S), [one, one, p, p]),
    ];

    let mut a = Acc::new();
    a.add(one, f2(M, M)).add(q * q, f2(A, A)).add(e * e, f2(T, T)).add(q * q * e * e, f2(S, S));
    a.add(2.0 * q, f2(M, A))
        .add(2.0 * e, f2(M, T))
        .add(2.0 * q * e, f2(M, S))
        .add(2.0 * q * e, f2(T, A))
        .add(2.0 * q * q * e, f2(A, S))
        .add(2.0 * q * e * e, f2(T, S));
    let f200 = a.0;

    let mut a = Acc::new();
    a.add(one, f2(M, M))
        .add(q * qb, f2(A, A))
        .add(one, f2(T, T))
        .add(q * qb, f2(S, S))
        .add(q + qb, f2(M, A))
        .add(e + eb, f2(M, T))
        .add(q * e + qb * eb, f2(M, S))
        .add(q * eb + qb * e, f2(T, A))
        .add(q * qb * (e + eb), f2(A, S))
        .add(q + qb, f2(T, S));
    let f110 = a.scaled(2.0);

    let mut a = Acc::new();
    a.add(one, f2(M, M))
        .add(q * p, f2(A, A))
        .add(e, f2(T, T))
        .add(q * p * e, f2(S, S))
        .add(q + p, f2(M, A))
        .add(one + e, f2(M, T))
        .add(p + q * e, f2(M, S))
        .add(q + p * e, f2(T, A))
        .add(q * p * (one + e), f2(A, S))
        .add((q + p) * e, f2(T, S));
    let f101 = a.scaled(2.0);

    let mut a = Acc::new();
    a.add(one, f2(M, M)).add(p * p, f2(A, A)).add(one, f2(T, T)).add(p * p, f2(S, S));
    a.add(2.0 * p, f2(M, A))
        .add(C64::from(2.0), f2(M, T))
        .add(2.0 * p, f2(M, S))
        .add(2.0 * p, f2(T, A))
        .add(2.0 * p * p, f2(A, S))
        .add(2.0 * p, f2(T, S));
    let f002 = a.0;

    let mut a = Acc::new();
    a.add(one, f3(M, M, M))
        .add(2.0 * q + qb, f3(M, M, A))
        .add(2.0 * e + eb, f3(M, M, T))
        .add(q * (2.0 * qb + q), f3(M, A, A))
        .add(2.0 * q * e + qb * eb, f3(M, M, S))
        .add(2.0 * (q * e + q * eb + qb * e), f3(M, A, T))
        .add(2.0 * q * (q * e + qb * eb + qb * e), f3(M, A, S))
        .add(e * e + 2.0, f3(M, T, T))
        .add(2.0 * (q + qb + q * e * e), f3(M, T, S))
        .add(q * (2.0 * qb + q * e * e), f3(M, S, S))
        .add(q * q * qb, f3(A, A, A))
        .add(q * (2.0 * qb * e + q * eb), f3(A, A, T))
        .add(q * q * qb * (2.0 * e + eb), f3(A, A, S))
        .add(2.0 * q + qb * e * e, f3(A, T, T))
        .add(2.0 * q * (qb + qb * e * e + q), f3(A, T, S))
        .add(q * q * qb * (2.0 + e * e), f3(A, S, S))
        .add(e, f3(T, T, T))
        .add(2.0 * q * e + qb * e, f3(T, T, S))
        .add(q * e * (2.0 * qb + q), f3(T, S, S))
        .add(q * q * qb * e, f3(S, S, S));
    let f210 = a.scaled(3.0);

    let mut a = Acc::new();
    a.add(one, f3(M, M, M))
        .add(q + 2.0 * p, f3(M, M, A))
        .add(e + 2.0, f3(M, M, T))
        .add(p * (2.0 * q + p), f3(M, A, A))
        .add(2.0 * p + q * e, f3(M, M, S))
        .add(2.0 * (q + p + p * e), f3(M, A, T))
        .add(2.0 * p * (q + p + q * e), f3(M, A, S))
        .add(2.0 * e + 1.0, f3(M, T, T))
        .add(2.0 * (p + p * e + q * e), f3(M, T, S))
        .add(p * (p + 2.0 * q * e), f3(M, S, S))
        .add(q * p * p, f3(A, A, A))
        .add(p * (2.0 * q + p * e), f3(A, A, T))
        .add(q * p * p * (2.0 + e), f3(A, A, S))
        .add(q + 2.0 * p * e, f3(A, T, T))
        .add(2.0 * p * (q + q * e + p * e), f3(A, T, S))
        .add(q * p * p * (1.0 + 2.0 * e), f3(A, S, S))
        .add(e, f3(T, T, T))
        .add(q * e + 2.0 * p * e, f3(T, T, S))
        .add(p * e * (2.0 * q + p), f3(T, S, S))
        .add(q * p * p * e, f3(S, S, S));
    let f102 = a.scaled(3.0);

    let mut a = Acc::new();
    a.add(one, f3(M, M, M))
        .add(q + qb + p, f3(M, M, A))
        .add(e + eb + 1.0, f3(M, M, T))
        .add(q * qb + q * p + p * qb, f3(M, A, A))
        .add(q * e + qb * eb + p, f3(M, M, S))
        .add(q * (1.0 + eb) + qb * (1.0 + e) + p * (eb + e), f3(M, A, T))
        .add(q * p * (1.0 + e) + q * qb * (eb + e) + qb * p * (1.0 + eb), f3(M, A, S))
        .add(eb + e + 1.0, f3(M, T, T))
        .add(q * (1.0 + e) + qb * (1.0 + eb) + p * (eb + e), f3(M, T, S))
        .add(q * qb + qb * p * eb + q * p * e, f3(M, S, S))
        .add(q * qb * p, f3(A, A, A))
        .add(q * qb + qb * p * e + q * p * eb, f3(A, A, T))
        .add(q * qb * p * (1.0 + e + eb), f3(A, A, S))
        .add(p + q * eb + qb * e, f3(A, T, T))
        .add(q * qb * (eb + e) + q * p * (1.0 + eb) + qb * p * (1.0 + e), f3(A, T, S))
        .add(q * qb * p * (1.0 + eb + e), f3(A, S, S))
        .add(one, f3(T, T, T))
        .add(q + qb + p, f3(T, T, S))
        .add(q * qb + q * p + qb * p, f3(T, S, S))
        .add(q * qb * p, f3(S, S, S));
    let f111 = a.scaled(6.0);

    let mut a = Acc::new();
    a.add(one, f3(M, M, M))
        .add(3.0 * p, f3(M, M, A))
        .add(C64::from(3.0), f3(M, M, T))
        .add(3.0 * p * p, f3(M, A, A))
        .add(3.0 * p, f3(M, M, S))
        .add(6.0 * p, f3(M, A, T))
        .add(6.0 * p * p, f3(M, A, S))
        .add(C64::from(3.0), f3(M, T, T))
        .add(6.0 * p, f3(M, T, S))
        .add(3.0 * p * p, f3(M, S, S))
        .add(p * p * p, f3(A, A, A))
        .add(3.0 * p * p, f3(A, A, T))
        .add(3.0 * p * p * p, f3(A, A, S))
        .add(3.0 * p, f3(A, T, T))
        .add(6.0 * p * p, f3(A, T, S))
        .add(3.0 * p * p * p, f3(A, S, S))
        .add(one, f3(T, T, T))
        .add(3.0 * p, f3(T, T, S))
        .add(3.0 * p * p, f3(T, S, S))
        .add(p * p * p, f3(S, S, S));
    let f003 = a.0;

    AppendixVectors { f200, f110, f101, f002, f020: conj(f200), f011: conj(f101), f210, f102, f111, f003, fy_z1, fy_z2 }
}
