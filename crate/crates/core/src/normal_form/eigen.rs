//! Eigenvectors of the critical modes and their adjoint normalization.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::Operators;
use crate::linalg::{dot, norm_inf, M2, V2};
use crate::spectrum::{Linearization, THPoint};
use crate::{Error, Result, Tolerances, C64};

/// How a printed eigenvector entry relates to the solved one.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Agreement {
    /// Printed equals solved.
    Exact,
    /// Printed equals minus solved.
    Negated,
    /// Printed equals solved times a real factor.
    ScaledBy(f64),
    /// Printed over solved is not real.
    Differs {
        /// Real part of the ratio.
        re: f64,
        /// Imaginary part of the ratio.
        im: f64,
    },
}

impl Agreement {
    fn classify(printed: C64, solved: C64, tol: f64) -> Self {
        let ratio = printed / solved;
        if (ratio - 1.0).norm() < tol {
            Agreement::Exact
        } else if (ratio + 1.0).norm() < tol {
            Agreement::Negated
        } else if ratio.im.abs() < tol * ratio.norm() {
            Agreement::ScaledBy(ratio.re)
        } else {
            Agreement::Differs { re: ratio.re, im: ratio.im }
        }
    }
}

/// Printed eigenvector fractions compared with the solved entries.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrintedComparison {
    /// `a*/(iγω₀ + α + m*)`.
    pub q1: Agreement,
    /// `(iγω₀ + α + m*)/(r m* e^{-iω₀τ₀})`.
    pub q2: Agreement,
    /// `-a*/(k² + α + m*)`.
    pub p1: Agreement,
    /// `(k² + α + m*)/(r m*)`.
    pub p2: Agreement,
}

/// Residuals and bilinear-form values backing [`EigenData`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenChecks {
    /// `‖Δ₀(iω₀τ₀) q‖`.
    pub q_residual: f64,
    /// `‖q* Δ₀(iω₀τ₀)‖`.
    pub q_star_residual: f64,
    /// `‖Δ_{n₂}(0) p‖` at `d_mode`.
    pub p_residual: f64,
    /// `‖p* Δ_{n₂}(0)‖` at `d_mode`.
    pub p_star_residual: f64,
    /// `(ψ₁, φ₁)` by quadrature.
    pub norm1: C64,
    /// `(ψ₁, conj φ₁)` by quadrature.
    pub norm1_conj: C64,
    /// `(ψ₂, φ₂)` by quadrature.
    pub norm2: f64,
}

/// Eigen-data at the Turing-Hopf point.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenData {
    /// The Turing-Hopf point.
    pub th: THPoint,
    /// `(1, q₁)`, right eigenvector for `iω₀τ₀` on mode `n₁`.
    pub q: V2,
    /// `(q₂, 1)`, left eigenvector.
    pub q_star: V2,
    /// `(1, p₁)`, right null vector on mode `n₂`.
    pub p: [f64; 2],
    /// `(p₂, 1)`, left null vector.
    pub p_star: [f64; 2],
    /// Normalization of `ψ₁ = M₁ q*`.
    pub m1: C64,
    /// Normalization of `ψ₂ = M₂ p*`.
    pub m2: f64,
    /// Printed fractions versus solved entries.
    pub printed: PrintedComparison,
    /// Numerical checks.
    pub checks: EigenChecks,
}

impl EigenData {
    /// `ψ₁(0) = M₁ q*`.
    pub fn psi1(&self) -> V2 {
        [self.m1 * self.q_star[0], self.m1 * self.q_star[1]]
    }

    /// `ψ₂ = M₂ p*`.
    pub fn psi2(&self) -> V2 {
        [C64::from(self.m2 * self.p_star[0]), C64::from(self.m2 * self.p_star[1])]
    }

    /// `φ₂ = p` as a complex vector.
    pub fn p_c(&self) -> V2 {
        [C64::from(self.p[0]), C64::from(self.p[1])]
    }
}

/// Right null vector `(1, x)` of a singular matrix, from its second row.
fn right_null(m: &M2) -> Option<V2> {
    let r = m.0[1];
    (r[1].norm() > 0.0).then(|| [C64::from(1.0), -r[0] / r[1]])
}

/// Left null vector `(y, 1)` of a singular matrix, from its second column.
fn left_null(m: &M2) -> Option<V2> {
    (m.0[0][1].norm() > 0.0).then(|| [-m.0[1][1] / m.0[0][1], C64::from(1.0)])
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub(crate) fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Bilinear form `(ψ, φ) = ψ(0)φ(0) + ∫_{-1}^0 ψ(ξ+1) τ₀L₂ φ(ξ) dξ` for
/// exponential functions `ψ(s) = ψ₀ e^{a s}` and `φ(θ) = φ₀ e^{b θ}`,
/// evaluated by Gauss-Legendre quadrature.
pub fn bilinear_form(psi0: V2, a: C64, phi0: V2, b: C64, tau_l2: &M2) -> C64 {
    let core = dot(psi0, tau_l2.apply(phi0));
    let integral: C64 = gauss_legendre(24)
        .into_iter()
        .map(|(x, w)| {
            let xi = 0.5 * (x - 1.0);
            0.5 * w * ((a * (xi + 1.0)).exp() * (b * xi).exp())
        })
        .sum();
    dot(psi0, phi0) + core * integral
}

/// Eigenvectors and normalizations at the Turing-Hopf point.
pub fn eigen_data(lin: &Linearization, th: &THPoint, tol: &Tolerances) -> Result<EigenData> {
    let ops = Operators::new(lin, th);
    let mu = C64::new(0.0, th.omega0 * th.tau0);
    let k2 = ops.k2_n2;

    let dq = ops.delta(mu, 0.0);
    let q = right_null(&dq).ok_or(Error::Degenerate("singular Hopf eigen-system"))?;
    let q_star = left_null(&dq).ok_or(Error::Degenerate("singular Hopf eigen-system"))?;
    let dp = ops.delta(C64::from(0.0), k2);
    let p = right_null(&dp).ok_or(Error::Degenerate("singular Turing eigen-system"))?;
    let p_star = left_null(&dp).ok_or(Error::Degenerate("singular Turing eigen-system"))?;

    let (g, r) = (lin.p.gamma, lin.p.r);
    let (ms, a) = (lin.eq.m_star, lin.eq.a_star);
    let am = lin.p.alpha + ms;
    let e = (-mu).exp();
    let (q1, q2, p1, p2) = (q[1], q_star[0], p[1].re, p_star[0].re);

    let m1 = 1.0 / (q1 + q2 + th.tau0 * q2 * e * (r * r * a * a * ms + r * ms * q1));
    let m2 = 1.0 / (p1 + p2 + th.tau0 * r * ms * p2 * (r * a * a + p1));

    let ig = C64::new(am, g * th.omega0);
    let agree = |printed: C64, solved: C64| Agreement::classify(printed, solved, 1e-9);
    let printed = PrintedComparison {
        q1: agree(a / ig, q1),
        q2: agree(ig / (r * ms * e), q2),
        p1: agree(C64::from(-a / (k2 + am)), C64::from(p1)),
        p2: agree(C64::from((k2 + am) / (r * ms)), C64::from(p2)),
    };

    let dp_mode = ops.with_d(th.d_mode).delta(C64::from(0.0), k2);
    let tl2 = ops.l2 * th.tau0;
    let psi1 = [m1 * q_star[0], m1 * q_star[1]];
    let psi2 = [C64::from(m2 * p2), C64::from(m2)];
    let qbar = crate::linalg::conj(q);
    let zero = C64::from(0.0);
    let checks = EigenChecks {
        q_residual: norm_inf(dq.apply(q)),
        q_star_residual: norm_inf(dq.left_apply(q_star)),
        p_residual: norm_inf(dp_mode.apply(p)),
        p_star_residual: norm_inf(dp_mode.left_apply(p_star)),
        norm1: bilinear_form(psi1, -mu, q, mu, &tl2),
        norm1_conj: bilinear_form(psi1, -mu, qbar, -mu, &tl2),
        norm2: bilinear_form(psi2, zero, p, zero, &tl2).re,
    };
    let worst_res = checks.q_residual.max(checks.q_star_residual).max(checks.p_residual).max(checks.p_star_residual);
    if worst_res > tol.residual {
        return Err(Error::Invariant { what: "eigenvector residual", value: worst_res });
    }
    let worst_norm = (checks.norm1 - 1.0).norm().max(checks.norm1_conj.norm()).max((checks.norm2 - 1.0).abs());
    if worst_norm > tol.normalization {
        return Err(Error::Invariant { what: "bilinear-form normalization", value: worst_norm });
    }

    Ok(EigenData { th: *th, q, q_star, p: [1.0, p1], p_star: [p2, 1.0], m1, m2, printed, checks })
}
