//! Third-order normal form at the Turing-Hopf point.
//!
//! The pipeline is [`eigen_data`], [`deriv_table`], [`appendix_vectors`],
//! [`nf_coeffs`] and [`amplitude_system`]; [`NormalForm::compute`] runs all of
//! it from model parameters.

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::M2;
use crate::spectrum::{turing_hopf_point, Linearization, THPoint};
use crate::{Error, ModelParams, Result, Tolerances, C64};

mod appendix;
mod coeffs;
mod derivs;
mod eigen;

pub use appendix::{appendix_vectors, AppendixVectors, FyzRows};
pub use coeffs::{h_components, nf_coeffs, quadratic_terms, HComponents, HValue, NFCoeffs, QuadraticTerms};
pub use derivs::{deriv_table, DerivTable, Var};
pub use eigen::{bilinear_form, eigen_data, Agreement, EigenChecks, EigenData, PrintedComparison};

/// Delay-rescaled linear operators at the Turing-Hopf point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Operators {
    pub l1: M2,
    pub l2: M2,
    pub dm: M2,
    pub tau0: f64,
    pub k2_n2: f64,
    gamma: f64,
}

impl Operators {
    pub fn new(lin: &Linearization, th: &THPoint) -> Self {
        let (g, r) = (lin.p.gamma, lin.p.r);
        let (m, a) = (lin.eq.m_star, lin.eq.a_star);
        let k = f64::from(th.n2) / lin.p.l;
        Self {
            l1: M2::real([[0.0, 0.0], [-a / g, -(lin.p.alpha + m) / g]]),
            l2: M2::real([[m / ((1.0 + m) * (1.0 + m)), r * m], [0.0, 0.0]]),
            dm: M2::diag(th.d0, 1.0 / g),
            tau0: th.tau0,
            k2_n2: k * k,
            gamma: g,
        }
    }

    pub fn with_d(mut self, d: f64) -> Self {
        self.dm = M2::diag(d, 1.0 / self.gamma);
        self
    }

    /// `μI - τ₀L₁ - τ₀L₂e^{-μ} + τ₀k²D`.
    pub fn delta(&self, mu: C64, k2: f64) -> M2 {
        let t = self.tau0;
        M2::IDENTITY.scale(mu) - self.l1 * t - self.l2.scale(t * (-mu).exp()) + self.dm * (t * k2)
    }
}

/// Coefficients of the planar amplitude system
/// `ρ' = ρ(ε₁ + ρ² + bη²)`, `η' = η(ε₂ + cρ² + d̂η²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AmplitudeSystem {
    /// The Turing-Hopf point.
    pub th: THPoint,
    /// `ε₁ = eps1_map · (τ_ε, d_ε)`.
    pub eps1_map: [f64; 2],
    /// `ε₂ = eps2_map · (τ_ε, d_ε)`.
    pub eps2_map: [f64; 2],
    /// Cross coefficient in the `ρ` equation.
    pub b: f64,
    /// Cross coefficient in the `η` equation.
    pub c: f64,
    /// `±1`.
    pub d_hat: f64,
    /// `sign(Re g¹¹_210)`, `±1`.
    pub epsilon: f64,
    /// `d̂ - bc`.
    pub d_hat_minus_bc: f64,
}

impl AmplitudeSystem {
    /// `(ε₁, ε₂)` at `(τ_ε, d_ε)`.
    pub fn unfolding(&self, tau_eps: f64, d_eps: f64) -> (f64, f64) {
        let [a, b] = self.eps1_map;
        let [c, d] = self.eps2_map;
        (a * tau_eps + b * d_eps, c * tau_eps + d * d_eps)
    }
}

/// Relative size below which a coefficient counts as zero.
const DEGENERATE: f64 = 1e-12;

/// Amplitude-system coefficients from the normal form.
pub fn amplitude_system(nf: &NFCoeffs, th: &THPoint) -> Result<AmplitudeSystem> {
    let re210 = nf.g11_210.re;
    let g003 = nf.g13_003;
    let scale = nf.g11_210.norm().max(g003.abs()).max(nf.g11_102.norm()).max(nf.g13_111.abs());
    if !(re210.abs() > DEGENERATE * scale) {
        return Err(Error::Degenerate("Re g210 = 0"));
    }
    if !(g003.abs() > DEGENERATE * scale) {
        return Err(Error::Degenerate("g003 = 0"));
    }
    let eps = re210.signum();
    let b = eps * nf.g11_102.re / g003.abs();
    let c = eps * nf.g13_111 / re210.abs();
    let d_hat = eps * g003 / g003.abs();
    let dbc = d_hat - b * c;
    if dbc.abs() < DEGENERATE {
        return Err(Error::Degenerate("d_hat - b c = 0"));
    }
    Ok(AmplitudeSystem {
        th: *th,
        eps1_map: [eps / 2.0 * nf.f11_11.re, eps / 2.0 * nf.f11_21.re],
        eps2_map: [eps / 2.0 * nf.f13_12, eps / 2.0 * nf.f13_22],
        b,
        c,
        d_hat,
        epsilon: eps,
        d_hat_minus_bc: dbc,
    })
}

/// Every stage of the normal-form computation.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    /// Linearization with `d = d0`.
    pub lin: Linearization,
    /// Eigen-data.
    pub eigen: EigenData,
    /// Derivative table.
    pub derivs: DerivTable,
    /// Appendix vectors.
    pub vectors: AppendixVectors,
    /// Normal-form coefficients.
    pub coeffs: NFCoeffs,
    /// Amplitude system.
    pub amplitude: AmplitudeSystem,
}

impl NormalForm {
    /// Locate the Turing-Hopf point for `p` and reduce to the amplitude system.
    /// Only `r`, `γ`, `α` and `l` of `p` are used.
    pub fn compute(p: &ModelParams, tol: &Tolerances) -> Result<Self> {
        let th = turing_hopf_point(p)?;
        let lin = Linearization::new(p.with_d(th.d0).with_tau(th.tau0))?;
        let eigen = eigen_data(&lin, &th, tol)?;
        let derivs = deriv_table(&lin, th.tau0);
        let vectors = appendix_vectors(&eigen, &derivs);
        let coeffs = nf_coeffs(&lin, &eigen, &vectors, tol)?;
        let amplitude = amplitude_system(&coeffs, &th)?;
        Ok(Self { lin, eigen, derivs, vectors, coeffs, amplitude })
    }
}
