//! Per-mode characteristic equation
//! `E_n(λ, τ) = γλ² + T_n λ + (Bλ + M_n) e^{-λτ} + D_n` and the bifurcation
//! data derived from it.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::model::{hypotheses, positive_equilibrium, Equilibrium, HypothesisReport, ModelParams};
use crate::{Error, Result, C64};

mod roots;

pub use roots::{rightmost_roots, RootScan, SearchBox};

/// Characteristic coefficients of spatial mode `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeCoeffs {
    /// Mode index.
    pub n: u32,
    /// `T_n = α + m* + (1 + γd) k²`.
    pub t: f64,
    /// `M_n = r a* m* (1 - αr - r a* k²)`.
    pub m: f64,
    /// `D_n = d (α + m* + k²) k²`.
    pub d: f64,
    /// `B = -γ r² a*² m*`.
    pub b: f64,
}

impl ModeCoeffs {
    /// `T_n² - 2γD_n - B²`, the linear coefficient of the frequency quadratic.
    pub fn p_coeff(&self, gamma: f64) -> f64 {
        self.t * self.t - 2.0 * gamma * self.d - self.b * self.b
    }
}

/// Critical delays on one mode.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HopfBranch {
    /// Mode index.
    pub n: u32,
    /// Crossing frequency.
    pub omega_n: f64,
    /// `τ_n^j` for `j = 0..=j_max`.
    pub taus: Vec<f64>,
}

/// Turing threshold in `d` for fixed `(r, α, l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TuringThreshold {
    /// Closed-form threshold where the continuous minimum of `D + M` touches 0.
    pub d0: f64,
    /// First integer mode to destabilize as `d` decreases.
    pub n2: u32,
    /// Continuous minimizer `k² = n²/l²` at `d0`.
    pub k2_star: f64,
    /// Value of `d` at which `D_{n2} + M_{n2}` vanishes exactly.
    pub d_mode: f64,
}

/// Membership of `d` in the no-Turing set.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GammaMembership {
    /// `D_n + M_n > 0` for every `k² ≥ 0`.
    pub member: bool,
    /// Minimum of the quadratic over `k² ≥ 0`.
    pub vertex_value: f64,
    /// `|vertex_value|` within tolerance of zero.
    pub marginal: bool,
}

/// Output of the Turing transversality computation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TuringTransversality {
    /// `dλ/dd` of the zero root.
    pub dlambda_dd: f64,
    /// `T_n + B - τM_n`; positive means the zero root is simple.
    pub simplicity_witness: f64,
}

/// Turing-Hopf point in the `(τ, d)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct THPoint {
    /// Critical delay.
    pub tau0: f64,
    /// Turing threshold (closed form).
    pub d0: f64,
    /// Hopf mode.
    pub n1: u32,
    /// Turing mode.
    pub n2: u32,
    /// Hopf frequency.
    pub omega0: f64,
    /// `d` at which mode `n2` has an exact zero root.
    pub d_mode: f64,
}

/// Linearization of the system about `(m*, a*)`, gated on (H1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linearization {
    /// Model parameters.
    pub p: ModelParams,
    /// Positive equilibrium.
    pub eq: Equilibrium,
    /// Hypothesis flags.
    pub hyp: HypothesisReport,
}

impl Linearization {
    /// Validate `p`, check (H1) and compute the equilibrium.
    pub fn new(p: ModelParams) -> Result<Self> {
        p.validate()?;
        let hyp = hypotheses(&p);
        hyp.require_h1()?;
        let eq = positive_equilibrium(&p)?;
        Ok(Self { p, eq, hyp })
    }

    /// Same linearization with another `d`.
    pub fn with_d(&self, d: f64) -> Self {
        Self { p: self.p.with_d(d), ..*self }
    }

    /// `k² = n²/l²`.
    pub fn k2(&self, n: u32) -> f64 {
        let k = f64::from(n) / self.p.l;
        k * k
    }

    /// `m*/(1+m*)² = r² a*² m*`.
    fn c1(&self) -> f64 {
        let (r, a, m) = (self.p.r, self.eq.a_star, self.eq.m_star);
        r * r * a * a * m
    }

    /// `r a* m* (1 - αr)`, the value of `M_0`.
    fn c0(&self) -> f64 {
        self.p.r * self.eq.a_star * self.eq.m_star * (1.0 - self.p.alpha * self.p.r)
    }

    /// Characteristic coefficients of mode `n`.
    pub fn mode_coeffs(&self, n: u32) -> ModeCoeffs {
        let p = &self.p;
        let (m, a) = (self.eq.m_star, self.eq.a_star);
        let k2 = self.k2(n);
        ModeCoeffs {
            n,
            t: p.alpha + m + (1.0 + p.gamma * p.d) * k2,
            m: p.r * a * m * (1.0 - p.alpha * p.r - p.r * a * k2),
            d: p.d * (p.alpha + m + k2) * k2,
            b: -p.gamma * p.r * p.r * a * a * m,
        }
    }

    /// `E_n(λ, τ)`.
    pub fn char_value(&self, n: u32, lambda: C64, tau: f64) -> C64 {
        let c = self.mode_coeffs(n);
        self.p.gamma * lambda * lambda + c.t * lambda + (c.b * lambda + c.m) * (-lambda * tau).exp() + c.d
    }

    /// `∂E_n/∂λ`.
    pub fn char_derivative(&self, n: u32, lambda: C64, tau: f64) -> C64 {
        let c = self.mode_coeffs(n);
        let e = (-lambda * tau).exp();
        2.0 * self.p.gamma * lambda + c.t + c.b * e - tau * (c.b * lambda + c.m) * e
    }

    /// Frequency `ω_n` of the purely imaginary pair on mode `n`, if any.
    ///
    /// Fails when `T_n² - 2γD_n - B² ≤ 0` together with `D_n² > M_n²`, where
    /// reporting "absent" would rest on a sign the hypotheses should have
    /// guaranteed.
    pub fn hopf_frequency(&self, n: u32) -> Result<Option<f64>> {
        let c = self.mode_coeffs(n);
        let g = self.p.gamma;
        let pc = c.p_coeff(g);
        let q = c.d * c.d - c.m * c.m;
        if q >= 0.0 {
            if pc <= 0.0 {
                return Err(Error::Invariant { what: "T^2 - 2 gamma D - B^2 > 0", value: pc });
            }
            return Ok(None);
        }
        let disc = pc * pc - 4.0 * g * g * q;
        let z = (-pc + disc.sqrt()) / (2.0 * g * g);
        Ok((z > 0.0).then(|| z.sqrt()))
    }

    /// Critical delays `τ_n^j`, `j = 0..=j_max`, from the phase conditions
    /// `M cos + ωB sin = γω² - D`, `M sin - ωB cos = Tω`.
    pub fn hopf_branch(&self, n: u32, j_max: u32) -> Result<HopfBranch> {
        let w = self.hopf_frequency(n)?.ok_or(Error::NoHopf(n))?;
        let c = self.mode_coeffs(n);
        let det = c.m * c.m + w * w * c.b * c.b;
        let rhs0 = self.p.gamma * w * w - c.d;
        let rhs1 = c.t * w;
        let cos = (c.m * rhs0 - w * c.b * rhs1) / det;
        let sin = (w * c.b * rhs0 + c.m * rhs1) / det;
        let mut theta = sin.atan2(cos);
        if theta <= 0.0 {
            theta += 2.0 * PI;
        }
        let taus = (0..=j_max).map(|j| (theta + 2.0 * PI * f64::from(j)) / w).collect();
        Ok(HopfBranch { n, omega_n: w, taus })
    }

    /// `S(d, α, r)`: the positive `k²` root of `D_n - M_n = 0`.
    pub fn spatial_scale(&self) -> Result<f64> {
        let d = self.p.d;
        let lin = d * self.p.alpha / self.eq.a_star + self.c1();
        let s = (-lin + (lin * lin + 4.0 * d * self.c0()).sqrt()) / (2.0 * d);
        if s > 0.0 {
            Ok(s)
        } else {
            Err(Error::Invariant { what: "S > 0", value: s })
        }
    }

    /// `l_n = n/√S`.
    pub fn l_n(&self, n: u32) -> Result<f64> {
        Ok(f64::from(n) / self.spatial_scale()?.sqrt())
    }

    /// Whether `D_n + M_n`, as a quadratic in `s = k²`, stays positive on `s ≥ 0`.
    pub fn gamma_membership(&self, marginal_tol: f64) -> GammaMembership {
        let d = self.p.d;
        let lin = d * self.p.alpha / self.eq.a_star - self.c1();
        let c0 = self.c0();
        let vertex_value = if lin >= 0.0 { c0 } else { c0 - lin * lin / (4.0 * d) };
        let marginal = vertex_value.abs() <= marginal_tol;
        GammaMembership { member: vertex_value > 0.0 && !marginal, vertex_value, marginal }
    }

    /// `Re (dλ/dτ)^{-1}` at `λ = iω_n`, closed form.
    ///
    /// The value does not depend on which critical delay `τ_n^j` is meant.
    pub fn hopf_transversality(&self, n: u32) -> Result<f64> {
        let w = self.hopf_frequency(n)?.ok_or(Error::NoHopf(n))?;
        let c = self.mode_coeffs(n);
        let g = self.p.gamma;
        let pc = c.p_coeff(g);
        let num = (pc * pc - 4.0 * g * g * (c.d * c.d - c.m * c.m)).sqrt();
        let v = num / (c.b * c.b * w * w + c.m * c.m);
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Error::Invariant { what: "Hopf transversality > 0", value: v })
        }
    }

    /// Crossing speed of the zero root of mode `n2` in `d`, at the current `d`.
    pub fn turing_transversality(&self, n2: u32, tau: f64) -> Result<TuringTransversality> {
        let c = self.mode_coeffs(n2);
        let k2 = self.k2(n2);
        let witness = c.t + c.b - tau * c.m;
        if witness <= 0.0 {
            return Err(Error::Invariant { what: "zero eigenvalue simple (T + B - tau M > 0)", value: witness });
        }
        let dd_dd = (self.p.alpha + self.eq.m_star + k2) * k2;
        Ok(TuringTransversality { dlambda_dd: -dd_dd / witness, simplicity_witness: witness })
    }

    /// `d` at which `D_n + M_n = 0`; infinite when mode `n` never destabilizes.
    pub fn mode_turing_d(&self, n: u32) -> f64 {
        let k2 = self.k2(n);
        let m = self.with_d(1.0).mode_coeffs(n).m;
        if n == 0 || m >= 0.0 {
            return f64::NEG_INFINITY;
        }
        -m / ((self.p.alpha + self.eq.m_star + k2) * k2)
    }
}

/// Closed-form Turing threshold and the integer mode selection.
///
/// Only `r`, `α` and `l` of `lin.p` matter.
pub fn turing_threshold(lin: &Linearization) -> Result<TuringThreshold> {
    let (r, alpha) = (lin.p.r, lin.p.alpha);
    let s = 1.0 - alpha * r;
    if s <= 0.0 {
        return Err(Error::domain("alpha*r", alpha * r, "need 1 - alpha*r > 0"));
    }
    let d0 = alpha * (r - 1.0) * s * s / ((1.0 - alpha).powi(3) * (2.0 * s.sqrt() + 2.0 - alpha * r));
    let k2_star = (lin.c1() - d0 * alpha / lin.eq.a_star) / (2.0 * d0);
    if k2_star <= 0.0 {
        return Err(Error::Invariant { what: "continuous Turing wavenumber > 0", value: k2_star });
    }
    let n_real = lin.p.l * k2_star.sqrt();
    let lo = (n_real.floor() as u32).max(1);
    let hi = (n_real.ceil() as u32).max(1);
    let (mut n2, mut d_mode) = (lo, lin.mode_turing_d(lo));
    if hi != lo {
        let d_hi = lin.mode_turing_d(hi);
        if d_hi > d_mode {
            n2 = hi;
            d_mode = d_hi;
        }
    }
    Ok(TuringThreshold { d0, n2, k2_star, d_mode })
}

/// Admissible Hopf modes stop at the first absent frequency; this caps the scan.
const MAX_HOPF_MODES: u32 = 100_000;

/// Locate the Turing-Hopf point for the `(r, γ, α, l)` in `p`.
pub fn turing_hopf_point(p: &ModelParams) -> Result<THPoint> {
    let lin = Linearization::new(*p)?;
    lin.hyp.require_h2()?;
    let tt = turing_threshold(&lin)?;
    let lin = lin.with_d(tt.d0);
    let mut best: Option<(f64, u32, f64)> = None;
    for n in 0..MAX_HOPF_MODES {
        if lin.hopf_frequency(n)?.is_none() {
            break;
        }
        let br = lin.hopf_branch(n, 0)?;
        if best.map_or(true, |(t, _, _)| br.taus[0] < t) {
            best = Some((br.taus[0], n, br.omega_n));
        }
    }
    let (tau0, n1, omega0) = best.ok_or(Error::NoHopf(0))?;
    if n1 == tt.n2 {
        return Err(Error::Invariant { what: "Hopf and Turing modes differ", value: f64::from(n1) });
    }
    Ok(THPoint { tau0, d0: tt.d0, n1, n2: tt.n2, omega0, d_mode: tt.d_mode })
}
