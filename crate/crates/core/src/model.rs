//! Parameters, rescaling, the positive equilibrium and hypotheses (H1), (H2).

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Dimensional parameters of the mussel-algae bed model.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct DimensionalParams {
    /// Conversion constant.
    pub e: f64,
    /// Consumption constant.
    pub c: f64,
    /// Maximal mussel mortality rate.
    #[cfg_attr(feature = "serde", serde(rename = "d_M"))]
    pub d_m: f64,
    /// Half-saturation mussel density.
    #[cfg_attr(feature = "serde", serde(rename = "k_M"))]
    pub k_m: f64,
    /// Water exchange rate.
    pub f: f64,
    /// Height of the lower water layer.
    #[cfg_attr(feature = "serde", serde(rename = "H"))]
    pub h: f64,
    /// Algae concentration in the upper layer.
    #[cfg_attr(feature = "serde", serde(rename = "A_up"))]
    pub a_up: f64,
    /// Mussel diffusivity.
    #[cfg_attr(feature = "serde", serde(rename = "D_M"))]
    pub diff_m: f64,
    /// Algae diffusivity.
    #[cfg_attr(feature = "serde", serde(rename = "D_A"))]
    pub diff_a: f64,
}

/// Dimensionless parameters `(r, γ, α, d, τ, l)`; the domain is `(0, lπ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct ModelParams {
    /// Mussel growth ratio.
    pub r: f64,
    /// Time-scale ratio of algae to mussels.
    pub gamma: f64,
    /// Water exchange ratio.
    pub alpha: f64,
    /// Diffusion ratio.
    pub d: f64,
    /// Delay.
    pub tau: f64,
    /// Domain length divided by π.
    pub l: f64,
}

impl ModelParams {
    /// Check the sign constraints `r, γ, α, d, l > 0`, `τ ≥ 0`.
    pub fn validate(&self) -> Result<()> {
        let positive = [("r", self.r), ("gamma", self.gamma), ("alpha", self.alpha), ("d", self.d), ("l", self.l)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(name, v, "must be finite and > 0"));
            }
        }
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return Err(Error::domain("tau", self.tau, "must be finite and >= 0"));
        }
        Ok(())
    }

    /// Copy with a different diffusion ratio.
    pub fn with_d(mut self, d: f64) -> Self {
        self.d = d;
        self
    }

    /// Copy with a different delay.
    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }
}

/// Scale factors linking dimensional and dimensionless variables.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScaleReport {
    /// `M = m_scale * m`.
    pub m_scale: f64,
    /// `A = a_scale * a`.
    pub a_scale: f64,
    /// Dimensional time per unit of model time.
    pub time_scale: f64,
    /// Dimensional length per unit of model length.
    pub space_scale: f64,
    /// Algae uptake rate `ω = c k_M / H`.
    pub omega: f64,
}

/// Map dimensional parameters to the dimensionless system.
///
/// `domain_length` is the dimensional length of the habitat; the returned
/// `l` satisfies `lπ = domain_length / space_scale`.
pub fn nondimensionalize(
    dp: &DimensionalParams,
    tau_dimensional: f64,
    domain_length: f64,
) -> Result<(ModelParams, ScaleReport)> {
    let fields = [
        ("e", dp.e),
        ("c", dp.c),
        ("d_M", dp.d_m),
        ("k_M", dp.k_m),
        ("f", dp.f),
        ("H", dp.h),
        ("A_up", dp.a_up),
        ("D_M", dp.diff_m),
        ("D_A", dp.diff_a),
        ("domain_length", domain_length),
    ];
    for (name, v) in fields {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::domain(name, v, "must be finite and > 0"));
        }
    }
    if !(tau_dimensional >= 0.0 && tau_dimensional.is_finite()) {
        return Err(Error::domain("tau_dimensional", tau_dimensional, "must be finite and >= 0"));
    }
    let omega = dp.c * dp.k_m / dp.h;
    let gamma = dp.d_m / omega;
    let space_scale = (dp.diff_a / omega).sqrt();
    let p = ModelParams {
        r: dp.e * dp.c * dp.a_up / dp.d_m,
        gamma,
        alpha: dp.f / omega,
        d: dp.diff_m / (gamma * dp.diff_a),
        tau: dp.d_m * tau_dimensional,
        l: domain_length / (space_scale * core::f64::consts::PI),
    };
    let scales = ScaleReport { m_scale: dp.k_m, a_scale: dp.a_up, time_scale: 1.0 / dp.d_m, space_scale, omega };
    Ok((p, scales))
}

/// Positive constant steady state `(m*, a*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Equilibrium {
    /// Mussel density.
    pub m_star: f64,
    /// Algae concentration.
    pub a_star: f64,
}

impl Equilibrium {
    /// Residuals of `r a - 1/(1+m) = 0` and `α(1-a) - m a = 0`.
    pub fn residuals(&self, p: &ModelParams) -> [f64; 2] {
        let (m, a) = (self.m_star, self.a_star);
        [p.r * a - 1.0 / (1.0 + m), p.alpha * (1.0 - a) - m * a]
    }
}

/// Whether `0 < α < 1 < r < 1/α`.
pub fn h1_holds(p: &ModelParams) -> bool {
    0.0 < p.alpha && p.alpha < 1.0 && 1.0 < p.r && p.alpha * p.r < 1.0
}

/// The positive equilibrium, gated on (H1).
pub fn positive_equilibrium(p: &ModelParams) -> Result<Equilibrium> {
    if !h1_holds(p) {
        return Err(Error::Hypothesis { which: "H1", detail: "need 0 < alpha < 1 < r < 1/alpha" });
    }
    let one_minus = 1.0 - p.alpha * p.r;
    if one_minus.abs() < 1e-10 {
        return Err(Error::domain("alpha*r", p.alpha * p.r, "too close to 1; m* diverges"));
    }
    Ok(Equilibrium { m_star: p.alpha * (p.r - 1.0) / one_minus, a_star: one_minus / (p.r * (1.0 - p.alpha)) })
}

/// Outcome of the hypothesis checks.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HypothesisReport {
    /// `0 < α < 1 < r < 1/α`.
    pub h1_holds: bool,
    /// `H0² < P0`; `None` when `P0` is undefined (`r = 1`) or `α = 1`.
    pub h2_holds: Option<bool>,
    /// `H0 = (1 - αr)/(1 - α)`.
    pub h0_value: Option<f64>,
    /// `P0 = r(1 - α)/(γ(r - 1))`.
    pub p0_value: Option<f64>,
    /// Why `h2_holds` is undefined, if it is.
    pub diagnostic: Option<&'static str>,
}

impl HypothesisReport {
    /// Error unless (H1) holds.
    pub fn require_h1(&self) -> Result<()> {
        if self.h1_holds {
            Ok(())
        } else {
            Err(Error::Hypothesis { which: "H1", detail: "need 0 < alpha < 1 < r < 1/alpha" })
        }
    }

    /// Error unless (H1) and (H2) hold.
    pub fn require_h2(&self) -> Result<()> {
        self.require_h1()?;
        match self.h2_holds {
            Some(true) => Ok(()),
            Some(false) => Err(Error::Hypothesis { which: "H2", detail: "need H0^2 < P0" }),
            None => Err(Error::Hypothesis { which: "H2", detail: "undefined (r = 1)" }),
        }
    }
}

/// Evaluate (H1) and (H2).
pub fn hypotheses(p: &ModelParams) -> HypothesisReport {
    let h0 = (p.alpha != 1.0).then(|| (1.0 - p.alpha * p.r) / (1.0 - p.alpha));
    let p0 = (p.r != 1.0 && p.gamma != 0.0).then(|| p.r * (1.0 - p.alpha) / (p.gamma * (p.r - 1.0)));
    let (h2_holds, diagnostic) = match (h0, p0) {
        (Some(h0), Some(p0)) => (Some(h0 * h0 < p0), None),
        (None, _) => (None, Some("alpha = 1 makes H0 singular")),
        (_, None) => (None, Some("r = 1 makes P0 singular")),
    };
    HypothesisReport { h1_holds: h1_holds(p), h2_holds, h0_value: h0, p0_value: p0, diagnostic }
}

/// Parameter set (A): `r = 1.1`, `γ = 4`, `α = 0.654`, `l = 6`, with `d` and
/// `τ` at the Turing-Hopf point to the published precision.
pub fn set_a() -> ModelParams {
    ModelParams { r: 1.1, gamma: 4.0, alpha: 0.654, d: 0.0531255, tau: 7.084102, l: 6.0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn set_a_equilibrium() {
        let eq = positive_equilibrium(&set_a()).unwrap();
        assert!((eq.m_star - 0.233073).abs() < 1e-5);
        assert!((eq.a_star - 0.737257).abs() < 1e-5);
    }

    #[test]
    fn set_a_hypotheses() {
        let h = hypotheses(&set_a());
        assert!(h.h1_holds);
        assert_eq!(h.h2_holds, Some(true));
    }

    #[test]
    fn alpha_above_one_breaks_h1() {
        let p = ModelParams { alpha: 1.2, ..set_a() };
        assert!(!hypotheses(&p).h1_holds);
        assert!(matches!(positive_equilibrium(&p), Err(Error::Hypothesis { which: "H1", .. })));
    }

    #[test]
    fn r_one_leaves_h2_undefined() {
        let h = hypotheses(&ModelParams { r: 1.0, ..set_a() });
        assert_eq!(h.h2_holds, None);
        assert!(h.diagnostic.is_some());
        assert!(h.require_h2().is_err());
    }

    #[test]
    fn large_gamma_breaks_h2() {
        let h = hypotheses(&ModelParams { gamma: 1e6, ..set_a() });
        assert_eq!(h.h2_holds, Some(false));
    }

    #[test]
    fn near_degenerate_alpha_r_rejected() {
        let p = ModelParams { r: 1.1, alpha: 1.0 / 1.1 - 1e-12, ..set_a() };
        assert!(matches!(positive_equilibrium(&p), Err(Error::Domain { .. })));
    }

    #[test]
    fn r_to_one_limit() {
        let eq = positive_equilibrium(&ModelParams { r: 1.0 + 1e-9, ..set_a() }).unwrap();
        assert!(eq.m_star < 1e-8);
        assert!((eq.a_star - 1.0).abs() < 1e-8);
    }

    #[test]
    fn bisection_oracle() {
        // Eliminating a = α/(α+m) leaves r α/(α+m) = 1/(1+m).
        let (r, alpha) = (1.2, 0.5);
        let g = |m: f64| r * alpha / (alpha + m) - 1.0 / (1.0 + m);
        let (mut lo, mut hi) = (1e-12, 1e3);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo) * g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let m = 0.5 * (lo + hi);
        let eq = positive_equilibrium(&ModelParams { r, alpha, ..set_a() }).unwrap();
        assert!((eq.m_star - m).abs() < 1e-10);
        assert!((eq.a_star - alpha / (alpha + m)).abs() < 1e-10);
    }

    #[test]
    fn rescaling_definitions() {
        let base = DimensionalParams {
            e: 0.2,
            c: 0.1,
            d_m: 0.02,
            k_m: 150.0,
            f: 100.0,
            h: 0.1,
            a_up: 1.1,
            diff_m: 0.0005,
            diff_a: 0.05,
        };
        let (p, s) = nondimensionalize(&base, 3.0, 10.0).unwrap();
        assert!((p.r - 0.2 * 0.1 * 1.1 / 0.02).abs() < 1e-12);
        assert!((s.omega - 150.0).abs() < 1e-9);
        assert!((p.tau - 0.06).abs() < 1e-15);
        let scaled = DimensionalParams { diff_m: 2.0 * base.diff_m, diff_a: 2.0 * base.diff_a, ..base };
        assert!((nondimensionalize(&scaled, 3.0, 10.0).unwrap().0.d - p.d).abs() < 1e-15);
    }

    #[test]
    fn rescaling_rejects_nonpositive() {
        let dp = DimensionalParams {
            e: 0.0,
            c: 1.0,
            d_m: 1.0,
            k_m: 1.0,
            f: 1.0,
            h: 1.0,
            a_up: 1.0,
            diff_m: 1.0,
            diff_a: 1.0,
        };
        assert!(matches!(nondimensionalize(&dp, 1.0, 1.0), Err(Error::Domain { name: "e", .. })));
    }

    fn dimensional() -> impl Strategy<Value = DimensionalParams> {
        let pos = || 1e-3f64..1e3;
        (pos(), pos(), pos(), pos(), pos(), pos(), pos(), pos(), pos()).prop_map(
            |(e, c, d_m, k_m, f, h, a_up, diff_m, diff_a)| DimensionalParams {
                e,
                c,
                d_m,
                k_m,
                f,
                h,
                a_up,
                diff_m,
                diff_a,
            },
        )
    }

    fn admissible() -> impl Strategy<Value = ModelParams> {
        (0.05f64..0.95, 0.01f64..0.99, 0.1f64..20.0).prop_map(|(alpha, frac, gamma)| {
            let r = 1.0 + frac * (1.0 / alpha - 1.0);
            ModelParams { r, gamma, alpha, d: 0.1, tau: 1.0, l: 6.0 }
        })
    }

    proptest! {
        #[test]
        fn rescaling_round_trip(dp in dimensional(), tau in 0.0f64..100.0, len in 1e-2f64..1e3) {
            let (p, s) = nondimensionalize(&dp, tau, len).unwrap();
            let rel = |a: f64, b: f64| ((a - b) / b).abs();
            // Invert the definitions using the reported scales.
            prop_assert!(rel(p.r * dp.d_m / (dp.c * s.a_scale), dp.e) < 1e-12);
            prop_assert!(rel(p.gamma * s.omega, dp.d_m) < 1e-12);
            prop_assert!(rel(p.alpha * s.omega, dp.f) < 1e-12);
            prop_assert!(rel(p.d * p.gamma * dp.diff_a, dp.diff_m) < 1e-12);
            prop_assert!(rel(s.space_scale * s.space_scale * s.omega, dp.diff_a) < 1e-12);
            prop_assert!(rel(s.omega * dp.h / s.m_scale, dp.c) < 1e-12);
            prop_assert!(rel(p.l * core::f64::consts::PI * s.space_scale, len) < 1e-12);
            if tau > 0.0 {
                prop_assert!(rel(p.tau * s.time_scale, tau) < 1e-12);
            }
        }

        #[test]
        fn equilibrium_residuals(p in admissible()) {
            let eq = positive_equilibrium(&p).unwrap();
            prop_assert!(eq.m_star > 0.0 && eq.a_star > 0.0 && eq.a_star < 1.0);
            let [r1, r2] = eq.residuals(&p);
            prop_assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12 * (1.0 + eq.m_star));
        }

        #[test]
        fn equilibrium_monotone_in_r(alpha in 0.05f64..0.95, f1 in 0.01f64..0.98, df in 0.001f64..0.01) {
            let r_of = |f: f64| 1.0 + f * (1.0 / alpha - 1.0);
            let p1 = ModelParams { r: r_of(f1), alpha, ..set_a() };
            let p2 = ModelParams { r: r_of(f1 + df), alpha, ..set_a() };
            let (e1, e2) = (positive_equilibrium(&p1).unwrap(), positive_equilibrium(&p2).unwrap());
            prop_assert!(e2.m_star > e1.m_star);
            prop_assert!(e2.a_star < e1.a_star);
        }

        #[test]
        fn h2_flag_matches_definition(p in admissible()) {
            let h = hypotheses(&p);
            let (h0, p0) = (h.h0_value.unwrap(), h.p0_value.unwrap());
            prop_assert_eq!(h.h2_holds, Some(h0 * h0 < p0));
        }
    }
}
