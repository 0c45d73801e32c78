//! Center-manifold corrections `h_{mnk}` and the third-order coefficients.

#[allow(unused_imports)]
use num_traits::Float;

use super::appendix::{AppendixVectors, FyzRows};
use super::eigen::EigenData;
use super::Operators;
use crate::linalg::{conj, dot, norm_inf, M2, V2};
use crate::spectrum::Linearization;
use crate::{Error, Result, Tolerances, C64};

/// A component `⟨h(θ) b, b⟩` evaluated at `θ = 0` and `θ = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HValue {
    /// `h(0)`.
    pub at0: V2,
    /// `h(-1)`.
    pub at_m1: V2,
}

/// The six h-components and the residuals of their bracket solves.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HComponents {
    /// `⟨h_200 b_{n₁}, b_{n₁}⟩`.
    pub h200: HValue,
    /// `⟨h_110 b_{n₁}, b_{n₁}⟩`, equal to the `b_{n₂}` projection.
    pub h110: HValue,
    /// `⟨h_101 b_{n₁}, b_{n₂}⟩`.
    pub h101: HValue,
    /// `⟨h_011 b_{n₁}, b_{n₂}⟩`.
    pub h011: HValue,
    /// `⟨h_002 b_{n₁}, b_{n₁}⟩`.
    pub h002_n1: HValue,
    /// `⟨h_002 b_{n₂}, b_{n₂}⟩`.
    pub h002_n2: HValue,
    /// `‖bracket · x - F‖∞` for the six solves, in the order
    /// `200, 110, 101, 011, 002 (k=0), 002 (k=2n₂)`.
    pub solve_residuals: [f64; 6],
}

/// Quadratic projections `f^{1k}_{mnk}`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadraticTerms {
    /// `f¹¹_200`.
    pub f11_200: C64,
    /// `f¹¹_110`.
    pub f11_110: C64,
    /// `f¹¹_020`.
    pub f11_020: C64,
    /// `f¹¹_002`.
    pub f11_002: C64,
    /// `f¹²_200`.
    pub f12_200: C64,
    /// `f¹²_110`.
    pub f12_110: C64,
    /// `f¹²_002`.
    pub f12_002: C64,
    /// `f¹³_101`.
    pub f13_101: C64,
    /// `f¹³_011`.
    pub f13_011: C64,
}

/// Coefficients of the truncated normal form.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NFCoeffs {
    /// `f¹¹_11`, the `τ_ε` coefficient in the `z₁` equation.
    pub f11_11: C64,
    /// `f¹¹_21`, the `d_ε` coefficient in the `z₁` equation.
    pub f11_21: C64,
    /// `g¹¹_210`.
    pub g11_210: C64,
    /// `g¹¹_102`.
    pub g11_102: C64,
    /// `f¹³_12`.
    pub f13_12: f64,
    /// `f¹³_22`.
    pub f13_22: f64,
    /// `g¹³_111`.
    pub g13_111: f64,
    /// `g¹³_003`.
    pub g13_003: f64,
    /// Largest imaginary part discarded from the mode-`n₂` coefficients.
    pub imag_residue: f64,
    /// Quadratic projections.
    pub quadratic: QuadraticTerms,
    /// h-components.
    pub h: HComponents,
}

fn scale(v: V2, s: C64) -> V2 {
    [v[0] * s, v[1] * s]
}

fn add(u: V2, v: V2) -> V2 {
    [u[0] + v[0], u[1] + v[1]]
}

fn solve(m: &M2, f: V2, what: &'static str, tol: &Tolerances) -> Result<(V2, f64)> {
    let x = m.solve(f, tol.residual).ok_or(Error::NonResonance(what))?;
    let r = m.apply(x);
    Ok((x, norm_inf([r[0] - f[0], r[1] - f[1]])))
}

/// `S_{yz}(h) = (F_{y1(0)z}, F_{y2(0)z}) h(0) + (F_{y1(-1)z}, F_{y2(-1)z}) h(-1)`;
/// `bar` conjugates the columns.
fn s_yz(rows: &FyzRows, h: &HValue, bar: bool) -> V2 {
    let c = |v: V2| if bar { conj(v) } else { v };
    let mut out = scale(c(rows[0]), h.at0[0]);
    out = add(out, scale(c(rows[1]), h.at0[1]));
    out = add(out, scale(c(rows[2]), h.at_m1[0]));
    add(out, scale(c(rows[3]), h.at_m1[1]))
}

/// Project the quadratic vectors onto the critical eigenspaces.
pub fn quadratic_terms(lin: &Linearization, ed: &EigenData, v: &AppendixVectors) -> QuadraticTerms {
    let sl = (lin.p.l * core::f64::consts::PI).sqrt();
    let (psi1, psi2) = (ed.psi1(), ed.psi2());
    let f11 = |f: V2| dot(psi1, f) / sl;
    let f13 = |f: V2| dot(psi2, f) / sl;
    let f11_020 = f11(v.f020);
    let f11_110 = f11(v.f110);
    let f11_002 = f11(v.f002);
    QuadraticTerms {
        f11_200: f11(v.f200),
        f11_110,
        f11_020,
        f11_002,
        f12_200: f11_020.conj(),
        f12_110: f11_110.conj(),
        f12_002: f11_002.conj(),
        f13_101: f13(v.f101),
        f13_011: f13(v.f011),
    }
}

/// Solve the resolvent brackets and add the eigenfunction corrections.
pub fn h_components(
    lin: &Linearization,
    ed: &EigenData,
    v: &AppendixVectors,
    f: &QuadraticTerms,
    tol: &Tolerances,
) -> Result<HComponents> {
    let ops = Operators::new(lin, &ed.th);
    let lp = lin.p.l * core::f64::consts::PI;
    let sl = lp.sqrt();
    let mu = C64::new(0.0, ed.th.omega0 * ed.th.tau0);
    let zero = C64::from(0.0);
    let k2 = ops.k2_n2;
    let q = ed.q;
    let qb = conj(q);
    let p = ed.p_c();
    let phi1 = |th: f64| scale(q, (mu * th).exp());
    let phi1b = |th: f64| scale(qb, (-mu * th).exp());
    let lin_dm1 = ops.delta(zero, 0.0);

    let (x200, r0) = solve(&ops.delta(2.0 * mu, 0.0), v.f200, "h200 (2iω₀ on mode n₁)", tol)?;
    let (x110, r1) = solve(&lin_dm1, v.f110, "h110 (0 on mode n₁)", tol)?;
    let (x101, r2) = solve(&ops.delta(mu, k2), v.f101, "h101 (iω₀ on mode n₂)", tol)?;
    let (x011, r3) = solve(&ops.delta(-mu, k2), v.f011, "h011 (-iω₀ on mode n₂)", tol)?;
    let (x002, r4) = solve(&lin_dm1, v.f002, "h002 (0 on mode n₁)", tol)?;
    let (x002_2, r5) = solve(&ops.delta(zero, 4.0 * k2), v.f002, "h002 (0 on mode 2n₂)", tol)?;

    let eval = |g: &dyn Fn(f64) -> V2| HValue { at0: g(0.0), at_m1: g(-1.0) };
    let inv_mu = 1.0 / mu;

    let h200 = eval(&|th| {
        let res = scale(x200, (2.0 * mu * th).exp() / lp);
        let corr = add(scale(phi1(th), f.f11_200), scale(phi1b(th), f.f12_200 / 3.0));
        add(res, scale(corr, -inv_mu / sl))
    });
    let h110 = eval(&|th| {
        let corr = add(scale(phi1(th), f.f11_110), scale(phi1b(th), -f.f12_110));
        add(scale(x110, C64::from(1.0 / lp)), scale(corr, inv_mu / sl))
    });
    let h101 = eval(&|th| add(scale(x101, (mu * th).exp() / lp), scale(p, -inv_mu / sl * f.f13_101)));
    let h011 = eval(&|th| add(scale(x011, (-mu * th).exp() / lp), scale(p, inv_mu / sl * f.f13_011)));
    let h002_1 = |th: f64| {
        let corr = add(scale(phi1(th), f.f11_002), scale(phi1b(th), -f.f12_002));
        add(scale(x002, C64::from(1.0 / lp)), scale(corr, inv_mu / sl))
    };
    let h002_n1 = eval(&h002_1);
    let h002_n2 = eval(&|th| add(scale(x002_2, C64::from(0.5 / lp)), h002_1(th)));

    Ok(HComponents { h200, h110, h101, h011, h002_n1, h002_n2, solve_residuals: [r0, r1, r2, r3, r4, r5] })
}

/// Normal-form coefficients at the Turing-Hopf point.
pub fn nf_coeffs(lin: &Linearization, ed: &EigenData, v: &AppendixVectors, tol: &Tolerances) -> Result<NFCoeffs> {
    let ops = Operators::new(lin, &ed.th);
    let lp = lin.p.l * core::f64::consts::PI;
    let mu = C64::new(0.0, ed.th.omega0 * ed.th.tau0);
    let e = (-mu).exp();
    let k2 = ops.k2_n2;
    let (psi1, psi2) = (ed.psi1(), ed.psi2());
    let q = ed.q;
    let p = ed.p_c();

    let f = quadratic_terms(lin, ed, v);
    let h = h_components(lin, ed, v, &f, tol)?;

    let dtau_a = ops.l1 + ops.l2.scale(e);
    let f11_11 = 2.0 * dot(psi1, dtau_a.apply(q));
    let f11_21 = C64::from(0.0);
    let dtau_b = ops.l1 + ops.l2 - ops.dm * k2;
    let f13_12 = 2.0 * dot(psi2, dtau_b.apply(p));
    let f13_22 = 2.0 * dot(psi2, (M2::diag(ed.th.tau0, 0.0) * -k2).apply(p));

    let w = 1.5;
    let ode = 1.5 / mu;
    let (z1, z2) = (&v.fy_z1, &v.fy_z2);

    let g210 = dot(psi1, v.f210) / lp
        + ode * (-f.f11_110 * f.f11_200 + f.f11_110 * f.f12_110 + 2.0 / 3.0 * f.f11_020 * f.f12_200)
        + w * dot(psi1, add(s_yz(z1, &h.h110, false), s_yz(z1, &h.h200, true)));
    let g102 = dot(psi1, v.f102) / lp
        + ode * (-2.0 * f.f11_002 * f.f11_200 + f.f12_002 * f.f11_110 + 2.0 * f.f11_002 * f.f13_101)
        + w * dot(psi1, add(s_yz(z1, &h.h002_n1, false), s_yz(z2, &h.h101, false)));
    let g111 = dot(psi2, v.f111) / lp
        + ode * (-f.f13_101 * f.f11_110 + f.f13_011 * f.f12_110)
        + w * dot(psi2, add(add(s_yz(z1, &h.h011, false), s_yz(z1, &h.h101, true)), s_yz(z2, &h.h110, false)));
    let g003 = 1.5 * dot(psi2, v.f003) / lp
        + ode * (-f.f11_002 * f.f13_101 + f.f12_002 * f.f13_011)
        + w * dot(psi2, s_yz(z2, &h.h002_n2, false));

    let imag_residue = [f13_12, f13_22, g111, g003].iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag_residue > 1e-10 {
        return Err(Error::Invariant { what: "mode-n2 coefficients real", value: imag_residue });
    }

    Ok(NFCoeffs {
        f11_11,
        f11_21,
        g11_210: g210,
        g11_102: g102,
        f13_12: f13_12.re,
        f13_22: f13_22.re,
        g13_111: g111.re,
        g13_003: g003.re,
        imag_residue,
        quadratic: f,
        h,
    })
}
