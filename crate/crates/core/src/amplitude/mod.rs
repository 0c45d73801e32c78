//! The planar amplitude system `ρ' = ρ(ε₁ + ρ² + bη²)`, `η' = η(ε₂ + cρ² + d̂η²)`:
//! equilibria, bifurcation lines and region labels in the `(τ_ε, d_ε)` plane.
//!
//! The system is written in the rescaled time `t̃ = t/ε`. Everything here
//! reports forward-time behaviour of the original system, so the vector field
//! is multiplied by `ε` before stability is read off.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::normal_form::AmplitudeSystem;
use crate::{Error, Result, Tolerances};

/// Linear stability of an amplitude equilibrium in forward time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Stability {
    /// Both eigenvalues in the open left half-plane (node or focus).
    Stable,
    /// Both eigenvalues in the open right half-plane.
    Unstable,
    /// Real eigenvalues of opposite sign.
    Saddle,
    /// An eigenvalue with zero real part.
    Marginal,
}

impl Stability {
    fn reversed(self) -> Self {
        match self {
            Stability::Stable => Stability::Unstable,
            Stability::Unstable => Stability::Stable,
            s => s,
        }
    }
}

/// A point `(ρ, η)` with `ρ, η ≥ 0`; the mirror `(ρ, -η)` is implied.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AmpPoint {
    /// Hopf-mode amplitude.
    pub rho: f64,
    /// Turing-mode amplitude.
    pub eta: f64,
    /// Forward-time stability.
    pub stability: Stability,
}

/// Equilibria of the amplitude system at one unfolding point.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AmplitudeEquilibria {
    /// `ε₁`.
    pub eps1: f64,
    /// `ε₂`.
    pub eps2: f64,
    /// Origin.
    pub e1: AmpPoint,
    /// `(√(-ε₁), 0)`, the spatially homogeneous periodic solution.
    pub e2: Option<AmpPoint>,
    /// `(0, √(-ε₂/d̂))`, the Turing steady states.
    pub e3: Option<AmpPoint>,
    /// Mixed-mode equilibrium.
    pub e4: Option<AmpPoint>,
    /// Some radicand is within tolerance of zero.
    pub on_boundary: bool,
}

/// Existence and stability pattern of the four equilibria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Signature {
    /// Origin.
    pub e1: Stability,
    /// Semi-axis `η = 0`.
    pub e2: Option<Stability>,
    /// Semi-axis `ρ = 0`.
    pub e3: Option<Stability>,
    /// Interior.
    pub e4: Option<Stability>,
}

impl AmplitudeEquilibria {
    /// Stability pattern.
    pub fn signature(&self) -> Signature {
        Signature {
            e1: self.e1.stability,
            e2: self.e2.map(|p| p.stability),
            e3: self.e3.map(|p| p.stability),
            e4: self.e4.map(|p| p.stability),
        }
    }
}

/// Right-hand side in the rescaled time `t̃`.
pub fn vector_field(asys: &AmplitudeSystem, eps1: f64, eps2: f64, rho: f64, eta: f64) -> [f64; 2] {
    let (r2, e2) = (rho * rho, eta * eta);
    [rho * (eps1 + r2 + asys.b * e2), eta * (eps2 + asys.c * r2 + asys.d_hat * e2)]
}

fn stability(asys: &AmplitudeSystem, eps1: f64, eps2: f64, rho: f64, eta: f64, tol: &Tolerances) -> Stability {
    let (r2, e2) = (rho * rho, eta * eta);
    let s = asys.epsilon;
    let j11 = s * (eps1 + 3.0 * r2 + asys.b * e2);
    let j12 = s * 2.0 * asys.b * rho * eta;
    let j21 = s * 2.0 * asys.c * rho * eta;
    let j22 = s * (eps2 + asys.c * r2 + 3.0 * asys.d_hat * e2);
    let tr = j11 + j22;
    let det = j11 * j22 - j12 * j21;
    let disc = 0.25 * tr * tr - det;
    let (re_hi, re_lo) =
        if disc >= 0.0 { (0.5 * tr + disc.sqrt(), 0.5 * tr - disc.sqrt()) } else { (0.5 * tr, 0.5 * tr) };
    let scale = eps1.abs().max(eps2.abs());
    let zero = tol.marginal * scale;
    if re_hi.abs() <= zero || re_lo.abs() <= zero {
        Stability::Marginal
    } else if re_hi < 0.0 {
        Stability::Stable
    } else if re_lo > 0.0 {
        Stability::Unstable
    } else {
        Stability::Saddle
    }
}

/// Equilibria for given `(ε₁, ε₂)`.
pub fn equilibria_at(asys: &AmplitudeSystem, eps1: f64, eps2: f64, tol: &Tolerances) -> AmplitudeEquilibria {
    let mut on_boundary = false;
    let mut root = |rad: f64| {
        if rad.abs() <= tol.radicand {
            on_boundary = true;
            None
        } else {
            (rad > 0.0).then(|| rad.sqrt())
        }
    };
    let dbc = asys.d_hat_minus_bc;
    let e2 = root(-eps1).map(|rho| (rho, 0.0));
    let e3 = root(-eps2 / asys.d_hat).map(|eta| (0.0, eta));
    let rho4 = (asys.b * eps2 - asys.d_hat * eps1) / dbc;
    let eta4 = (asys.c * eps1 - eps2) / dbc;
    let e4 = match (root(rho4), root(eta4)) {
        (Some(r), Some(e)) => Some((r, e)),
        _ => None,
    };
    let pt = |(rho, eta): (f64, f64)| AmpPoint { rho, eta, stability: stability(asys, eps1, eps2, rho, eta, tol) };
    AmplitudeEquilibria { eps1, eps2, e1: pt((0.0, 0.0)), e2: e2.map(pt), e3: e3.map(pt), e4: e4.map(pt), on_boundary }
}

/// Equilibria at `(τ_ε, d_ε)`.
pub fn equilibria(asys: &AmplitudeSystem, tau_eps: f64, d_eps: f64, tol: &Tolerances) -> AmplitudeEquilibria {
    let (e1, e2) = asys.unfolding(tau_eps, d_eps);
    equilibria_at(asys, e1, e2, tol)
}

/// The four bifurcation lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LineName {
    /// `ε₁ = 0`: Hopf bifurcation of the origin.
    L1,
    /// `ε₂ = 0`: Turing bifurcation of the origin.
    L2,
    /// `bε₂ = d̂ε₁`: mixed mode born from the Turing states.
    T1,
    /// `ε₂ = cε₁`: mixed mode born from the periodic solution.
    T2,
}

/// A line through the origin of the `(τ_ε, d_ε)` plane, `w · (τ_ε, d_ε) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BifLine {
    /// Which line.
    pub name: LineName,
    /// Normal `w`.
    pub normal: [f64; 2],
    /// `d_ε = slope · τ_ε`; `None` for the vertical line `τ_ε = 0`.
    pub slope: Option<f64>,
}

/// Functionals on `(ε₁, ε₂)` whose kernels are L1, L2, T1, T2.
fn eps_functionals(asys: &AmplitudeSystem) -> [(LineName, [f64; 2]); 4] {
    [
        (LineName::L1, [1.0, 0.0]),
        (LineName::L2, [0.0, 1.0]),
        (LineName::T1, [-asys.d_hat, asys.b]),
        (LineName::T2, [-asys.c, 1.0]),
    ]
}

fn check_maps(asys: &AmplitudeSystem) -> Result<()> {
    let [a, b] = asys.eps1_map;
    let [c, d] = asys.eps2_map;
    let det = a * d - b * c;
    let scale = (a.abs() + b.abs()) * (c.abs() + d.abs());
    if !(det.abs() > 1e-14 * scale) {
        return Err(Error::Degenerate("epsilon maps are parallel"));
    }
    for (i, (_, u)) in eps_functionals(asys).iter().enumerate() {
        for (_, v) in eps_functionals(asys).iter().skip(i + 1) {
            let cross = u[0] * v[1] - u[1] * v[0];
            if cross.abs() <= 1e-12 * (u[0].hypot(u[1]) * v[0].hypot(v[1])) {
                return Err(Error::Degenerate("coincident bifurcation lines"));
            }
        }
    }
    Ok(())
}

/// L1, L2, T1 and T2 pulled back to the `(τ_ε, d_ε)` plane.
pub fn bifurcation_lines(asys: &AmplitudeSystem) -> Result<[BifLine; 4]> {
    check_maps(asys)?;
    let (m1, m2) = (asys.eps1_map, asys.eps2_map);
    Ok(eps_functionals(asys).map(|(name, w)| {
        let normal = [w[0] * m1[0] + w[1] * m2[0], w[0] * m1[1] + w[1] * m2[1]];
        let slope = (normal[1] != 0.0).then(|| -normal[0] / normal[1]);
        BifLine { name, normal, slope }
    }))
}

/// The twelve unfoldings of the amplitude system, by the signs of
/// `(d̂, b, c, d̂ - bc)`. The suffix `a` marks `d̂ - bc < 0` and `b` marks
/// `d̂ - bc > 0` wherever both signs are possible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[allow(missing_docs)]
pub enum UnfoldingCase {
    Ia,
    Ib,
    II,
    III,
    IVa,
    IVb,
    V,
    VIa,
    VIb,
    VIIa,
    VIIb,
    VIII,
}

/// Unfolding case of `asys`.
pub fn unfolding_case(asys: &AmplitudeSystem) -> UnfoldingCase {
    use UnfoldingCase::*;
    let neg = asys.d_hat_minus_bc < 0.0;
    let pick = |a, b| if neg { a } else { b };
    match (asys.d_hat > 0.0, asys.b > 0.0, asys.c > 0.0) {
        (true, true, true) => pick(Ia, Ib),
        (true, true, false) => II,
        (true, false, true) => III,
        (true, false, false) => pick(IVa, IVb),
        (false, true, true) => V,
        (false, true, false) => pick(VIa, VIb),
        (false, false, true) => pick(VIIa, VIIb),
        (false, false, false) => VIII,
    }
}

/// Open regions of Case Ia.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[allow(missing_docs)]
pub enum Region {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
}

impl Region {
    /// All regions.
    pub const ALL: [Region; 6] = [Region::D1, Region::D2, Region::D3, Region::D4, Region::D5, Region::D6];

    /// Forward-time signature of the region when `ε = -1`.
    pub fn signature(self) -> Signature {
        use Stability::*;
        let (e1, e2, e3, e4) = match self {
            Region::D1 => (Stable, None, None, None),
            Region::D2 => (Saddle, Some(Stable), None, None),
            Region::D3 => (Unstable, Some(Stable), Some(Saddle), None),
            Region::D4 => (Unstable, Some(Stable), Some(Stable), Some(Saddle)),
            Region::D5 => (Unstable, Some(Saddle), Some(Stable), None),
            Region::D6 => (Saddle, None, Some(Stable), None),
        };
        Signature { e1, e2, e3, e4 }
    }

    /// Short description of the expected PDE behaviour.
    pub fn description(self) -> &'static str {
        match self {
            Region::D1 => "stable homogeneous steady state",
            Region::D2 => "stable spatially homogeneous periodic solution",
            Region::D3 => "stable homogeneous periodic solution, unstable Turing steady states",
            Region::D4 => "bistable homogeneous periodic solution and Turing steady states",
            Region::D5 => "stable spatially inhomogeneous steady states",
            Region::D6 => "stable spatially inhomogeneous steady states, no periodic solution",
        }
    }
}

/// Result of [`classify_region`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RegionLabel {
    /// Inside a named region.
    Region(Region),
    /// On a bifurcation line.
    Boundary(LineName),
    /// `(τ_ε, d_ε) = (0, 0)`.
    Origin,
    /// Inside a sector of an unfolding without named regions.
    Unlabeled(Signature),
}

fn canonical(sig: Signature, epsilon: f64) -> Signature {
    if epsilon < 0.0 {
        return sig;
    }
    Signature {
        e1: sig.e1.reversed(),
        e2: sig.e2.map(Stability::reversed),
        e3: sig.e3.map(Stability::reversed),
        e4: sig.e4.map(Stability::reversed),
    }
}

/// Named region with this forward-time signature, for Case Ia.
pub fn region_for_signature(asys: &AmplitudeSystem, sig: Signature) -> Option<Region> {
    if unfolding_case(asys) != UnfoldingCase::Ia {
        return None;
    }
    let sig = canonical(sig, asys.epsilon);
    Region::ALL.into_iter().find(|r| r.signature() == sig)
}

fn signature_at_angle(asys: &AmplitudeSystem, phi: f64, tol: &Tolerances) -> Signature {
    equilibria_at(asys, phi.cos(), phi.sin(), tol).signature()
}

/// One boundary ray of the sector decomposition, by angle in the `(ε₁, ε₂)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Ray {
    angle: f64,
    line: LineName,
}

/// Half-lines across which the equilibrium signature changes, sorted by angle.
fn boundary_rays(asys: &AmplitudeSystem, tol: &Tolerances) -> Vec<Ray> {
    let mut cand: Vec<Ray> = Vec::with_capacity(8);
    for (line, w) in eps_functionals(asys) {
        let a = (-w[0]).atan2(w[1]);
        for angle in [a, a + PI] {
            cand.push(Ray { angle: angle.rem_euclid_2pi(), line });
        }
    }
    cand.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    let n = cand.len();
    let gap = (0..n)
        .map(|i| {
            let next = if i + 1 < n { cand[i + 1].angle } else { cand[0].angle + 2.0 * PI };
            next - cand[i].angle
        })
        .fold(f64::INFINITY, f64::min);
    let delta = 0.25 * gap;
    cand.into_iter()
        .filter(|r| signature_at_angle(asys, r.angle - delta, tol) != signature_at_angle(asys, r.angle + delta, tol))
        .collect()
}

trait Wrap {
    fn rem_euclid_2pi(self) -> f64;
}

impl Wrap for f64 {
    fn rem_euclid_2pi(self) -> f64 {
        let t = 2.0 * PI;
        let r = self - t * (self / t).floor();
        if r >= t {
            0.0
        } else {
            r
        }
    }
}

/// Region of `(τ_ε, d_ε)`.
pub fn classify_region(asys: &AmplitudeSystem, tau_eps: f64, d_eps: f64, tol: &Tolerances) -> Result<RegionLabel> {
    check_maps(asys)?;
    let (e1, e2) = asys.unfolding(tau_eps, d_eps);
    if tau_eps == 0.0 && d_eps == 0.0 {
        return Ok(RegionLabel::Origin);
    }
    let rays = boundary_rays(asys, tol);
    let norm = e1.hypot(e2);
    for (line, w) in eps_functionals(asys) {
        let dist = (w[0] * e1 + w[1] * e2).abs() / (w[0].hypot(w[1]) * norm);
        if dist <= tol.on_line {
            let phi = e2.atan2(e1).rem_euclid_2pi();
            let on_ray = rays.iter().any(|r| r.line == line && angle_diff(r.angle, phi) < 0.5 * PI);
            if on_ray {
                return Ok(RegionLabel::Boundary(line));
            }
        }
    }
    let phi = e2.atan2(e1).rem_euclid_2pi();
    let sig = if rays.is_empty() {
        signature_at_angle(asys, phi, tol)
    } else {
        let n = rays.len();
        let i = rays.iter().rposition(|r| r.angle <= phi).unwrap_or(n - 1);
        let lo = rays[i].angle;
        let hi = if i + 1 < n { rays[i + 1].angle } else { rays[0].angle + 2.0 * PI };
        let hi = if hi <= lo { hi + 2.0 * PI } else { hi };
        signature_at_angle(asys, 0.5 * (lo + hi), tol)
    };
    Ok(match region_for_signature(asys, sig) {
        Some(r) => RegionLabel::Region(r),
        None => RegionLabel::Unlabeled(sig),
    })
}

fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid_2pi();
    d.min(2.0 * PI - d)
}

/// Sampled amplitude trajectory.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Trajectory {
    /// Sample times.
    pub t: Vec<f64>,
    /// `ρ(t)`.
    pub rho: Vec<f64>,
    /// `η(t)`.
    pub eta: Vec<f64>,
    /// Time at which `‖(ρ, η)‖` exceeded `1e6`, if it did.
    pub diverged_at: Option<f64>,
}

impl Trajectory {
    /// Last state.
    pub fn last(&self) -> (f64, f64) {
        (*self.rho.last().unwrap_or(&0.0), *self.eta.last().unwrap_or(&0.0))
    }
}

const BLOW_UP: f64 = 1e6;

/// Classical RK4 in forward original time, from `(ρ₀, η₀)` over `[0, horizon]`.
pub fn integrate(
    asys: &AmplitudeSystem,
    tau_eps: f64,
    d_eps: f64,
    initial: (f64, f64),
    horizon: f64,
    dt: f64,
) -> Result<Trajectory> {
    if !(initial.0 >= 0.0) {
        return Err(Error::domain("rho0", initial.0, "need rho0 >= 0"));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::domain("dt", dt, "need dt > 0"));
    }
    if !(horizon >= 0.0 && horizon.is_finite()) {
        return Err(Error::domain("horizon", horizon, "need horizon >= 0"));
    }
    let (e1, e2) = asys.unfolding(tau_eps, d_eps);
    let s = asys.epsilon;
    let f = |x: [f64; 2]| {
        let v = vector_field(asys, e1, e2, x[0], x[1]);
        [s * v[0], s * v[1]]
    };
    let steps = (horizon / dt).ceil() as usize;
    let mut tr = Trajectory {
        t: Vec::with_capacity(steps + 1),
        rho: Vec::with_capacity(steps + 1),
        eta: Vec::with_capacity(steps + 1),
        diverged_at: None,
    };
    let mut x = [initial.0, initial.1];
    tr.t.push(0.0);
    tr.rho.push(x[0]);
    tr.eta.push(x[1]);
    for k in 1..=steps {
        let k1 = f(x);
        let k2 = f([x[0] + 0.5 * dt * k1[0], x[1] + 0.5 * dt * k1[1]]);
        let k3 = f([x[0] + 0.5 * dt * k2[0], x[1] + 0.5 * dt * k2[1]]);
        let k4 = f([x[0] + dt * k3[0], x[1] + dt * k3[1]]);
        for i in 0..2 {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t = k as f64 * dt;
        tr.t.push(t);
        tr.rho.push(x[0]);
        tr.eta.push(x[1]);
        if !(x[0].hypot(x[1]) <= BLOW_UP) {
            tr.diverged_at = Some(t);
            break;
        }
    }
    Ok(tr)
}

#[cfg(test)]
mod tests;
