//! Method-of-lines solver for the delayed reaction-diffusion system on
//! `(0, lπ)` with Neumann boundaries, and classification of the asymptotic
//! pattern.
//!
//! Space: `N + 1` nodes `x_i = i h`, `h = lπ/N`, central differences with
//! mirror ghost nodes. Time: classical RK4 with `dt = τ/K`, delayed values
//! read from a ring buffer of the last `K + 1` steps; half-step stages use
//! the average of the two neighbouring buffered steps. The history on
//! `[-τ, 0]` is the initial profile held constant.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::model::{positive_equilibrium, Equilibrium};
use crate::{Error, ModelParams, Result};

mod classify;

pub use classify::{attractor_patterns, classify_pattern, Pattern, PatternClass};

/// Solver and classifier settings.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SimConfig {
    /// Number of grid intervals `N`.
    pub grid_points: usize,
    /// Final model time.
    pub horizon: f64,
    /// Steps between stored snapshots; `None` stores about 4000 snapshots.
    pub snapshot_stride: Option<usize>,
    /// Leading fraction of the run ignored by the classifier.
    pub transient_fraction: f64,
    /// Threshold on the time-averaged spatial range of `m`, relative to `m*`.
    pub spatial_tol: f64,
    /// Threshold on the oscillation amplitude of the mean of `m`, relative to `m*`.
    pub temporal_tol: f64,
    /// Relative change between the halves of the classification window
    /// above which the run counts as still trending.
    pub drift_tol: f64,
    /// Minimum classification window in model time.
    pub min_window: f64,
    /// `dt ≤ stability_factor · h² / (2 max(d, 1/γ))`.
    pub stability_factor: f64,
    /// Stop with an error on the first positivity or bound violation.
    pub abort_on_violation: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            grid_points: 256,
            horizon: 3000.0,
            snapshot_stride: None,
            transient_fraction: 0.5,
            spatial_tol: 1e-3,
            temporal_tol: 1e-3,
            drift_tol: 0.1,
            min_window: 0.0,
            stability_factor: 0.8,
            abort_on_violation: true,
        }
    }
}

/// Time step `dt = τ/K` and `K`; for `τ = 0` the bound itself and `K = 0`.
pub fn time_step(p: &ModelParams, cfg: &SimConfig) -> Result<(f64, usize)> {
    if cfg.grid_points < 2 {
        return Err(Error::domain("grid_points", cfg.grid_points as f64, "need at least 2 intervals"));
    }
    if !(cfg.stability_factor > 0.0) {
        return Err(Error::domain("stability_factor", cfg.stability_factor, "need > 0"));
    }
    let h = p.l * PI / cfg.grid_points as f64;
    let bound = cfg.stability_factor * h * h / (2.0 * p.d.max(1.0 / p.gamma));
    if p.tau == 0.0 {
        return Ok((bound, 0));
    }
    let k = (p.tau / bound).ceil().max(1.0);
    Ok((p.tau / k, k as usize))
}

/// `m₀ = m* + c0_m + c1_m cos(k_m x/l)`, `a₀ = a* + c0_a + c1_a cos(k_a x/l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
#[allow(missing_docs)]
pub struct InitialCondition {
    pub c0_m: f64,
    pub c1_m: f64,
    pub k_m: f64,
    pub c0_a: f64,
    pub c1_a: f64,
    pub k_a: f64,
}

impl Default for InitialCondition {
    fn default() -> Self {
        Self { c0_m: 0.0, c1_m: 0.0, k_m: 6.0, c0_a: 0.0, c1_a: 0.0, k_a: 6.0 }
    }
}

impl InitialCondition {
    /// `(m* + c0_m + c1_m cos(k x/l), a* + c0_a + c1_a cos(k x/l))`.
    pub fn cosine(c0_m: f64, c1_m: f64, c0_a: f64, c1_a: f64, k: f64) -> Self {
        Self { c0_m, c1_m, k_m: k, c0_a, c1_a, k_a: k }
    }

    /// Sampled profiles on `x`.
    pub fn profiles(&self, eq: &Equilibrium, l: f64, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let m = x.iter().map(|&x| eq.m_star + self.c0_m + self.c1_m * (self.k_m * x / l).cos()).collect();
        let a = x.iter().map(|&x| eq.a_star + self.c0_a + self.c1_a * (self.k_a * x / l).cos()).collect();
        (m, a)
    }
}

/// Running extrema collected during a run.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Monitors {
    /// Smallest `m` seen.
    pub min_m: f64,
    /// Smallest `a` seen.
    pub min_a: f64,
    /// Largest `a` seen.
    pub max_a: f64,
    /// `max(sup a₀, 1)`.
    pub a_bound: f64,
    /// Largest `‖(m, a) - E*‖∞` seen.
    pub max_deviation: f64,
}

/// Snapshots of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldTrajectory {
    /// Parameters of the run.
    pub params: ModelParams,
    /// Equilibrium.
    pub eq: Equilibrium,
    /// Grid nodes.
    pub x: Vec<f64>,
    /// Time step.
    pub dt: f64,
    /// Steps per delay.
    pub delay_steps: usize,
    /// Snapshot times.
    pub times: Vec<f64>,
    /// `m` at each snapshot.
    pub m: Vec<Vec<f64>>,
    /// `a` at each snapshot.
    pub a: Vec<Vec<f64>>,
    /// `‖(m, a) - E*‖∞` at each snapshot.
    pub deviation: Vec<f64>,
    /// Extrema over every step.
    pub monitors: Monitors,
    /// First violation, when the run continued past it.
    pub violation: Option<(f64, &'static str)>,
}

/// Worst-case violations of positivity and of the `a` bound.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WellposednessReport {
    /// `max(0, -min m)`.
    pub negative_m: f64,
    /// `max(0, -min a)`.
    pub negative_a: f64,
    /// `max(0, max a - max(sup a₀, 1))`.
    pub a_excess: f64,
    /// Any of the above beyond `1e-9`, or a non-finite value.
    pub violated: bool,
}

const POSITIVITY_TOL: f64 = 1e-9;
const BOUND_TOL: f64 = 1e-6;

/// Report the worst violations recorded in `tr`.
pub fn monitor_wellposedness(tr: &FieldTrajectory) -> WellposednessReport {
    let mo = &tr.monitors;
    let negative_m = (-mo.min_m).max(0.0);
    let negative_a = (-mo.min_a).max(0.0);
    let a_excess = (mo.max_a - mo.a_bound).max(0.0);
    let finite = mo.min_m.is_finite() && mo.min_a.is_finite() && mo.max_a.is_finite();
    WellposednessReport {
        negative_m,
        negative_a,
        a_excess,
        violated: !finite
            || negative_m > POSITIVITY_TOL
            || negative_a > POSITIVITY_TOL
            || a_excess > BOUND_TOL
            || tr.violation.is_some(),
    }
}

struct Rhs<'a> {
    p: &'a ModelParams,
    inv_h2: f64,
}

impl Rhs<'_> {
    fn eval(&self, m: &[f64], a: &[f64], md: &[f64], ad: &[f64], fm: &mut [f64], fa: &mut [f64]) {
        let n = m.len() - 1;
        let p = self.p;
        let ig = 1.0 / p.gamma;
        for i in 0..=n {
            let (il, ir) = (if i == 0 { 1 } else { i - 1 }, if i == n { n - 1 } else { i + 1 });
            let lm = (m[il] - 2.0 * m[i] + m[ir]) * self.inv_h2;
            let la = (a[il] - 2.0 * a[i] + a[ir]) * self.inv_h2;
            fm[i] = p.d * lm + m[i] * (p.r * ad[i] - 1.0 / (1.0 + md[i]));
            fa[i] = ig * (la + p.alpha * (1.0 - a[i]) - m[i] * a[i]);
        }
    }
}

/// Ring buffer of the last `K + 1` steps, flat storage.
struct History {
    n: usize,
    len: usize,
    m: Vec<f64>,
    a: Vec<f64>,
}

impl History {
    fn new(m0: &[f64], a0: &[f64], len: usize) -> Self {
        let n = m0.len();
        let mut m = Vec::with_capacity(n * len);
        let mut a = Vec::with_capacity(n * len);
        for _ in 0..len {
            m.extend_from_slice(m0);
            a.extend_from_slice(a0);
        }
        Self { n, len, m, a }
    }

    fn slot(&self, step: usize) -> core::ops::Range<usize> {
        let s = step % self.len;
        s * self.n..(s + 1) * self.n
    }

    fn get(&self, step: usize) -> (&[f64], &[f64]) {
        let r = self.slot(step);
        (&self.m[r.clone()], &self.a[r])
    }

    fn put(&mut self, step: usize, m: &[f64], a: &[f64]) {
        let r = self.slot(step);
        self.m[r.clone()].copy_from_slice(m);
        self.a[r].copy_from_slice(a);
    }
}

fn check_state(m: &[f64], a: &[f64], a_bound: f64) -> Option<&'static str> {
    for (&mi, &ai) in m.iter().zip(a) {
        if !(mi.is_finite() && ai.is_finite()) {
            return Some("non-finite value");
        }
        if mi < -POSITIVITY_TOL || ai < -POSITIVITY_TOL {
            return Some("positivity violated");
        }
        if ai > a_bound + BOUND_TOL {
            return Some("a exceeds max(sup a0, 1)");
        }
    }
    None
}

/// Integrate from the constant history `ic` up to `cfg.horizon`.
pub fn simulate(p: &ModelParams, ic: &InitialCondition, cfg: &SimConfig) -> Result<FieldTrajectory> {
    p.validate()?;
    let eq = positive_equilibrium(p)?;
    if !(cfg.horizon >= 0.0 && cfg.horizon.is_finite()) {
        return Err(Error::domain("horizon", cfg.horizon, "need a finite horizon >= 0"));
    }
    let (dt, k) = time_step(p, cfg)?;
    let n = cfg.grid_points;
    let h = p.l * PI / n as f64;
    let x: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
    let (mut m, mut a) = ic.profiles(&eq, p.l, &x);
    if m.iter().chain(&a).any(|v| !(*v >= 0.0)) {
        return Err(Error::domain(
            "initial condition",
            m.iter().chain(&a).copied().fold(f64::INFINITY, f64::min),
            "profiles must be nonnegative",
        ));
    }
    let a_bound = a.iter().copied().fold(1.0, f64::max);
    let steps = (cfg.horizon / dt).round() as usize;
    let stride = cfg.snapshot_stride.unwrap_or_else(|| steps.div_ceil(4000).max(1)).max(1);

    let rhs = Rhs { p, inv_h2: 1.0 / (h * h) };
    let mut hist = History::new(&m, &a, k + 1);
    let np = n + 1;
    let mut k_m = [vec![0.0; np], vec![0.0; np], vec![0.0; np], vec![0.0; np]];
    let mut k_a = [vec![0.0; np], vec![0.0; np], vec![0.0; np], vec![0.0; np]];
    let (mut sm, mut sa) = (vec![0.0; np], vec![0.0; np]);
    let (mut mdh, mut adh) = (vec![0.0; np], vec![0.0; np]);

    let deviation = |m: &[f64], a: &[f64]| {
        m.iter().zip(a).map(|(mi, ai)| (mi - eq.m_star).abs().max((ai - eq.a_star).abs())).fold(0.0, f64::max)
    };
    let mut tr = FieldTrajectory {
        params: *p,
        eq,
        x: x.clone(),
        dt,
        delay_steps: k,
        times: vec![0.0],
        m: vec![m.clone()],
        a: vec![a.clone()],
        deviation: vec![deviation(&m, &a)],
        monitors: Monitors {
            min_m: m.iter().copied().fold(f64::INFINITY, f64::min),
            min_a: a.iter().copied().fold(f64::INFINITY, f64::min),
            max_a: a.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            a_bound,
            max_deviation: deviation(&m, &a),
        },
        violation: None,
    };

    for step in 0..steps {
        // Step `s` is stored at slot `s mod (K+1)`; the delayed states for
        // this step are steps `step - K` and `step + 1 - K`.
        if k > 0 {
            let (m0, a0) = hist.get(step + 1);
            let (m1, a1) = hist.get(step + 2);
            for i in 0..np {
                mdh[i] = 0.5 * (m0[i] + m1[i]);
                adh[i] = 0.5 * (a0[i] + a1[i]);
            }
        }
        let [k1m, k2m, k3m, k4m] = &mut k_m;
        let [k1a, k2a, k3a, k4a] = &mut k_a;
        if k > 0 {
            let (md0, ad0) = hist.get(step + 1);
            rhs.eval(&m, &a, md0, ad0, k1m, k1a);
        } else {
            rhs.eval(&m, &a, &m, &a, k1m, k1a);
        }
        for i in 0..np {
            sm[i] = m[i] + 0.5 * dt * k1m[i];
            sa[i] = a[i] + 0.5 * dt * k1a[i];
        }
        if k > 0 {
            rhs.eval(&sm, &sa, &mdh, &adh, k2m, k2a);
        } else {
            rhs.eval(&sm, &sa, &sm, &sa, k2m, k2a);
        }
        for i in 0..np {
            sm[i] = m[i] + 0.5 * dt * k2m[i];
            sa[i] = a[i] + 0.5 * dt * k2a[i];
        }
        if k > 0 {
            rhs.eval(&sm, &sa, &mdh, &adh, k3m, k3a);
        } else {
            rhs.eval(&sm, &sa, &sm, &sa, k3m, k3a);
        }
        for i in 0..np {
            sm[i] = m[i] + dt * k3m[i];
            sa[i] = a[i] + dt * k3a[i];
        }
        if k > 0 {
            let (md1, ad1) = hist.get(step + 2);
            rhs.eval(&sm, &sa, md1, ad1, k4m, k4a);
        } else {
            rhs.eval(&sm, &sa, &sm, &sa, k4m, k4a);
        }
        for i in 0..np {
            m[i] += dt / 6.0 * (k1m[i] + 2.0 * k2m[i] + 2.0 * k3m[i] + k4m[i]);
            a[i] += dt / 6.0 * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i]);
        }
        if k > 0 {
            hist.put(step + 1, &m, &a);
        }

        let t = (step + 1) as f64 * dt;
        let mo = &mut tr.monitors;
        for i in 0..np {
            mo.min_m = mo.min_m.min(m[i]);
            mo.min_a = mo.min_a.min(a[i]);
            mo.max_a = mo.max_a.max(a[i]);
        }
        if let Some(reason) = check_state(&m, &a, a_bound) {
            if cfg.abort_on_violation {
                return Err(Error::SimulationAborted { time: t, reason });
            }
            if tr.violation.is_none() {
                tr.violation = Some((t, reason));
            }
            if reason == "non-finite value" {
                break;
            }
        }
        if (step + 1) % stride == 0 || step + 1 == steps {
            let dev = deviation(&m, &a);
            tr.monitors.max_deviation = tr.monitors.max_deviation.max(dev);
            tr.times.push(t);
            tr.m.push(m.clone());
            tr.a.push(a.clone());
            tr.deviation.push(dev);
        }
    }
    Ok(tr)
}

#[cfg(test)]
mod tests;
