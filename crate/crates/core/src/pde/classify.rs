use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{FieldTrajectory, SimConfig};
use crate::amplitude::{AmplitudeEquilibria, Stability};

/// Qualitative asymptotic state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[allow(missing_docs)]
pub enum Pattern {
    HomogeneousSteady,
    HomogeneousPeriodic,
    InhomogeneousSteady,
    InhomogeneousPeriodic,
    /// Window too short or the measures still drifting.
    Undetermined,
}

/// Classifier output with the measures it was decided on.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PatternClass {
    /// Decided class.
    pub pattern: Pattern,
    /// Largest cosine mode `n` of the time-averaged profile of `m`
    /// (`cos(n x/l)`); 0 when the profile is flat to `spatial_tol`.
    pub dominant_mode: u32,
    /// Half the range of the spatial mean of `m` over the window, over `m*`.
    pub oscillation_amplitude: f64,
    /// Time average of `(max_x m - min_x m) / m*` over the window.
    pub spatial_range: f64,
    /// Mean spacing of upward crossings of the spatial mean, if periodic.
    pub period: Option<f64>,
    /// Relative change of the two measures between the window halves.
    pub drift: [f64; 2],
    /// Start of the classification window.
    pub window_start: f64,
}

fn spatial_mean(u: &[f64]) -> f64 {
    let n = u.len() - 1;
    let inner: f64 = u[1..n].iter().sum();
    (inner + 0.5 * (u[0] + u[n])) / n as f64
}

struct Measures {
    range: f64,
    amp: f64,
}

fn measures(m: &[Vec<f64>], m_star: f64) -> Measures {
    let mut range = 0.0;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for u in m {
        let (a, b) = u.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        range += b - a;
        let mu = spatial_mean(u);
        lo = lo.min(mu);
        hi = hi.max(mu);
    }
    Measures { range: range / m.len() as f64 / m_star, amp: 0.5 * (hi - lo) / m_star }
}

fn rel_change(a: f64, b: f64, floor: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s <= floor {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// Cosine coefficients `c_n = (2/lπ) ∫ (p - p̄) cos(n x/l) dx`, `n = 1..=n_max`.
fn cosine_coefficients(profile: &[f64], x: &[f64], l: f64, n_max: usize) -> Vec<f64> {
    let mean = spatial_mean(profile);
    (1..=n_max)
        .map(|n| {
            let w: Vec<f64> = profile.iter().zip(x).map(|(p, x)| (p - mean) * (n as f64 * x / l).cos()).collect();
            2.0 * spatial_mean(&w)
        })
        .collect()
}

fn period(times: &[f64], series: &[f64]) -> Option<f64> {
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    let mut ups = Vec::new();
    for i in 1..series.len() {
        let (a, b) = (series[i - 1] - mean, series[i] - mean);
        if a < 0.0 && b >= 0.0 {
            ups.push(times[i - 1] + (times[i] - times[i - 1]) * (-a) / (b - a));
        }
    }
    if ups.len() < 3 {
        return None;
    }
    Some((ups[ups.len() - 1] - ups[0]) / (ups.len() - 1) as f64)
}

/// Classify the trailing window `t ≥ transient_fraction · t_end` of `tr`.
pub fn classify_pattern(tr: &FieldTrajectory, cfg: &SimConfig) -> PatternClass {
    let t_end = tr.times.last().copied().unwrap_or(0.0);
    let t0 = cfg.transient_fraction.clamp(0.0, 1.0) * t_end;
    let start = tr.times.partition_point(|t| *t < t0);
    let window = &tr.m[start..];
    let times = &tr.times[start..];
    let m_star = tr.eq.m_star;
    let mut out = PatternClass {
        pattern: Pattern::Undetermined,
        dominant_mode: 0,
        oscillation_amplitude: f64::NAN,
        spatial_range: f64::NAN,
        period: None,
        drift: [f64::NAN; 2],
        window_start: t0,
    };
    if window.len() < 4 || t_end - t0 < cfg.min_window {
        return out;
    }

    let all = measures(window, m_star);
    let half = window.len() / 2;
    let (a, b) = (measures(&window[..half], m_star), measures(&window[half..], m_star));
    out.spatial_range = all.range;
    out.oscillation_amplitude = all.amp;
    out.drift = [rel_change(a.range, b.range, cfg.spatial_tol), rel_change(a.amp, b.amp, cfg.temporal_tol)];

    let np = tr.x.len();
    let mut profile = alloc::vec![0.0; np];
    for u in window {
        for (p, v) in profile.iter_mut().zip(u) {
            *p += v;
        }
    }
    profile.iter_mut().for_each(|p| *p /= window.len() as f64);
    let coeffs = cosine_coefficients(&profile, &tr.x, tr.params.l, (np - 1) / 2);
    let (best, c) =
        coeffs.iter().enumerate().fold((0, 0.0), |(bi, bc), (i, c)| if c.abs() > bc { (i, c.abs()) } else { (bi, bc) });
    if c / m_star > cfg.spatial_tol {
        out.dominant_mode = best as u32 + 1;
    }

    let spatial = all.range > cfg.spatial_tol;
    let temporal = all.amp > cfg.temporal_tol;
    if temporal {
        let series: Vec<f64> = window.iter().map(|u| spatial_mean(u)).collect();
        out.period = period(times, &series);
    }
    if out.drift[0] > cfg.drift_tol || out.drift[1] > cfg.drift_tol {
        return out;
    }
    out.pattern = match (spatial, temporal) {
        (false, false) => Pattern::HomogeneousSteady,
        (false, true) => Pattern::HomogeneousPeriodic,
        (true, false) => Pattern::InhomogeneousSteady,
        (true, true) => Pattern::InhomogeneousPeriodic,
    };
    out
}

/// Patterns the stable equilibria of the amplitude system stand for:
/// `E1` the constant state, `E2` the homogeneous periodic solution, `E3` the
/// Turing states and `E4` the mixed-mode periodic solutions.
pub fn attractor_patterns(eq: &AmplitudeEquilibria) -> Vec<Pattern> {
    [
        (Some(eq.e1), Pattern::HomogeneousSteady),
        (eq.e2, Pattern::HomogeneousPeriodic),
        (eq.e3, Pattern::InhomogeneousSteady),
        (eq.e4, Pattern::InhomogeneousPeriodic),
    ]
    .into_iter()
    .filter(|(p, _)| p.is_some_and(|p| p.stability == Stability::Stable))
    .map(|(_, pat)| pat)
    .collect()
}
