use std::fs;
use std::path::{Path, PathBuf};

use mussel_th_core::pde::{InitialCondition, SimConfig};
use mussel_th_core::{ModelParams, Tolerances};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Bundled parameter set (A).
pub const SET_A: &str = include_str!("../configs/set_a.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelParams,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub hopf: HopfBlock,
    #[serde(default)]
    pub turing: TuringBlock,
    #[serde(default)]
    pub classify: Offsets,
    #[serde(default)]
    pub sweep: SweepBlock,
    #[serde(default)]
    pub simulate: SimulateBlock,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HopfBlock {
    pub j_max: u32,
    pub n_max: u32,
}

impl Default for HopfBlock {
    fn default() -> Self {
        Self { j_max: 3, n_max: 10 }
    }
}

/// Grid over `α` for the Turing threshold curve; `r` and `l` come from the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TuringBlock {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
}

impl Default for TuringBlock {
    fn default() -> Self {
        Self { alpha_min: 0.05, alpha_max: 0.9, alpha_steps: 86 }
    }
}

/// Offsets `(τ_ε, d_ε)` from the Turing-Hopf point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct Offsets {
    pub tau_eps: f64,
    pub d_eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepBlock {
    pub tau_min: f64,
    pub tau_max: f64,
    pub tau_steps: usize,
    pub d_min: f64,
    pub d_max: f64,
    pub d_steps: usize,
}

impl Default for SweepBlock {
    fn default() -> Self {
        Self { tau_min: -0.5, tau_max: 0.5, tau_steps: 41, d_min: -0.002, d_max: 0.01, d_steps: 49 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateBlock {
    pub tau_eps: f64,
    pub d_eps: f64,
    pub sim: SimConfig,
    pub initial: InitialCondition,
}

fn invalid(path: &str, msg: impl Into<String>) -> CliError {
    CliError::Config(format!("{path}: {}", msg.into()))
}

fn finite(path: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(path, "must be finite"))
    }
}

fn range(path: &str, lo: f64, hi: f64, steps: usize) -> Result<(), CliError> {
    finite(&format!("{path}_min"), lo)?;
    finite(&format!("{path}_max"), hi)?;
    if lo >= hi {
        return Err(invalid(&format!("{path}_max"), "must exceed the minimum"));
    }
    if steps < 2 {
        return Err(invalid(&format!("{path}_steps"), "need at least 2 points"));
    }
    Ok(())
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

impl RunConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de)
            .map_err(|e| CliError::Config(format!("{origin}: {}: {}", e.path(), e.inner())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Self::parse(SET_A, "bundled set_a.json"),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                Self::parse(&text, &p.display().to_string())
            }
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.model.validate().map_err(|e| invalid("model", e.to_string()))?;
        let t = &self.turing;
        range("turing.alpha", t.alpha_min, t.alpha_max, t.alpha_steps)?;
        if t.alpha_min <= 0.0 || t.alpha_max >= 1.0 {
            return Err(invalid("turing", "alpha grid must lie in (0, 1)"));
        }
        let s = &self.sweep;
        range("sweep.tau", s.tau_min, s.tau_max, s.tau_steps)?;
        range("sweep.d", s.d_min, s.d_max, s.d_steps)?;
        finite("classify.tau_eps", self.classify.tau_eps)?;
        finite("classify.d_eps", self.classify.d_eps)?;
        let sim = &self.simulate;
        finite("simulate.tau_eps", sim.tau_eps)?;
        finite("simulate.d_eps", sim.d_eps)?;
        if sim.sim.grid_points < 2 {
            return Err(invalid("simulate.sim.grid_points", "need at least 2"));
        }
        if !(sim.sim.horizon > 0.0 && sim.sim.horizon.is_finite()) {
            return Err(invalid("simulate.sim.horizon", "must be positive and finite"));
        }
        if !(sim.sim.stability_factor > 0.0 && sim.sim.stability_factor.is_finite()) {
            return Err(invalid("simulate.sim.stability_factor", "must be positive"));
        }
        if !(0.0..1.0).contains(&sim.sim.transient_fraction) {
            return Err(invalid("simulate.sim.transient_fraction", "must lie in [0, 1)"));
        }
        for (name, v) in [
            ("spatial_tol", sim.sim.spatial_tol),
            ("temporal_tol", sim.sim.temporal_tol),
            ("drift_tol", sim.sim.drift_tol),
        ] {
            if v.is_nan() || v <= 0.0 {
                return Err(invalid(&format!("simulate.sim.{name}"), "must be positive"));
            }
        }
        if sim.sim.snapshot_stride == Some(0) {
            return Err(invalid("simulate.sim.snapshot_stride", "must be at least 1"));
        }
        let ic = &sim.initial;
        for (name, v) in [
            ("c0_m", ic.c0_m),
            ("c1_m", ic.c1_m),
            ("k_m", ic.k_m),
            ("c0_a", ic.c0_a),
            ("c1_a", ic.c1_a),
            ("k_a", ic.k_a),
        ] {
            finite(&format!("simulate.initial.{name}"), v)?;
        }
        Ok(())
    }
}
