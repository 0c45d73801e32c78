//! Numerical tolerances shared by every module.

/// Central record of numerical tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct Tolerances {
    /// Acceptable residual of a characteristic root or linear solve.
    pub residual: f64,
    /// Distance below which two roots are considered the same.
    pub dedupe: f64,
    /// Agreement required against published reference values.
    pub golden: f64,
    /// Normalizations of the eigenfunction pairs.
    pub normalization: f64,
    /// Radicands this close to zero put a point on a bifurcation boundary.
    pub radicand: f64,
    /// Distance (in angle) from a bifurcation line that counts as on it.
    pub on_line: f64,
    /// |vertex value| below which set membership is reported marginal.
    pub marginal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: 1e-10,
            dedupe: 1e-7,
            golden: 1e-6,
            normalization: 1e-8,
            radicand: 1e-14,
            on_line: 1e-12,
            marginal: 1e-9,
        }
    }
}
