use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Coarse error category, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input outside the admissible domain.
    Validation,
    /// (H1) or (H2) does not hold.
    Hypothesis,
    /// A numerical step failed or an invariant check tripped.
    Numerical,
}

/// Errors raised by the analysis and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("invalid {name} = {value}: {reason}")]
    Domain {
        /// Parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
        /// What was expected.
        reason: &'static str,
    },
    /// A model hypothesis gate failed.
    #[error("hypothesis {which} violated: {detail}")]
    Hypothesis {
        /// `"H1"` or `"H2"`.
        which: &'static str,
        /// Human-readable detail.
        detail: &'static str,
    },
    /// Mode `n` has no purely imaginary root pair.
    #[error("no Hopf on mode {0}")]
    NoHopf(u32),
    /// A resolvent bracket in the center-manifold computation is singular.
    #[error("non-resonance violated: singular bracket for {0}")]
    NonResonance(&'static str),
    /// Normal-form coefficients make the amplitude system degenerate.
    #[error("degenerate normal form: {0}")]
    Degenerate(&'static str),
    /// An analytic property that must hold failed numerically.
    #[error("invariant violated: {what} (value {value:e})")]
    Invariant {
        /// Which property.
        what: &'static str,
        /// Measured value.
        value: f64,
    },
    /// The delay-PDE run was aborted.
    #[error("simulation aborted at t = {time}: {reason}")]
    SimulationAborted {
        /// Model time of the abort.
        time: f64,
        /// What tripped.
        reason: &'static str,
    },
}

impl Error {
    /// Category of this error.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain { .. } => ErrorKind::Validation,
            Error::Hypothesis { .. } => ErrorKind::Hypothesis,
            _ => ErrorKind::Numerical,
        }
    }

    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain { name, value, reason }
    }
}
