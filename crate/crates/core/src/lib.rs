//! Turing-Hopf analysis of a delayed reaction-diffusion mussel-algae model.
//!
//! The system on `(0, lπ)` with Neumann boundaries is
//!
//! ```text
//! m_t = d m_xx + m (r a(t-τ) - 1 / (1 + m(t-τ)))
//! γ a_t = a_xx + α (1 - a) - m a
//! ```
//!
//! Modules follow the analysis pipeline: [`model`] (parameters, equilibrium,
//! hypotheses), [`spectrum`] (characteristic equation per spatial mode),
//! [`normal_form`] (center-manifold coefficients at the Turing-Hopf point),
//! [`amplitude`] (planar amplitude system and region labels) and [`pde`]
//! (method-of-lines delay solver and pattern classification).
//!
//! The crate is `no_std` with `alloc`; enable the `std` feature for
//! `std::error::Error` interop via `core::error::Error` and the `serde`
//! feature for (de)serializable parameter and report types.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
#![warn(missing_docs)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod amplitude;
mod error;
pub mod linalg;
pub mod model;
pub mod normal_form;
pub mod pde;
pub mod settings;
pub mod spectrum;

pub use error::{Error, ErrorKind, Result};
pub use model::{Equilibrium, HypothesisReport, ModelParams};
pub use settings::Tolerances;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
