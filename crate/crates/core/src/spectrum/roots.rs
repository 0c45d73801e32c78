//! Newton scan for roots of the quasi-polynomial in a box of the upper half-plane.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::Linearization;
use crate::{Tolerances, C64};

/// Rectangle `[re_min, re_max] x [0, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct SearchBox {
    /// Left edge.
    pub re_min: f64,
    /// Right edge.
    pub re_max: f64,
    /// Top edge.
    pub im_max: f64,
    /// Seeds per axis.
    pub seeds: usize,
}

impl Default for SearchBox {
    fn default() -> Self {
        Self { re_min: -2.0, re_max: 1.0, im_max: 20.0, seeds: 40 }
    }
}

impl SearchBox {
    fn contains(&self, z: C64, slack: f64) -> bool {
        z.re >= self.re_min - slack && z.re <= self.re_max + slack && z.im >= -slack && z.im <= self.im_max + slack
    }
}

/// Roots found by [`rightmost_roots`], sorted by decreasing real part.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RootScan {
    /// Distinct roots in the box with `Im ≥ 0`; conjugates are implied.
    pub roots: Vec<C64>,
    /// Set when no seed converged.
    pub all_diverged: bool,
}

const MAX_NEWTON: usize = 80;

/// Newton iteration on `E_n(·, τ)` from a uniform seed grid.
pub fn rightmost_roots(
    lin: &Linearization,
    n: u32,
    tau: f64,
    search: &SearchBox,
    max_roots: usize,
    tol: &Tolerances,
) -> RootScan {
    let k = search.seeds.max(2);
    let mut roots: Vec<C64> = Vec::new();
    let mut converged = 0usize;
    for i in 0..k {
        for j in 0..k {
            let re = search.re_min + (search.re_max - search.re_min) * (i as f64) / ((k - 1) as f64);
            let im = search.im_max * (j as f64) / ((k - 1) as f64);
            let Some(mut z) = newton(lin, n, tau, C64::new(re, im), tol) else {
                continue;
            };
            converged += 1;
            if z.im < 0.0 {
                z = z.conj();
            }
            if z.im.abs() < tol.dedupe {
                z.im = 0.0;
            }
            if !search.contains(z, tol.dedupe) {
                continue;
            }
            if roots.iter().all(|r| (*r - z).norm() > tol.dedupe) {
                roots.push(z);
            }
        }
    }
    roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    roots.truncate(max_roots);
    RootScan { roots, all_diverged: converged == 0 }
}

fn newton(lin: &Linearization, n: u32, tau: f64, mut z: C64, tol: &Tolerances) -> Option<C64> {
    for _ in 0..MAX_NEWTON {
        let f = lin.char_value(n, z, tau);
        let df = lin.char_derivative(n, z, tau);
        if !(df.norm() > 0.0) {
            return None;
        }
        let step = f / df;
        z -= step;
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > 1e6 {
            return None;
        }
        if step.norm() <= 1e-14 * (1.0 + z.norm()) {
            break;
        }
    }
    (lin.char_value(n, z, tau).norm() < tol.residual).then_some(z)
}
