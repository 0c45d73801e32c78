//! Second and third partial derivatives of `F = τ0 (f1, f2/γ)` at the origin.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::spectrum::Linearization;

/// Arguments of the nonlinearity, in the order `(m, a, m_τ, a_τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `m(0)`.
    M = 0,
    /// `a(0)`.
    A = 1,
    /// `m(-1)`.
    Mt = 2,
    /// `a(-1)`.
    At = 3,
}

impl Var {
    /// All four arguments in index order.
    pub const ALL: [Var; 4] = [Var::M, Var::A, Var::Mt, Var::At];

    fn name(self) -> &'static str {
        match self {
            Var::M => "m",
            Var::A => "a",
            Var::Mt => "m_tau",
            Var::At => "a_tau",
        }
    }
}

/// Sparse symmetric table of derivatives; missing entries are zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DerivTable {
    second: BTreeMap<[Var; 2], [f64; 2]>,
    third: BTreeMap<[Var; 3], [f64; 2]>,
}

impl DerivTable {
    /// Empty table.
    pub fn new() -> Self {
        Self::default()
    }

    /// Set `F_{ij}`; argument order is irrelevant.
    pub fn set2(&mut self, mut idx: [Var; 2], value: [f64; 2]) {
        idx.sort();
        self.second.insert(idx, value);
    }

    /// Set `F_{ijk}`; argument order is irrelevant.
    pub fn set3(&mut self, mut idx: [Var; 3], value: [f64; 2]) {
        idx.sort();
        self.third.insert(idx, value);
    }

    /// `F_{ij}`.
    pub fn d2(&self, i: Var, j: Var) -> [f64; 2] {
        let mut idx = [i, j];
        idx.sort();
        self.second.get(&idx).copied().unwrap_or([0.0; 2])
    }

    /// `F_{ijk}`.
    pub fn d3(&self, i: Var, j: Var, k: Var) -> [f64; 2] {
        let mut idx = [i, j, k];
        idx.sort();
        self.third.get(&idx).copied().unwrap_or([0.0; 2])
    }

    /// Stored entries as `("F_{m m_tau}", value)` pairs.
    pub fn entries(&self) -> Vec<(String, [f64; 2])> {
        let label = |vars: &[Var]| {
            let mut s = String::from("F_{");
            for (i, v) in vars.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(v.name());
            }
            s.push('}');
            s
        };
        let mut out: Vec<_> = self.second.iter().map(|(k, v)| (label(k), *v)).collect();
        out.extend(self.third.iter().map(|(k, v)| (label(k), *v)));
        out
    }
}

/// Derivative table of the model at the equilibrium, scaled by `tau0`.
pub fn deriv_table(lin: &Linearization, tau0: f64) -> DerivTable {
    use Var::*;
    let m = lin.eq.m_star;
    let s = 1.0 + m;
    let g = lin.p.gamma;
    let mut t = DerivTable::new();
    t.set2([M, At], [tau0 * lin.p.r, 0.0]);
    t.set2([M, Mt], [tau0 / (s * s), 0.0]);
    t.set2([Mt, Mt], [-2.0 * tau0 * m / (s * s * s), 0.0]);
    t.set2([M, A], [0.0, -tau0 / g]);
    t.set3([Mt, Mt, Mt], [6.0 * tau0 * m / (s * s * s * s), 0.0]);
    t.set3([M, Mt, Mt], [-2.0 * tau0 / (s * s * s), 0.0]);
    t
}
