//! The two-qubit circuit families studied here: HEA, LDCA, QGAN, sHEA and
//! QGAN augmented with local RX/RZ rotations.
//!
//! Each family is defined by its closed-form output state. Parameter
//! Jacobians are exact: the closed forms are evaluated over dual numbers.

mod circuits;
mod closed;
pub mod dual;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simulator::Statevector;

pub use circuits::gate_level_state;
use dual::{Cx, Dual};

/// Concurrence values this close to one are treated as the curvature pole.
pub const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzKind {
    Hea,
    Ldca,
    Qgan,
    Shea,
    QganAug,
}

impl AnsatzKind {
    pub const ALL: [AnsatzKind; 5] = [
        AnsatzKind::Hea,
        AnsatzKind::Ldca,
        AnsatzKind::Qgan,
        AnsatzKind::Shea,
        AnsatzKind::QganAug,
    ];

    pub fn num_params(self) -> usize {
        match self {
            AnsatzKind::Hea => 4,
            AnsatzKind::Ldca | AnsatzKind::Qgan => 5,
            AnsatzKind::Shea => 6,
            AnsatzKind::QganAug => 9,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AnsatzKind::Hea => "hea",
            AnsatzKind::Ldca => "ldca",
            AnsatzKind::Qgan => "qgan",
            AnsatzKind::Shea => "shea",
            AnsatzKind::QganAug => "qgan-aug",
        }
    }

    /// Index partition used by the block-diagonal metric approximation.
    /// Indices are zero-based.
    pub fn metric_blocks(self) -> &'static [&'static [usize]] {
        match self {
            AnsatzKind::Hea => &[&[0, 1], &[2, 3]],
            AnsatzKind::Ldca => &[&[0, 1], &[2], &[3], &[4]],
            AnsatzKind::Qgan => &[&[0, 1], &[2, 3], &[4]],
            AnsatzKind::Shea => &[&[0, 1], &[2], &[3], &[4, 5]],
            AnsatzKind::QganAug => &[&[0, 1], &[2, 3], &[4], &[5, 6], &[7, 8]],
        }
    }

    pub fn check_params(self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.num_params() {
            return Err(Error::ParamCount {
                kind: self.name(),
                expected: self.num_params(),
                got: theta.len(),
            });
        }
        if let Some(x) = theta.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite parameter {x}")));
        }
        Ok(())
    }
}

impl fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AnsatzKind::ALL
            .into_iter()
            .find(|k| k.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Config(format!("unknown ansatz {s:?} (expected hea, ldca, qgan, shea or qgan-aug)")))
    }
}

fn closed_form<T: dual::Real>(kind: AnsatzKind, theta: &[T]) -> [Cx<T>; 4] {
    match kind {
        AnsatzKind::Hea => closed::hea(theta),
        AnsatzKind::Ldca => closed::ldca(theta),
        AnsatzKind::Qgan => closed::qgan(theta),
        AnsatzKind::Shea => closed::shea(theta),
        AnsatzKind::QganAug => closed::qgan_aug(theta),
    }
}

/// Output state `|Ψ(θ)⟩` of the circuit family.
pub fn prepare_state(kind: AnsatzKind, theta: &[f64]) -> Result<Statevector> {
    kind.check_params(theta)?;
    Ok(Statevector::new(closed_form(kind, theta).map(Cx::to_c64)))
}

/// Complex 4×m matrix whose column j is `∂|Ψ(θ)⟩/∂θⱼ`.
pub fn state_jacobian(kind: AnsatzKind, theta: &[f64]) -> Result<DMatrix<Complex64>> {
    kind.check_params(theta)?;
    let m = theta.len();
    let mut jac = DMatrix::zeros(4, m);
    let mut seeded: Vec<Dual> = theta.iter().map(|&v| Dual { v, d: 0.0 }).collect();
    for j in 0..m {
        seeded[j].d = 1.0;
        for (r, amp) in closed_form(kind, &seeded).iter().enumerate() {
            jac[(r, j)] = amp.derivative();
        }
        seeded[j].d = 0.0;
    }
    Ok(jac)
}

/// Closed-form concurrence as a function of the circuit parameters.
pub fn concurrence_closed(kind: AnsatzKind, theta: &[f64]) -> Result<f64> {
    kind.check_params(theta)?;
    let t = theta;
    let c = match kind {
        AnsatzKind::Hea => ((2.0 * t[0]).sin() * (2.0 * t[1]).cos()).abs(),
        AnsatzKind::Ldca => {
            let arg = 3.0 - 2.0 * (4.0 * t[2]).cos() * (2.0 * t[4]).cos().powi(2) - (4.0 * t[4]).cos();
            0.5 * arg.max(0.0).sqrt()
        }
        AnsatzKind::Qgan | AnsatzKind::QganAug => (t[0].sin() * t[1].sin() * t[4].sin()).abs(),
        AnsatzKind::Shea => 0.5 * shea_concurrence_sum(t).sqrt(),
    };
    Ok(c.min(1.0))
}

/// The bracketed sum N in the sHEA expressions, equal to 4C².
fn shea_concurrence_sum(t: &[f64]) -> f64 {
    let (s1, c1, s2, c2) = (t[0].sin(), t[0].cos(), t[1].sin(), t[1].cos());
    let q = t[3] / 4.0;
    let first = s1 * s2 * (t[2].cos() - q.cos());
    let second = t[2].sin() * (c1 * c2 + 1.0) - s1 * s2 * q.sin();
    first * first + second * second
}

/// Scalar curvature of the base-manifold metric written directly in the
/// circuit parameters.
///
/// Fails with [`Error::CurvatureSingularity`] at maximally entangled points.
pub fn ricci_closed_circuit(kind: AnsatzKind, theta: &[f64]) -> Result<f64> {
    let c = concurrence_closed(kind, theta)?;
    if (1.0 - c).abs() <= SINGULAR_TOL {
        return Err(Error::CurvatureSingularity { concurrence: c });
    }
    let t = theta;
    let pole_form = |s: f64| 12.0 - 1.0 / (s + 1.0) + 1.0 / (s - 1.0);
    let r = match kind {
        AnsatzKind::Hea => pole_form((2.0 * t[0]).sin() * (2.0 * t[1]).cos()),
        AnsatzKind::Ldca => {
            let c3 = (2.0 * t[2]).cos();
            let c5 = (2.0 * t[4]).cos();
            12.0 - 2.0 / (c3 * c3 * c5 * c5)
        }
        AnsatzKind::Qgan | AnsatzKind::QganAug => pole_form(t[0].sin() * t[1].sin() * t[4].sin()),
        AnsatzKind::Shea => {
            let n = shea_concurrence_sum(t);
            (12.0 * n - 40.0) / (n - 4.0)
        }
    };
    Ok(r)
}
