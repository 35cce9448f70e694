//! Gate-level realizations of the circuit families that have one.
//!
//! Each sequence reproduces the closed-form output state up to a global
//! phase; sHEA has no realization here.

use std::f64::consts::PI;

use crate::error::Result;
use crate::simulator::{apply_gate, GateSpec, Generator, Statevector};

use super::AnsatzKind;

fn run(gates: &[GateSpec]) -> Statevector {
    gates
        .iter()
        .fold(Statevector::basis(0), |s, g| apply_gate(&s, g))
}

/// `RY(2θ₁)⊗RY(2θ₂)`, CNOT(1→2), `RY(2θ₃)⊗RY(2θ₄)`.
fn hea(t: &[f64]) -> Result<Statevector> {
    let first = run(&[
        GateSpec::single(Generator::Y, 2.0 * t[0], 1)?,
        GateSpec::single(Generator::Y, 2.0 * t[1], 2)?,
    ]);
    let a = first.amplitudes();
    let entangled = Statevector::new([a[0], a[1], a[3], a[2]]);
    Ok([
        GateSpec::single(Generator::Y, 2.0 * t[2], 1)?,
        GateSpec::single(Generator::Y, 2.0 * t[3], 2)?,
    ]
    .iter()
    .fold(entangled, |s, g| apply_gate(&s, g)))
}

/// Prepare |01⟩, local Z phases, `iSWAP(θ₃)†`, then the real Givens rotation
/// `exp(−iθ₅(XY − YX)/2) = R_XY(θ₅)·R_YX(−θ₅)`.
fn ldca(t: &[f64]) -> Result<Statevector> {
    Ok(run(&[
        GateSpec::single(Generator::X, PI, 2)?,
        GateSpec::single(Generator::Z, t[0], 1)?,
        GateSpec::single(Generator::Z, t[1], 2)?,
        GateSpec::single(Generator::Z, t[3], 2)?,
        GateSpec::pair(Generator::IswapDag, t[2])?,
        GateSpec::pair(Generator::XY, t[4])?,
        GateSpec::pair(Generator::YX, -t[4])?,
    ]))
}

/// `RX(θ₁)⊗RX(θ₂)`, then `RZ₁(θ₃)`, `RZ₂(θ₄)`, `R_ZZ(θ₅)`.
fn qgan(t: &[f64]) -> Result<Statevector> {
    Ok(run(&[
        GateSpec::single(Generator::X, t[0], 1)?,
        GateSpec::single(Generator::X, t[1], 2)?,
        GateSpec::single(Generator::Z, t[2], 1)?,
        GateSpec::single(Generator::Z, t[3], 2)?,
        GateSpec::pair(Generator::ZZ, t[4])?,
    ]))
}

fn qgan_aug(t: &[f64]) -> Result<Statevector> {
    let base = qgan(&t[..5])?;
    Ok([
        GateSpec::single(Generator::X, t[5], 1)?,
        GateSpec::single(Generator::X, t[6], 2)?,
        GateSpec::single(Generator::Z, t[7], 1)?,
        GateSpec::single(Generator::Z, t[8], 2)?,
    ]
    .iter()
    .fold(base, |s, g| apply_gate(&s, g)))
}

/// Runs the gate sequence for `kind`, or `None` when no realization exists.
pub fn gate_level_state(kind: AnsatzKind, theta: &[f64]) -> Option<Result<Statevector>> {
    if let Err(e) = kind.check_params(theta) {
        return Some(Err(e));
    }
    match kind {
        AnsatzKind::Hea => Some(hea(theta)),
        AnsatzKind::Ldca => Some(ldca(theta)),
        AnsatzKind::Qgan => Some(qgan(theta)),
        AnsatzKind::QganAug => Some(qgan_aug(theta)),
        AnsatzKind::Shea => None,
    }
}
