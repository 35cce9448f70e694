//! JSON view of the Hopf coordinates of a circuit output state.

use serde::Serialize;

use crate::ansatz::{prepare_state, AnsatzKind};
use crate::error::Result;
use crate::geometry::{concurrence, hopf_base, hopf_fiber, ChartAngle};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HopfReport {
    pub ansatz: AnsatzKind,
    pub theta: Vec<f64>,
    pub amplitudes: [[f64; 2]; 4],
    pub x: [f64; 5],
    pub sum_x_squared: f64,
    pub theta_a: f64,
    pub phi_a: ChartAngle,
    pub chi: ChartAngle,
    pub xi: ChartAngle,
    pub concurrence: f64,
    pub z: [f64; 2],
    pub w: [f64; 2],
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    /// Quaternion components in the order (1, i, j, k).
    pub q_plus: [f64; 4],
    pub q_minus: [f64; 4],
    pub q_minus_same_sign: [f64; 4],
}

fn components(q: nalgebra::Quaternion<f64>) -> [f64; 4] {
    [q.w, q.i, q.j, q.k]
}

impl HopfReport {
    pub fn new(kind: AnsatzKind, theta: &[f64]) -> Result<Self> {
        let psi = prepare_state(kind, theta)?;
        let base = hopf_base(&psi)?;
        let fiber = hopf_fiber(&psi)?;
        Ok(Self {
            ansatz: kind,
            theta: theta.to_vec(),
            amplitudes: psi.amplitudes().map(|a| [a.re, a.im]),
            x: base.x,
            sum_x_squared: base.x.iter().map(|v| v * v).sum(),
            theta_a: base.theta_a,
            phi_a: base.phi_a,
            chi: base.chi,
            xi: base.xi,
            concurrence: concurrence(&psi),
            z: [fiber.z.re, fiber.z.im],
            w: [fiber.w.re, fiber.w.im],
            gamma_plus: fiber.gamma_plus,
            gamma_minus: fiber.gamma_minus,
            q_plus: components(fiber.q_plus),
            q_minus: components(fiber.q_minus),
            q_minus_same_sign: components(fiber.q_minus_same_sign),
        })
    }
}
