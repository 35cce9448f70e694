//! The two-qubit molecular-hydrogen Hamiltonian
//! `H = ν₁I + ν₂Z₁ + ν₃Z₂ + ν₄Z₁Z₂ + ν₅X₁X₂ + ν₆Y₁Y₂`, its energy and
//! parameter gradient, and exact diagonalization for ground truth.

use std::path::Path;

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ansatz::{prepare_state, state_jacobian, AnsatzKind};
use crate::error::{Error, Result};
use crate::geometry::concurrence;
use crate::simulator::{expectation, Pauli, PauliObservable, Statevector};

const ENTANGLED_JSON: &str = include_str!("../data/h2_entangled.json");
const PRODUCT_JSON: &str = include_str!("../data/h2_product.json");

/// Eigenvalues within this of the minimum count as degenerate ground states.
const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian {
    pub nu: [f64; 6],
    #[serde(default)]
    pub label: String,
}

#[derive(Deserialize)]
struct RawHamiltonian {
    nu: Vec<f64>,
    #[serde(default)]
    label: String,
}

impl Hamiltonian {
    pub fn new(nu: [f64; 6], label: impl Into<String>) -> Result<Self> {
        if let Some(x) = nu.iter().find(|x| !x.is_finite()) {
            return Err(Error::Config(format!("Hamiltonian coefficient {x} is not finite")));
        }
        Ok(Self { nu, label: label.into() })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawHamiltonian = serde_json::from_str(text)?;
        let nu: [f64; 6] = raw.nu.as_slice().try_into().map_err(|_| {
            Error::Config(format!("\"nu\" must hold 6 coefficients, found {}", raw.nu.len()))
        })?;
        Self::new(nu, raw.label)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read Hamiltonian {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Bundled instance whose ground state is `√0.47|01⟩ + √0.53|10⟩` up to
    /// phase.
    pub fn entangled() -> Self {
        Self::from_json(ENTANGLED_JSON).expect("bundled Hamiltonian is valid")
    }

    /// Bundled instance whose ground state is essentially `|10⟩`.
    pub fn product() -> Self {
        Self::from_json(PRODUCT_JSON).expect("bundled Hamiltonian is valid")
    }

    pub fn observable(&self) -> PauliObservable {
        use Pauli::*;
        let n = self.nu;
        PauliObservable::new()
            .term(n[0], I, I)
            .term(n[1], Z, I)
            .term(n[2], I, Z)
            .term(n[3], Z, Z)
            .term(n[4], X, X)
            .term(n[5], Y, Y)
    }

    pub fn matrix(&self) -> Matrix4<Complex64> {
        self.observable().matrix()
    }
}

pub fn energy(h: &Hamiltonian, state: &Statevector) -> Result<f64> {
    expectation(state, &h.observable())
}

/// `∂E/∂θⱼ = 2 Re⟨∂ⱼΨ|H|Ψ⟩`.
pub fn energy_gradient(kind: AnsatzKind, theta: &[f64], h: &Hamiltonian) -> Result<Vec<f64>> {
    let psi = prepare_state(kind, theta)?;
    let jac = state_jacobian(kind, theta)?;
    let h_psi = psi.apply_matrix(&h.matrix());
    Ok((0..theta.len())
        .map(|j| {
            let v: Complex64 = (0..4).map(|r| jac[(r, j)].conj() * h_psi.amplitudes()[r]).sum();
            2.0 * v.re
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub e0: f64,
    pub ground_state: Statevector,
    pub concurrence: f64,
}

/// Rotates the global phase so the first non-negligible amplitude is real
/// and positive.
fn fix_phase(v: [Complex64; 4]) -> [Complex64; 4] {
    let lead = v.iter().find(|a| a.norm() > 1e-12).copied().unwrap_or(Complex64::new(1.0, 0.0));
    let p = lead.conj() / lead.norm();
    v.map(|a| a * p)
}

fn lexicographic_key(v: &[Complex64; 4]) -> [f64; 8] {
    let mut k = [0.0; 8];
    for (i, a) in v.iter().enumerate() {
        k[2 * i] = a.re;
        k[2 * i + 1] = a.im;
    }
    k
}

/// Lowest eigenpair of `H`. Among degenerate ground states the
/// phase-fixed eigenvector that is lexicographically greatest is chosen.
pub fn exact_ground(h: &Hamiltonian) -> GroundTruth {
    let eig = SymmetricEigen::new(h.matrix());
    let e0 = eig.eigenvalues.min();
    let best = (0..4)
        .filter(|&k| eig.eigenvalues[k] - e0 <= DEGENERACY_TOL)
        .map(|k| {
            let col: Vector4<Complex64> = eig.eigenvectors.column(k).into();
            let norm = col.norm();
            fix_phase([col[0], col[1], col[2], col[3]].map(|a| a / norm))
        })
        .max_by(|a, b| lexicographic_key(a).partial_cmp(&lexicographic_key(b)).expect("finite eigenvectors"))
        .expect("4×4 matrix has eigenvalues");
    let ground_state = Statevector::new(best);
    GroundTruth {
        e0,
        ground_state,
        concurrence: concurrence(&ground_state),
    }
}
