//! Two-qubit statevector simulation.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with qubit 1 as the left tensor
//! factor, so amplitude index = 2·b₁ + b₂. Every gate is built from its
//! closed-form cosine/sine expansion; nothing here exponentiates a matrix
//! numerically.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Norm deviation tolerated by operations that require a normalized input.
pub const NORM_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A two-qubit pure state `α|00⟩ + β|01⟩ + γ|10⟩ + δ|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Statevector {
    amps: [Complex64; 4],
}

impl Statevector {
    /// Wraps raw amplitudes without normalizing them.
    pub fn new(amps: [Complex64; 4]) -> Self {
        Self { amps }
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(amps: [Complex64; 4]) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            amps: amps.map(|a| a / norm),
        })
    }

    /// Computational basis state `|b₁b₂⟩` for `index = 2·b₁ + b₂`.
    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; 4];
        amps[index] = ONE;
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amps
    }

    pub fn alpha(&self) -> Complex64 {
        self.amps[0]
    }

    pub fn beta(&self) -> Complex64 {
        self.amps[1]
    }

    pub fn gamma(&self) -> Complex64 {
        self.amps[2]
    }

    pub fn delta(&self) -> Complex64 {
        self.amps[3]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let p = Complex64::from_polar(1.0, phase);
        Self {
            amps: self.amps.map(|a| a * p),
        }
    }

    pub fn apply_matrix(&self, u: &Matrix4<Complex64>) -> Self {
        let mut out = [ZERO; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| u[(r, c)] * self.amps[c]).sum();
        }
        Self { amps: out }
    }
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn matrix(self) -> [[Complex64; 2]; 2] {
        match self {
            Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, -I], [I, ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }
}

/// `P₁ ⊗ P₂` as a 4×4 matrix.
pub fn pauli_product(p1: Pauli, p2: Pauli) -> Matrix4<Complex64> {
    let a = p1.matrix();
    let b = p2.matrix();
    Matrix4::from_fn(|r, c| a[r / 2][c / 2] * b[r % 2][c % 2])
}

/// Gate generator labels. Rotations follow `R_P(θ) = exp(−iθP/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    X,
    Y,
    Z,
    XX,
    YY,
    ZZ,
    XY,
    YX,
    /// `iSWAP(θ)† = exp(−iθ(X⊗X + Y⊗Y)/2)`
    IswapDag,
    /// `CPHASE(φ) = exp(−iφ(I−Z)⊗(I−Z)/4)`
    Cphase,
}

impl Generator {
    pub fn is_single_qubit(self) -> bool {
        matches!(self, Generator::X | Generator::Y | Generator::Z)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "X" => Generator::X,
            "Y" => Generator::Y,
            "Z" => Generator::Z,
            "XX" => Generator::XX,
            "YY" => Generator::YY,
            "ZZ" => Generator::ZZ,
            "XY" => Generator::XY,
            "YX" => Generator::YX,
            "ISWAP_DAG" => Generator::IswapDag,
            "CPHASE" => Generator::Cphase,
            other => return Err(Error::InvalidGate(format!("unknown generator label {other:?}"))),
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::X => "X",
            Generator::Y => "Y",
            Generator::Z => "Z",
            Generator::XX => "XX",
            Generator::YY => "YY",
            Generator::ZZ => "ZZ",
            Generator::XY => "XY",
            Generator::YX => "YX",
            Generator::IswapDag => "ISWAP_DAG",
            Generator::Cphase => "CPHASE",
        };
        f.write_str(s)
    }
}

/// A parameterized gate acting on qubit 1, qubit 2, or both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSpec {
    generator: Generator,
    angle: f64,
    target: Option<u8>,
}

impl GateSpec {
    /// Single-qubit rotation on `qubit` ∈ {1, 2}.
    pub fn single(generator: Generator, angle: f64, qubit: u8) -> Result<Self> {
        Self::new(generator, angle, &[qubit])
    }

    /// Two-qubit gate acting on both qubits.
    pub fn pair(generator: Generator, angle: f64) -> Result<Self> {
        Self::new(generator, angle, &[1, 2])
    }

    pub fn new(generator: Generator, angle: f64, targets: &[u8]) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::InvalidGate(format!("non-finite angle {angle}")));
        }
        let target = match (generator.is_single_qubit(), targets) {
            (true, [q]) if *q == 1 || *q == 2 => Some(*q),
            (false, [1, 2]) | (false, [2, 1]) => None,
            _ => {
                return Err(Error::InvalidGate(format!(
                    "generator {generator} cannot act on qubits {targets:?}"
                )))
            }
        };
        Ok(Self {
            generator,
            angle,
            target,
        })
    }

    /// Parses a textual label such as `"X"`, `"yy"` or `"ISWAP_DAG"`.
    pub fn from_label(label: &str, angle: f64, targets: &[u8]) -> Result<Self> {
        Self::new(label.parse()?, angle, targets)
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn matrix(&self) -> Matrix4<Complex64> {
        let (s, c) = (self.angle / 2.0).sin_cos();
        let rot = |p: Matrix4<Complex64>| Matrix4::<Complex64>::identity() * Complex64::new(c, 0.0) - p * (I * s);
        match self.generator {
            Generator::X | Generator::Y | Generator::Z => {
                let p = match self.generator {
                    Generator::X => Pauli::X,
                    Generator::Y => Pauli::Y,
                    _ => Pauli::Z,
                };
                if self.target == Some(1) {
                    rot(pauli_product(p, Pauli::I))
                } else {
                    rot(pauli_product(Pauli::I, p))
                }
            }
            Generator::XX => rot(pauli_product(Pauli::X, Pauli::X)),
            Generator::YY => rot(pauli_product(Pauli::Y, Pauli::Y)),
            Generator::ZZ => rot(pauli_product(Pauli::Z, Pauli::Z)),
            Generator::XY => rot(pauli_product(Pauli::X, Pauli::Y)),
            Generator::YX => rot(pauli_product(Pauli::Y, Pauli::X)),
            Generator::IswapDag => {
                // X⊗X + Y⊗Y annihilates |00⟩,|11⟩ and acts as 2σx on {|01⟩,|10⟩}.
                let (s, c) = self.angle.sin_cos();
                let mut m = Matrix4::identity();
                m[(1, 1)] = Complex64::new(c, 0.0);
                m[(2, 2)] = Complex64::new(c, 0.0);
                m[(1, 2)] = Complex64::new(0.0, -s);
                m[(2, 1)] = Complex64::new(0.0, -s);
                m
            }
            Generator::Cphase => {
                // (I−Z)⊗(I−Z) = 4|11⟩⟨11|
                let mut m = Matrix4::identity();
                m[(3, 3)] = Complex64::from_polar(1.0, -self.angle);
                m
            }
        }
    }
}

/// Returns `U·state`.
pub fn apply_gate(state: &Statevector, gate: &GateSpec) -> Statevector {
    state.apply_matrix(&gate.matrix())
}

/// A real linear combination of two-qubit Pauli strings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PauliObservable {
    terms: Vec<(f64, Pauli, Pauli)>,
}

impl PauliObservable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, coefficient: f64, p1: Pauli, p2: Pauli) -> Self {
        self.terms.push((coefficient, p1, p2));
        self
    }

    pub fn terms(&self) -> &[(f64, Pauli, Pauli)] {
        &self.terms
    }

    pub fn matrix(&self) -> Matrix4<Complex64> {
        self.terms
            .iter()
            .fold(Matrix4::zeros(), |acc, &(c, p1, p2)| acc + pauli_product(p1, p2) * Complex64::new(c, 0.0))
    }
}

/// Imaginary residue allowed in ⟨ψ|O|ψ⟩ before the result is rejected.
const IMAG_TOL: f64 = 1e-12;

/// `⟨ψ|O|ψ⟩` for a normalized state.
pub fn expectation(state: &Statevector, obs: &PauliObservable) -> Result<f64> {
    state.check_normalized()?;
    let v = state.inner(&state.apply_matrix(&obs.matrix()));
    let scale = obs.terms.iter().map(|t| t.0.abs()).sum::<f64>().max(1.0);
    if v.im.abs() > IMAG_TOL * scale {
        return Err(Error::Numerical(format!(
            "expectation has imaginary part {:e}",
            v.im
        )));
    }
    Ok(v.re)
}

/// `|⟨a|b⟩|`; equals one exactly when the states differ by a global phase.
pub fn fidelity_up_to_phase(a: &Statevector, b: &Statevector) -> Result<f64> {
    a.check_normalized()?;
    b.check_normalized()?;
    Ok(a.inner(b).norm().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_state_eq(a: &Statevector, b: &Statevector, tol: f64) {
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < tol, "{a:?} != {b:?}");
        }
    }

    #[test]
    fn identity_rotation_leaves_state() {
        let g = GateSpec::single(Generator::Y, 0.0, 1).unwrap();
        assert_state_eq(&apply_gate(&Statevector::basis(0), &g), &Statevector::basis(0), 1e-15);
    }

    #[test]
    fn rx_pi_flips_qubit_one() {
        let g = GateSpec::single(Generator::X, PI, 1).unwrap();
        let out = apply_gate(&Statevector::basis(0), &g);
        let expected = Statevector::new([ZERO, ZERO, c(0.0, -1.0), ZERO]);
        assert_state_eq(&out, &expected, 1e-15);
    }

    #[test]
    fn iswap_dag_matches_block_exponential() {
        // exp(−iθσx) on the {|01⟩,|10⟩} block, expanded directly.
        for &theta in &[0.0, 0.3, 1.1, -2.7, 5.0] {
            let g = GateSpec::pair(Generator::IswapDag, theta).unwrap();
            let out = apply_gate(&Statevector::basis(1), &g);
            let expected = Statevector::new([ZERO, c(theta.cos(), 0.0), c(0.0, -theta.sin()), ZERO]);
            assert_state_eq(&out, &expected, 1e-15);
        }
    }

    #[test]
    fn iswap_dag_equals_product_of_xx_and_yy() {
        let theta = 0.83;
        let iswap = GateSpec::pair(Generator::IswapDag, theta).unwrap().matrix();
        let prod = GateSpec::pair(Generator::XX, theta).unwrap().matrix()
            * GateSpec::pair(Generator::YY, theta).unwrap().matrix();
        assert!((iswap - prod).norm() < 1e-14);
    }

    #[test]
    fn cphase_phases_only_eleven() {
        let m = GateSpec::pair(Generator::Cphase, 0.4).unwrap().matrix();
        assert!((m[(3, 3)] - Complex64::from_polar(1.0, -0.4)).norm() < 1e-15);
        for k in 0..3 {
            assert_eq!(m[(k, k)], ONE);
        }
    }

    #[test]
    fn rejects_bad_labels_and_targets() {
        assert!(matches!(GateSpec::from_label("W", 0.1, &[1]), Err(Error::InvalidGate(_))));
        assert!(GateSpec::from_label("xx", 0.1, &[1, 2]).is_ok());
        assert!(GateSpec::single(Generator::X, 0.1, 3).is_err());
        assert!(GateSpec::single(Generator::XX, 0.1, 1).is_err());
        assert!(GateSpec::new(Generator::Z, 0.1, &[1, 2]).is_err());
        assert!(GateSpec::single(Generator::Z, f64::NAN, 1).is_err());
    }

    #[test]
    fn expectation_examples() {
        let z1 = PauliObservable::new().term(1.0, Pauli::Z, Pauli::I);
        let xx = PauliObservable::new().term(1.0, Pauli::X, Pauli::X);
        assert_eq!(expectation(&Statevector::basis(0), &z1).unwrap(), 1.0);
        assert_eq!(expectation(&Statevector::basis(0), &xx).unwrap(), 0.0);
        let bell = Statevector::new([ZERO, c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0), ZERO]);
        assert!((expectation(&bell, &xx).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_rejects_unnormalized() {
        let s = Statevector::new([c(1.0, 0.0), c(1.0, 0.0), ZERO, ZERO]);
        let z1 = PauliObservable::new().term(1.0, Pauli::Z, Pauli::I);
        assert!(matches!(expectation(&s, &z1), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn fidelity_examples() {
        let zero = Statevector::basis(0);
        let phased = zero.with_global_phase(PI / 7.0);
        assert!((fidelity_up_to_phase(&zero, &phased).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity_up_to_phase(&zero, &Statevector::basis(1)).unwrap(), 0.0);
        let bell = Statevector::new([c(FRAC_1_SQRT_2, 0.0), ZERO, ZERO, c(FRAC_1_SQRT_2, 0.0)]);
        assert!((fidelity_up_to_phase(&zero, &bell).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
