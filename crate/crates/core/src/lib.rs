//! Geometry and optimization of two-qubit parameterized quantum circuits.
//!
//! The crate models five circuit families by their closed-form output
//! states, places those states on the Hopf fibration S³ → S⁷ → S⁴, relates
//! their entanglement (concurrence) to the scalar curvature of the base
//! metric, and runs gradient-descent and quantum-natural-gradient VQE on a
//! two-qubit hydrogen Hamiltonian with per-step geometric instrumentation.

pub mod ansatz;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod optimize;
pub mod qgt;
pub mod simulator;
pub mod vqe;

pub use error::{Error, Result};
