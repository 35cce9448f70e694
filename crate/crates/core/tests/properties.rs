//! Property tests for the invariants shared across modules.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;

use pqc_geom::ansatz::{concurrence_closed, prepare_state, state_jacobian, AnsatzKind};
use pqc_geom::geometry::{concurrence, hopf_base, hopf_fiber, ricci_closed};
use pqc_geom::optimize::{step_gd, step_qng, OptConfig};
use pqc_geom::qgt::{qgt_from_jacobian, qgt_full, MetricMode, MetricTensor};
use pqc_geom::simulator::{apply_gate, expectation, GateSpec, Generator, Pauli, PauliObservable, Statevector};
use pqc_geom::vqe::{energy, exact_ground, Hamiltonian};

const GENERATORS: [Generator; 10] = [
    Generator::X,
    Generator::Y,
    Generator::Z,
    Generator::XX,
    Generator::YY,
    Generator::ZZ,
    Generator::XY,
    Generator::YX,
    Generator::IswapDag,
    Generator::Cphase,
];
const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

fn kind() -> impl Strategy<Value = AnsatzKind> {
    prop::sample::select(AnsatzKind::ALL.to_vec())
}

fn kind_and_theta() -> impl Strategy<Value = (AnsatzKind, Vec<f64>)> {
    kind().prop_flat_map(|k| (Just(k), prop::collection::vec(0.0..TAU, k.num_params())))
}

fn state() -> impl Strategy<Value = Statevector> {
    prop::array::uniform4((-1.0..1.0f64, -1.0..1.0f64))
        .prop_filter("nonzero", |a| a.iter().map(|(r, i)| r * r + i * i).sum::<f64>() > 1e-3)
        .prop_map(|a| Statevector::normalized(a.map(|(r, i)| Complex64::new(r, i))).unwrap())
}

fn gate() -> impl Strategy<Value = GateSpec> {
    (prop::sample::select(GENERATORS.to_vec()), -10.0..10.0f64, 1u8..=2).prop_map(|(g, angle, q)| {
        if g.is_single_qubit() {
            GateSpec::single(g, angle, q).unwrap()
        } else {
            GateSpec::pair(g, angle).unwrap()
        }
    })
}

fn hamiltonian() -> impl Strategy<Value = Hamiltonian> {
    prop::array::uniform6(-2.0..2.0f64).prop_map(|nu| Hamiltonian::new(nu, "random").unwrap())
}

proptest! {
    #[test]
    fn gates_are_unitary(g in gate()) {
        let u = g.matrix();
        prop_assert!((u.adjoint() * u - nalgebra::Matrix4::identity()).camax() < 1e-12);
    }

    #[test]
    fn gates_preserve_norm(s in state(), g in gate()) {
        prop_assert!((apply_gate(&s, &g).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_is_linear_and_phase_blind(
        s in state(),
        c1 in -3.0..3.0f64,
        c2 in -3.0..3.0f64,
        p in prop::sample::select(PAULIS.to_vec()),
        q in prop::sample::select(PAULIS.to_vec()),
        phase in 0.0..TAU,
    ) {
        let a = PauliObservable::new().term(1.0, p, q);
        let b = PauliObservable::new().term(1.0, Pauli::Z, Pauli::X);
        let sum = PauliObservable::new().term(c1, p, q).term(c2, Pauli::Z, Pauli::X);
        let lhs = expectation(&s, &sum).unwrap();
        let rhs = c1 * expectation(&s, &a).unwrap() + c2 * expectation(&s, &b).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12);
        prop_assert!((expectation(&s.with_global_phase(phase), &sum).unwrap() - lhs).abs() < 1e-12);
    }

    #[test]
    fn closed_states_are_normalized((k, t) in kind_and_theta()) {
        prop_assert!((prepare_state(k, &t).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_concurrence_matches_state((k, t) in kind_and_theta()) {
        let c = concurrence_closed(k, &t).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert!((c - concurrence(&prepare_state(k, &t).unwrap())).abs() < 1e-9);
    }

    #[test]
    fn augmentation_leaves_concurrence_unchanged(t in prop::collection::vec(0.0..TAU, 9)) {
        let aug = concurrence_closed(AnsatzKind::QganAug, &t).unwrap();
        let base = concurrence_closed(AnsatzKind::Qgan, &t[..5]).unwrap();
        prop_assert!((aug - base).abs() < 1e-12);
    }

    #[test]
    fn hopf_invariants_hold(s in state(), phase in 0.0..TAU) {
        let b = hopf_base(&s).unwrap();
        prop_assert!((b.x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!((b.x[2].hypot(b.x[3]) - concurrence(&s)).abs() < 1e-9);
        let moved = hopf_base(&s.with_global_phase(phase)).unwrap();
        for i in [0, 1, 4] {
            prop_assert!((b.x[i] - moved.x[i]).abs() < 1e-9);
        }
        prop_assert!((b.x[2].hypot(b.x[3]) - moved.x[2].hypot(moved.x[3])).abs() < 1e-9);
        prop_assert!((hopf_fiber(&s).unwrap().norm_sum() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ricci_bounded_above_by_ten(c in 0.0..0.999f64) {
        let r = ricci_closed(c).unwrap();
        prop_assert!(r <= 10.0 + 1e-12);
    }

    #[test]
    fn qgt_is_hermitian_psd_and_gauge_invariant((k, t) in kind_and_theta(), phase in 0.0..TAU) {
        let q = qgt_full(k, &t).unwrap();
        let g = q.entries();
        prop_assert!((g - g.adjoint()).camax() < 1e-12);
        let eig = SymmetricEigen::new(q.fubini_study()).eigenvalues;
        prop_assert!(eig.min() > -1e-12);

        let s = prepare_state(k, &t).unwrap();
        let j = state_jacobian(k, &t).unwrap();
        let ph = Complex64::from_polar(1.0, phase);
        let moved = qgt_from_jacobian(&s.with_global_phase(phase), &j.map(|z| z * ph));
        prop_assert!((moved.entries() - g).camax() < 1e-12);
    }

    #[test]
    fn metric_masks_are_idempotent((k, t) in kind_and_theta()) {
        let g = qgt_full(k, &t).unwrap().fubini_study();
        let blocks = k.metric_blocks();
        for mode in [MetricMode::Dense, MetricMode::BlockDiagonal, MetricMode::Diagonal] {
            let once = MetricTensor::masked(&g, mode, blocks);
            let twice = MetricTensor::masked(once.entries(), mode, blocks);
            prop_assert_eq!(once.entries(), twice.entries());
            prop_assert_eq!(once.entries(), &once.entries().transpose());
        }
    }

    #[test]
    fn energy_never_below_ground(h in hamiltonian(), (k, t) in kind_and_theta()) {
        let e0 = exact_ground(&h).e0;
        prop_assert!(energy(&h, &prepare_state(k, &t).unwrap()).unwrap() >= e0 - 1e-10);
    }

    #[test]
    fn qng_with_identity_metric_is_gradient_descent(
        theta in prop::collection::vec(-5.0..5.0f64, 1..8),
        seed in prop::collection::vec(-1.0..1.0f64, 8),
    ) {
        let grad = &seed[..theta.len()];
        let config = OptConfig::default();
        let (qng, fallback) = step_qng(&theta, grad, &DMatrix::identity(theta.len(), theta.len()), &config).unwrap();
        prop_assert!(!fallback);
        let gd = step_gd(&theta, grad, &config);
        for (a, b) in qng.iter().zip(&gd) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}
