//! Oracle suites run by the `validate` subcommand.
//!
//! Every suite compares a closed form or analytic derivative against an
//! independent brute-force computation on seeded random draws.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ansatz::{prepare_state, ricci_closed_circuit, state_jacobian, AnsatzKind};
use crate::error::Result;
use crate::geometry::{
    concurrence, hopf_base, hopf_fiber, ricci_closed, scalar_curvature_numeric, ChartConvention, ChartPoint, FnMetric,
    MfsField, DEFAULT_STEP,
};
use crate::qgt::{qgt_from_jacobian, qgt_full};
use crate::simulator::Statevector;
use crate::vqe::{energy, energy_gradient, Hamiltonian};

/// Closed-form concurrence under test, normally
/// [`crate::ansatz::concurrence_closed`].
pub type ConcurrenceFn = fn(AnsatzKind, &[f64]) -> Result<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

const SEED: u64 = 0x5eed;

fn theta(kind: AnsatzKind, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..kind.num_params()).map(|_| rng.gen_range(0.0..TAU)).collect()
}

fn random_state(rng: &mut ChaCha8Rng) -> Statevector {
    let amps = [(); 4].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    Statevector::normalized(amps).expect("nonzero random vector")
}

fn suite(name: &'static str, passed: bool, detail: String) -> SuiteResult {
    SuiteResult { name, passed, detail }
}

fn concurrence_equivalence(conc: ConcurrenceFn, n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for kind in AnsatzKind::ALL {
        for _ in 0..n {
            let t = theta(kind, &mut rng);
            let brute = concurrence(&prepare_state(kind, &t)?);
            worst = worst.max((conc(kind, &t)? - brute).abs());
        }
    }
    Ok(suite("concurrence-equivalence", worst <= 1e-9, format!("max |ΔC| = {worst:.2e} (tol 1e-9)")))
}

fn hopf_invariants(n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut sphere, mut conc, mut fiber) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let s = random_state(&mut rng);
        let b = hopf_base(&s)?;
        sphere = sphere.max((b.x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs());
        conc = conc.max((b.concurrence() - concurrence(&s)).abs());
        fiber = fiber.max((hopf_fiber(&s)?.norm_sum() - 1.0).abs());
    }
    let (mut ldca, mut qgan) = (0.0f64, 0.0f64);
    for _ in 0..n / 10 + 1 {
        let x = hopf_base(&prepare_state(AnsatzKind::Ldca, &theta(AnsatzKind::Ldca, &mut rng))?)?.x;
        ldca = ldca.max(x[1].abs()).max(x[4].abs());
        let x = hopf_base(&prepare_state(AnsatzKind::Qgan, &theta(AnsatzKind::Qgan, &mut rng))?)?.x;
        qgan = qgan.max(x[3].abs());
    }
    let worst = sphere.max(conc).max(fiber).max(ldca).max(qgan);
    Ok(suite(
        "hopf-invariants",
        worst <= 1e-9,
        format!("|Σx²−1| {sphere:.1e}, |ΔC| {conc:.1e}, |Σ‖q‖²−1| {fiber:.1e}, LDCA x1,x4 {ldca:.1e}, QGAN x3 {qgan:.1e}"),
    ))
}

fn curvature_consistency(n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut worst = 0.0f64;
    let mut checked = 0;
    for kind in AnsatzKind::ALL {
        for _ in 0..n {
            let t = theta(kind, &mut rng);
            let c = concurrence(&prepare_state(kind, &t)?);
            if c > 0.99 {
                continue;
            }
            let r = ricci_closed(c)?;
            worst = worst.max((ricci_closed_circuit(kind, &t)? - r).abs() / (1.0 + r.abs()));
            checked += 1;
        }
    }
    let spots = (ricci_closed(0.0)? - 10.0).abs().max((ricci_closed(std::f64::consts::FRAC_1_SQRT_2)? - 8.0).abs());
    Ok(suite(
        "curvature-consistency",
        worst <= 1e-8 && spots <= 1e-12,
        format!("max rel. error {worst:.2e} over {checked} draws (tol 1e-8); spot values {spots:.1e}"),
    ))
}

fn curvature_engine() -> Result<SuiteResult> {
    let sphere = FnMetric::new(2, |x: &[f64]| DMatrix::from_diagonal(&nalgebra::dvector![1.0, x[0].sin().powi(2)]));
    let mut worst_sphere = 0.0f64;
    for i in 1..=20 {
        let p = [std::f64::consts::PI * i as f64 / 21.0, 0.3 * i as f64];
        worst_sphere = worst_sphere.max((scalar_curvature_numeric(&sphere, &p, DEFAULT_STEP)? - 2.0).abs());
    }
    let flat = FnMetric::new(4, |_: &[f64]| DMatrix::identity(4, 4));
    let flat_r = scalar_curvature_numeric(&flat, &[0.1, -0.4, 2.0, 1.0], DEFAULT_STEP)?.abs();
    Ok(suite(
        "curvature-engine",
        worst_sphere <= 1e-4 && flat_r <= 1e-6,
        format!("unit S² error {worst_sphere:.1e} (tol 1e-4), flat {flat_r:.1e} (tol 1e-6)"),
    ))
}

/// Conventions whose numeric MFS curvature matches `ricci_closed` at
/// C = 0.1 … 0.9 within 1e-3.
pub(crate) fn matching_conventions() -> Result<Vec<ChartConvention>> {
    let mut out = Vec::new();
    for conv in [ChartConvention::A, ChartConvention::B] {
        let mut ok = true;
        for i in 1..10 {
            let c = i as f64 / 10.0;
            let p = ChartPoint { c, chi: 0.4, phi: 1.0, theta: 1.3 };
            let r = scalar_curvature_numeric(&MfsField(conv), &p.coords(), DEFAULT_STEP)?;
            ok &= (r - ricci_closed(c)?).abs() <= 1e-3;
        }
        if ok {
            out.push(conv);
        }
    }
    Ok(out)
}

fn chart_convention() -> Result<SuiteResult> {
    let m = matching_conventions()?;
    Ok(suite(
        "chart-convention",
        m.len() == 1 && m[0] == ChartConvention::default(),
        format!("matching conventions {m:?}; default {:?}", ChartConvention::default()),
    ))
}

fn qgt_hermitian_psd(n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let (mut herm, mut min_eig, mut gauge) = (0.0f64, f64::INFINITY, 0.0f64);
    for kind in AnsatzKind::ALL {
        for _ in 0..n {
            let t = theta(kind, &mut rng);
            let psi = prepare_state(kind, &t)?;
            let jac = state_jacobian(kind, &t)?;
            let q = qgt_from_jacobian(&psi, &jac);
            herm = herm.max((q.entries() - q.entries().adjoint()).camax());
            min_eig = min_eig.min(SymmetricEigen::new(q.fubini_study()).eigenvalues.min());
            // θ-dependent global phase e^{i sin(θ₁)·Σθ}
            let s: f64 = t.iter().sum();
            let f = t[0].sin() * s;
            let phase = Complex64::from_polar(1.0, f);
            let jac2 = DMatrix::from_fn(4, t.len(), |r, j| {
                let df = if j == 0 { t[0].cos() * s + t[0].sin() } else { t[0].sin() };
                phase * (Complex64::new(0.0, df) * psi.amplitudes()[r] + jac[(r, j)])
            });
            let q2 = qgt_from_jacobian(&psi.with_global_phase(f), &jac2);
            gauge = gauge.max((q.entries() - q2.entries()).camax());
        }
    }
    Ok(suite(
        "qgt-hermitian-psd",
        herm <= 1e-10 && min_eig >= -1e-10 && gauge <= 1e-9,
        format!("hermiticity {herm:.1e}, min eigenvalue {min_eig:.1e}, gauge shift {gauge:.1e}"),
    ))
}

/// Value of metric entry `(i, j)` where the tabulated HEA or LDCA metric
/// gives a constant; `None` for non-constant entries and other circuits.
pub fn tabulated_constant(kind: AnsatzKind, i: usize, j: usize) -> Option<f64> {
    let (i, j) = (i.min(j), i.max(j));
    match kind {
        AnsatzKind::Hea => match (i, j) {
            _ if i == j => Some(1.0),
            (0, 1) | (0, 3) | (1, 2) => Some(0.0),
            _ => None,
        },
        AnsatzKind::Ldca => match (i, j) {
            (2, 2) => Some(4.0),
            (4, 4) => None,
            _ => Some(0.0),
        },
        _ => None,
    }
}

fn qgt_constant_entries(n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut failures: Vec<String> = Vec::new();
    let mut worst = 0.0f64;
    for kind in [AnsatzKind::Hea, AnsatzKind::Ldca] {
        let m = kind.num_params();
        // (largest deviation, value at that draw) per entry
        let mut dev = DMatrix::<(f64, f64)>::from_element(m, m, (0.0, 0.0));
        for _ in 0..n {
            let g = qgt_full(kind, &theta(kind, &mut rng))?.fubini_study();
            for i in 0..m {
                for j in i..m {
                    if let Some(want) = tabulated_constant(kind, i, j) {
                        let err = (g[(i, j)] - want).abs();
                        if err > dev[(i, j)].0 {
                            dev[(i, j)] = (err, g[(i, j)]);
                        }
                    }
                }
            }
        }
        for i in 0..m {
            for j in i..m {
                if let Some(want) = tabulated_constant(kind, i, j) {
                    worst = worst.max(dev[(i, j)].0);
                    if dev[(i, j)].0 > 1e-8 {
                        failures.push(format!("{kind} g[{i}][{j}] = {:.6} vs {want}", dev[(i, j)].1));
                    }
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("max deviation {worst:.1e} (tol 1e-8)")
    } else {
        format!("mismatches: {}", failures.join("; "))
    };
    Ok(suite("qgt-constant-entries", failures.is_empty(), detail))
}

fn qgt_rank(n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut parts = Vec::new();
    let mut passed = true;
    for kind in [AnsatzKind::Hea, AnsatzKind::Ldca, AnsatzKind::Qgan, AnsatzKind::Shea] {
        let mut regular = 0usize;
        let mut singular = 0usize;
        for _ in 0..n {
            let l = SymmetricEigen::new(qgt_full(kind, &theta(kind, &mut rng))?.fubini_study()).eigenvalues.min();
            regular += usize::from(l > 1e-6);
            singular += usize::from(l < 1e-10);
        }
        let ok = match kind {
            AnsatzKind::Hea | AnsatzKind::Ldca => singular == n,
            _ => regular as f64 >= 0.99 * n as f64,
        };
        passed &= ok;
        parts.push(format!(
            "{kind}: λ_min>1e-6 in {:.1}%, <1e-10 in {:.1}%",
            100.0 * regular as f64 / n as f64,
            100.0 * singular as f64 / n as f64
        ));
    }
    Ok(suite("qgt-rank", passed, parts.join("; ")))
}

fn gradient_check(n: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let h = 1e-5;
    let (mut jac_err, mut grad_err) = (0.0f64, 0.0f64);
    for k in 0..n {
        let kind = AnsatzKind::ALL[k % AnsatzKind::ALL.len()];
        let t = theta(kind, &mut rng);
        let nu: [f64; 6] = [(); 6].map(|_| rng.gen_range(-1.0..1.0));
        let ham = Hamiltonian::new(nu, "random")?;
        let jac = state_jacobian(kind, &t)?;
        let grad = energy_gradient(kind, &t, &ham)?;
        for j in 0..t.len() {
            let mut tp = t.clone();
            let mut tm = t.clone();
            tp[j] += h;
            tm[j] -= h;
            let (sp, sm) = (prepare_state(kind, &tp)?, prepare_state(kind, &tm)?);
            for r in 0..4 {
                let fd = (sp.amplitudes()[r] - sm.amplitudes()[r]) / (2.0 * h);
                jac_err = jac_err.max((fd - jac[(r, j)]).norm());
            }
            let fd = (energy(&ham, &sp)? - energy(&ham, &sm)?) / (2.0 * h);
            grad_err = grad_err.max((fd - grad[j]).abs());
        }
    }
    Ok(suite(
        "gradient-check",
        jac_err <= 1e-6 && grad_err <= 1e-6,
        format!("Jacobian {jac_err:.1e}, energy gradient {grad_err:.1e} (tol 1e-6)"),
    ))
}

/// Runs every suite. `samples` is the number of random draws per ansatz for
/// the cheap suites; the QGT and gradient suites use a tenth of it.
pub fn run_validation(conc: ConcurrenceFn, samples: usize) -> Result<Vec<SuiteResult>> {
    let n = samples.max(10);
    let small = (n / 10).max(1);
    Ok(vec![
        concurrence_equivalence(conc, n)?,
        hopf_invariants(n)?,
        curvature_consistency(n)?,
        curvature_engine()?,
        chart_convention()?,
        qgt_hermitian_psd(small)?,
        qgt_constant_entries(small)?,
        qgt_rank(small)?,
        gradient_check(small)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::concurrence_closed;

    #[test]
    fn mutated_concurrence_detected() {
        fn corrupted(kind: AnsatzKind, t: &[f64]) -> Result<f64> {
            Ok(match kind {
                AnsatzKind::Hea => ((2.0 * t[0]).sin() * (2.0 * t[1]).sin()).abs(),
                _ => concurrence_closed(kind, t)?,
            })
        }
        assert!(!concurrence_equivalence(corrupted, 200).unwrap().passed);
        assert!(concurrence_equivalence(concurrence_closed, 200).unwrap().passed);
    }

    #[test]
    fn default_convention_is_the_unique_match() {
        assert_eq!(matching_conventions().unwrap(), vec![ChartConvention::A]);
    }
}
