//! Base (S⁴) and fiber (S³) coordinates of a two-qubit state.

use nalgebra::Quaternion;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::simulator::Statevector;

/// Below this, `sin θ_A`, `sin φ_A` or `√(x₂² + x₃²)` count as zero.
const CHART_TOL: f64 = 1e-12;

/// An intrinsic angle, or the reason it is undefined at this point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartAngle {
    Value(f64),
    Singular(&'static str),
}

impl ChartAngle {
    pub fn value(self) -> Option<f64> {
        match self {
            ChartAngle::Value(v) => Some(v),
            ChartAngle::Singular(_) => None,
        }
    }

    pub fn is_singular(self) -> bool {
        matches!(self, ChartAngle::Singular(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopfBase {
    /// Cartesian coordinates x₀…x₄ on the unit S⁴.
    pub x: [f64; 5],
    pub theta_a: f64,
    pub phi_a: ChartAngle,
    pub chi: ChartAngle,
    pub xi: ChartAngle,
}

impl HopfBase {
    /// Concurrence read off the base point, `√(x₂² + x₃²)`.
    pub fn concurrence(&self) -> f64 {
        self.x[2].hypot(self.x[3])
    }
}

fn acos_clamped(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

pub fn hopf_base(state: &Statevector) -> Result<HopfBase> {
    state.check_normalized()?;
    let (a, b, g, d) = (state.alpha(), state.beta(), state.gamma(), state.delta());
    let x0 = a.norm_sqr() + b.norm_sqr() - g.norm_sqr() - d.norm_sqr();
    let cross = 2.0 * (a.conj() * g + b.conj() * d);
    let det = a * d - b * g;
    let (x1, x4) = (cross.re, cross.im);
    let (x3, x2) = (2.0 * det.re, -2.0 * det.im);

    let theta_a = acos_clamped(x0);
    let sin_a = theta_a.sin();
    let (phi_a, chi) = if sin_a < CHART_TOL {
        let why = "theta_a at a pole";
        (ChartAngle::Singular(why), ChartAngle::Singular(why))
    } else {
        let phi = acos_clamped(x1 / sin_a);
        let sin_phi = phi.sin();
        let chi = if sin_phi < CHART_TOL {
            ChartAngle::Singular("phi_a at a pole")
        } else {
            ChartAngle::Value(acos_clamped(x4 / (sin_a * sin_phi)))
        };
        (ChartAngle::Value(phi), chi)
    };
    let xi = if x2.hypot(x3) < CHART_TOL {
        ChartAngle::Singular("zero concurrence")
    } else {
        ChartAngle::Value(x3.atan2(x2))
    };
    Ok(HopfBase {
        x: [x0, x1, x2, x3, x4],
        theta_a,
        phi_a,
        chi,
        xi,
    })
}

/// Fiber data of a state. Quaternions are stored as `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberQuaternion {
    pub z: Complex64,
    pub w: Complex64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    /// Overlap with `c₊ = (γ₊, γ₋u)/√2`, `u = (z + wj)/√(|z|² + |w|²)`.
    pub q_plus: Quaternion<f64>,
    /// Overlap with the unit vector `c₋ = (γ₋, −γ₊u)/√2` orthogonal to `c₊`,
    /// so that `‖q₊‖² + ‖q₋‖² = 1`.
    pub q_minus: Quaternion<f64>,
    /// Overlap with `(γ₋, γ₊u)/√2`, the sign-flipped reading of `c₋`.
    /// This vector is not orthogonal to `c₊`.
    pub q_minus_same_sign: Quaternion<f64>,
}

impl FiberQuaternion {
    pub fn norm_sum(&self) -> f64 {
        self.q_plus.norm_squared() + self.q_minus.norm_squared()
    }
}

fn quaternion_pair(re_part: Complex64, j_part: Complex64) -> Quaternion<f64> {
    Quaternion::new(re_part.re, re_part.im, j_part.re, j_part.im)
}

pub fn hopf_fiber(state: &Statevector) -> Result<FiberQuaternion> {
    let base = hopf_base(state)?;
    let [_, x1, x2, x3, x4] = base.x;
    let z = Complex64::new(x1, x4) * 0.5;
    let w = Complex64::new(x3, -x2) * 0.5;
    let n2 = z.norm_sqr() + w.norm_sqr();
    if n2 > 1.0 + 1e-9 {
        return Err(Error::Numerical(format!("|z|² + |w|² = {n2} exceeds 1")));
    }
    let root = (1.0 - n2).max(0.0).sqrt();
    let gamma_plus = (1.0 + root).sqrt();
    let gamma_minus = (1.0 - root).max(0.0).sqrt();

    let n = n2.sqrt();
    let u = if n < CHART_TOL {
        Quaternion::identity()
    } else {
        quaternion_pair(z, w) / n
    };
    let a = quaternion_pair(state.alpha(), state.beta());
    let b = quaternion_pair(state.gamma(), state.delta());
    let ub = u.conjugate() * b;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(FiberQuaternion {
        z,
        w,
        gamma_plus,
        gamma_minus,
        q_plus: (a * gamma_plus + ub * gamma_minus) * s,
        q_minus: (a * gamma_minus - ub * gamma_plus) * s,
        q_minus_same_sign: (a * gamma_minus + ub * gamma_plus) * s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{prepare_state, AnsatzKind};
    use crate::geometry::concurrence;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn random_state(rng: &mut ChaCha8Rng) -> Statevector {
        let amps = [(); 4].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        Statevector::normalized(amps).unwrap()
    }

    fn random_theta(kind: AnsatzKind, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..kind.num_params()).map(|_| rng.gen_range(0.0..2.0 * PI)).collect()
    }

    fn quat_close(a: Quaternion<f64>, b: Quaternion<f64>, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn ground_state_base() {
        let h = hopf_base(&Statevector::basis(0)).unwrap();
        assert_eq!(h.x, [1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(h.theta_a, 0.0);
        assert!(h.phi_a.is_singular() && h.chi.is_singular() && h.xi.is_singular());
    }

    #[test]
    fn bell_state_base() {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let h = hopf_base(&Statevector::new([r, z, z, r])).unwrap();
        let expect = [0.0, 0.0, 0.0, 1.0, 0.0];
        for (got, want) in h.x.iter().zip(expect) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn base_invariants_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..2000 {
            let s = random_state(&mut rng);
            let h = hopf_base(&s).unwrap();
            assert!((h.x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-9);
            assert!((h.x[0] - h.theta_a.cos()).abs() < 1e-9);
            assert!((h.concurrence() - concurrence(&s)).abs() < 1e-9);
        }
    }

    #[test]
    fn angles_reconstruct_cartesian_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..2000 {
            let h = hopf_base(&random_state(&mut rng)).unwrap();
            let (ta, pa, chi, xi) = (
                h.theta_a,
                h.phi_a.value().unwrap(),
                h.chi.value().unwrap(),
                h.xi.value().unwrap(),
            );
            let radial = ta.sin() * pa.sin() * chi.sin();
            let rebuilt = [
                ta.cos(),
                ta.sin() * pa.cos(),
                radial * xi.cos(),
                radial * xi.sin(),
                ta.sin() * pa.sin() * chi.cos(),
            ];
            for (got, want) in rebuilt.iter().zip(h.x) {
                assert!((got - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn ground_state_fiber() {
        let f = hopf_fiber(&Statevector::basis(0)).unwrap();
        assert!(quat_close(f.q_plus, Quaternion::identity(), 1e-15));
        assert!(f.q_minus.norm() < 1e-15);
        assert!((f.gamma_plus - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(f.gamma_minus, 0.0);
    }

    #[test]
    fn fiber_norms_exhaust_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..2000 {
            let f = hopf_fiber(&random_state(&mut rng)).unwrap();
            assert!((f.norm_sum() - 1.0).abs() < 1e-9);
            let n2 = f.z.norm_sqr() + f.w.norm_sqr();
            assert!((f.gamma_plus.powi(2) - 1.0 - (1.0 - n2).sqrt()).abs() < 1e-9);
            assert!((f.gamma_minus.powi(2) - 1.0 + (1.0 - n2).sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn hea_closed_form_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let t = random_theta(AnsatzKind::Hea, &mut rng);
            let (t1, t2, t3) = (t[0], t[1], t[2]);
            let h = hopf_base(&prepare_state(AnsatzKind::Hea, &t).unwrap()).unwrap();
            let x0 = (2.0 * t1).cos() * (2.0 * t3).cos()
                - 8.0 * t1.sin() * t2.sin() * t3.sin() * t1.cos() * t2.cos() * t3.cos();
            let x1 = (2.0 * t1).sin() * (2.0 * t2).sin() * (2.0 * t3).cos() + (2.0 * t3).sin() * (2.0 * t1).cos();
            let x3 = (2.0 * t1).sin() * (2.0 * t2).cos();
            let want = [x0, x1, 0.0, x3, 0.0];
            for (got, want) in h.x.iter().zip(want) {
                assert!((got - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ldca_closed_form_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..100 {
            let t = random_theta(AnsatzKind::Ldca, &mut rng);
            let p = t[0] - t[1] - t[3];
            let (s3, c3, s5, c5) = ((2.0 * t[2]).sin(), (2.0 * t[2]).cos(), (2.0 * t[4]).sin(), (2.0 * t[4]).cos());
            let h = hopf_base(&prepare_state(AnsatzKind::Ldca, &t).unwrap()).unwrap();
            let want = [
                c3 * c5,
                0.0,
                p.sin() * s5 - s3 * p.cos() * c5,
                s3 * p.sin() * c5 + s5 * p.cos(),
                0.0,
            ];
            for (got, want) in h.x.iter().zip(want) {
                assert!((got - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn qgan_closed_form_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for _ in 0..100 {
            let t = random_theta(AnsatzKind::Qgan, &mut rng);
            let (t1, t2, t3, t5) = (t[0], t[1], t[2], t[4]);
            let h = hopf_base(&prepare_state(AnsatzKind::Qgan, &t).unwrap()).unwrap();
            let want = [
                t1.cos(),
                t1.sin() * (t3.sin() * t5.cos() + t5.sin() * t2.cos() * t3.cos()),
                -t1.sin() * t2.sin() * t5.sin(),
                0.0,
                t1.sin() * (t3.sin() * t5.sin() * t2.cos() - t3.cos() * t5.cos()),
            ];
            for (got, want) in h.x.iter().zip(want) {
                assert!((got - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn hea_closed_form_fiber() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..100 {
            let t = random_theta(AnsatzKind::Hea, &mut rng);
            let (t1, t2, t3, t4) = (t[0], t[1], t[2], t[3]);
            let (a1, a2, a3) = (2.0 * t1, 2.0 * t2, 2.0 * t3);
            let core = 2.0 * (2.0 * a1).sin() * a2.sin() * (2.0 * a3).sin()
                + 4.0 * a1.sin().powi(2) * (a2.cos().powi(2) + a2.sin().powi(2) * a3.cos().powi(2))
                + 4.0 * a3.sin().powi(2) * a1.cos().powi(2);
            let lambda1 = core.sqrt();
            let lambda2 = (core / 2.0).sqrt();
            let lambda3 = 2.0 * a1.sin() * a2.sin() * a3.sin() - 2.0 * a1.cos() * a3.cos() + 2.0;
            let x1 = a1.sin() * a2.sin() * a3.cos() + a3.sin() * a1.cos();
            let x3 = a1.sin() * a2.cos();
            let root = (1.0 - 0.25 * x3 * x3 - 0.25 * x1 * x1).sqrt();
            let (gp, gm) = ((1.0 + root).sqrt(), (1.0 - root).sqrt());
            let amp00 = t1.cos() * t3.cos() * (t2 + t4).cos() - t1.sin() * t3.sin() * (t2 - t4).sin();
            let amp01 = t1.sin() * t3.sin() * (t2 - t4).cos() - (t2 + t4).sin() * t1.cos() * t3.cos();
            let e = amp00 * (lambda3 * gm + lambda1 * gp);
            let f = amp01 * (-lambda3 * gm - lambda1 * gp);
            // e + j·f with real e, f
            let q_plus = Quaternion::new(e, 0.0, f, 0.0) / (2.0 * lambda2);
            let got = hopf_fiber(&prepare_state(AnsatzKind::Hea, &t).unwrap()).unwrap();
            assert!(quat_close(got.q_plus, q_plus, 1e-8), "{:?} vs {:?}", got.q_plus, q_plus);
            let e = amp00 * (lambda3 * gp + lambda1 * gm);
            let f = amp01 * (-lambda3 * gp - lambda1 * gm);
            let q_minus = Quaternion::new(e, 0.0, f, 0.0) / (2.0 * lambda2);
            assert!(quat_close(got.q_minus_same_sign, q_minus, 1e-8));
        }
    }

    #[test]
    fn ldca_closed_form_fiber() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        for _ in 0..100 {
            let t = random_theta(AnsatzKind::Ldca, &mut rng);
            let (t3, t5) = (t[2], t[4]);
            let hp = 0.5 * (t[0] - t[1] - t[3]);
            let mu1 = (3.0 - 2.0 * (4.0 * t3).cos() * (2.0 * t5).cos().powi(2) - (4.0 * t5).cos()).sqrt();
            let mu2 = 2.0 - 2.0 * (2.0 * t3).cos() * (2.0 * t5).cos();
            let mu3 = 2.0 * mu1 * mu1;
            let inner = ((4.0 * t5).cos() + (4.0 * t3).cos() * ((4.0 * t5).cos() + 1.0) + 13.0).sqrt();
            let (gp, gm) = (0.5 * (4.0 + inner).sqrt(), 0.5 * (4.0 - inner).max(0.0).sqrt());
            let g_base = t3.cos() * hp.cos() * t5.cos() - t3.sin() * hp.sin() * t5.sin();
            let h_base = hp.sin() * t3.cos() * t5.cos() + t3.sin() * t5.sin() * hp.cos();
            let q = |g1: f64, g2: f64| {
                let k = mu1 * g1 + mu2 * g2;
                Quaternion::new(0.0, 0.0, g_base * k, -h_base * k) / mu3.sqrt()
            };
            let got = hopf_fiber(&prepare_state(AnsatzKind::Ldca, &t).unwrap()).unwrap();
            assert!(quat_close(got.q_plus, q(gp, gm), 1e-8), "{:?} vs {:?}", got.q_plus, q(gp, gm));
            assert!(quat_close(got.q_minus_same_sign, q(gm, gp), 1e-8));
        }
    }

    #[test]
    fn qgan_closed_form_fiber() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let t = random_theta(AnsatzKind::Qgan, &mut rng);
            let (h1, h2) = (t[0] / 2.0, t[1] / 2.0);
            let sum = (t[2] + t[3] + t[4]) / 2.0;
            let diff = (t[2] - t[3] - t[4]) / 2.0;
            let inner = (14.0 + 2.0 * (2.0 * t[0]).cos()).sqrt();
            let (gp, gm) = (0.5 * (4.0 + inner).sqrt(), 0.5 * (4.0 - inner).sqrt());
            let body = Quaternion::new(
                h2.cos() * sum.cos(),
                -h2.cos() * sum.sin(),
                -h2.sin() * diff.sin(),
                -h2.sin() * diff.cos(),
            );
            // The printed form takes √(|z|² + |w|²) = ½ sin θ₁, valid for
            // θ₁ ∈ [0, π]; on (π, 2π) the modulus flips the sign of that term.
            let branch = t[0].sin().signum();
            let q = |g1: f64, g2: f64| body * ((branch * h1.sin() * g2 + h1.cos() * g1) * FRAC_1_SQRT_2);
            let got = hopf_fiber(&prepare_state(AnsatzKind::Qgan, &t).unwrap()).unwrap();
            assert!(quat_close(got.q_plus, q(gp, gm), 1e-8), "{:?} vs {:?}", got.q_plus, q(gp, gm));
            assert!(quat_close(got.q_minus_same_sign, q(gm, gp), 1e-8));
        }
    }

    #[test]
    fn rejects_unnormalized() {
        let s = Statevector::new([Complex64::new(2.0, 0.0); 4]);
        assert!(hopf_base(&s).is_err());
        assert!(hopf_fiber(&s).is_err());
    }
}
