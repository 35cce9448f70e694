//! Closed-form output states of the circuit families.
//!
//! These maps are the canonical definitions of the ansätze. They are written
//! once, generically over [`Real`], so the same expressions produce both the
//! state and its exact parameter derivatives.

use super::dual::{Cx, Real};

fn half<T: Real>(x: T) -> T {
    x * T::cst(0.5)
}

pub fn hea<T: Real>(t: &[T]) -> [Cx<T>; 4] {
    let (t1, t2, t3, t4) = (t[0], t[1], t[2], t[3]);
    let (s1, c1, s3, c3) = (t1.sin(), t1.cos(), t3.sin(), t3.cos());
    let (sp, cp) = ((t2 + t4).sin(), (t2 + t4).cos());
    let (sm, cm) = ((t2 - t4).sin(), (t2 - t4).cos());
    [
        Cx::real(c1 * c3 * cp - s1 * s3 * sm),
        Cx::real(sp * c1 * c3 - s1 * s3 * cm),
        Cx::real(s3 * c1 * cp + s1 * sm * c3),
        Cx::real(s1 * c3 * cm + s3 * sp * c1),
    ]
}

pub fn ldca<T: Real>(t: &[T]) -> [Cx<T>; 4] {
    let (t1, t2, t3, t4, t5) = (t[0], t[1], t[2], t[3], t[4]);
    let phase = Cx::cis(-half(t1 - t2 - t4));
    let (s3, c3, s5, c5) = (t3.sin(), t3.cos(), t5.sin(), t5.cos());
    let a01 = Cx::new(c3 * c5, -(s3 * s5));
    let a10 = -Cx::new(s5 * c3, s3 * c5);
    [Cx::zero(), phase * a01, phase * a10, Cx::zero()]
}

pub fn qgan<T: Real>(t: &[T]) -> [Cx<T>; 4] {
    let (t1, t2, t3, t4, t5) = (t[0], t[1], t[2], t[3], t[4]);
    let (s1, c1) = (half(t1).sin(), half(t1).cos());
    let (s2, c2) = (half(t2).sin(), half(t2).cos());
    [
        Cx::cis(-half(t3 + t4 + t5)).scale(c1 * c2),
        -Cx::cis(-half(t3 - t4 - t5)).scale(s2 * c1).times_i(),
        -Cx::cis(half(t3 - t4 + t5)).scale(s1 * c2).times_i(),
        -Cx::cis(half(t3 + t4 - t5)).scale(s1 * s2),
    ]
}

pub fn shea<T: Real>(t: &[T]) -> [Cx<T>; 4] {
    let (t1, t2, t3, t4, t5, t6) = (t[0], t[1], t[2], t[3], t[4], t[5]);
    let (s1, c1) = (half(t1).sin(), half(t1).cos());
    let (s2, c2) = (half(t2).sin(), half(t2).cos());
    let (s3, c3) = (half(t3).sin(), half(t3).cos());
    let quarter_t4 = t4 * T::cst(0.25);
    [
        -Cx::cis(-half(t5 + t6)).scale(s2 * c1).times_i(),
        Cx::cis(-half(t5 - t6)) * Cx::new(c1 * c2 * c3, -(s1 * s2 * s3)),
        Cx::cis(half(t5 - t6)) * Cx::new(-(s1 * s2 * c3), s3 * c1 * c2),
        -Cx::cis(-quarter_t4 + half(t5 + t6)).scale(s1 * c2).times_i(),
    ]
}

/// `exp(−iθX/2)` followed by `exp(−iφZ/2)` on one qubit, as (a, b) ↦ (a', b').
fn rx_then_rz<T: Real>(a: Cx<T>, b: Cx<T>, x_angle: T, z_angle: T) -> (Cx<T>, Cx<T>) {
    let (s, c) = (half(x_angle).sin(), half(x_angle).cos());
    let a1 = a.scale(c) - b.scale(s).times_i();
    let b1 = b.scale(c) - a.scale(s).times_i();
    (a1 * Cx::cis(-half(z_angle)), b1 * Cx::cis(half(z_angle)))
}

/// QGAN followed by RX then RZ on each qubit; θ₆, θ₇ are the RX angles on
/// qubits 1 and 2, θ₈, θ₉ the RZ angles.
pub fn qgan_aug<T: Real>(t: &[T]) -> [Cx<T>; 4] {
    let mut s = qgan(&t[..5]);
    // qubit 1 pairs (|0b⟩, |1b⟩)
    for b in 0..2 {
        let (x, y) = rx_then_rz(s[b], s[2 + b], t[5], t[7]);
        s[b] = x;
        s[2 + b] = y;
    }
    // qubit 2 pairs (|a0⟩, |a1⟩)
    for a in 0..2 {
        let (x, y) = rx_then_rz(s[2 * a], s[2 * a + 1], t[6], t[8]);
        s[2 * a] = x;
        s[2 * a + 1] = y;
    }
    s
}
