//! Scalar types the closed-form state maps are generic over.
//!
//! Evaluating a map with [`Dual`] inputs yields the exact directional
//! derivative alongside the value (forward-mode differentiation), which is
//! how [`super::state_jacobian`] obtains its columns.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub trait Real: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn cst(x: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
}

/// `v + d·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn var(v: f64) -> Self {
        Self { v, d: 1.0 }
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
}

impl Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: -self.v, d: -self.d }
    }
}

impl Real for Dual {
    fn cst(x: f64) -> Self {
        Self { v: x, d: 0.0 }
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        Self { v: s, d: c * self.d }
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        Self { v: c, d: -s * self.d }
    }
}

/// Minimal complex number over a [`Real`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn real(re: T) -> Self {
        Self { re, im: T::cst(0.0) }
    }

    pub fn zero() -> Self {
        Self::real(T::cst(0.0))
    }

    /// `e^{iφ}`
    pub fn cis(phase: T) -> Self {
        Self { re: phase.cos(), im: phase.sin() }
    }

    /// Multiplication by `i`.
    pub fn times_i(self) -> Self {
        Self { re: -self.im, im: self.re }
    }

    pub fn scale(self, k: T) -> Self {
        Self { re: self.re * k, im: self.im * k }
    }
}

impl<T: Real> Add for Cx<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: Real> Sub for Cx<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: Real> Mul for Cx<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<T: Real> Neg for Cx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Cx<f64> {
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl Cx<Dual> {
    pub fn value(self) -> Complex64 {
        Complex64::new(self.re.v, self.im.v)
    }

    pub fn derivative(self) -> Complex64 {
        Complex64::new(self.re.d, self.im.d)
    }
}
