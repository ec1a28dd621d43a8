//! Scalar algebras for two-level pair states.
//!
//! Three normed division algebras parametrize the state spaces handled by
//! this crate: the reals, the complex numbers, and the quaternions.
//! [`ScalarKind`] tags data with the algebra it lives in, [`Quaternion`]
//! implements Hamilton's algebra, and the [`Scalar`] trait lets the
//! fixed-size matrix code in [`crate::linalg`] work over all three.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64;

/// Which division algebra the coefficients of a state are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Real,
    Complex,
    Quaternion,
}

impl ScalarKind {
    /// Name of the algebra: `"real"`, `"complex"`, or `"quaternion"`.
    pub fn algebra_name(self) -> &'static str {
        match self {
            ScalarKind::Real => "real",
            ScalarKind::Complex => "complex",
            ScalarKind::Quaternion => "quaternion",
        }
    }

    /// Name of the two-level system built on this algebra:
    /// `"rebit"`, `"qubit"`, or `"quaterbit"`.
    pub fn bit_name(self) -> &'static str {
        match self {
            ScalarKind::Real => "rebit",
            ScalarKind::Complex => "qubit",
            ScalarKind::Quaternion => "quaterbit",
        }
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.algebra_name())
    }
}

/// A quaternion `w + x i + y j + z k` over f64 components.
///
/// Multiplication follows Hamilton's rules `ij = -ji = k`, `jk = -kj = i`,
/// `ki = -ik = j`, `i^2 = j^2 = k^2 = -1`, and is not commutative.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn from_real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Quaternionic conjugate: the three imaginary components flip sign.
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared norm `w^2 + x^2 + y^2 + z^2`; equals `q * q.conj()`.
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, k: f64) -> Self {
        Quaternion::new(self.w * k, self.x * k, self.y * k, self.z * k)
    }

    /// Largest absolute component outside the subalgebra `kind`.
    ///
    /// Real excludes x, y, z; Complex excludes y, z (the complex unit is
    /// identified with i); Quaternion excludes nothing.
    pub fn deviation_from(self, kind: ScalarKind) -> f64 {
        match kind {
            ScalarKind::Real => self.x.abs().max(self.y.abs()).max(self.z.abs()),
            ScalarKind::Complex => self.y.abs().max(self.z.abs()),
            ScalarKind::Quaternion => 0.0,
        }
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product; the order of the factors matters.
    fn mul(self, r: Quaternion) -> Quaternion {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        Quaternion::new(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:+}{:+}i{:+}j{:+}k",
            self.w, self.x, self.y, self.z
        )
    }
}

/// Entry type for the fixed-size matrices in [`crate::linalg`].
///
/// Implementors are the three algebras of [`ScalarKind`]. Multiplication
/// must be written in operand order everywhere it is used, so the matrix
/// code stays correct for the non-commutative quaternions.
pub trait Scalar:
    Copy
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    /// Conjugation; the identity on the reals.
    fn conj(self) -> Self;
    /// Squared absolute value, always a real number.
    fn norm_sq(self) -> f64;
    /// Real part.
    fn re(self) -> f64;
    /// Multiplication by a real factor (commutes in every kind).
    fn scale(self, k: f64) -> Self;
    /// Largest absolute component outside the subalgebra `kind`.
    fn kind_deviation(self, kind: ScalarKind) -> f64;

    fn abs(self) -> f64 {
        self.norm_sq().sqrt()
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Real;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn conj(self) -> Self {
        self
    }
    fn norm_sq(self) -> f64 {
        self * self
    }
    fn re(self) -> f64 {
        self
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn kind_deviation(self, _kind: ScalarKind) -> f64 {
        0.0
    }
}

impl Scalar for Complex64 {
    const KIND: ScalarKind = ScalarKind::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::new(self.re, -self.im)
    }
    fn norm_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
    fn re(self) -> f64 {
        self.re
    }
    fn scale(self, k: f64) -> Self {
        Complex64::new(self.re * k, self.im * k)
    }
    fn kind_deviation(self, kind: ScalarKind) -> f64 {
        match kind {
            ScalarKind::Real => self.im.abs(),
            ScalarKind::Complex | ScalarKind::Quaternion => 0.0,
        }
    }
}

impl Scalar for Quaternion {
    const KIND: ScalarKind = ScalarKind::Quaternion;

    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn one() -> Self {
        Quaternion::ONE
    }
    fn from_real(x: f64) -> Self {
        Quaternion::from_real(x)
    }
    fn conj(self) -> Self {
        Quaternion::conj(self)
    }
    fn norm_sq(self) -> f64 {
        Quaternion::norm_sq(self)
    }
    fn re(self) -> f64 {
        self.w
    }
    fn scale(self, k: f64) -> Self {
        Quaternion::scale(self, k)
    }
    fn kind_deviation(self, kind: ScalarKind) -> f64 {
        self.deviation_from(kind)
    }
}
