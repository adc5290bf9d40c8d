//! Quaternion algebra and the unit-hypersphere operations used by the networks.
//!
//! Vectors of quaternions are plain slices; bipolar and complex values are
//! quaternions whose trailing components are zero.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default per-component tolerance for approximate comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `q0 + q1 i + q2 j + q3 k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    /// A quaternion with zero vector part.
    pub const fn real(value: f64) -> Self {
        Self::new(value, 0.0, 0.0, 0.0)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }

    /// Real part `Re{q}`.
    pub fn re(self) -> f64 {
        self.q0
    }

    /// Vector part `(q1, q2, q3)`.
    pub fn ve(self) -> [f64; 3] {
        [self.q1, self.q2, self.q3]
    }

    pub fn conj(self) -> Self {
        Self::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }

    pub fn is_finite(self) -> bool {
        self.q0.is_finite() && self.q1.is_finite() && self.q2.is_finite() && self.q3.is_finite()
    }

    /// Projection onto the unit hypersphere, `q / |q|`.
    ///
    /// Fails for the zero quaternion and for non-finite input, which is exactly the
    /// case where the network update keeps the previous neuron state.
    pub fn sigma(self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::Domain(format!("sigma of non-finite quaternion {self}")));
        }
        let mut q = self;
        let mut norm = q.norm();
        if norm.is_infinite() {
            // Squared components overflowed; rescale by the largest magnitude first.
            let m = q.q0.abs().max(q.q1.abs()).max(q.q2.abs()).max(q.q3.abs());
            q = q.scale(1.0 / m);
            norm = q.norm();
        }
        if norm == 0.0 {
            return Err(Error::Domain("sigma undefined for the zero quaternion".into()));
        }
        let Self { q0, q1, q2, q3 } = q;
        Ok(Self::new(q0 / norm, q1 / norm, q2 / norm, q3 / norm))
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.q0 - other.q0)
            .abs()
            .max((self.q1 - other.q1).abs())
            .max((self.q2 - other.q2).abs())
            .max((self.q3 - other.q3).abs())
    }

    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Real with zero vector part and value ±1.
    pub fn is_bipolar(self) -> bool {
        self.q1 == 0.0 && self.q2 == 0.0 && self.q3 == 0.0 && (self.q0 == 1.0 || self.q0 == -1.0)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.q0, self.q1, self.q2, self.q3)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.q0 + rhs.q0, self.q1 + rhs.q1, self.q2 + rhs.q2, self.q3 + rhs.q3)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        self.q0 += rhs.q0;
        self.q1 += rhs.q1;
        self.q2 += rhs.q2;
        self.q3 += rhs.q3;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.q0 - rhs.q0, self.q1 - rhs.q1, self.q2 - rhs.q2, self.q3 - rhs.q3)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

/// Hamilton product. Not commutative.
impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
            p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
            p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
            p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

fn check_lengths(x: &[Quaternion], y: &[Quaternion]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(())
}

/// `<x, y> = sum_i conj(y_i) x_i`. The conjugate sits on the second argument.
pub fn inner(x: &[Quaternion], y: &[Quaternion]) -> Result<Quaternion> {
    check_lengths(x, y)?;
    Ok(x.iter().zip(y).fold(Quaternion::ZERO, |acc, (&xi, &yi)| acc + yi.conj() * xi))
}

/// `Re{<x, y>}`, the dot product of the concatenated 4-tuples.
pub fn inner_re(x: &[Quaternion], y: &[Quaternion]) -> Result<f64> {
    check_lengths(x, y)?;
    Ok(inner_re_unchecked(x, y))
}

pub(crate) fn inner_re_unchecked(x: &[Quaternion], y: &[Quaternion]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.q0 * b.q0 + a.q1 * b.q1 + a.q2 * b.q2 + a.q3 * b.q3)
        .sum()
}

/// Every component has norm 1 within `tol`.
pub fn is_unit_vector(x: &[Quaternion], tol: f64) -> bool {
    x.iter().all(|q| q.is_finite() && (q.norm() - 1.0).abs() <= tol)
}

/// Largest absolute componentwise difference between two equal-length vectors.
pub fn max_distance(x: &[Quaternion], y: &[Quaternion]) -> Result<f64> {
    check_lengths(x, y)?;
    Ok(x.iter()
        .zip(y)
        .map(|(a, b)| a.max_abs_diff(*b))
        .fold(0.0, f64::max))
}
