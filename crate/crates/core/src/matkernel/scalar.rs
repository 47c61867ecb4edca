//! Scalars of the three real division algebras.
//!
//! Every scalar is stored as a quaternion `re + i·i + j·j + k·k`. Reals and
//! complexes are the sub-algebras with trailing components equal to zero, so
//! one multiplication table serves all three cases.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the finite-dimensional real division algebras R, C, H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DivisionAlgebra {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternion,
}

impl DivisionAlgebra {
    pub const ALL: [DivisionAlgebra; 3] = [
        DivisionAlgebra::Real,
        DivisionAlgebra::Complex,
        DivisionAlgebra::Quaternion,
    ];

    /// Dimension over the reals: 1, 2 or 4.
    pub fn real_dim(self) -> usize {
        match self {
            DivisionAlgebra::Real => 1,
            DivisionAlgebra::Complex => 2,
            DivisionAlgebra::Quaternion => 4,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            DivisionAlgebra::Real => 'R',
            DivisionAlgebra::Complex => 'C',
            DivisionAlgebra::Quaternion => 'H',
        }
    }

    pub fn from_symbol(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(DivisionAlgebra::Real),
            "C" => Ok(DivisionAlgebra::Complex),
            "H" => Ok(DivisionAlgebra::Quaternion),
            other => Err(Error::InvalidAlgebra(format!(
                "unknown division algebra {other:?}"
            ))),
        }
    }

    /// Whether `q` has no components outside this algebra.
    pub fn contains(self, q: KScalar) -> bool {
        match self {
            DivisionAlgebra::Real => q.i == 0.0 && q.j == 0.0 && q.k == 0.0,
            DivisionAlgebra::Complex => q.j == 0.0 && q.k == 0.0,
            DivisionAlgebra::Quaternion => true,
        }
    }
}

impl fmt::Display for DivisionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The field of scalars an algebra is considered over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseField {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl BaseField {
    pub fn real_dim(self) -> usize {
        match self {
            BaseField::Real => 1,
            BaseField::Complex => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            BaseField::Real => 'R',
            BaseField::Complex => 'C',
        }
    }

    pub fn from_symbol(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(BaseField::Real),
            "C" => Ok(BaseField::Complex),
            other => Err(Error::InvalidAlgebra(format!("unknown base field {other:?}"))),
        }
    }

    /// The division algebra formed by the field's own scalars.
    pub fn as_division_algebra(self) -> DivisionAlgebra {
        match self {
            BaseField::Real => DivisionAlgebra::Real,
            BaseField::Complex => DivisionAlgebra::Complex,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A real, complex or quaternion scalar.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KScalar {
    pub re: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl KScalar {
    pub const ZERO: KScalar = KScalar::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: KScalar = KScalar::new(1.0, 0.0, 0.0, 0.0);
    pub const I: KScalar = KScalar::new(0.0, 1.0, 0.0, 0.0);
    pub const J: KScalar = KScalar::new(0.0, 0.0, 1.0, 0.0);
    pub const K: KScalar = KScalar::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(re: f64, i: f64, j: f64, k: f64) -> Self {
        KScalar { re, i, j, k }
    }

    pub const fn real(re: f64) -> Self {
        KScalar::new(re, 0.0, 0.0, 0.0)
    }

    pub const fn complex(re: f64, im: f64) -> Self {
        KScalar::new(re, im, 0.0, 0.0)
    }

    /// `e^{it}` as a complex scalar.
    pub fn unit_complex(t: f64) -> Self {
        KScalar::complex(t.cos(), t.sin())
    }

    /// Builds a scalar from the leading `algebra.real_dim()` components.
    pub fn from_components(algebra: DivisionAlgebra, c: &[f64]) -> Result<Self> {
        if c.len() != algebra.real_dim() {
            return Err(Error::InvalidMatrix(format!(
                "expected {} components for {algebra}, found {}",
                algebra.real_dim(),
                c.len()
            )));
        }
        let mut q = KScalar::ZERO;
        for (slot, &v) in [&mut q.re, &mut q.i, &mut q.j, &mut q.k].into_iter().zip(c) {
            *slot = v;
        }
        Ok(q)
    }

    pub fn components(self) -> [f64; 4] {
        [self.re, self.i, self.j, self.k]
    }

    pub fn conj(self) -> Self {
        KScalar::new(self.re, -self.i, -self.j, -self.k)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.i * self.i + self.j * self.j + self.k * self.k
    }

    pub fn abs(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        KScalar::new(self.re * s, self.i * s, self.j * s, self.k * s)
    }

    pub fn inv(self) -> Self {
        self.conj().scale(1.0 / self.norm_sqr())
    }

    pub fn is_zero(self) -> bool {
        self.re == 0.0 && self.i == 0.0 && self.j == 0.0 && self.k == 0.0
    }
}

impl Add for KScalar {
    type Output = KScalar;
    fn add(self, o: KScalar) -> KScalar {
        KScalar::new(self.re + o.re, self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl AddAssign for KScalar {
    fn add_assign(&mut self, o: KScalar) {
        *self = *self + o;
    }
}

impl Sub for KScalar {
    type Output = KScalar;
    fn sub(self, o: KScalar) -> KScalar {
        KScalar::new(self.re - o.re, self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl SubAssign for KScalar {
    fn sub_assign(&mut self, o: KScalar) {
        *self = *self - o;
    }
}

impl Neg for KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        KScalar::new(-self.re, -self.i, -self.j, -self.k)
    }
}

impl Mul for KScalar {
    type Output = KScalar;
    // Hamilton product; ij = k, jk = i, ki = j.
    fn mul(self, o: KScalar) -> KScalar {
        let (a1, b1, c1, d1) = (self.re, self.i, self.j, self.k);
        let (a2, b2, c2, d2) = (o.re, o.i, o.j, o.k);
        KScalar::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for KScalar {
    type Output = KScalar;
    fn mul(self, s: f64) -> KScalar {
        self.scale(s)
    }
}

impl fmt::Display for KScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        for (v, unit) in [(self.i, "i"), (self.j, "j"), (self.k, "k")] {
            if v != 0.0 {
                write!(f, "{}{}{unit}", if v < 0.0 { "-" } else { "+" }, v.abs())?;
            }
        }
        Ok(())
    }
}
