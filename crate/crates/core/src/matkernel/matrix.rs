//! Column vectors in the right vector space K^n and square matrices over K.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::matkernel::scalar::{BaseField, DivisionAlgebra, KScalar};

/// A column vector of K^n. Scalars act on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct KVector {
    entries: Vec<KScalar>,
}

impl KVector {
    pub fn zeros(n: usize) -> Self {
        KVector { entries: vec![KScalar::ZERO; n] }
    }

    /// The standard basis vector `e_index`.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut v = KVector::zeros(n);
        v.entries[index] = KScalar::ONE;
        v
    }

    pub fn from_vec(entries: Vec<KScalar>) -> Self {
        KVector { entries }
    }

    pub fn from_reals(values: &[f64]) -> Self {
        KVector { entries: values.iter().map(|&v| KScalar::real(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[KScalar] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [KScalar] {
        &mut self.entries
    }

    /// `self* · other`, the K-valued inner product (conjugate-linear in `self`).
    pub fn dot(&self, other: &KVector) -> KScalar {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(KScalar::ZERO, |acc, (a, b)| acc + a.conj() * *b)
    }

    /// `Re(self* · other)`, the real inner product on K^n.
    pub fn real_dot(&self, other: &KVector) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.re * b.re + a.i * b.i + a.j * b.j + a.k * b.k)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Right scalar multiplication `x·q`.
    pub fn mul_right(&self, q: KScalar) -> KVector {
        KVector { entries: self.entries.iter().map(|&e| e * q).collect() }
    }

    pub fn scale(&self, s: f64) -> KVector {
        KVector { entries: self.entries.iter().map(|&e| e.scale(s)).collect() }
    }

    /// `self += x·q`.
    pub fn add_mul_right(&mut self, x: &KVector, q: KScalar) {
        for (e, &xe) in self.entries.iter_mut().zip(&x.entries) {
            *e += xe * q;
        }
    }

    pub fn normalized(&self) -> Option<KVector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.abs()).fold(0.0, f64::max)
    }
}

impl Add for &KVector {
    type Output = KVector;
    fn add(self, o: &KVector) -> KVector {
        KVector::from_vec(self.entries.iter().zip(&o.entries).map(|(a, b)| *a + *b).collect())
    }
}

impl Sub for &KVector {
    type Output = KVector;
    fn sub(self, o: &KVector) -> KVector {
        KVector::from_vec(self.entries.iter().zip(&o.entries).map(|(a, b)| *a - *b).collect())
    }
}

/// A dense n×n matrix over K, tagged with the field it is considered over.
#[derive(Debug, Clone, PartialEq)]
pub struct KMatrix {
    algebra: DivisionAlgebra,
    field: BaseField,
    n: usize,
    entries: Vec<KScalar>,
}

impl KMatrix {
    /// Validating constructor; `entries` is row-major.
    pub fn new(
        algebra: DivisionAlgebra,
        field: BaseField,
        n: usize,
        entries: Vec<KScalar>,
    ) -> Result<Self> {
        check_pairing(algebra, field)?;
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, found {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|q| !algebra.contains(**q)) {
            return Err(Error::InvalidMatrix(format!("entry {bad} lies outside {algebra}")));
        }
        if entries.iter().any(|q| !q.components().iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidMatrix("entries must be finite".into()));
        }
        Ok(KMatrix { algebra, field, n, entries })
    }

    pub fn zeros(algebra: DivisionAlgebra, field: BaseField, n: usize) -> Self {
        KMatrix { algebra, field, n, entries: vec![KScalar::ZERO; n * n] }
    }

    pub fn identity(algebra: DivisionAlgebra, field: BaseField, n: usize) -> Self {
        let mut m = KMatrix::zeros(algebra, field, n);
        for i in 0..n {
            m.entries[i * n + i] = KScalar::ONE;
        }
        m
    }

    pub fn diag(algebra: DivisionAlgebra, field: BaseField, d: &[KScalar]) -> Result<Self> {
        let n = d.len();
        let mut entries = vec![KScalar::ZERO; n * n];
        for (i, &v) in d.iter().enumerate() {
            entries[i * n + i] = v;
        }
        KMatrix::new(algebra, field, n, entries)
    }

    pub fn diag_real(algebra: DivisionAlgebra, field: BaseField, d: &[f64]) -> Result<Self> {
        let d: Vec<KScalar> = d.iter().map(|&v| KScalar::real(v)).collect();
        KMatrix::diag(algebra, field, &d)
    }

    /// A matrix with real entries given as rows, embedded in `M_n(K)`.
    pub fn from_real_rows(
        algebra: DivisionAlgebra,
        field: BaseField,
        rows: &[Vec<f64>],
    ) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("rows must form a square matrix".into()));
        }
        let entries = rows.iter().flatten().map(|&v| KScalar::real(v)).collect();
        KMatrix::new(algebra, field, n, entries)
    }

    /// The rank-one matrix `v·u*`.
    pub fn outer(algebra: DivisionAlgebra, field: BaseField, v: &KVector, u: &KVector) -> Self {
        let n = v.len();
        let mut m = KMatrix::zeros(algebra, field, n);
        m.add_outer(v, u, 1.0);
        m
    }

    /// `self += s·v·u*`.
    pub fn add_outer(&mut self, v: &KVector, u: &KVector, s: f64) {
        let n = self.n;
        for r in 0..n {
            let vr = v.entries()[r].scale(s);
            for c in 0..n {
                self.entries[r * n + c] += vr * u.entries()[c].conj();
            }
        }
    }

    /// The matrix whose columns are `cols` (exactly n of them).
    pub fn from_columns(algebra: DivisionAlgebra, field: BaseField, cols: &[KVector]) -> Self {
        let n = cols.len();
        let mut m = KMatrix::zeros(algebra, field, n);
        for (c, col) in cols.iter().enumerate() {
            for r in 0..n {
                m.entries[r * n + c] = col.entries()[r];
            }
        }
        m
    }

    pub fn algebra(&self) -> DivisionAlgebra {
        self.algebra
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[KScalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> KScalar {
        self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: KScalar) {
        self.entries[r * self.n + c] = v;
    }

    pub fn column(&self, c: usize) -> KVector {
        KVector::from_vec((0..self.n).map(|r| self.get(r, c)).collect())
    }

    /// Same matrix, reinterpreted over another algebra/field pair.
    pub fn with_algebra(&self, algebra: DivisionAlgebra, field: BaseField) -> Result<Self> {
        KMatrix::new(algebra, field, self.n, self.entries.clone())
    }

    /// Short label such as `M3(H)/R`.
    pub fn algebra_label(&self) -> String {
        format!("M{}({})/{}", self.n, self.algebra, self.field)
    }

    pub fn same_algebra(&self, other: &KMatrix) -> Result<()> {
        if self.algebra != other.algebra || self.field != other.field || self.n != other.n {
            return Err(Error::AlgebraMismatch {
                left: self.algebra_label(),
                right: other.algebra_label(),
            });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn adjoint(&self) -> KMatrix {
        let n = self.n;
        let mut out = KMatrix::zeros(self.algebra, self.field, n);
        for r in 0..n {
            for c in 0..n {
                out.entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &KVector) -> KVector {
        let n = self.n;
        let xs = x.entries();
        KVector::from_vec(
            (0..n)
                .map(|r| {
                    self.entries[r * n..(r + 1) * n]
                        .iter()
                        .zip(xs)
                        .fold(KScalar::ZERO, |acc, (a, b)| acc + *a * *b)
                })
                .collect(),
        )
    }

    pub fn matmul(&self, other: &KMatrix) -> KMatrix {
        let n = self.n;
        let mut out = KMatrix::zeros(self.algebra, self.field, n);
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        out
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, lambda: KScalar) -> KMatrix {
        KMatrix {
            entries: self.entries.iter().map(|&e| lambda * e).collect(),
            ..self.clone()
        }
    }

    pub fn scale_real(&self, s: f64) -> KMatrix {
        KMatrix { entries: self.entries.iter().map(|&e| e.scale(s)).collect(), ..self.clone() }
    }

    /// `self + lambda·other` for a base-field scalar `lambda`.
    pub fn add_scaled(&self, lambda: KScalar, other: &KMatrix) -> KMatrix {
        KMatrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + lambda * b)
                .collect(),
            ..self.clone()
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|e| e.abs()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &KMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (*a - *b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.n;
        (0..n).all(|r| (0..n).all(|c| r == c || self.entries[r * n + c].abs() <= tol))
    }
}

pub(crate) fn check_pairing(algebra: DivisionAlgebra, field: BaseField) -> Result<()> {
    if field == BaseField::Complex && algebra != DivisionAlgebra::Complex {
        return Err(Error::InvalidAlgebra(format!(
            "M_n({algebra}) cannot be taken over the complex field"
        )));
    }
    Ok(())
}

impl Add for &KMatrix {
    type Output = KMatrix;
    fn add(self, o: &KMatrix) -> KMatrix {
        self.add_scaled(KScalar::ONE, o)
    }
}

impl Sub for &KMatrix {
    type Output = KMatrix;
    fn sub(self, o: &KMatrix) -> KMatrix {
        self.add_scaled(-KScalar::ONE, o)
    }
}

impl Mul for &KMatrix {
    type Output = KMatrix;
    fn mul(self, o: &KMatrix) -> KMatrix {
        self.matmul(o)
    }
}

impl fmt::Display for KMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [", self.algebra_label())?;
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| format!("{:.6}", self.get(r, c).re)).collect();
            let row: Vec<String> = (0..self.n)
                .map(|c| {
                    let q = self.get(r, c);
                    if self.algebra == DivisionAlgebra::Real {
                        row[c].clone()
                    } else {
                        format!("{q:.6}")
                    }
                })
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
