//! Right and left symmetry of vertices, with explicit asymmetry witnesses.

use crate::bjortho::{is_bj_orthogonal, OrthogonalityVerdict};
use crate::error::{Error, Result};
use crate::matkernel::svd::{svd, SvdResult};
use crate::matkernel::{BaseField, DivisionAlgebra, KMatrix, KScalar, KVector};

/// A matrix B certifying asymmetry together with both orthogonality checks.
#[derive(Debug, Clone)]
pub struct AsymmetryWitness {
    pub matrix: KMatrix,
    /// The relation that must hold: `B ⊥ A` (right) or `A ⊥ B` (left).
    pub holds: OrthogonalityVerdict,
    /// The reverse relation, which must fail.
    pub reverse: OrthogonalityVerdict,
    /// Which construction produced the witness (1 or 2; right witnesses use 1).
    pub stage: u8,
}

impl AsymmetryWitness {
    pub fn verified(&self) -> bool {
        self.holds.orthogonal && !self.reverse.orthogonal
    }
}

/// Whether `A` is a nonzero multiple of a unitary, i.e. right-symmetric.
pub fn is_right_symmetric(a: &KMatrix) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    Ok(svd(a).is_scaled_unitary())
}

/// `V·B₀·U*` where `A = V Σ U*`.
fn from_frame(a: &KMatrix, s: &SvdResult, b0: &KMatrix) -> KMatrix {
    let n = a.n();
    let mut b = KMatrix::zeros(a.algebra(), a.field(), n);
    for r in 0..n {
        for c in 0..n {
            let x = b0.get(r, c);
            if x.re != 0.0 {
                b.add_outer(&s.left_frame[r], &s.right_frame[c], x.re);
            }
        }
    }
    b
}

fn real_vector(n: usize, entries: &[(usize, f64)]) -> KVector {
    let mut v = vec![0.0; n];
    for &(i, x) in entries {
        v[i] = x;
    }
    KVector::from_reals(&v)
}

/// B with `B ⊥ A` but `A ⊥̸ B`, for A not a multiple of a unitary.
pub fn right_asymmetry_witness(a: &KMatrix) -> Result<AsymmetryWitness> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let s = svd(a);
    if s.is_scaled_unitary() {
        return Err(Error::UnitaryInput);
    }
    let n = a.n();
    let k = s.top_multiplicity();
    let sigma = s.sigma[k] / s.sigma[0];
    let (p, q) = (k - 1, k);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let w = 1.0 / (1.0 + sigma * sigma).sqrt();
    let x1 = real_vector(n, &[(p, h), (q, -h)]);
    let y1 = real_vector(n, &[(p, sigma * w), (q, w)]);
    let x2 = real_vector(n, &[(p, h), (q, h)]);
    let y2 = real_vector(n, &[(p, w), (q, -sigma * w)]);
    let (re, rf) = (DivisionAlgebra::Real, BaseField::Real);
    let mut b0 = KMatrix::zeros(re, rf, n);
    for j in 0..p {
        b0.set(j, j, KScalar::ONE);
    }
    b0.add_outer(&x1, &y1, 1.0);
    b0.add_outer(&x2, &y2, 1.0);
    let b = from_frame(a, &s, &b0);
    let holds = is_bj_orthogonal(&b, a)?;
    let reverse = is_bj_orthogonal(a, &b)?;
    Ok(AsymmetryWitness { matrix: b, holds, reverse, stage: 1 })
}

/// B with `A ⊥ B` but `B ⊥̸ A`; every nonzero A in `M_n(K)`, n ≥ 2, has one.
pub fn left_asymmetry_witness(a: &KMatrix) -> Result<AsymmetryWitness> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let n = a.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let s = svd(a);
    let (re, rf) = (DivisionAlgebra::Real, BaseField::Real);

    let e2 = real_vector(n, &[(1, 1.0)]);
    let b1 = from_frame(a, &s, &KMatrix::outer(re, rf, &e2, &e2));
    let holds = is_bj_orthogonal(a, &b1)?;
    let reverse = is_bj_orthogonal(&b1, a)?;
    if holds.orthogonal && !reverse.orthogonal {
        return Ok(AsymmetryWitness { matrix: b1, holds, reverse, stage: 1 });
    }

    let (c, sn) = (-0.5, 3f64.sqrt() / 2.0);
    let x = real_vector(n, &[(0, c), (1, sn)]);
    let y = real_vector(n, &[(0, -sn), (1, c)]);
    let mut b0 = KMatrix::outer(re, rf, &x, &x);
    b0.add_outer(&y, &y, -1.0 / 3.0);
    let b2 = from_frame(a, &s, &b0);
    let holds = is_bj_orthogonal(a, &b2)?;
    let reverse = is_bj_orthogonal(&b2, a)?;
    Ok(AsymmetryWitness { matrix: b2, holds, reverse, stage: 2 })
}
