//! Seeded sampling of scalars, vectors and matrices with Gaussian components.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::matkernel::{BaseField, DivisionAlgebra, KMatrix, KScalar, KVector};
use crate::matkernel::subspace::{push_orthonormal, KSubspace};
use crate::matkernel::svd::svd;

/// A scalar of `algebra` with i.i.d. standard normal components.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, algebra: DivisionAlgebra) -> KScalar {
    let mut c = [0.0; 4];
    for slot in c.iter_mut().take(algebra.real_dim()) {
        *slot = rng.sample(StandardNormal);
    }
    KScalar::new(c[0], c[1], c[2], c[3])
}

/// A scalar drawn uniformly from the unit sphere of `algebra`.
pub fn random_unit_scalar<R: Rng + ?Sized>(rng: &mut R, algebra: DivisionAlgebra) -> KScalar {
    loop {
        let q = random_scalar(rng, algebra);
        let n = q.abs();
        if n > 1e-3 {
            return q.scale(1.0 / n);
        }
    }
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, algebra: DivisionAlgebra, n: usize) -> KVector {
    KVector::from_vec((0..n).map(|_| random_scalar(rng, algebra)).collect())
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, algebra: DivisionAlgebra, n: usize) -> KVector {
    loop {
        if let Some(v) = random_vector(rng, algebra, n).normalized() {
            return v;
        }
    }
}

/// An n×n matrix with i.i.d. standard normal real components.
pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: DivisionAlgebra,
    field: BaseField,
    n: usize,
) -> KMatrix {
    let entries = (0..n * n).map(|_| random_scalar(rng, algebra)).collect();
    KMatrix::new(algebra, field, n, entries).expect("valid random matrix")
}

/// A random unitary, from Gram-Schmidt on Gaussian columns.
pub fn random_unitary<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: DivisionAlgebra,
    field: BaseField,
    n: usize,
) -> KMatrix {
    let mut frame = KSubspace::from_orthonormal(n, Vec::new());
    while frame.dim() < n {
        push_orthonormal(&mut frame, &random_vector(rng, algebra, n));
    }
    KMatrix::from_columns(algebra, field, frame.frame())
}

/// A random nonzero scalar of the base field.
pub fn random_field_scalar<R: Rng + ?Sized>(rng: &mut R, field: BaseField) -> KScalar {
    loop {
        let q = random_scalar(rng, field.as_division_algebra());
        if q.abs() > 1e-3 {
            return q;
        }
    }
}

/// A random B with `A ⊥ B`: a Gaussian matrix shifted along A so that `⟨Bu, Au⟩_F = 0` at a
/// top singular vector u of A. Falls back to the Gaussian draw when the shift cancels it,
/// which happens in one-dimensional algebras.
pub fn random_orthogonal_target<R: Rng + ?Sized>(rng: &mut R, a: &KMatrix) -> KMatrix {
    let b = random_matrix(rng, a.algebra(), a.field(), a.n());
    if a.is_zero() {
        return b;
    }
    let u = &svd(a).right_frame[0];
    let au = a.mul_vec(u);
    let t = field_part(a.field(), au.dot(&b.mul_vec(u))).scale(1.0 / au.norm_sqr());
    let shifted = b.add_scaled(-t, a);
    if shifted.max_abs_entry() <= 1e-9 * b.max_abs_entry() {
        b
    } else {
        shifted
    }
}

/// A random B with `B ⊥ A`, built as `σ·w u* + (I − ww*)·C·(I − uu*)` with `‖C‖ < σ` and
/// `⟨w, Au⟩_F = 0`, so that B attains its norm only at u. `None` when no unit w is
/// F-orthogonal to Au, as in `M₁(R)` and `M₁(C)` over C.
pub fn random_orthogonal_source<R: Rng + ?Sized>(rng: &mut R, a: &KMatrix) -> Option<KMatrix> {
    let (alg, field, n) = (a.algebra(), a.field(), a.n());
    let u = random_unit_vector(rng, alg, n);
    let au = a.mul_vec(&u);
    let mut w = random_vector(rng, alg, n);
    if au.norm() > 0.0 {
        let t = field_part(field, au.dot(&w)).scale(1.0 / au.norm_sqr());
        w = &w - &au.mul_right(t);
    }
    let norm = w.norm();
    if norm <= 1e-6 * (1.0 + au.norm()) {
        return None;
    }
    let w = w.scale(1.0 / norm);
    let sigma = 1.0 + rng.random::<f64>();
    let c = random_matrix(rng, alg, field, n);
    // ‖C‖ ≤ ‖C‖_F keeps the spectral norm below σ.
    let c = c.scale_real(0.9 * sigma / c.frobenius());
    let mut p = KMatrix::identity(alg, field, n);
    p.add_outer(&w, &w, -1.0);
    let mut q = KMatrix::identity(alg, field, n);
    q.add_outer(&u, &u, -1.0);
    let mut b = p.matmul(&c).matmul(&q);
    b.add_outer(&w, &u, sigma);
    Some(b)
}

/// The part of a scalar that lies in the base field.
fn field_part(field: BaseField, x: KScalar) -> KScalar {
    match field {
        BaseField::Real => KScalar::real(x.re),
        BaseField::Complex => KScalar::complex(x.re, x.i),
    }
}

/// A pair `(A, B)` of random matrices; with `boundary`, B comes from
/// [`random_orthogonal_target`] and sits on the edge of `A ⊥ B`.
pub fn random_pair<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: DivisionAlgebra,
    field: BaseField,
    n: usize,
    boundary: bool,
) -> (KMatrix, KMatrix) {
    let a = random_matrix(rng, algebra, field, n);
    let b = if boundary { random_orthogonal_target(rng, &a) } else { random_matrix(rng, algebra, field, n) };
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bjortho::is_bj_orthogonal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CASES: [(DivisionAlgebra, BaseField); 4] = [
        (DivisionAlgebra::Real, BaseField::Real),
        (DivisionAlgebra::Complex, BaseField::Real),
        (DivisionAlgebra::Complex, BaseField::Complex),
        (DivisionAlgebra::Quaternion, BaseField::Real),
    ];

    #[test]
    fn orthogonal_targets_are_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for (alg, field) in CASES {
            for n in 2..=4 {
                let a = random_matrix(&mut rng, alg, field, n);
                let b = random_orthogonal_target(&mut rng, &a);
                assert!(is_bj_orthogonal(&a, &b).unwrap().orthogonal);
            }
        }
    }

    #[test]
    fn orthogonal_sources_are_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for (alg, field) in CASES {
            for n in 1..=4 {
                let a = random_matrix(&mut rng, alg, field, n);
                match random_orthogonal_source(&mut rng, &a) {
                    Some(b) => assert!(is_bj_orthogonal(&b, &a).unwrap().orthogonal),
                    None => assert!(n == 1 && alg != DivisionAlgebra::Quaternion),
                }
            }
        }
    }
}
