//! Right-K-subspaces of K^n held as K-orthonormal frames.

use crate::matkernel::eigen::lambda_max_unchecked;
use crate::matkernel::matrix::{KMatrix, KVector};
use crate::matkernel::real::embed;
use crate::matkernel::scalar::{BaseField, DivisionAlgebra};

/// Residuals below this fraction of the input norm count as dependent.
pub const GS_DROP_TOL: f64 = 1e-10;

/// A right-K-subspace of K^n given by a K-orthonormal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct KSubspace {
    ambient_n: usize,
    frame: Vec<KVector>,
}

impl KSubspace {
    /// Wraps a frame already known to be K-orthonormal.
    pub fn from_orthonormal(ambient_n: usize, frame: Vec<KVector>) -> Self {
        debug_assert!(frame.len() <= ambient_n);
        KSubspace { ambient_n, frame }
    }

    pub fn full(n: usize) -> Self {
        KSubspace { ambient_n: n, frame: (0..n).map(|i| KVector::basis(n, i)).collect() }
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn frame(&self) -> &[KVector] {
        &self.frame
    }

    pub fn into_frame(self) -> Vec<KVector> {
        self.frame
    }

    /// Dimension over K.
    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    /// Orthogonal projection `x ↦ Σ u_j (u_j* x)`.
    pub fn project(&self, x: &KVector) -> KVector {
        let mut p = KVector::zeros(x.len());
        for u in &self.frame {
            p.add_mul_right(u, u.dot(x));
        }
        p
    }

    /// `x` minus its projection.
    pub fn residual(&self, x: &KVector) -> KVector {
        let mut r = x.clone();
        for u in &self.frame {
            let c = u.dot(&r);
            r.add_mul_right(u, -c);
        }
        r
    }

    /// Largest entry of `G − I` for the Gram matrix `G_ij = u_i* u_j`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.frame.iter().enumerate() {
            for (j, b) in self.frame.iter().enumerate() {
                let mut g = a.dot(b);
                if i == j {
                    g.re -= 1.0;
                }
                worst = worst.max(g.abs());
            }
        }
        worst
    }

    /// Whether `self ⊆ other`, measured by the spectral norm of `(I − P_other)·U_self`.
    pub fn is_contained_in(&self, other: &KSubspace, tol: f64) -> bool {
        if self.dim() > other.dim() {
            return false;
        }
        self.containment_defect(other) < tol
    }

    /// `‖(I − P_other)·U_self‖`, the operator norm of the residual frame.
    pub fn containment_defect(&self, other: &KSubspace) -> f64 {
        let residuals: Vec<KVector> = self.frame.iter().map(|u| other.residual(u)).collect();
        // ‖R‖² = λ_max(R*R) with R*R a small K-Hermitian Gram matrix.
        let k = residuals.len();
        if k == 0 {
            return 0.0;
        }
        let mut g = KMatrix::zeros(DivisionAlgebra::Quaternion, BaseField::Real, k);
        for i in 0..k {
            for j in 0..k {
                g.set(i, j, residuals[i].dot(&residuals[j]));
            }
        }
        lambda_max_unchecked(&embed(&g).symmetric_part()).max(0.0).sqrt()
    }
}

/// Right-K Gram-Schmidt with re-orthogonalization. Dependent vectors are dropped.
pub fn gram_schmidt_k(vectors: &[KVector]) -> KSubspace {
    let n = vectors.first().map_or(0, |v| v.len());
    let mut out = KSubspace { ambient_n: n, frame: Vec::new() };
    for v in vectors {
        push_orthonormal(&mut out, v);
    }
    out
}

/// Appends the normalized residual of `v` if it is not dependent. Returns whether it was kept.
pub fn push_orthonormal(space: &mut KSubspace, v: &KVector) -> bool {
    if space.frame.len() >= space.ambient_n {
        return false;
    }
    let norm0 = v.norm();
    if norm0 == 0.0 {
        return false;
    }
    let r = space.residual(&space.residual(v));
    let rn = r.norm();
    if rn < GS_DROP_TOL * norm0 {
        return false;
    }
    space.frame.push(r.scale(1.0 / rn));
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::real::vec_to_real;
    use crate::matkernel::scalar::KScalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_example() {
        let e1 = KVector::from_reals(&[1.0, 0.0]);
        let v = KVector::from_reals(&[1.0, 1.0]);
        let s = gram_schmidt_k(&[e1.clone(), v]);
        assert_eq!(s.frame(), &[e1, KVector::from_reals(&[0.0, 1.0])]);
    }

    #[test]
    fn quaternion_multiples_are_dependent() {
        let e1 = KVector::basis(2, 0);
        let s = gram_schmidt_k(&[e1.mul_right(KScalar::I), e1]);
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn rank_matches_real_embedding_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for rank in 1..=3 {
            for _ in 0..10 {
                // Five vectors in H^3 spanning a right-H-subspace of the given rank.
                let basis: Vec<KVector> = (0..rank)
                    .map(|_| crate::random::random_vector(&mut rng, DivisionAlgebra::Quaternion, 3))
                    .collect();
                let vectors: Vec<KVector> = (0..5)
                    .map(|_| {
                        let mut v = KVector::zeros(3);
                        for b in &basis {
                            v.add_mul_right(b, crate::random::random_scalar(&mut rng, DivisionAlgebra::Quaternion));
                        }
                        v
                    })
                    .collect();
                let s = gram_schmidt_k(&vectors);
                assert!(s.orthonormality_defect() < 1e-10);

                // Real span of all right-multiples v·{1,i,j,k}; its rank is 4·(K-rank).
                let mut real_cols = Vec::new();
                for v in &vectors {
                    for unit in [KScalar::ONE, KScalar::I, KScalar::J, KScalar::K] {
                        real_cols.push(vec_to_real(DivisionAlgebra::Quaternion, &v.mul_right(unit)));
                    }
                }
                let m = nalgebra::DMatrix::from_fn(12, real_cols.len(), |r, c| real_cols[c][r]);
                assert_eq!(m.rank(1e-8), 4 * s.dim());
                assert_eq!(s.dim(), rank);
            }
        }
    }
}
