//! Singular value decomposition over K through the real embedding.

use crate::matkernel::eigen::{lambda_max_unchecked, sym_eigen};
use crate::matkernel::matrix::{KMatrix, KVector};
use crate::matkernel::real::{embed, vec_from_real};
use crate::matkernel::subspace::{push_orthonormal, KSubspace};

/// Relative tolerance under which two singular values are treated as equal.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Singular values below this fraction of σ₁ get a left vector from basis completion.
const ZERO_SIGMA_TOL: f64 = 1e-10;

/// `A = Σ σ_i v_i u_i*` with K-orthonormal frames `{v_i}` (left) and `{u_i}` (right).
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub sigma: Vec<f64>,
    pub left_frame: Vec<KVector>,
    pub right_frame: Vec<KVector>,
}

impl SvdResult {
    /// Number of leading singular values equal to σ₁ within [`CLUSTER_TOL`].
    pub fn top_multiplicity(&self) -> usize {
        let s1 = self.sigma[0];
        self.sigma.iter().take_while(|&&s| s1 - s <= CLUSTER_TOL * s1).count()
    }

    /// Whether all singular values agree, i.e. the matrix is a multiple of a unitary.
    pub fn is_scaled_unitary(&self) -> bool {
        let s1 = self.sigma[0];
        s1 > 0.0 && s1 - self.sigma[self.sigma.len() - 1] <= CLUSTER_TOL * s1
    }

    /// Rebuilds `Σ σ_i v_i u_i*` in the algebra of `like`.
    pub fn reconstruct(&self, like: &KMatrix) -> KMatrix {
        let mut m = KMatrix::zeros(like.algebra(), like.field(), like.n());
        for ((s, v), u) in self.sigma.iter().zip(&self.left_frame).zip(&self.right_frame) {
            m.add_outer(v, u, *s);
        }
        m
    }
}

/// SVD of a K-matrix.
///
/// The real eigenspaces of `ρ(A)ᵀρ(A)` are invariant under right K-scaling,
/// so each cluster of d·m eigenvectors lifts to an m-dimensional K-subspace.
pub fn svd(a: &KMatrix) -> SvdResult {
    let n = a.n();
    let alg = a.algebra();
    let d = alg.real_dim();
    let gram = embed(a).gram();
    let eig = sym_eigen(&gram).expect("Gram matrix is symmetric by construction");
    let lmax = eig.values[0].max(0.0);

    let mut right = KSubspace::from_orthonormal(n, Vec::new());
    if lmax > 0.0 {
        let dn = d * n;
        let mut start = 0;
        while start < dn && right.dim() < n {
            let mut end = start + 1;
            while end < dn && (eig.values[start] - eig.values[end] <= CLUSTER_TOL * lmax || (end - start) % d != 0)
            {
                end += 1;
            }
            let candidates: Vec<KVector> =
                (start..end).map(|c| vec_from_real(alg, &eig.vectors.column(c))).collect();
            for _ in 0..(end - start) / d {
                // Pivot on the candidate least explained by the frame so far.
                let best = candidates
                    .iter()
                    .max_by(|x, y| right.residual(x).norm().total_cmp(&right.residual(y).norm()));
                match best {
                    Some(v) if push_orthonormal(&mut right, v) => {}
                    _ => break,
                }
            }
            start = end;
        }
    }
    for i in 0..n {
        if right.dim() == n {
            break;
        }
        push_orthonormal(&mut right, &KVector::basis(n, i));
    }
    let right_frame = right.into_frame();

    let images: Vec<KVector> = right_frame.iter().map(|u| a.mul_vec(u)).collect();
    let norms: Vec<f64> = images.iter().map(|x| x.norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| norms[q].total_cmp(&norms[p]));

    let sigma: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let right_frame: Vec<KVector> = order.iter().map(|&i| right_frame[i].clone()).collect();
    let s1 = sigma[0];

    let mut left = KSubspace::from_orthonormal(n, Vec::new());
    let mut left_frame: Vec<Option<KVector>> = vec![None; n];
    for (slot, &i) in order.iter().enumerate() {
        if s1 > 0.0 && norms[i] > ZERO_SIGMA_TOL * s1 {
            let before = left.dim();
            if push_orthonormal(&mut left, &images[i]) {
                left_frame[slot] = Some(left.frame()[before].clone());
            }
        }
    }
    let mut basis = (0..n).map(|j| KVector::basis(n, j));
    for slot in left_frame.iter_mut().filter(|s| s.is_none()) {
        for e in basis.by_ref() {
            let before = left.dim();
            if push_orthonormal(&mut left, &e) {
                *slot = Some(left.frame()[before].clone());
                break;
            }
        }
    }
    let left_frame = left_frame.into_iter().map(|v| v.expect("frame completed")).collect();

    SvdResult { sigma, left_frame, right_frame }
}

/// Operator norm `max ‖Ax‖/‖x‖`, equal to σ₁.
pub fn operator_norm(a: &KMatrix) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    lambda_max_unchecked(&embed(a).gram()).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::scalar::{BaseField, DivisionAlgebra, KScalar};
    use crate::random::{random_matrix, random_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const FR: BaseField = BaseField::Real;

    #[test]
    fn identity_has_unit_singular_values() {
        for alg in DivisionAlgebra::ALL {
            let s = svd(&KMatrix::identity(alg, FR, 4));
            assert!(s.sigma.iter().all(|&x| (x - 1.0).abs() < 1e-14));
            assert!(s.is_scaled_unitary());
        }
    }

    #[test]
    fn rank_one_right_frame_starts_with_u() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for alg in DivisionAlgebra::ALL {
            let u = random_vector(&mut rng, alg, 3).normalized().unwrap();
            let v = random_vector(&mut rng, alg, 3).normalized().unwrap();
            let a = KMatrix::outer(alg, FR, &v, &u);
            let s = svd(&a);
            assert!((s.sigma[0] - 1.0).abs() < 1e-12);
            assert!(s.sigma[1..].iter().all(|&x| x < 1e-12));
            // u_1 = u·q for a unit scalar q.
            assert!((s.right_frame[0].dot(&u).abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn quaternion_sigma_matches_embedded_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, DivisionAlgebra::Quaternion, FR, 3);
            let s = svd(&a);
            let r = embed(&a);
            let m = nalgebra::DMatrix::from_row_slice(12, 12, r.data());
            let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
            sv.sort_by(|p, q| q.total_cmp(p));
            for (i, chunk) in sv.chunks(4).enumerate() {
                for x in chunk {
                    assert!((x - s.sigma[i]).abs() < 1e-10 * s.sigma[0]);
                }
            }
        }
    }

    #[test]
    fn reconstruction_and_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for alg in DivisionAlgebra::ALL {
            for n in 1..=5 {
                let a = random_matrix(&mut rng, alg, FR, n);
                let s = svd(&a);
                assert!(s.reconstruct(&a).max_abs_diff(&a) <= 1e-9 * s.sigma[0]);
                assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
                assert!(KSubspace::from_orthonormal(n, s.left_frame.clone()).orthonormality_defect() < 1e-10);
                assert!(KSubspace::from_orthonormal(n, s.right_frame.clone()).orthonormality_defect() < 1e-10);
            }
        }
    }

    #[test]
    fn singular_matrices_complete_the_left_frame() {
        let a = KMatrix::diag(
            DivisionAlgebra::Quaternion,
            FR,
            &[KScalar::J, KScalar::ZERO, KScalar::real(0.5)],
        )
        .unwrap();
        let s = svd(&a);
        assert_eq!(s.sigma[2], 0.0);
        assert!(s.reconstruct(&a).max_abs_diff(&a) < 1e-14);
        assert!(KSubspace::from_orthonormal(3, s.left_frame.clone()).orthonormality_defect() < 1e-14);
    }

    #[test]
    fn norm_examples() {
        let a = KMatrix::diag_real(DivisionAlgebra::Real, FR, &[3.0, 2.0]).unwrap();
        assert!((operator_norm(&a) - 3.0).abs() < 1e-15);
        assert_eq!(operator_norm(&KMatrix::zeros(DivisionAlgebra::Complex, FR, 3)), 0.0);
    }

    #[test]
    fn norm_dominates_random_vectors_and_is_attained() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for t in 0..100 {
            let alg = DivisionAlgebra::ALL[t % 3];
            let a = random_matrix(&mut rng, alg, FR, 3);
            let norm = operator_norm(&a);
            for _ in 0..1000 {
                let x = random_vector(&mut rng, alg, 3).normalized().unwrap();
                assert!(a.mul_vec(&x).norm() <= norm * (1.0 + 1e-12));
            }
            let top = &svd(&a).right_frame[0];
            assert!((a.mul_vec(top).norm() - norm).abs() < 1e-9 * norm);
        }
    }
}
