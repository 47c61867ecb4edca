//! Successors of the second-to-last element of a maximal chain, grouped by neighborhood.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bjortho::NeighborhoodProfile;
use crate::error::{Error, Result};
use crate::matkernel::KMatrix;
use crate::orthograph::chain::{simultaneous_chain_representatives, Chain};
use crate::orthograph::neighborhood::{profile_equal, profile_subset};
use crate::random::random_unit_scalar;

/// Result of sampling successors `X` with `A_{n−1}^⊥ ⊊ X^⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessorBuckets {
    /// Distinct outgoing neighborhoods among accepted successors.
    pub buckets: usize,
    /// Bucket count after each draw.
    pub history: Vec<usize>,
    /// Draws whose successor failed the strict-inclusion check.
    pub rejected: usize,
}

impl SuccessorBuckets {
    /// Bucket count is exactly two and did not grow during the second half of the draws.
    pub fn stabilized_at_two(&self) -> bool {
        let half = self.history.len() / 2;
        let before = if half == 0 { 0 } else { self.history[half - 1] };
        self.buckets == 2 && before == 2
    }
}

/// Samples `sample_count` successors `X = V·diag(1,…,μ,…,1)·U*` of `A_{n−1}` with μ a
/// random unit scalar of K, and counts how many distinct outgoing neighborhoods occur.
pub fn successor_buckets(c: &Chain, sample_count: usize, seed: u64) -> Result<SuccessorBuckets> {
    successor_buckets_limited(c, sample_count, seed, None)
}

/// As [`successor_buckets`], stopping early once the count exceeds `limit`.
pub fn successor_buckets_limited(
    c: &Chain,
    sample_count: usize,
    seed: u64,
    limit: Option<usize>,
) -> Result<SuccessorBuckets> {
    if c.len() < 2 {
        return Err(Error::ChainTooShort(c.len()));
    }
    let reps = simultaneous_chain_representatives(c)?;
    if !reps.all_equal() {
        return Err(Error::NotMaximalChain("representatives do not match the chain".into()));
    }
    let n = c.n();
    let top = &reps.matrices[n - 1];
    let below = &reps.matrices[n - 2];
    // The coordinate where the diagonal form of A_{n−1} drops below one.
    let k = (0..n)
        .min_by(|&i, &j| {
            let di = reps.left_frame[i].dot(&below.mul_vec(&reps.right_frame[i])).abs();
            let dj = reps.left_frame[j].dot(&below.mul_vec(&reps.right_frame[j])).abs();
            di.total_cmp(&dj)
        })
        .expect("n ≥ 2");
    let base = NeighborhoodProfile::new(&c.elements()[n - 2])?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buckets: Vec<NeighborhoodProfile> = Vec::new();
    let mut history = Vec::with_capacity(sample_count);
    let mut rejected = 0;
    for _ in 0..sample_count {
        let mu = random_unit_scalar(&mut rng, top.algebra());
        let mut x = KMatrix::zeros(top.algebra(), top.field(), n);
        for i in 0..n {
            if i == k {
                let v = reps.left_frame[i].mul_right(mu);
                x.add_outer(&v, &reps.right_frame[i], 1.0);
            } else {
                x.add_outer(&reps.left_frame[i], &reps.right_frame[i], 1.0);
            }
        }
        let px = NeighborhoodProfile::new(&x)?;
        if !profile_subset(&base, &px) || profile_subset(&px, &base) {
            rejected += 1;
        } else if !buckets.iter().any(|b| profile_equal(b, &px)) {
            buckets.push(px);
        }
        history.push(buckets.len());
        if limit.is_some_and(|l| buckets.len() > l) {
            break;
        }
    }
    Ok(SuccessorBuckets { buckets: buckets.len(), history, rejected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::{BaseField, DivisionAlgebra};
    use crate::orthograph::build_maximal_chain;
    use crate::random::random_matrix;

    fn chain(alg: DivisionAlgebra, field: BaseField, n: usize, seed: u64) -> Chain {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        build_maximal_chain(&random_matrix(&mut rng, alg, field, n)).unwrap()
    }

    #[test]
    fn real_algebra_has_two_buckets() {
        let c = chain(DivisionAlgebra::Real, BaseField::Real, 2, 1);
        let b = successor_buckets(&c, 500, 7).unwrap();
        assert_eq!(b.buckets, 2);
        assert_eq!(b.rejected, 0);
        assert!(b.stabilized_at_two());
    }

    #[test]
    fn complex_field_buckets_grow() {
        let c = chain(DivisionAlgebra::Complex, BaseField::Complex, 2, 2);
        let b = successor_buckets(&c, 500, 7).unwrap();
        assert!(b.buckets >= 100);
        assert!(!b.stabilized_at_two());
    }

    #[test]
    fn quaternion_buckets_grow() {
        let c = chain(DivisionAlgebra::Quaternion, BaseField::Real, 2, 3);
        assert!(successor_buckets(&c, 500, 7).unwrap().buckets >= 100);
    }

    #[test]
    fn early_stop() {
        let c = chain(DivisionAlgebra::Complex, BaseField::Complex, 2, 4);
        let b = successor_buckets_limited(&c, 500, 7, Some(2)).unwrap();
        assert_eq!(b.buckets, 3);
        assert!(b.history.len() < 500);
    }

    #[test]
    fn one_dimensional_chain_is_too_short() {
        let c = chain(DivisionAlgebra::Real, BaseField::Real, 1, 5);
        assert_eq!(successor_buckets(&c, 10, 1), Err(Error::ChainTooShort(1)));
    }
}
