//! Recovering `(F, K, n)` of a simple algebra from graph invariants, and the chain-length
//! simplicity test for complex direct sums.

use std::cell::Cell;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::bjortho::{minimize_over_field, Pencil, BRUTE_REL_TOL};
use crate::error::{Error, Result};
use crate::matkernel::{operator_norm, BaseField, DivisionAlgebra, KMatrix};
use crate::orthograph::{build_maximal_chain, successor_buckets, Chain};
use crate::random::random_matrix;

/// Which case of the classification fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremCase {
    /// dim is not a perfect square: `M_n(C)` over R.
    #[serde(rename = "i")]
    I,
    /// dim divisible by 4 with `n = √dim / 2`: `M_n(H)`.
    #[serde(rename = "ii")]
    Ii,
    /// `dim = n²` and exactly two successor classes: `M_n(R)`.
    #[serde(rename = "iii")]
    Iii,
    /// `dim = n²` otherwise: `M_n(C)` over C.
    #[serde(rename = "iv")]
    Iv,
    /// One-dimensional algebras have isomorphic graphs.
    #[serde(rename = "ambiguous_dim_one")]
    AmbiguousDimOne,
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremCase::I => "i",
            TheoremCase::Ii => "ii",
            TheoremCase::Iii => "iii",
            TheoremCase::Iv => "iv",
            TheoremCase::AmbiguousDimOne => "ambiguous_dim_one",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub dim: usize,
    pub chain_length: usize,
    /// Present only when the successor probe ran.
    pub bucket_count: Option<usize>,
}

/// `base_field` and `division_algebra` are `None` only for the one-dimensional case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub base_field: Option<BaseField>,
    pub division_algebra: Option<DivisionAlgebra>,
    pub n: usize,
    pub theorem_case: TheoremCase,
    pub evidence: Evidence,
}

impl ClassificationResult {
    /// Whether the result names exactly the given simple algebra.
    pub fn matches(&self, spec: &AlgebraSpec) -> bool {
        match spec.single_block() {
            Some(b) => {
                self.base_field == Some(spec.base_field())
                    && self.division_algebra == Some(b.division_algebra)
                    && self.n == b.n
            }
            None => false,
        }
    }
}

fn exact_sqrt(x: usize) -> Option<usize> {
    let r = (x as f64).sqrt().round() as usize;
    (r * r == x).then_some(r)
}

/// The decision procedure on `(dim, chain length)`; `bucket_probe` is called only when
/// `dim = n²` and must answer "do the successors fall into exactly two classes".
pub fn classify_from_invariants<P>(dim: usize, n: usize, bucket_probe: P) -> Result<ClassificationResult>
where
    P: FnOnce() -> Result<bool>,
{
    let bad = || Error::NotSimpleFiniteDimensional { dim, n };
    if dim == 0 || n == 0 {
        return Err(bad());
    }
    let evidence = Evidence { dim, chain_length: n, bucket_count: None };
    let result = |f, k, case| ClassificationResult {
        base_field: Some(f),
        division_algebra: Some(k),
        n,
        theorem_case: case,
        evidence: evidence.clone(),
    };
    if dim == 1 {
        if n != 1 {
            return Err(bad());
        }
        return Ok(ClassificationResult {
            base_field: None,
            division_algebra: None,
            n,
            theorem_case: TheoremCase::AmbiguousDimOne,
            evidence,
        });
    }
    let Some(root) = exact_sqrt(dim) else {
        return if dim == 2 * n * n {
            Ok(result(BaseField::Real, DivisionAlgebra::Complex, TheoremCase::I))
        } else {
            Err(bad())
        };
    };
    if dim.is_multiple_of(4) && 2 * n == root {
        Ok(result(BaseField::Real, DivisionAlgebra::Quaternion, TheoremCase::Ii))
    } else if n == root {
        if bucket_probe()? {
            Ok(result(BaseField::Real, DivisionAlgebra::Real, TheoremCase::Iii))
        } else {
            Ok(result(BaseField::Complex, DivisionAlgebra::Complex, TheoremCase::Iv))
        }
    } else {
        Err(bad())
    }
}

/// Classifies a simple algebra from its dimension, the length of a maximal chain through a
/// random element, and (when needed) the successor bucket count over `samples` draws.
pub fn classify(algebra: &AlgebraSpec, samples: usize, seed: u64) -> Result<ClassificationResult> {
    let block = algebra.single_block().ok_or(Error::NotSimple(algebra.blocks().len()))?;
    let dim = algebra.dimension();
    if dim == 1 {
        return Err(Error::DimensionOne);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_matrix(&mut rng, block.division_algebra, algebra.base_field(), block.n);
    let chain = build_maximal_chain(&a)?;
    let buckets = Cell::new(None);
    let mut result = classify_from_invariants(dim, chain.len(), || {
        let b = successor_buckets(&chain, samples, seed.wrapping_add(1))?;
        buckets.set(Some(b.buckets));
        Ok(b.stabilized_at_two())
    })?;
    result.evidence.bucket_count = buckets.get();
    Ok(result)
}

/// Partial identities `P_k = Σ_{i≤k} e_i e_i*` in the block-diagonal embedding into `M_N(C)`.
pub fn projection_chain(algebra: &AlgebraSpec) -> Result<Chain> {
    if algebra.base_field() != BaseField::Complex {
        return Err(Error::FieldNotComplex);
    }
    let n = algebra.total_n();
    let p = |k: usize| {
        let d: Vec<f64> = (0..n).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
        KMatrix::diag_real(DivisionAlgebra::Complex, BaseField::Complex, &d)
    };
    let elements = (1..=n).map(p).collect::<Result<Vec<_>>>()?;
    // P_k ∈ P_{k+1}^⊥ \ P_k^⊥, checked in the direct sum itself.
    for k in 0..n.saturating_sub(1) {
        let pk = split_blocks(algebra, &elements[k])?;
        let next = split_blocks(algebra, &elements[k + 1])?;
        if !direct_sum_bj(algebra, &next, &pk)? || direct_sum_bj(algebra, &pk, &pk)? {
            return Err(Error::VerificationFailed(format!("P{} does not separate P{} from P{}", k + 1, k + 2, k + 1)));
        }
    }
    Chain::new(elements)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityReport {
    pub dim: usize,
    pub chain_length: usize,
    pub simple: bool,
}

/// A complex algebra is simple iff its dimension is the square of its maximal chain length.
pub fn simplicity_test(algebra: &AlgebraSpec) -> Result<SimplicityReport> {
    let chain = projection_chain(algebra)?;
    let dim = algebra.dimension();
    Ok(SimplicityReport { dim, chain_length: chain.len(), simple: dim == chain.len() * chain.len() })
}

/// Splits a block-diagonal `M_N(K)` matrix into its blocks, rejecting off-block entries.
pub fn split_blocks(algebra: &AlgebraSpec, m: &KMatrix) -> Result<Vec<KMatrix>> {
    if m.n() != algebra.total_n() {
        return Err(Error::BlockMismatch(format!("expected size {}, found {}", algebra.total_n(), m.n())));
    }
    let mut blocks = Vec::with_capacity(algebra.blocks().len());
    let mut offset = 0;
    for b in algebra.blocks() {
        if m.algebra() != b.division_algebra || m.field() != algebra.base_field() {
            return Err(Error::BlockMismatch(format!("matrix is {}, block is M{}({})", m.algebra_label(), b.n, b.division_algebra)));
        }
        let mut entries = Vec::with_capacity(b.n * b.n);
        for r in 0..b.n {
            for c in 0..b.n {
                entries.push(m.get(offset + r, offset + c));
            }
        }
        blocks.push(KMatrix::new(b.division_algebra, algebra.base_field(), b.n, entries)?);
        offset += b.n;
    }
    let mut start = 0;
    for b in algebra.blocks() {
        for r in start..start + b.n {
            for c in 0..m.n() {
                if (c < start || c >= start + b.n) && !m.get(r, c).is_zero() {
                    return Err(Error::BlockMismatch(format!("entry ({r}, {c}) lies outside the blocks")));
                }
            }
        }
        start += b.n;
    }
    Ok(blocks)
}

fn check_blocks(algebra: &AlgebraSpec, x: &[KMatrix]) -> Result<()> {
    if x.len() != algebra.blocks().len() {
        return Err(Error::BlockMismatch(format!("expected {} blocks, found {}", algebra.blocks().len(), x.len())));
    }
    for (i, (m, b)) in x.iter().zip(algebra.blocks()).enumerate() {
        if m.n() != b.n || m.algebra() != b.division_algebra || m.field() != algebra.base_field() {
            return Err(Error::BlockMismatch(format!(
                "block {} is {}, expected M{}({})/{}",
                i + 1,
                m.algebra_label(),
                b.n,
                b.division_algebra,
                algebra.base_field()
            )));
        }
    }
    Ok(())
}

/// Birkhoff-James orthogonality `A ⊥ B` in a direct sum, where the norm is the maximum over
/// blocks. Always brute force: `λ ↦ max_j ‖A_j + λB_j‖` is minimized directly.
pub fn direct_sum_bj(algebra: &AlgebraSpec, a: &[KMatrix], b: &[KMatrix]) -> Result<bool> {
    check_blocks(algebra, a)?;
    check_blocks(algebra, b)?;
    let anorm = a.iter().map(operator_norm).fold(0.0, f64::max);
    let bnorm = b.iter().map(operator_norm).fold(0.0, f64::max);
    if anorm == 0.0 || bnorm == 0.0 {
        return Ok(true);
    }
    let pencils: Vec<Pencil> = a.iter().zip(b).map(|(x, y)| Pencil::new(x, y)).collect();
    let complex = algebra.base_field() == BaseField::Complex;
    let threshold = anorm - BRUTE_REL_TOL * anorm;
    let m = minimize_over_field(
        |re, im| pencils.iter().map(|p| p.norm_at(re, im)).fold(0.0, f64::max),
        complex,
        2.0 * anorm / bnorm,
        Some(threshold),
    );
    Ok(m.min_value >= threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bjortho::{is_bj_orthogonal, is_bj_orthogonal_bruteforce};
    use crate::matkernel::KScalar;

    fn never() -> Result<bool> {
        panic!("probe must not run")
    }

    fn case(dim: usize, n: usize, probe: bool) -> Result<ClassificationResult> {
        classify_from_invariants(dim, n, || Ok(probe))
    }

    #[test]
    fn invariant_cases() {
        let r = classify_from_invariants(18, 3, never).unwrap();
        assert_eq!((r.base_field, r.division_algebra, r.n), (Some(BaseField::Real), Some(DivisionAlgebra::Complex), 3));
        assert_eq!(r.theorem_case, TheoremCase::I);
        let r = classify_from_invariants(16, 2, never).unwrap();
        assert_eq!((r.division_algebra, r.theorem_case), (Some(DivisionAlgebra::Quaternion), TheoremCase::Ii));
        let r = case(9, 3, true).unwrap();
        assert_eq!((r.base_field, r.division_algebra, r.theorem_case), (Some(BaseField::Real), Some(DivisionAlgebra::Real), TheoremCase::Iii));
        let r = case(9, 3, false).unwrap();
        assert_eq!((r.base_field, r.division_algebra, r.theorem_case), (Some(BaseField::Complex), Some(DivisionAlgebra::Complex), TheoremCase::Iv));
        let r = classify_from_invariants(1, 1, never).unwrap();
        assert_eq!((r.base_field, r.theorem_case), (None, TheoremCase::AmbiguousDimOne));
    }

    #[test]
    fn inconsistent_invariants() {
        for (dim, n) in [(18, 2), (9, 2), (16, 3), (7, 1), (1, 2), (0, 1), (4, 0)] {
            assert_eq!(case(dim, n, true), Err(Error::NotSimpleFiniteDimensional { dim, n }), "{dim} {n}");
        }
    }

    #[test]
    fn cases_are_disjoint() {
        for n in 1..=12 {
            for (dim, probe) in [(n * n, true), (n * n, false), (2 * n * n, true), (4 * n * n, true)] {
                let fired = [TheoremCase::I, TheoremCase::Ii, TheoremCase::Iii, TheoremCase::Iv, TheoremCase::AmbiguousDimOne]
                    .iter()
                    .filter(|&&c| case(dim, n, probe).map(|r| r.theorem_case) == Ok(c))
                    .count();
                assert_eq!(fired, 1, "dim {dim} n {n}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        for (spec, tc) in [
            ("M3(C)", TheoremCase::I),
            ("M2(H)", TheoremCase::Ii),
            ("M3(R)", TheoremCase::Iii),
            ("M3(C)/C", TheoremCase::Iv),
            ("M1(H)", TheoremCase::Ii),
            ("M1(C)", TheoremCase::I),
        ] {
            let s: AlgebraSpec = spec.parse().unwrap();
            let r = classify(&s, 200, 5).unwrap();
            assert!(r.matches(&s), "{spec}: {r:?}");
            assert_eq!(r.theorem_case, tc);
            assert_eq!(r.evidence.bucket_count.is_some(), matches!(tc, TheoremCase::Iii | TheoremCase::Iv));
        }
    }

    #[test]
    fn classify_errors() {
        assert_eq!(classify(&"M1(R)".parse().unwrap(), 10, 1), Err(Error::DimensionOne));
        assert_eq!(classify(&"M1(C)/C".parse().unwrap(), 10, 1), Err(Error::DimensionOne));
        assert_eq!(classify(&"M2(C)+M1(C)/C".parse().unwrap(), 10, 1), Err(Error::NotSimple(2)));
    }

    #[test]
    fn projection_chains() {
        for (spec, len, simple) in [
            ("M2(C)+M1(C)/C", 3, false),
            ("M3(C)/C", 3, true),
            ("M1(C)+M1(C)+M1(C)/C", 3, false),
            ("M2(C)/C", 2, true),
            ("M1(C)+M1(C)/C", 2, false),
        ] {
            let s: AlgebraSpec = spec.parse().unwrap();
            assert_eq!(projection_chain(&s).unwrap().len(), len);
            assert_eq!(simplicity_test(&s).unwrap().simple, simple, "{spec}");
        }
        let r = simplicity_test(&"M2(C)+M1(C)/C".parse().unwrap()).unwrap();
        assert_eq!((r.dim, r.chain_length), (5, 3));
        assert_eq!(projection_chain(&"M2(C)".parse().unwrap()).unwrap_err(), Error::FieldNotComplex);
    }

    #[test]
    fn projection_chain_matches_maximal_chain_length() {
        let s: AlgebraSpec = "M3(C)/C".parse().unwrap();
        let a = random_matrix(&mut ChaCha8Rng::seed_from_u64(3), DivisionAlgebra::Complex, BaseField::Complex, 3);
        assert_eq!(projection_chain(&s).unwrap().len(), build_maximal_chain(&a).unwrap().len());
    }

    #[test]
    fn direct_sum_orthogonality() {
        let s: AlgebraSpec = "M2(C)+M1(C)/C".parse().unwrap();
        let c = DivisionAlgebra::Complex;
        let fc = BaseField::Complex;
        let blocks = |d: &[f64]| split_blocks(&s, &KMatrix::diag_real(c, fc, d).unwrap()).unwrap();
        let (p1, p2, p3) = (blocks(&[1.0, 0.0, 0.0]), blocks(&[1.0, 1.0, 0.0]), blocks(&[1.0, 1.0, 1.0]));
        let zero = blocks(&[0.0, 0.0, 0.0]);
        assert!(direct_sum_bj(&s, &p2, &zero).unwrap());
        assert!(direct_sum_bj(&s, &p2, &p1).unwrap());
        assert!(!direct_sum_bj(&s, &p1, &p1).unwrap());
        assert!(direct_sum_bj(&s, &p3, &p2).unwrap());
        assert!(!direct_sum_bj(&s, &p2, &p2).unwrap());
        assert!(matches!(direct_sum_bj(&s, &p1[..1], &p2), Err(Error::BlockMismatch(_))));
    }

    #[test]
    fn split_rejects_off_block_entries() {
        let s: AlgebraSpec = "M1(C)+M1(C)/C".parse().unwrap();
        let mut m = KMatrix::identity(DivisionAlgebra::Complex, BaseField::Complex, 2);
        m.set(0, 1, KScalar::ONE);
        assert!(matches!(split_blocks(&s, &m), Err(Error::BlockMismatch(_))));
    }

    #[test]
    fn single_block_agrees_with_simple_algebra() {
        let s: AlgebraSpec = "M2(C)/C".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (c, fc) = (DivisionAlgebra::Complex, BaseField::Complex);
        let mut agree = 0;
        let total = 500;
        for i in 0..total {
            let a = random_matrix(&mut rng, c, fc, 2);
            let mut b = random_matrix(&mut rng, c, fc, 2);
            if i % 2 == 0 {
                // Move half of the pairs onto the orthogonality boundary.
                let u = crate::matkernel::svd(&a).right_frame[0].clone();
                let au = a.mul_vec(&u);
                let t = au.dot(&b.mul_vec(&u)).scale(1.0 / au.norm_sqr());
                b = b.add_scaled(-t, &a);
            }
            let ds = direct_sum_bj(&s, std::slice::from_ref(&a), std::slice::from_ref(&b)).unwrap();
            assert_eq!(ds, is_bj_orthogonal_bruteforce(&a, &b).unwrap());
            if ds == is_bj_orthogonal(&a, &b).unwrap().orthogonal {
                agree += 1;
            }
        }
        assert!(agree as f64 >= 0.995 * total as f64, "{agree}/{total}");
    }
}
