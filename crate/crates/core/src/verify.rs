//! Property suites behind `bjclass verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraSpec, Block};
use crate::bjortho::{is_bj_orthogonal, is_bj_orthogonal_bruteforce, NeighborhoodProfile, TOL_ORTH};
use crate::classify::{classify, classify_from_invariants, simplicity_test};
use crate::error::{Error, Result};
use crate::io::ChainFile;
use crate::matkernel::{BaseField, KMatrix};
use crate::orthograph::{
    build_maximal_chain, is_right_symmetric, left_asymmetry_witness, outgoing_subset,
    right_asymmetry_witness, simultaneous_chain_representatives, Chain,
};
use crate::random::{random_matrix, random_orthogonal_source, random_orthogonal_target, random_pair, random_unitary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Classification,
    Oracle,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "classification" => Ok(Suite::Classification),
            "oracle" => Ok(Suite::Oracle),
            _ => Err(Error::InvalidAlgebra(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Lemmas => "lemmas",
            Suite::Classification => "classification",
            Suite::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub algebra: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Oracle suite only: fraction of pairs where both orthogonality paths agree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<f64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Agreement between the exact and brute-force orthogonality tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleStats {
    pub pairs: usize,
    pub agree: usize,
    pub disagree: usize,
    /// Largest `|margin|` among disagreements (0 if none).
    pub worst_margin: f64,
}

impl OracleStats {
    pub fn agreement(&self) -> f64 {
        self.agree as f64 / self.pairs.max(1) as f64
    }

    /// At least 99.5% agreement, and every disagreement within `10·TOL_ORTH` of the boundary.
    pub fn acceptable(&self) -> bool {
        self.agreement() >= 0.995 && self.worst_margin < 10.0 * TOL_ORTH
    }
}

/// Compares both orthogonality paths on `pairs` random pairs, half of them on the boundary.
pub fn oracle_agreement(block: Block, field: BaseField, pairs: usize, seed: u64) -> Result<OracleStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = OracleStats { pairs, agree: 0, disagree: 0, worst_margin: 0.0 };
    for i in 0..pairs {
        let (a, b) = random_pair(&mut rng, block.division_algebra, field, block.n, i % 2 == 0);
        let exact = is_bj_orthogonal(&a, &b)?;
        if exact.orthogonal == is_bj_orthogonal_bruteforce(&a, &b)? {
            stats.agree += 1;
        } else {
            stats.disagree += 1;
            stats.worst_margin = stats.worst_margin.max(exact.margin.abs());
        }
    }
    Ok(stats)
}

/// Counts sampled B with `B ⊥ A` but `A ⊥̸ B`; zero for right-symmetric A.
pub fn right_symmetry_violations<R: Rng>(rng: &mut R, a: &KMatrix, samples: usize) -> Result<usize> {
    let profile = NeighborhoodProfile::new(a)?;
    let mut violations = 0;
    for _ in 0..samples {
        let Some(b) = random_orthogonal_source(rng, a) else { continue };
        if is_bj_orthogonal(&b, a)?.orthogonal && !profile.decides_orthogonal(&b)? {
            violations += 1;
        }
    }
    Ok(violations)
}

/// Dimension law along a chain: `dim M₀(A_i) = i`.
pub fn dimension_law_holds(c: &Chain) -> bool {
    c.m0_dims().iter().enumerate().all(|(i, &d)| d == i + 1)
}

/// Validity, maximality and representative checks for a stored chain.
pub fn chain_file_checks(file: &ChainFile) -> Vec<Check> {
    let chain = match file.to_chain() {
        Ok(c) => c,
        Err(e) => return vec![Check::new("chain_valid", false, e.to_string())],
    };
    let mut checks = vec![Check::new("chain_valid", true, format!("{} strict steps", chain.len() - 1))];
    checks.push(Check::new("chain_maximal", chain.is_maximal(), format!("length {} in size {}", chain.len(), chain.n())));
    if chain.is_maximal() {
        match simultaneous_chain_representatives(&chain) {
            Ok(r) => checks.push(Check::new(
                "representatives_equal",
                r.verified(),
                format!("equal checks {:?}, diagonal propagation {:?}", r.equal_checks, r.diagonal_propagation),
            )),
            Err(e) => checks.push(Check::new("representatives_equal", false, e.to_string())),
        }
    }
    checks
}

/// Runs a suite with `trials` random cases per property.
pub fn run_suite(suite: Suite, algebra: &AlgebraSpec, seed: u64, trials: usize) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::Lemmas => lemmas(algebra, seed, trials)?,
        Suite::Classification => classification(algebra, seed, trials)?,
        Suite::Oracle => {
            let block = simple_block(algebra)?;
            let stats = oracle_agreement(block, algebra.base_field(), trials, seed)?;
            let report = VerifyReport {
                suite,
                algebra: algebra.to_string(),
                seed,
                checks: vec![Check::new(
                    "oracle_agreement",
                    stats.acceptable(),
                    format!(
                        "{}/{} agree ({:.2}%), worst disagreement margin {:.3e}",
                        stats.agree,
                        stats.pairs,
                        100.0 * stats.agreement(),
                        stats.worst_margin
                    ),
                )],
                agreement: Some(stats.agreement()),
            };
            return Ok(report);
        }
    };
    Ok(VerifyReport { suite, algebra: algebra.to_string(), seed, checks, agreement: None })
}

fn simple_block(algebra: &AlgebraSpec) -> Result<Block> {
    algebra.single_block().ok_or(Error::NotSimple(algebra.blocks().len()))
}

fn lemmas(algebra: &AlgebraSpec, seed: u64, trials: usize) -> Result<Vec<Check>> {
    let block = simple_block(algebra)?;
    let (alg, field, n) = (block.division_algebra, algebra.base_field(), block.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let chains = (0..trials)
        .map(|_| build_maximal_chain(&random_matrix(&mut rng, alg, field, n)))
        .collect::<Result<Vec<_>>>()?;
    let bad_len = chains.iter().filter(|c| c.len() != n).count();
    checks.push(Check::new("chain_length", bad_len == 0, format!("{bad_len}/{trials} chains not of length {n}")));
    let bad_dims = chains.iter().filter(|c| !dimension_law_holds(c)).count();
    checks.push(Check::new("m0_dimension", bad_dims == 0, format!("{bad_dims}/{trials} chains violate dim M0(A_i) = i")));

    let mut bad_reps = 0;
    for c in &chains {
        if !simultaneous_chain_representatives(c)?.verified() {
            bad_reps += 1;
        }
    }
    checks.push(Check::new("representatives", bad_reps == 0, format!("{bad_reps}/{trials} chains")));

    let mut bad_trans = 0;
    for c in &chains {
        let e = c.elements();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if !outgoing_subset(&e[i], &e[j])? {
                    bad_trans += 1;
                }
            }
        }
    }
    checks.push(Check::new("transitivity", bad_trans == 0, format!("{bad_trans} non-adjacent pairs out of order")));

    let (mut tested, mut violations) = (0, 0);
    for c in chains.iter().take(5) {
        for pair in c.elements().windows(2) {
            for _ in 0..100 {
                let b = random_orthogonal_target(&mut rng, &pair[0]);
                tested += 1;
                let v = is_bj_orthogonal(&pair[1], &b)?;
                if !v.orthogonal && v.margin < -10.0 * TOL_ORTH {
                    violations += 1;
                }
            }
        }
    }
    checks.push(Check::new(
        "subset_implication",
        violations == 0,
        format!("{violations}/{tested} orthogonal B lost along a chain step"),
    ));

    let (mut missing, mut symmetric_bad) = (0, 0);
    for _ in 0..trials {
        let a = random_matrix(&mut rng, alg, field, n);
        let symmetric = is_right_symmetric(&a)?;
        if symmetric {
            if right_symmetry_violations(&mut rng, &a, 50)? > 0 {
                symmetric_bad += 1;
            }
        } else if !right_asymmetry_witness(&a)?.verified() {
            missing += 1;
        }
        let u = random_unitary(&mut rng, alg, field, n).scale_real(0.5 + rng.random::<f64>());
        if !is_right_symmetric(&u)? || right_symmetry_violations(&mut rng, &u, 50)? > 0 {
            symmetric_bad += 1;
        }
    }
    checks.push(Check::new("right_asymmetry_witness", missing == 0, format!("{missing}/{trials} witnesses failed")));
    checks.push(Check::new("right_symmetry_of_unitaries", symmetric_bad == 0, format!("{symmetric_bad} violations")));

    if n >= 2 {
        let mut failed = 0;
        for _ in 0..trials {
            let a = random_matrix(&mut rng, alg, field, n);
            if !left_asymmetry_witness(&a)?.verified() {
                failed += 1;
            }
        }
        checks.push(Check::new("left_asymmetry_witness", failed == 0, format!("{failed}/{trials} witnesses failed")));
    } else {
        let a = random_matrix(&mut rng, alg, field, n);
        let rejected = left_asymmetry_witness(&a).err() == Some(Error::DimensionTooSmall(1));
        checks.push(Check::new("left_asymmetry_witness", rejected, "n = 1 has no left witness construction"));
    }
    Ok(checks)
}

fn classification(algebra: &AlgebraSpec, seed: u64, trials: usize) -> Result<Vec<Check>> {
    if !algebra.is_simple() {
        if algebra.base_field() != BaseField::Complex {
            return Err(Error::FieldNotComplex);
        }
        let r = simplicity_test(algebra)?;
        return Ok(vec![Check::new(
            "simplicity",
            !r.simple,
            format!("dim {} vs chain length {} squared", r.dim, r.chain_length),
        )]);
    }
    let mut checks = Vec::new();
    if algebra.dimension() == 1 {
        let r = classify_from_invariants(1, 1, || Ok(true))?;
        checks.push(Check::new("classification", true, format!("case {}", r.theorem_case)));
        return Ok(checks);
    }
    let mut wrong = Vec::new();
    for s in 0..trials as u64 {
        let r = classify(algebra, 500, seed.wrapping_add(s))?;
        if !r.matches(algebra) {
            wrong.push(format!("seed {}: {:?}/{:?}/{}", seed + s, r.base_field, r.division_algebra, r.n));
        }
    }
    checks.push(Check::new("classification", wrong.is_empty(), if wrong.is_empty() { format!("{trials} seeds") } else { wrong.join("; ") }));
    if algebra.base_field() == BaseField::Complex {
        let r = simplicity_test(algebra)?;
        checks.push(Check::new("simplicity", r.simple, format!("dim {} vs chain length {} squared", r.dim, r.chain_length)));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_suite_passes_on_small_algebras() {
        for spec in ["M2(R)", "M1(H)", "M2(C)/C", "M1(R)"] {
            let r = run_suite(Suite::Lemmas, &spec.parse().unwrap(), 3, 5).unwrap();
            assert!(r.passed(), "{spec}: {:?}", r.failures());
        }
    }

    #[test]
    fn oracle_suite_reports_agreement() {
        let r = run_suite(Suite::Oracle, &"M2(C)".parse().unwrap(), 1, 100).unwrap();
        assert!(r.passed());
        assert!(r.agreement.unwrap() >= 0.995);
    }

    #[test]
    fn classification_suite_handles_sums() {
        let r = run_suite(Suite::Classification, &"M2(C)+M1(C)/C".parse().unwrap(), 1, 1).unwrap();
        assert!(r.passed());
        assert_eq!(run_suite(Suite::Classification, &"M1(R)+M1(R)".parse().unwrap(), 1, 1), Err(Error::FieldNotComplex));
    }

    #[test]
    fn stored_chains() {
        let good: ChainFile = serde_json::from_str(include_str!("../fixtures/offdiagonal_chain.json")).unwrap();
        assert!(chain_file_checks(&good).iter().all(|c| c.passed));
        let bad: ChainFile = serde_json::from_str(include_str!("../fixtures/offdiagonal_chain_corrupted.json")).unwrap();
        assert!(chain_file_checks(&bad).iter().any(|c| !c.passed));
    }
}
