//! Chains `A₁^⊥ ⊊ A₂^⊥ ⊊ … ⊊ A_m^⊥` of nonzero elements.

use crate::bjortho::{is_bj_orthogonal, NeighborhoodProfile};
use crate::error::{Error, Result};
use crate::matkernel::subspace::push_orthonormal;
use crate::matkernel::svd::svd;
use crate::matkernel::{KMatrix, KSubspace, KVector, CLUSTER_TOL};
use crate::orthograph::neighborhood::{profile_equal, profile_subset};

/// Tolerance for calling a representative diagonal.
pub const DIAGONAL_TOL: f64 = 1e-9;

/// A strictly increasing chain of outgoing neighborhoods.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    elements: Vec<KMatrix>,
    strictness_witnesses: Vec<KMatrix>,
}

impl Chain {
    /// Validates strict increase along `elements` and attaches a witness for each step.
    pub fn new(elements: Vec<KMatrix>) -> Result<Self> {
        let first = elements.first().ok_or_else(|| Error::InvalidChain("chain is empty".into()))?;
        for m in &elements[1..] {
            first.same_algebra(m)?;
        }
        let profiles = elements
            .iter()
            .map(NeighborhoodProfile::new)
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidChain("chain elements must be nonzero".into()))?;
        let mut witnesses = Vec::with_capacity(elements.len().saturating_sub(1));
        for (i, pair) in profiles.windows(2).enumerate() {
            if !profile_subset(&pair[0], &pair[1]) {
                return Err(Error::InvalidChain(format!("element {} does not precede element {}", i + 1, i + 2)));
            }
            if profile_subset(&pair[1], &pair[0]) {
                return Err(Error::InvalidChain(format!("elements {} and {} have equal neighborhoods", i + 1, i + 2)));
            }
            let w = strictness_witness(&pair[0]);
            let forward = is_bj_orthogonal(pair[1].matrix(), &w)?;
            let back = pair[0].orthogonal_to(&w)?;
            if !forward.orthogonal || back.orthogonal {
                return Err(Error::VerificationFailed(format!("strictness witness for step {} failed", i + 1)));
            }
            witnesses.push(w);
        }
        Ok(Chain { elements, strictness_witnesses: witnesses })
    }

    pub fn elements(&self) -> &[KMatrix] {
        &self.elements
    }

    /// For each step `i`, an element of `A_{i+1}^⊥ \ A_i^⊥`.
    pub fn strictness_witnesses(&self) -> &[KMatrix] {
        &self.strictness_witnesses
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The matrix size n of the ambient algebra.
    pub fn n(&self) -> usize {
        self.elements[0].n()
    }

    /// Maximal chains in `M_n(K)` have length exactly n.
    pub fn is_maximal(&self) -> bool {
        self.len() == self.n()
    }

    /// `dim_K M₀(A_i)` along the chain.
    pub fn m0_dims(&self) -> Vec<usize> {
        self.elements.iter().map(|a| svd(a).top_multiplicity()).collect()
    }
}

/// `W = Σ (A u/‖A‖) u*` over a frame of `M₀(A)`: any `A'` with `M₀(A) ⊊ M₀(A')` has
/// `A' ⊥ W`, while the compression of `A*W` to `M₀(A)` is `‖A‖·I`, so `A ⊥̸ W`.
fn strictness_witness(p: &NeighborhoodProfile) -> KMatrix {
    let a = p.matrix();
    let mut w = KMatrix::zeros(a.algebra(), a.field(), a.n());
    for (u, au) in p.space().frame().iter().zip(p.images()) {
        w.add_outer(au, u, 1.0 / p.norm());
    }
    w
}

/// `Σ_{i≤m} v_i u_i*` for the first m frame pairs.
fn partial_isometry(a: &KMatrix, left: &[KVector], right: &[KVector], m: usize) -> KMatrix {
    let mut b = KMatrix::zeros(a.algebra(), a.field(), a.n());
    for (v, u) in left.iter().zip(right).take(m) {
        b.add_outer(v, u, 1.0);
    }
    b
}

/// One step up the preorder: absent for multiples of unitaries, otherwise
/// `Σ_{i≤k+1} v_i u_i*` with `k = dim M₀(A)`.
pub fn refine(a: &KMatrix) -> Result<Option<KMatrix>> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let s = svd(a);
    if s.is_scaled_unitary() {
        return Ok(None);
    }
    let k = s.top_multiplicity();
    Ok(Some(partial_isometry(a, &s.left_frame, &s.right_frame, k + 1)))
}

/// A maximal chain through the class of `A`: the ladder below it, `A`, then refinements.
pub fn build_maximal_chain(a: &KMatrix) -> Result<Chain> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let s = svd(a);
    let k = s.top_multiplicity();
    let mut elements: Vec<KMatrix> = (1..k).map(|j| partial_isometry(a, &s.left_frame, &s.right_frame, j)).collect();
    elements.push(a.clone());
    let mut top = a.clone();
    while let Some(next) = refine(&top)? {
        elements.push(next.clone());
        top = next;
        if elements.len() > a.n() {
            break;
        }
    }
    // Drop consecutive duplicates in the preorder.
    let mut kept: Vec<(KMatrix, NeighborhoodProfile)> = Vec::with_capacity(elements.len());
    for m in elements {
        let p = NeighborhoodProfile::new(&m)?;
        if kept.last().is_some_and(|(_, q)| profile_equal(q, &p)) {
            continue;
        }
        kept.push((m, p));
    }
    let chain = Chain::new(kept.into_iter().map(|(m, _)| m).collect())?;
    if !chain.is_maximal() {
        return Err(Error::VerificationFailed(format!(
            "built chain has length {} in {}",
            chain.len(),
            a.algebra_label()
        )));
    }
    Ok(chain)
}

/// Representatives sharing one pair of frames, per the simultaneous-SVD construction.
#[derive(Debug, Clone)]
pub struct ChainRepresentatives {
    /// `B₁, …, B_{n−1}, A_n` with `B_i = Σ_{k≤i} v_k u_k*`.
    pub matrices: Vec<KMatrix>,
    /// Right frame `{u_k}`; `u_1..u_i` spans `M₀(A_i)`.
    pub right_frame: Vec<KVector>,
    /// Left frame `v_k = A_n u_k / ‖A_n‖`.
    pub left_frame: Vec<KVector>,
    /// `outgoing_equal(A_i, B_i)` for `i < n`.
    pub equal_checks: Vec<bool>,
    /// When `A_n` is diagonal and `u_n` is a standard basis direction: whether `B_{n−1}` is diagonal.
    pub diagonal_propagation: Option<bool>,
}

impl ChainRepresentatives {
    pub fn all_equal(&self) -> bool {
        self.equal_checks.iter().all(|&b| b)
    }

    /// All checks that apply passed.
    pub fn verified(&self) -> bool {
        self.all_equal() && self.diagonal_propagation != Some(false)
    }
}

/// Replaces a maximal chain by representatives with a simultaneous singular value decomposition.
pub fn simultaneous_chain_representatives(c: &Chain) -> Result<ChainRepresentatives> {
    let n = c.n();
    if !c.is_maximal() {
        return Err(Error::NotMaximalChain(format!("length {} but n = {n}", c.len())));
    }
    let profiles = c.elements().iter().map(NeighborhoodProfile::new).collect::<Result<Vec<_>>>()?;
    let mut frame = KSubspace::from_orthonormal(n, Vec::new());
    for p in &profiles {
        let target = frame.dim() + 1;
        while frame.dim() < target {
            let best = p
                .space()
                .frame()
                .iter()
                .max_by(|x, y| frame.residual(x).norm().total_cmp(&frame.residual(y).norm()));
            match best {
                Some(v) if push_orthonormal(&mut frame, v) => {}
                _ => return Err(Error::NotMaximalChain("norm-attaining spaces do not grow by one".into())),
            }
        }
    }
    let right_frame = frame.into_frame();
    let top = c.elements().last().expect("nonempty chain");
    let top_norm = profiles.last().expect("nonempty chain").norm();
    let s = svd(top);
    if s.sigma[0] - s.sigma[n - 1] > CLUSTER_TOL * s.sigma[0] {
        return Err(Error::NotMaximalChain("last element is not a multiple of a unitary".into()));
    }
    let left_frame: Vec<KVector> = right_frame.iter().map(|u| top.mul_vec(u).scale(1.0 / top_norm)).collect();

    let mut matrices = Vec::with_capacity(n);
    let mut equal_checks = Vec::with_capacity(n.saturating_sub(1));
    for (i, p) in profiles.iter().enumerate().take(n - 1) {
        let b = partial_isometry(top, &left_frame, &right_frame, i + 1);
        equal_checks.push(profile_equal(p, &NeighborhoodProfile::new(&b)?));
        matrices.push(b);
    }
    matrices.push(top.clone());

    let diagonal_propagation = if n >= 2 && top.is_diagonal(DIAGONAL_TOL * top_norm) {
        let un = &right_frame[n - 1];
        let aligned = un.entries().iter().filter(|q| q.abs() > DIAGONAL_TOL).count() == 1;
        aligned.then(|| matrices[n - 2].is_diagonal(DIAGONAL_TOL))
    } else {
        None
    };
    Ok(ChainRepresentatives { matrices, right_frame, left_frame, equal_checks, diagonal_propagation })
}
