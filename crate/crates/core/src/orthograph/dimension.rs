//! Heuristic search for the smallest set Ω whose outgoing neighborhoods meet only in zero.
//!
//! A set with `∩_{x∈Ω} x^⊥ = {0}` has no finite certificate, so "no common member" below
//! means only that randomized minimization of the orthogonality defect did not find one.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::bjortho::{bj_min_norm, field_inner};
use crate::error::{Error, Result};
use crate::matkernel::real::RealMatrix;
use crate::matkernel::svd::svd;
use crate::matkernel::{operator_norm, sym_eigen, BaseField, KMatrix, KScalar};
use crate::random::random_matrix;

/// Defect below `FOUND_TOL · Σ‖x‖` counts as a common member.
pub const FOUND_TOL: f64 = 1e-7;
const RESTARTS: usize = 3;
const MAX_EVALS: usize = 300;
const NULL_TOL: f64 = 1e-10;

/// Outcome of [`graph_dimension_search`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionSearch {
    /// Size of the greedy set with no common member found, if the pool sufficed.
    pub candidate_size: Option<usize>,
    /// Every sampled subset of size `candidate_size − 1` had a common member.
    pub refuted_smaller: bool,
    /// Pool indices of the greedy set.
    pub members: Vec<usize>,
    /// Refutation trials run and how many found a common member.
    pub trials: usize,
    pub refuted: usize,
}

/// Real coordinates of the algebra, mapped to matrices and back.
struct Coordinates {
    like: KMatrix,
    d: usize,
}

impl Coordinates {
    fn new(like: KMatrix) -> Self {
        let d = like.algebra().real_dim();
        Coordinates { like, d }
    }

    fn len(&self) -> usize {
        self.like.n() * self.like.n() * self.d
    }

    fn matrix(&self, x: &[f64]) -> KMatrix {
        let entries = x
            .chunks(self.d)
            .map(|c| {
                let mut q = [0.0; 4];
                q[..self.d].copy_from_slice(c);
                KScalar::new(q[0], q[1], q[2], q[3])
            })
            .collect();
        KMatrix::new(self.like.algebra(), self.like.field(), self.like.n(), entries)
            .expect("coordinates match the algebra")
    }

    fn basis(&self, i: usize) -> KMatrix {
        let mut x = vec![0.0; self.len()];
        x[i] = 1.0;
        self.matrix(&x)
    }
}

/// `Σ_{x∈Ω} max(0, ‖x‖ − min_λ ‖x + λB‖)`.
fn defect(omega: &[KMatrix], norms: &[f64], b: &KMatrix) -> f64 {
    if b.is_zero() {
        return f64::INFINITY;
    }
    omega
        .iter()
        .zip(norms)
        .map(|(x, &nx)| (nx - bj_min_norm(x, b).expect("same algebra").min_value).max(0.0))
        .sum()
}

/// Elements of the common kernel of the linearized conditions `⟨B u_x, x u_x⟩_F = 0`,
/// where `u_x` is a top right singular vector of x.
fn linear_probe(coords: &Coordinates, omega: &[KMatrix]) -> Vec<Vec<f64>> {
    let dim = coords.len();
    let basis: Vec<KMatrix> = (0..dim).map(|i| coords.basis(i)).collect();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for x in omega {
        let s = svd(x);
        let u = &s.right_frame[0];
        let xu = x.mul_vec(u);
        let values: Vec<KScalar> =
            basis.iter().map(|e| field_inner(x.field(), &e.mul_vec(u), &xu)).collect();
        rows.push(values.iter().map(|v| v.re).collect());
        if x.field() == BaseField::Complex {
            rows.push(values.iter().map(|v| v.i).collect());
        }
    }
    let mut ctc = RealMatrix::zeros(dim, dim);
    for r in &rows {
        for i in 0..dim {
            for j in 0..dim {
                ctc.set(i, j, ctc.get(i, j) + r[i] * r[j]);
            }
        }
    }
    let e = sym_eigen(&ctc).expect("Gram matrices are symmetric");
    let scale = e.values[0].max(1.0);
    (0..dim)
        .filter(|&k| e.values[k] <= NULL_TOL * scale)
        .map(|k| e.vectors.column(k))
        .collect()
}

/// Compass search on the defect starting from `x0`.
fn pattern_search(coords: &Coordinates, omega: &[KMatrix], norms: &[f64], x0: Vec<f64>, target: f64) -> (f64, Vec<f64>) {
    let mut x = x0;
    let mut best = defect(omega, norms, &coords.matrix(&x));
    let mut step = 0.25 * x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut evals = 1;
    while best > target && step > 1e-7 && evals < MAX_EVALS {
        let mut improved = false;
        for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                x[i] += sign * step;
                let v = defect(omega, norms, &coords.matrix(&x));
                evals += 1;
                if v < best {
                    best = v;
                    improved = true;
                    break;
                }
                x[i] -= sign * step;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, x)
}

/// Looks for a nonzero B orthogonal to every element of Ω.
fn common_member<R: Rng>(coords: &Coordinates, omega: &[KMatrix], rng: &mut R) -> Option<KMatrix> {
    let random_point = |rng: &mut R| -> Vec<f64> {
        let m = random_matrix(rng, coords.like.algebra(), coords.like.field(), coords.like.n());
        m.entries().iter().flat_map(|e| e.components()[..coords.d].to_vec()).collect()
    };
    if omega.is_empty() {
        return Some(coords.matrix(&random_point(rng)));
    }
    let norms: Vec<f64> = omega.iter().map(operator_norm).collect();
    let target = FOUND_TOL * norms.iter().sum::<f64>();

    let null = linear_probe(coords, omega);
    let mut starts: Vec<Vec<f64>> = null.clone();
    if null.len() > 1 {
        let mut mix = vec![0.0; coords.len()];
        for v in &null {
            let c: f64 = rng.random_range(-1.0..1.0);
            for (m, x) in mix.iter_mut().zip(v) {
                *m += c * x;
            }
        }
        starts.push(mix);
    }
    for s in &starts {
        let b = coords.matrix(s);
        if defect(omega, &norms, &b) <= target {
            return Some(b);
        }
    }
    for _ in 0..RESTARTS {
        starts.push(random_point(rng));
    }
    for s in starts {
        let (value, point) = pattern_search(coords, omega, &norms, s, target);
        if value <= target {
            return Some(coords.matrix(&point));
        }
    }
    None
}

/// Greedy search for a small Ω with no common outgoing neighbor besides zero, followed by
/// refutation attempts on `trials` random pool subsets of one smaller size. HEURISTIC.
pub fn graph_dimension_search(algebra: &AlgebraSpec, pool: usize, trials: usize, seed: u64) -> Result<DimensionSearch> {
    let block = algebra
        .single_block()
        .ok_or_else(|| Error::InvalidAlgebra(format!("{algebra} has several blocks; the search runs on simple algebras")))?;
    let field = algebra.base_field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<KMatrix> =
        (0..pool).map(|_| random_matrix(&mut rng, block.division_algebra, field, block.n)).collect();
    let coords = Coordinates::new(KMatrix::zeros(block.division_algebra, field, block.n));

    let mut members: Vec<usize> = Vec::new();
    let mut candidate_size = None;
    loop {
        let omega: Vec<KMatrix> = members.iter().map(|&i| elements[i].clone()).collect();
        let Some(b) = common_member(&coords, &omega, &mut rng) else {
            candidate_size = Some(members.len());
            break;
        };
        // Add the pool element furthest from being orthogonal to the common member.
        let next = (0..pool)
            .filter(|i| !members.contains(i))
            .map(|i| (i, defect(std::slice::from_ref(&elements[i]), &[operator_norm(&elements[i])], &b)))
            .max_by(|x, y| x.1.total_cmp(&y.1));
        match next {
            Some((i, d)) if d > 0.0 => members.push(i),
            _ => break,
        }
    }

    let mut refuted = 0;
    let mut run = 0;
    if let Some(size) = candidate_size {
        if size == 0 {
            // Only possible for a zero-dimensional algebra; nothing smaller to refute.
        } else if size == 1 {
            // The empty set has every element as common member.
            run = 1;
            refuted = 1;
        } else {
            for _ in 0..trials {
                let idx = sample(&mut rng, pool, size - 1);
                let omega: Vec<KMatrix> = idx.iter().map(|i| elements[i].clone()).collect();
                run += 1;
                if common_member(&coords, &omega, &mut rng).is_some() {
                    refuted += 1;
                }
            }
        }
    }
    Ok(DimensionSearch {
        candidate_size,
        refuted_smaller: candidate_size.is_some() && refuted == run && run > 0,
        members,
        trials: run,
        refuted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn search(spec: &str, pool: usize, trials: usize) -> DimensionSearch {
        graph_dimension_search(&spec.parse().unwrap(), pool, trials, 11).unwrap()
    }

    #[test]
    fn real_line_needs_one_element() {
        let r = search("M1(R)", 4, 3);
        assert_eq!(r.candidate_size, Some(1));
        assert!(r.refuted_smaller);
    }

    #[test]
    fn real_two_by_two_needs_four() {
        let r = search("M2(R)", 10, 5);
        assert_eq!(r.candidate_size, Some(4));
        assert!(r.refuted_smaller);
        assert_eq!(r.refuted, 5);
    }

    #[test]
    fn quaternion_line_needs_four() {
        let r = search("M1(H)", 10, 5);
        assert_eq!(r.candidate_size, Some(4));
        assert!(r.refuted_smaller);
    }

    #[test]
    fn complex_field_counts_complex_dimension() {
        let r = search("M1(C)/C", 4, 2);
        assert_eq!(r.candidate_size, Some(1));
        let r = search("M2(C)/C", 8, 3);
        assert_eq!(r.candidate_size, Some(4));
        assert!(r.refuted_smaller);
    }

    #[test]
    fn small_pool_is_reported() {
        let r = search("M2(R)", 2, 3);
        assert_eq!(r.candidate_size, None);
        assert!(!r.refuted_smaller);
    }
}
