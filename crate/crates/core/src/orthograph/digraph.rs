//! Finite samples of the ortho-digraph and their neighborhood-equivalence classes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::bjortho::NeighborhoodProfile;
use crate::error::{Error, Result};
use crate::matkernel::{operator_norm, KMatrix};
use crate::orthograph::neighborhood::profile_equal;
use crate::random::random_matrix;

/// Sampled vertices with every ordered orthogonal pair as an edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DigraphSample {
    pub labels: Vec<String>,
    #[serde(skip)]
    pub vertices: Vec<KMatrix>,
    /// `(i, j)` means `vertex i ⊥ vertex j`.
    pub edges: Vec<(usize, usize)>,
    pub seed: u64,
}

/// Sampling options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigraphOptions {
    /// Number of random elements drawn.
    pub count: usize,
    pub seed: u64,
    /// Prepend the zero element as vertex `v0`.
    pub include_zero: bool,
    /// Normalize vertices and keep one representative per base-field line.
    pub projective: bool,
}

impl DigraphSample {
    /// Builds the digraph on the given vertices (labels `v0`, `v1`, …).
    pub fn from_vertices(vertices: Vec<KMatrix>, seed: u64) -> Result<Self> {
        if let Some(first) = vertices.first() {
            for v in &vertices[1..] {
                first.same_algebra(v)?;
            }
        }
        let profiles: Vec<Option<NeighborhoodProfile>> =
            vertices.iter().map(|v| NeighborhoodProfile::new(v).ok()).collect();
        let mut edges = Vec::new();
        for (i, p) in profiles.iter().enumerate() {
            for (j, b) in vertices.iter().enumerate() {
                let orthogonal = match p {
                    None => true,
                    Some(p) => p.orthogonal_to(b)?.orthogonal,
                };
                if orthogonal {
                    edges.push((i, j));
                }
            }
        }
        let labels = (0..vertices.len()).map(|i| format!("v{i}")).collect();
        Ok(DigraphSample { labels, vertices, edges, seed })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Adjacency matrix, `adj[i][j]` iff `i ⊥ j`.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in &self.edges {
            adj[i][j] = true;
        }
        adj
    }

    /// Graphviz DOT rendering with edges `vi -> vj`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ortho {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  {l};");
        }
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "  {} -> {};", self.labels[i], self.labels[j]);
        }
        out.push_str("}\n");
        out
    }
}

/// Draws a random sample of the ortho-digraph of a simple algebra.
pub fn sample_digraph(algebra: &AlgebraSpec, options: DigraphOptions) -> Result<DigraphSample> {
    let block = algebra
        .single_block()
        .ok_or_else(|| Error::InvalidAlgebra(format!("{algebra} has several blocks; digraphs are sampled for simple algebras")))?;
    if options.count == 0 {
        return Err(Error::InvalidAlgebra("vertex count must be at least 1".into()));
    }
    let field = algebra.base_field();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut vertices = Vec::with_capacity(options.count + 1);
    if options.include_zero {
        vertices.push(KMatrix::zeros(block.division_algebra, field, block.n));
    }
    let mut drawn = 0;
    while drawn < options.count {
        let mut m = random_matrix(&mut rng, block.division_algebra, field, block.n);
        drawn += 1;
        if options.projective {
            m = m.scale_real(1.0 / operator_norm(&m));
            if vertices.iter().any(|v| same_line(v, &m)) {
                continue;
            }
        }
        vertices.push(m);
    }
    DigraphSample::from_vertices(vertices, options.seed)
}

/// Whether `b = λa` for a base-field scalar λ.
fn same_line(a: &KMatrix, b: &KMatrix) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (i, _) = a
        .entries()
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .expect("nonempty");
    let lambda = b.entries()[i] * a.entries()[i].inv();
    let lambda = match a.field() {
        crate::matkernel::BaseField::Real => crate::matkernel::KScalar::real(lambda.re),
        crate::matkernel::BaseField::Complex => lambda,
    };
    a.scale(lambda).max_abs_diff(b) <= 1e-12 * b.max_abs_entry()
}

/// Partition of the vertices by equal incoming and outgoing rows of the sample's adjacency.
pub fn reduced_classes(sample: &DigraphSample) -> Vec<Vec<usize>> {
    let adj = sample.adjacency();
    let n = sample.len();
    let mut classes: BTreeMap<(Vec<bool>, Vec<bool>), Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let out = adj[i].clone();
        let inc: Vec<bool> = (0..n).map(|j| adj[j][i]).collect();
        classes.entry((out, inc)).or_default().push(i);
    }
    let mut parts: Vec<Vec<usize>> = classes.into_values().collect();
    parts.sort();
    parts
}

/// Whether two vertices have equal outgoing neighborhoods in the whole algebra.
pub fn same_outgoing(a: &KMatrix, b: &KMatrix) -> Result<bool> {
    Ok(profile_equal(&NeighborhoodProfile::new(a)?, &NeighborhoodProfile::new(b)?))
}
