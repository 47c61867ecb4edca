//! Dense real matrices and the embedding of `M_n(K)` into `M_{dn}(R)`.

use crate::matkernel::matrix::{KMatrix, KVector};
use crate::matkernel::scalar::{BaseField, DivisionAlgebra, KScalar};

/// A dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RealMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RealMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> RealMatrix {
        let mut t = RealMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn matmul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = RealMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `selfᵀ·self`, computed so the result is exactly symmetric.
    pub fn gram(&self) -> RealMatrix {
        let n = self.cols;
        let mut g = RealMatrix::zeros(n, n);
        for r in 0..self.rows {
            let row = &self.data[r * n..(r + 1) * n];
            for i in 0..n {
                let a = row[i];
                if a == 0.0 {
                    continue;
                }
                for j in i..n {
                    g.data[i * n + j] += a * row[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                g.data[i * n + j] = g.data[j * n + i];
            }
        }
        g
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `(self + selfᵀ)/2`.
    pub fn symmetric_part(&self) -> RealMatrix {
        let n = self.rows;
        let mut s = RealMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                s.data[i * n + j] = 0.5 * (self.get(i, j) + self.get(j, i));
            }
        }
        s
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn axpy(&mut self, s: f64, other: &RealMatrix) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// Viewed as a real matrix over R (for display and public embedding output).
    pub fn to_kmatrix(&self) -> KMatrix {
        assert_eq!(self.rows, self.cols);
        let entries = self.data.iter().map(|&v| KScalar::real(v)).collect();
        KMatrix::new(DivisionAlgebra::Real, BaseField::Real, self.rows, entries)
            .expect("finite real entries")
    }
}

/// The d×d real block representing one scalar.
///
/// Complex `a+bi` maps to `[[a,b],[-b,a]]`. A quaternion `a+bi+cj+dk` first maps
/// to the complex block `[[a+bi, c+di], [-c+di, a-bi]]`, then each complex
/// entry is expanded with the complex rule.
pub fn scalar_block(algebra: DivisionAlgebra, q: KScalar) -> [[f64; 4]; 4] {
    let (a, b, c, d) = (q.re, q.i, q.j, q.k);
    match algebra {
        DivisionAlgebra::Real => [[a, 0.0, 0.0, 0.0], [0.0; 4], [0.0; 4], [0.0; 4]],
        DivisionAlgebra::Complex => [[a, b, 0.0, 0.0], [-b, a, 0.0, 0.0], [0.0; 4], [0.0; 4]],
        DivisionAlgebra::Quaternion => [
            [a, b, c, d],
            [-b, a, -d, c],
            [-c, d, a, -b],
            [-d, -c, b, a],
        ],
    }
}

/// The real representation `ρ(A) ∈ M_{dn}(R)`.
pub fn embed(a: &KMatrix) -> RealMatrix {
    let d = a.algebra().real_dim();
    let n = a.n();
    let dn = d * n;
    let mut out = RealMatrix::zeros(dn, dn);
    for r in 0..n {
        for c in 0..n {
            let q = a.get(r, c);
            if q.is_zero() {
                continue;
            }
            let block = scalar_block(a.algebra(), q);
            for (br, row) in block.iter().enumerate().take(d) {
                for (bc, &v) in row.iter().enumerate().take(d) {
                    out.data[(r * d + br) * dn + c * d + bc] = v;
                }
            }
        }
    }
    out
}

/// `ρ(A)` returned as a real `KMatrix` of size dn.
pub fn real_embed(a: &KMatrix) -> KMatrix {
    embed(a).to_kmatrix()
}

/// Identification `K^n → R^{dn}` compatible with ρ: `ρ(A)·φ(x) = φ(Ax)` and
/// `φ(x)·φ(y) = Re(x*y)`. Each scalar maps to the first column of its block,
/// which lists the components of its conjugate.
pub fn vec_to_real(algebra: DivisionAlgebra, x: &KVector) -> Vec<f64> {
    let d = algebra.real_dim();
    let mut out = Vec::with_capacity(d * x.len());
    for q in x.entries() {
        let c = q.conj().components();
        out.extend_from_slice(&c[..d]);
    }
    out
}

/// Inverse of [`vec_to_real`].
pub fn vec_from_real(algebra: DivisionAlgebra, w: &[f64]) -> KVector {
    let d = algebra.real_dim();
    KVector::from_vec(
        w.chunks(d)
            .map(|c| {
                let mut comps = [0.0; 4];
                comps[..d].copy_from_slice(c);
                KScalar::new(comps[0], comps[1], comps[2], comps[3]).conj()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complex_unit_embeds_as_rotation_block() {
        let a = KMatrix::new(DivisionAlgebra::Complex, BaseField::Real, 1, vec![KScalar::I]).unwrap();
        let expected = RealMatrix::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        assert_eq!(embed(&a), expected);
        assert_eq!(real_embed(&a).n(), 2);
    }

    #[test]
    fn quaternion_embedding_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, DivisionAlgebra::Quaternion, BaseField::Real, 3);
            let b = random_matrix(&mut rng, DivisionAlgebra::Quaternion, BaseField::Real, 3);
            let lhs = embed(&a.matmul(&b));
            let mut diff = embed(&a).matmul(&embed(&b));
            diff.axpy(-1.0, &lhs);
            assert!(diff.max_abs() < 1e-11);
        }
    }

    #[test]
    fn embedding_maps_adjoint_to_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for alg in DivisionAlgebra::ALL {
            let a = random_matrix(&mut rng, alg, BaseField::Real, 3);
            assert_eq!(embed(&a.adjoint()), embed(&a).transpose());
        }
    }

    #[test]
    fn vector_identification_intertwines_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for alg in DivisionAlgebra::ALL {
            let a = random_matrix(&mut rng, alg, BaseField::Real, 3);
            let x = random_matrix(&mut rng, alg, BaseField::Real, 3).column(0);
            let y = random_matrix(&mut rng, alg, BaseField::Real, 3).column(1);
            let lhs = embed(&a).mul_vec(&vec_to_real(alg, &x));
            let rhs = vec_to_real(alg, &a.mul_vec(&x));
            for (l, r) in lhs.iter().zip(&rhs) {
                assert!((l - r).abs() < 1e-12);
            }
            let dot: f64 = vec_to_real(alg, &x).iter().zip(vec_to_real(alg, &y)).map(|(p, q)| p * q).sum();
            assert!((dot - x.dot(&y).re).abs() < 1e-12);
            assert_eq!(vec_from_real(alg, &vec_to_real(alg, &x)), x);
        }
    }
}
