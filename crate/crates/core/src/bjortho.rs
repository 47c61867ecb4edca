//! Birkhoff-James orthogonality in `M_n(K)`.
//!
//! `A ⊥ B` iff `‖A‖ ≤ ‖A + λB‖` for every λ in the base field. The exact path
//! decides this through the numerical range of the compression of `A*B` to the
//! norm-attaining subspace of `A`. The brute-force path minimizes `‖A + λB‖`
//! directly and serves as an independent oracle.

use crate::error::{Error, Result};
use crate::matkernel::eigen::{lambda_max_unchecked, sym_eigen};
use crate::matkernel::real::{embed, vec_from_real, RealMatrix};
use crate::matkernel::svd::{svd, SvdResult};
use crate::matkernel::{BaseField, DivisionAlgebra, KMatrix, KScalar, KSubspace, KVector};
use crate::optimize::{golden_section, minimize_planar, PlanarSearch};

/// Tolerance for 0 lying in the numerical range (inclusive).
pub const TOL_ORTH: f64 = 1e-7;
/// Relative slack allowed below `‖A‖` before the brute-force path reports a decrease.
pub const BRUTE_REL_TOL: f64 = 1e-12;
const THETA_GRID: usize = 720;
const HULL_ANGLES: usize = 12;

/// The functional `B ↦ Re(v*Bu)` (real field) or `B ↦ v*Bu` (complex field).
#[derive(Debug, Clone, PartialEq)]
pub struct SupportFunctional {
    pub u: KVector,
    pub v: KVector,
    pub base_field: BaseField,
}

/// Evaluates a support functional. The result is a base-field scalar.
pub fn evaluate_functional(f: &SupportFunctional, b: &KMatrix) -> Result<KScalar> {
    if f.base_field != b.field() {
        return Err(Error::FieldMismatch { left: f.base_field.to_string(), right: b.field().to_string() });
    }
    let value = f.v.dot(&b.mul_vec(&f.u));
    Ok(match f.base_field {
        BaseField::Real => KScalar::real(value.re),
        BaseField::Complex => value,
    })
}

/// `⟨x, y⟩_F`: `Re(y*x)` over R, `y*x` over C.
pub fn field_inner(field: BaseField, x: &KVector, y: &KVector) -> KScalar {
    let v = y.dot(x);
    match field {
        BaseField::Real => KScalar::real(v.re),
        BaseField::Complex => v,
    }
}

/// Data about `A` reused across many orthogonality queries `A ⊥ ·`.
#[derive(Debug, Clone)]
pub struct NeighborhoodProfile {
    matrix: KMatrix,
    norm: f64,
    svd: SvdResult,
    space: KSubspace,
    images: Vec<KVector>,
}

impl NeighborhoodProfile {
    pub fn new(a: &KMatrix) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        let svd = svd(a);
        let k = svd.top_multiplicity();
        let space = KSubspace::from_orthonormal(a.n(), svd.right_frame[..k].to_vec());
        let images = space.frame().iter().map(|u| a.mul_vec(u)).collect();
        Ok(NeighborhoodProfile { matrix: a.clone(), norm: svd.sigma[0], svd, space, images })
    }

    pub fn matrix(&self) -> &KMatrix {
        &self.matrix
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn svd(&self) -> &SvdResult {
        &self.svd
    }

    /// `M₀(A)`, the norm-attaining subspace.
    pub fn space(&self) -> &KSubspace {
        &self.space
    }

    /// `A·u_i` for the frame vectors `u_i` of `M₀(A)`.
    pub fn images(&self) -> &[KVector] {
        &self.images
    }

    /// `U*(A*B)U / (‖A‖‖B‖)` for the frame `U` of `M₀(A)`.
    pub fn compression(&self, b: &KMatrix) -> KMatrix {
        let k = self.space.dim();
        let bnorm = crate::matkernel::operator_norm(b);
        let bu: Vec<KVector> = self.space.frame().iter().map(|u| b.mul_vec(u)).collect();
        let mut c = KMatrix::zeros(self.matrix.algebra(), self.matrix.field(), k);
        let scale = 1.0 / (self.norm * bnorm);
        for i in 0..k {
            for j in 0..k {
                c.set(i, j, self.images[i].dot(&bu[j]).scale(scale));
            }
        }
        c
    }

    /// Exact orthogonality test `A ⊥ B`.
    pub fn orthogonal_to(&self, b: &KMatrix) -> Result<OrthogonalityVerdict> {
        self.matrix.same_algebra(b)?;
        if b.is_zero() {
            return Ok(OrthogonalityVerdict { orthogonal: true, witness: None, margin: TOL_ORTH });
        }
        let c = self.compression(b);
        let gap = range_gap(&c, self.matrix.field(), true);
        let orthogonal = gap.q <= TOL_ORTH;
        let witness = if orthogonal {
            gap.direction.and_then(|x| {
                let mut u = KVector::zeros(self.matrix.n());
                for (ui, xi) in self.space.frame().iter().zip(x.entries()) {
                    u.add_mul_right(ui, *xi);
                }
                let u = u.normalized()?;
                self.verify_witness(b, &u).then_some(u)
            })
        } else {
            None
        };
        Ok(OrthogonalityVerdict { orthogonal, witness, margin: TOL_ORTH - gap.q })
    }

    /// Decision of `A ⊥ B` without searching for a witness vector.
    pub fn decides_orthogonal(&self, b: &KMatrix) -> Result<bool> {
        self.matrix.same_algebra(b)?;
        if b.is_zero() {
            return Ok(true);
        }
        let c = self.compression(b);
        if self.matrix.field() == BaseField::Complex && c.n() > 1 {
            return Ok(complex_range_contains_zero(&c));
        }
        Ok(range_gap(&c, self.matrix.field(), false).q <= TOL_ORTH)
    }

    /// Checks `‖Au‖ = ‖A‖` and `|⟨Au, Bu⟩_F| ≤ TOL_ORTH·‖A‖‖B‖` for a unit `u`.
    pub fn verify_witness(&self, b: &KMatrix, u: &KVector) -> bool {
        let au = self.matrix.mul_vec(u);
        let bn = crate::matkernel::operator_norm(b);
        let attains = (au.norm() - self.norm).abs() <= 1e-7 * self.norm;
        let inner = field_inner(self.matrix.field(), &au, &b.mul_vec(u)).abs();
        attains && inner <= TOL_ORTH * self.norm * bn
    }
}

/// Result of an exact orthogonality test.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityVerdict {
    pub orthogonal: bool,
    /// A unit `u ∈ M₀(A)` with `⟨Au, Bu⟩_F ≈ 0`, when one was found and verified.
    pub witness: Option<KVector>,
    /// `TOL_ORTH` minus the distance-like decision quantity; non-negative iff orthogonal.
    pub margin: f64,
}

/// `M₀(A)`: the right-K-span of the unit vectors on which `A` attains its norm.
pub fn norm_attaining_space(a: &KMatrix) -> Result<KSubspace> {
    Ok(NeighborhoodProfile::new(a)?.space.clone())
}

/// Exact test via the numerical range of the compressed `A*B`.
pub fn is_bj_orthogonal(a: &KMatrix, b: &KMatrix) -> Result<OrthogonalityVerdict> {
    a.same_algebra(b)?;
    if a.is_zero() {
        return Ok(OrthogonalityVerdict { orthogonal: true, witness: None, margin: TOL_ORTH });
    }
    NeighborhoodProfile::new(a)?.orthogonal_to(b)
}

/// Whether 0 lies in the numerical range of `c` (its real part when `field` is R).
pub fn numerical_range_contains_zero(c: &KMatrix, field: BaseField) -> bool {
    range_gap(c, field, false).q <= TOL_ORTH
}

/// Signed distance-like quantity `q`: positive is the distance from 0 to the
/// range, non-positive means 0 is inside. `direction` is a unit vector x with
/// `x*Cx ≈ 0` (or `Re(x*Cx) ≈ 0`), when requested and found.
struct RangeGap {
    q: f64,
    direction: Option<KVector>,
}

fn range_gap(c: &KMatrix, field: BaseField, want_direction: bool) -> RangeGap {
    match field {
        BaseField::Real => real_range_gap(c, want_direction),
        BaseField::Complex => complex_range_gap(c, want_direction),
    }
}

fn real_range_gap(c: &KMatrix, want_direction: bool) -> RangeGap {
    let alg = c.algebra();
    let s = embed(c).symmetric_part();
    if c.n() == 1 && !want_direction {
        let re = c.get(0, 0).re;
        return RangeGap { q: re.abs(), direction: None };
    }
    let e = sym_eigen(&s).expect("symmetric part");
    let m = e.values.len();
    let (lmax, lmin) = (e.values[0], e.values[m - 1]);
    let q = lmin.max(-lmax);
    let direction = (want_direction && q <= TOL_ORTH).then(|| {
        let ymin = e.vectors.column(m - 1);
        let ymax = e.vectors.column(0);
        let y: Vec<f64> = if lmin >= 0.0 {
            ymin
        } else if lmax <= 0.0 {
            ymax
        } else {
            let t = (-lmin / lmax).sqrt().atan();
            ymin.iter().zip(&ymax).map(|(a, b)| t.cos() * a + t.sin() * b).collect()
        };
        vec_from_real(alg, &y)
    });
    RangeGap { q, direction }
}

/// `(S₁, S₂)` with `ρ(Herm(e^{iθ}C)) = cos θ·S₁ + sin θ·S₂`.
fn hermitian_pencil(c: &KMatrix) -> (RealMatrix, RealMatrix) {
    let s1 = embed(c).symmetric_part();
    let s2 = embed(&c.scale(KScalar::I)).symmetric_part();
    (s1, s2)
}

fn combine(s1: &RealMatrix, s2: &RealMatrix, theta: f64) -> RealMatrix {
    let mut h = RealMatrix::zeros(s1.rows(), s1.cols());
    h.axpy(theta.cos(), s1);
    h.axpy(theta.sin(), s2);
    h
}

/// `λ_min(Herm(e^{iθ}C))`, as `-λ_max` of the negated pencil.
fn lambda_min_at(s1: &RealMatrix, s2: &RealMatrix, theta: f64) -> f64 {
    -lambda_max_unchecked(&combine(s1, s2, theta + std::f64::consts::PI))
}

fn complex_range_gap(c: &KMatrix, want_direction: bool) -> RangeGap {
    let k = c.n();
    if k == 1 {
        let z = c.get(0, 0);
        let direction = want_direction.then(|| KVector::basis(1, 0));
        return RangeGap { q: z.abs(), direction };
    }
    let (s1, s2) = hermitian_pencil(c);
    let step = std::f64::consts::TAU / THETA_GRID as f64;
    let grid: Vec<f64> = (0..THETA_GRID).map(|m| lambda_min_at(&s1, &s2, m as f64 * step)).collect();
    let (m_best, _) = grid.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let centre = m_best as f64 * step;
    let refined = golden_section(|t| -lambda_min_at(&s1, &s2, t), centre - step, centre + step, 1e-12);
    let q = (-refined.value).max(grid[m_best]);
    let direction = if want_direction && q <= TOL_ORTH { complex_zero_direction(c, &s1, &s2) } else { None };
    RangeGap { q, direction }
}

/// Same decision as `complex_range_gap(c).q <= TOL_ORTH`, with two exits before the
/// full angle scan: 0 inside the hull of a few support points of the (convex) range,
/// or a single angle already separating 0 from the range.
fn complex_range_contains_zero(c: &KMatrix) -> bool {
    let (s1, s2) = hermitian_pencil(c);
    let points: Vec<KScalar> = (0..HULL_ANGLES)
        .map(|m| {
            let theta = std::f64::consts::TAU * m as f64 / HULL_ANGLES as f64;
            let e = sym_eigen(&combine(&s1, &s2, theta)).expect("symmetric pencil");
            let x = vec_from_real(DivisionAlgebra::Complex, &e.vectors.column(e.values.len() - 1));
            x.dot(&c.mul_vec(&x))
        })
        .collect();
    if points[1..].windows(2).any(|w| triangle_weights(points[0], w[0], w[1]).is_some()) {
        return true;
    }
    let step = std::f64::consts::TAU / THETA_GRID as f64;
    if (0..THETA_GRID).any(|m| lambda_min_at(&s1, &s2, m as f64 * step) > TOL_ORTH) {
        return false;
    }
    complex_range_gap(c, false).q <= TOL_ORTH
}

/// A unit x with `x*Cx ≈ 0`, assembled from support points of the numerical range.
fn complex_zero_direction(c: &KMatrix, s1: &RealMatrix, s2: &RealMatrix) -> Option<KVector> {
    let samples = 180;
    let points: Vec<(KScalar, KVector)> = (0..samples)
        .map(|m| {
            let theta = std::f64::consts::TAU * m as f64 / samples as f64;
            let e = sym_eigen(&combine(s1, s2, theta)).expect("symmetric pencil");
            let y = e.vectors.column(e.values.len() - 1);
            let x = vec_from_real(DivisionAlgebra::Complex, &y);
            let z = x.dot(&c.mul_vec(&x));
            (z, x)
        })
        .collect();
    let tiny = 1e-3 * TOL_ORTH;
    if let Some((_, x)) = points.iter().find(|(z, _)| z.abs() <= tiny) {
        return Some(x.clone());
    }
    let (z0, x0) = &points[0];
    for w in points[1..].windows(2) {
        let (za, xa) = &w[0];
        let (zb, xb) = &w[1];
        if let Some((ta, tb)) = triangle_weights(*z0, *za, *zb) {
            // 0 = (1-ta-tb)·z0 + ta·za + tb·zb. First hit p on segment [za, zb] along the ray from z0.
            let s = ta + tb;
            if s <= 0.0 {
                continue;
            }
            let p = (*za * ta + *zb * tb).scale(1.0 / s);
            let xp = two_vector_solve(c, xa, *za, xb, *zb, p)?;
            return two_vector_solve(c, &xp, p, x0, *z0, KScalar::ZERO);
        }
    }
    // Degenerate (segment-shaped) range: look for a pair straddling 0.
    for (i, (za, xa)) in points.iter().enumerate() {
        for (zb, xb) in &points[i + 1..] {
            let d = *zb - *za;
            let len2 = d.norm_sqr();
            if len2 == 0.0 {
                continue;
            }
            let t = -(za.re * d.re + za.i * d.i) / len2;
            let p = *za + d.scale(t);
            if (0.0..=1.0).contains(&t) && p.abs() <= tiny {
                return two_vector_solve(c, xa, *za, xb, *zb, KScalar::ZERO);
            }
        }
    }
    None
}

/// Barycentric weights of 0 on `(a, b)` within the triangle `(o, a, b)`, if inside.
fn triangle_weights(o: KScalar, a: KScalar, b: KScalar) -> Option<(f64, f64)> {
    let (ax, ay) = (a.re - o.re, a.i - o.i);
    let (bx, by) = (b.re - o.re, b.i - o.i);
    let (px, py) = (-o.re, -o.i);
    let det = ax * by - ay * bx;
    if det.abs() < 1e-300 {
        return None;
    }
    let ta = (px * by - py * bx) / det;
    let tb = (ax * py - ay * px) / det;
    let eps = 1e-12;
    (ta >= -eps && tb >= -eps && ta + tb <= 1.0 + eps).then_some((ta.max(0.0), tb.max(0.0)))
}

/// Given unit `x1, x2` with `x_i*Cx_i = z_i` and `p` on the segment `[z1, z2]`,
/// returns a unit `x ∈ span{x1, x2}` with `x*Cx = p`.
fn two_vector_solve(c: &KMatrix, x1: &KVector, z1: KScalar, x2: &KVector, z2: KScalar, p: KScalar) -> Option<KVector> {
    let d1 = z1 - p;
    let d2 = z2 - p;
    let (a, b) = (d1.abs(), d2.abs());
    if a <= f64::EPSILON * (1.0 + p.abs()) {
        return Some(x1.clone());
    }
    if b <= f64::EPSILON * (1.0 + p.abs()) {
        return Some(x2.clone());
    }
    // Rotate so that z1 - p is real positive; z2 - p is then real negative.
    let rot = d1.scale(1.0 / a).conj();
    let k = c.n();
    let mut m = c.clone();
    for i in 0..k {
        let v = m.get(i, i) - p;
        m.set(i, i, v);
    }
    let m = m.scale(rot);
    let mx2 = m.mul_vec(x2);
    let mhx2 = m.adjoint().mul_vec(x2);
    // Hermitian and skew parts paired with (x1, x2).
    let h12 = (x1.dot(&mx2) + x1.dot(&mhx2)).scale(0.5);
    let k12 = (x1.dot(&mx2) - x1.dot(&mhx2)) * KScalar::complex(0.0, -0.5);
    let phi = if k12.abs() > 0.0 { std::f64::consts::FRAC_PI_2 - k12.i.atan2(k12.re) } else { 0.0 };
    let e = KScalar::unit_complex(phi);
    let h = (e * h12).re;
    let t = (h + (h * h + a * b).sqrt()) / b;
    let mut y = x1.clone();
    y.add_mul_right(x2, e.scale(t));
    let y = y.normalized()?;
    let got = y.dot(&c.mul_vec(&y));
    ((got - p).abs() <= 1e-9 * (1.0 + p.abs())).then_some(y)
}

/// Outcome of minimizing `λ ↦ ‖A + λB‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinNormResult {
    pub lambda_star: KScalar,
    pub min_value: f64,
    pub iterations: usize,
}

/// Minimizes `‖A + λB‖` over the base field, within `|λ| ≤ 2‖A‖/‖B‖`.
pub fn bj_min_norm(a: &KMatrix, b: &KMatrix) -> Result<MinNormResult> {
    min_norm_search(a, b, None)
}

/// Brute-force test straight from the definition.
pub fn is_bj_orthogonal_bruteforce(a: &KMatrix, b: &KMatrix) -> Result<bool> {
    a.same_algebra(b)?;
    if b.is_zero() || a.is_zero() {
        return Ok(true);
    }
    let anorm = crate::matkernel::operator_norm(a);
    let threshold = anorm - BRUTE_REL_TOL * anorm;
    let m = min_norm_search(a, b, Some(threshold))?;
    Ok(m.min_value >= threshold)
}

/// Norm evaluator for `X(λ) = A + Re(λ)·B + Im(λ)·(iB)` in the real embedding.
pub(crate) struct Pencil {
    a: RealMatrix,
    b: RealMatrix,
    ib: Option<RealMatrix>,
}

impl Pencil {
    pub(crate) fn new(a: &KMatrix, b: &KMatrix) -> Self {
        let ib = (a.field() == BaseField::Complex).then(|| embed(&b.scale(KScalar::I)));
        Pencil { a: embed(a), b: embed(b), ib }
    }

    pub(crate) fn norm_at(&self, re: f64, im: f64) -> f64 {
        let mut x = self.a.clone();
        x.axpy(re, &self.b);
        if let Some(ib) = &self.ib {
            x.axpy(im, ib);
        }
        lambda_max_unchecked(&x.gram()).max(0.0).sqrt()
    }

    pub(crate) fn complex(&self) -> bool {
        self.ib.is_some()
    }
}

/// Minimizes `g(λ)` for a convex `g` over the base field within `|λ| ≤ radius`.
pub(crate) fn minimize_over_field<G: FnMut(f64, f64) -> f64>(
    mut g: G,
    complex: bool,
    radius: f64,
    stop_below: Option<f64>,
) -> MinNormResult {
    let at_zero = g(0.0, 0.0);
    if radius <= 0.0 || stop_below.is_some_and(|s| at_zero < s) {
        return MinNormResult { lambda_star: KScalar::ZERO, min_value: at_zero, iterations: 1 };
    }
    if complex {
        let m = minimize_planar(g, PlanarSearch { radius, tol: 1e-8, stop_below });
        let (lambda_star, min_value) = if m.value < at_zero {
            (KScalar::complex(m.point.0, m.point.1), m.value)
        } else {
            (KScalar::ZERO, at_zero)
        };
        MinNormResult { lambda_star, min_value, iterations: m.evaluations + 1 }
    } else {
        let m = golden_section(|t| g(t, 0.0), -radius, radius, 1e-9 * radius);
        let (lambda_star, min_value) = if m.value < at_zero { (KScalar::real(m.point), m.value) } else { (KScalar::ZERO, at_zero) };
        MinNormResult { lambda_star, min_value, iterations: m.evaluations + 1 }
    }
}

fn min_norm_search(a: &KMatrix, b: &KMatrix, stop_below: Option<f64>) -> Result<MinNormResult> {
    a.same_algebra(b)?;
    if b.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let anorm = crate::matkernel::operator_norm(a);
    let bnorm = crate::matkernel::operator_norm(b);
    let pencil = Pencil::new(a, b);
    let radius = 2.0 * anorm / bnorm;
    Ok(minimize_over_field(|x, y| pencil.norm_at(x, y), pencil.complex(), radius, stop_below))
}
