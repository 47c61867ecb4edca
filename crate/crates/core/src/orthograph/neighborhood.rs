//! Comparison of outgoing neighborhoods `A^⊥` without enumerating them.
//!
//! `A1^⊥ ⊆ A2^⊥` holds exactly when `M₀(A1) ⊆ M₀(A2)` and a single nonzero
//! base-field scalar α satisfies `A1·u = α·A2·u` on `M₀(A1)`.

use crate::bjortho::NeighborhoodProfile;
use crate::error::Result;
use crate::matkernel::{BaseField, KMatrix, KScalar};

/// Spectral-norm tolerance for `M₀(A1) ⊆ M₀(A2)`.
pub const SUBSPACE_TOL: f64 = 1e-8;
/// Relative tolerance for the consistency of α across frame vectors.
pub const ALPHA_TOL: f64 = 1e-7;

/// The scalar α with `A1·u = α·A2·u` on `M₀(A1)`, if the inclusion `A1^⊥ ⊆ A2^⊥` holds.
pub fn subset_scalar(p1: &NeighborhoodProfile, p2: &NeighborhoodProfile) -> Option<KScalar> {
    if p1.space().dim() > p2.space().dim() {
        return None;
    }
    let a2 = p2.matrix();
    let field = a2.field();
    let frame = p1.space().frame();
    let images2: Vec<_> = frame.iter().map(|u| a2.mul_vec(u)).collect();
    let first = &images2[0];
    let denom = first.norm_sqr();
    if denom == 0.0 {
        return None;
    }
    let raw = first.dot(&p1.images()[0]).scale(1.0 / denom);
    let alpha = match field {
        BaseField::Real => KScalar::real(raw.re),
        BaseField::Complex => raw,
    };
    if alpha.abs() == 0.0 {
        return None;
    }
    let scale = p1.norm();
    for (img1, img2) in p1.images().iter().zip(&images2) {
        let mut diff = img1.clone();
        diff.add_mul_right(img2, -alpha);
        if diff.norm() > ALPHA_TOL * scale {
            return None;
        }
    }
    p1.space().is_contained_in(p2.space(), SUBSPACE_TOL).then_some(alpha)
}

/// `A1^⊥ ⊆ A2^⊥` for precomputed profiles.
pub fn profile_subset(p1: &NeighborhoodProfile, p2: &NeighborhoodProfile) -> bool {
    subset_scalar(p1, p2).is_some()
}

/// `A1^⊥ = A2^⊥` for precomputed profiles.
pub fn profile_equal(p1: &NeighborhoodProfile, p2: &NeighborhoodProfile) -> bool {
    p1.space().dim() == p2.space().dim() && profile_subset(p1, p2) && profile_subset(p2, p1)
}

/// `A1^⊥ ⊆ A2^⊥`.
pub fn outgoing_subset(a1: &KMatrix, a2: &KMatrix) -> Result<bool> {
    a1.same_algebra(a2)?;
    Ok(profile_subset(&NeighborhoodProfile::new(a1)?, &NeighborhoodProfile::new(a2)?))
}

/// `A1^⊥ = A2^⊥`.
pub fn outgoing_equal(a1: &KMatrix, a2: &KMatrix) -> Result<bool> {
    a1.same_algebra(a2)?;
    Ok(profile_equal(&NeighborhoodProfile::new(a1)?, &NeighborhoodProfile::new(a2)?))
}
