//! Singular values of a random quaternion matrix and its norm-attaining subspace.

use bjclass::bjortho::norm_attaining_space;
use bjclass::matkernel::{operator_norm, svd, BaseField, DivisionAlgebra};
use bjclass::random::random_matrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bjclass::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_matrix(&mut rng, DivisionAlgebra::Quaternion, BaseField::Real, 3);
    let s = svd(&a);
    println!("algebra {}", a.algebra_label());
    println!("singular values {:?}", s.sigma);
    println!("operator norm {:.12}", operator_norm(&a));
    let residual = s.reconstruct(&a).max_abs_diff(&a);
    println!("reconstruction error {residual:.2e}");

    // Equal singular values: the whole space attains the norm.
    let u = bjclass::random::random_unitary(&mut rng, DivisionAlgebra::Quaternion, BaseField::Real, 3);
    println!("dim M0(A) = {}, dim M0(U) = {}", norm_attaining_space(&a)?.dim(), norm_attaining_space(&u)?.dim());
    Ok(())
}
