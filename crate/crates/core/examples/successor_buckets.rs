//! Counts the distinct neighborhoods of successors of the second-to-last chain element.
//! Real matrix algebras give two; complex and quaternion ones keep growing.

use bjclass::matkernel::{BaseField, DivisionAlgebra};
use bjclass::orthograph::{build_maximal_chain, successor_buckets};
use bjclass::random::random_matrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bjclass::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (k, f) in [
        (DivisionAlgebra::Real, BaseField::Real),
        (DivisionAlgebra::Complex, BaseField::Complex),
        (DivisionAlgebra::Quaternion, BaseField::Real),
    ] {
        let chain = build_maximal_chain(&random_matrix(&mut rng, k, f, 2))?;
        let b = successor_buckets(&chain, 200, 1)?;
        println!("M2({k})/{f}: {} buckets, stabilized at two: {}", b.buckets, b.stabilized_at_two());
    }
    Ok(())
}
