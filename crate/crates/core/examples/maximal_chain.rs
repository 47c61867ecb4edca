//! Builds a maximal chain from a random complex matrix and replaces it by
//! representatives sharing one pair of singular frames.

use bjclass::matkernel::{BaseField, DivisionAlgebra};
use bjclass::orthograph::{build_maximal_chain, simultaneous_chain_representatives};
use bjclass::random::random_matrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bjclass::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_matrix(&mut rng, DivisionAlgebra::Complex, BaseField::Complex, 4);
    let chain = build_maximal_chain(&a)?;
    println!("chain length {} (maximal: {})", chain.len(), chain.is_maximal());
    println!("dim M0 along the chain {:?}", chain.m0_dims());

    let reps = simultaneous_chain_representatives(&chain)?;
    println!("representatives with equal neighborhoods: {:?}", reps.equal_checks);
    for (i, b) in reps.matrices.iter().enumerate() {
        println!("B{} singular values {:?}", i + 1, bjclass::matkernel::svd(b).sigma);
    }

    println!("{}", bjclass::io::to_json(&bjclass::io::ChainFile::from(&chain)).lines().take(6).collect::<Vec<_>>().join("\n"));
    Ok(())
}
