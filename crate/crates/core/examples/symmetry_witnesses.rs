//! Right and left asymmetry witnesses, and the right-symmetry of unitaries.

use bjclass::matkernel::{BaseField, DivisionAlgebra};
use bjclass::orthograph::{is_right_symmetric, left_asymmetry_witness, right_asymmetry_witness};
use bjclass::random::{random_matrix, random_unitary};
use bjclass::verify::right_symmetry_violations;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bjclass::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (k, f) = (DivisionAlgebra::Complex, BaseField::Real);
    let a = random_matrix(&mut rng, k, f, 3);

    let right = right_asymmetry_witness(&a)?;
    println!("right witness: B ⊥ A {} and A ⊥ B {}", right.holds.orthogonal, right.reverse.orthogonal);
    let left = left_asymmetry_witness(&a)?;
    println!("left witness (stage {}): A ⊥ B {} and B ⊥ A {}", left.stage, left.holds.orthogonal, left.reverse.orthogonal);

    let u = random_unitary(&mut rng, k, f, 3).scale_real(2.5);
    println!("A right-symmetric: {}, 2.5·U right-symmetric: {}", is_right_symmetric(&a)?, is_right_symmetric(&u)?);
    println!("sampled violations for 2.5·U: {}", right_symmetry_violations(&mut rng, &u, 100)?);
    Ok(())
}
