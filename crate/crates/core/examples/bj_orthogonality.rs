//! Exact and brute-force orthogonality tests on a few small matrices.

use bjclass::bjortho::{bj_min_norm, is_bj_orthogonal, is_bj_orthogonal_bruteforce};
use bjclass::matkernel::{BaseField, DivisionAlgebra, KMatrix};

fn main() -> bjclass::Result<()> {
    let (k, f) = (DivisionAlgebra::Real, BaseField::Real);
    let a = KMatrix::diag_real(k, f, &[1.0, 0.5])?;
    let cases = [
        ("diag(1, 1/2) vs e2e2", KMatrix::diag_real(k, f, &[0.0, 1.0])?),
        ("diag(1, 1/2) vs I", KMatrix::identity(k, f, 2)),
        ("diag(1, 1/2) vs diag(1, -3)", KMatrix::diag_real(k, f, &[1.0, -3.0])?),
    ];
    for (label, b) in &cases {
        let exact = is_bj_orthogonal(&a, b)?;
        let brute = is_bj_orthogonal_bruteforce(&a, b)?;
        let m = bj_min_norm(&a, b)?;
        println!(
            "{label}: exact={} brute={} min ‖A+λB‖={:.9} at λ={:.6}",
            exact.orthogonal, brute, m.min_value, m.lambda_star.re
        );
        if let Some(u) = exact.witness {
            println!("  witness u = {:?}", u.entries().iter().map(|x| x.re).collect::<Vec<_>>());
        }
    }
    Ok(())
}
