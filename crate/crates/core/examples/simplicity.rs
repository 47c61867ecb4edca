//! Decides simplicity of complex algebras from dimension and maximal chain length.

use bjclass::classify::simplicity_test;
use bjclass::io::load_algebra;

fn main() -> bjclass::Result<()> {
    for label in ["M3(C)/C", "M2(C)+M1(C)/C", "M1(C)+M1(C)+M1(C)/C"] {
        let r = simplicity_test(&load_algebra(label)?)?;
        println!("{label:20} dim={} chain={} simple={}", r.dim, r.chain_length, r.simple);
    }
    Ok(())
}
