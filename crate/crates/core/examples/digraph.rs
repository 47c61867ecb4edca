//! Samples an orthogonality digraph of M2(R) and prints it as DOT.

use bjclass::orthograph::{reduced_classes, sample_digraph, DigraphOptions};

fn main() -> bjclass::Result<()> {
    let spec = "M2(R)".parse()?;
    let options = DigraphOptions { count: 6, seed: 2, include_zero: true, projective: false };
    let g = sample_digraph(&spec, options)?;
    print!("{}", g.to_dot());
    println!("// {} vertices, {} edges", g.len(), g.edges.len());
    println!("// classes by neighborhood: {:?}", reduced_classes(&g));
    Ok(())
}
