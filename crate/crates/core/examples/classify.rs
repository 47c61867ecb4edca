//! Recovers the field, division algebra and size of a few simple algebras from
//! their orthogonality graph invariants.

use bjclass::algebra::AlgebraSpec;
use bjclass::classify::classify;

fn main() -> bjclass::Result<()> {
    for label in ["M3(R)", "M2(C)", "M2(C)/C", "M1(H)", "M2(H)", "M1(R)"] {
        let spec: AlgebraSpec = label.parse()?;
        let r = match classify(&spec, 200, 0) {
            Ok(r) => r,
            Err(e) => {
                println!("{label:8} {e}");
                continue;
            }
        };
        println!(
            "{label:8} dim={:2} chain={} buckets={:?} case={} recovered={}",
            r.evidence.dim,
            r.evidence.chain_length,
            r.evidence.bucket_count,
            r.theorem_case,
            r.matches(&spec)
        );
    }
    Ok(())
}
