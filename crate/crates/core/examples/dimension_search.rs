//! Heuristic graph dimension: the smallest set of elements with no common orthogonal element.

use bjclass::orthograph::graph_dimension_search;

fn main() -> bjclass::Result<()> {
    for (label, pool) in [("M1(R)", 8), ("M2(R)", 16), ("M1(H)", 16)] {
        let d = graph_dimension_search(&label.parse()?, pool, 5, 10)?;
        println!("{label}: size {:?}, smaller sets refuted: {} ({}/{})", d.candidate_size, d.refuted_smaller, d.refuted, d.trials);
    }
    Ok(())
}
