//! The ortho-digraph: neighborhoods, chains, symmetry, successors and sampled digraphs.

pub mod chain;
pub mod digraph;
pub mod dimension;
pub mod neighborhood;
pub mod successors;
pub mod symmetry;

pub use chain::{
    build_maximal_chain, refine, simultaneous_chain_representatives, Chain, ChainRepresentatives,
};
pub use dimension::{graph_dimension_search, DimensionSearch};
pub use digraph::{reduced_classes, sample_digraph, DigraphOptions, DigraphSample};
pub use neighborhood::{outgoing_equal, outgoing_subset};
pub use successors::{successor_buckets, successor_buckets_limited, SuccessorBuckets};
pub use symmetry::{
    is_right_symmetric, left_asymmetry_witness, right_asymmetry_witness, AsymmetryWitness,
};
