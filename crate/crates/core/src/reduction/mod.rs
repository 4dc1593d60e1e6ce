//! Euclidean vertices, empty Euclidean circuits, and the surgeries built on them.

mod circuits;
mod classify;
mod l6;
mod stars;
mod surgery;

pub use circuits::{
    as_empty_euclidean_circuit, components_without, find_empty_euclidean_circuits, CircuitKind,
    EmptyEuclideanCircuit,
};
pub use classify::{classify_vertex, euclidean_vertices, VertexClass};
pub use l6::{recognize_l6, L6Witness};
pub use stars::{reduce_stars, ReducedComplex, StarReduction};
pub use surgery::{
    merge_along_euclidean_vertices, merge_with_pairing, split_along_circuit, Merged, Split,
    SplitPiece,
};
