//! Edge-labeled triangulations and triangle/square cell complexes of the 2-sphere.

mod cell;
mod cycle;
mod label;
mod query;
mod triangulation;

pub use cell::{Cell, CellComplexDocument, LabeledCellComplex, Provenance};
pub use cycle::CycleWithLabels;
pub use label::{
    compare_reciprocal_sum, edge, is_euclidean_triple, is_spherical_triple, reciprocal_sum, Edge,
    Label, MAX_LABEL,
};
pub use query::{Star, Subcomplex, Suspension};
pub use triangulation::{parse_triangulation, LabeledTriangulation, TriangulationDocument};

#[cfg(test)]
mod tests;
