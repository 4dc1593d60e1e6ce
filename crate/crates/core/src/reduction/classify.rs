use serde::{Deserialize, Serialize};

use crate::complex::{is_euclidean_triple, LabeledTriangulation};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    NotEuclidean,
    /// Valence 3, link angles summing to π.
    Euclid3,
    /// Valence 4, every link edge labeled 2.
    Euclid4,
}

impl VertexClass {
    pub fn is_euclidean(self) -> bool {
        self != VertexClass::NotEuclidean
    }
}

pub fn classify_vertex(l: &LabeledTriangulation, v: usize) -> Result<VertexClass> {
    let link = l.link(v)?;
    Ok(match link.len() {
        3 if is_euclidean_triple([link.labels[0], link.labels[1], link.labels[2]]) => {
            VertexClass::Euclid3
        }
        4 if link.all_labels_equal(2) => VertexClass::Euclid4,
        _ => VertexClass::NotEuclidean,
    })
}

/// The set `T` of Euclidean vertices, sorted.
pub fn euclidean_vertices(l: &LabeledTriangulation) -> Vec<usize> {
    (0..l.vertex_count())
        .filter(|&v| classify_vertex(l, v).is_ok_and(VertexClass::is_euclidean))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;

    #[test]
    fn octahedron_vertices_are_four_euclidean() {
        let l = fixtures::octahedron(2);
        for v in 0..6 {
            assert_eq!(classify_vertex(&l, v).unwrap(), VertexClass::Euclid4);
        }
    }

    #[test]
    fn valence_three_with_right_triangle_link() {
        let l = fixtures::stellar_subdivide(&fixtures::icosahedron(2), [0, 1, 2], [2, 4, 4]);
        assert_eq!(classify_vertex(&l, 12).unwrap(), VertexClass::Euclid3);
        assert_eq!(euclidean_vertices(&l), vec![12]);
    }

    #[test]
    fn icosahedron_has_no_euclidean_vertices() {
        let l = fixtures::icosahedron(2);
        assert_eq!(classify_vertex(&l, 0).unwrap(), VertexClass::NotEuclidean);
        assert!(euclidean_vertices(&l).is_empty());
    }

    #[test]
    fn unknown_vertex() {
        assert_eq!(
            classify_vertex(&fixtures::octahedron(2), 6),
            Err(Error::UnknownVertex(6))
        );
    }
}
