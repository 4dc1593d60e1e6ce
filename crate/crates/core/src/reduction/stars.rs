use std::collections::{BTreeMap, BTreeSet};

use super::classify::{classify_vertex, VertexClass};
use crate::complex::{edge, Cell, LabeledCellComplex, LabeledTriangulation, Provenance};
use crate::error::{Error, Result};

/// `[L − T]`: the stars of the vertices in `removed` replaced by single
/// triangle or square cells. `source[i]` is the vertex of `L` behind vertex
/// `i` of the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedComplex {
    pub complex: LabeledCellComplex,
    pub source: Vec<usize>,
    pub removed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarReduction {
    Reduced(ReducedComplex),
    /// Two 4-Euclidean vertices whose links share three vertices, so the two
    /// added squares would meet in a path of two edges.
    L6Detected {
        first: usize,
        second: usize,
    },
}

/// Replaces the star of every vertex of `t` by its link as a cell. Each vertex
/// must be Euclidean and no two may be adjacent.
pub fn reduce_stars(l: &LabeledTriangulation, t: &[usize]) -> Result<StarReduction> {
    l.ensure_vertices(t)?;
    let removed: Vec<usize> = t
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut classes = Vec::new();
    for &v in &removed {
        let class = classify_vertex(l, v)?;
        if !class.is_euclidean() {
            return Err(Error::PreconditionViolated(format!(
                "vertex {v} is not Euclidean"
            )));
        }
        classes.push(class);
    }
    for (i, &a) in removed.iter().enumerate() {
        for &b in &removed[i + 1..] {
            if l.is_adjacent(a, b) {
                return Err(Error::AdjacentEuclideanVertices(a, b));
            }
        }
    }
    for i in 0..removed.len() {
        for j in i + 1..removed.len() {
            if classes[i] == VertexClass::Euclid4 && classes[j] == VertexClass::Euclid4 {
                let shared = l.common_neighbors(removed[i], removed[j]);
                if shared.len() >= 3 {
                    return Ok(StarReduction::L6Detected {
                        first: removed[i],
                        second: removed[j],
                    });
                }
            }
        }
    }

    let source: Vec<usize> = (0..l.vertex_count())
        .filter(|v| removed.binary_search(v).is_err())
        .collect();
    let index: BTreeMap<usize, usize> = source.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut cells = Vec::new();
    for tri in l.triangles() {
        if tri.iter().all(|v| index.contains_key(v)) {
            cells.push(Cell {
                corners: tri.iter().map(|v| index[v]).collect(),
                provenance: Provenance::OriginalTriangle,
            });
        }
    }
    for &v in &removed {
        let link = l.link(v)?;
        cells.push(Cell {
            corners: link.vertices.iter().map(|w| index[w]).collect(),
            provenance: if link.len() == 4 {
                Provenance::AddedSquare
            } else {
                Provenance::AddedTriangle
            },
        });
    }
    let mut labels = BTreeMap::new();
    for (&(a, b), &m) in l.labels() {
        if let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) {
            labels.insert(edge(i, j), m);
        }
    }
    let names = source.iter().map(|&v| l.name(v).to_string()).collect();
    let complex = LabeledCellComplex::new(names, cells, labels).map_err(|e| match e {
        Error::InvariantViolation(msg) => Error::PreconditionViolated(msg),
        other => other,
    })?;
    Ok(StarReduction::Reduced(ReducedComplex {
        complex,
        source,
        removed,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reduction::euclidean_vertices;

    #[test]
    fn capped_antiprism_reduces_to_square_antiprism() {
        let l = fixtures::capped_antiprism(3);
        let t = euclidean_vertices(&l);
        assert_eq!(t, vec![0, 9]);
        let StarReduction::Reduced(r) = reduce_stars(&l, &t).unwrap() else {
            panic!("expected a reduction");
        };
        assert_eq!(r.complex.vertex_count(), 8);
        assert_eq!(r.complex.cells().len(), 10);
        assert_eq!(
            r.complex.cells().iter().filter(|c| c.is_square()).count(),
            2
        );
        assert_eq!(r.source, (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn l6_is_detected() {
        use fixtures::l6::*;
        let l = fixtures::l6_coned(3);
        assert_eq!(
            reduce_stars(&l, &[S1, S2]).unwrap(),
            StarReduction::L6Detected {
                first: S1,
                second: S2
            }
        );
    }

    #[test]
    fn adjacent_vertices_are_rejected() {
        let l = fixtures::octahedron(2);
        assert_eq!(
            reduce_stars(&l, &[0, 1]).unwrap_err(),
            Error::AdjacentEuclideanVertices(0, 1)
        );
        assert!(matches!(
            reduce_stars(&fixtures::icosahedron(2), &[0]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn opposite_octahedron_poles_overlap() {
        // two squares on the same four vertices are not a strict cell complex
        let l = fixtures::octahedron(2);
        assert_eq!(
            reduce_stars(&l, &[4, 5]).unwrap(),
            StarReduction::L6Detected {
                first: 4,
                second: 5
            }
        );
    }
}
