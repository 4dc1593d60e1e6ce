use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::fixtures;

const OCTAHEDRON: &str = r#"{
  "vertices": ["a","b","c","d","e","f"],
  "triangles": [[0,1,2],[0,2,3],[0,3,4],[0,4,1],[5,1,2],[5,2,3],[5,3,4],[5,4,1]],
  "labels": [[0,1,2],[0,2,2],[0,3,2],[0,4,2],[1,2,2],[2,3,2],[3,4,2],[1,4,2],
             [1,5,2],[2,5,2],[3,5,2],[4,5,2]]
}"#;

#[test]
fn parses_octahedron() {
    let l = parse_triangulation(OCTAHEDRON.as_bytes()).unwrap();
    assert_eq!(
        (l.vertex_count(), l.edge_count(), l.face_count()),
        (6, 12, 8)
    );
    assert_eq!(l.label(0, 5), Label::Infinite);
    assert_eq!(l.label(0, 1), Label::Finite(2));
}

#[test]
fn rejects_edge_in_three_triangles() {
    let doc = r#"{"vertices":["a","b","c","d","e"],
      "triangles":[[0,1,2],[0,1,3],[0,1,4],[0,2,3],[1,2,3]],
      "labels":[]}"#;
    assert!(matches!(
        parse_triangulation(doc.as_bytes()),
        Err(Error::Topology(_))
    ));
}

#[test]
fn rejects_label_one() {
    let doc = OCTAHEDRON.replace("[0,1,2],[0,2,2]", "[0,1,1],[0,2,2]");
    assert!(matches!(
        parse_triangulation(doc.as_bytes()),
        Err(Error::Label(_))
    ));
}

#[test]
fn rejects_unknown_field() {
    let doc = OCTAHEDRON.replacen('{', r#"{"extra": 1,"#, 1);
    assert!(matches!(
        parse_triangulation(doc.as_bytes()),
        Err(Error::Schema(_))
    ));
}

#[test]
fn link_and_star() {
    let l = fixtures::icosahedron(3);
    let link = l.link(0).unwrap();
    assert_eq!(link.sorted_vertices(), vec![1, 2, 3, 4, 5]);
    assert!(link.all_labels_equal(3));
    let star = l.star(0).unwrap();
    assert_eq!(star.triangles.len(), 5);
    assert!(l.is_full(&star.to_subcomplex()).unwrap());
    assert_eq!(l.link(12), Err(Error::UnknownVertex(12)));
}

#[test]
fn induced_subcomplex_and_fullness() {
    let l = fixtures::octahedron(2);
    let square: BTreeSet<usize> = [0, 1, 2, 3].into_iter().collect();
    let sub = l.induced_subcomplex(&square).unwrap();
    assert_eq!(sub.edges.len(), 4);
    assert!(sub.triangles.is_empty());
    // a path with a missing chord is not full
    let mut path = Subcomplex::default();
    path.vertices.extend([0, 1, 4]);
    path.edges.extend([edge(0, 4), edge(1, 4)]);
    assert!(!l.is_full(&path).unwrap());
}

fn brute_cliques3(l: &LabeledTriangulation) -> Vec<[usize; 3]> {
    let n = l.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if l.is_adjacent(a, b) && l.is_adjacent(b, c) && l.is_adjacent(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn brute_chordless4(l: &LabeledTriangulation) -> Vec<Vec<usize>> {
    let n = l.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    // three ways to put four vertices on a cycle
                    for [w, x, y, z] in [
                        [q[0], q[1], q[2], q[3]],
                        [q[0], q[1], q[3], q[2]],
                        [q[0], q[2], q[1], q[3]],
                    ] {
                        let cycle = l.is_adjacent(w, x)
                            && l.is_adjacent(x, y)
                            && l.is_adjacent(y, z)
                            && l.is_adjacent(z, w);
                        if cycle && !l.is_adjacent(w, y) && !l.is_adjacent(x, z) {
                            out.push(q.to_vec());
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn clique_counts() {
    for (l, c3, c4) in [
        (fixtures::octahedron(2), 8, 3),
        (fixtures::icosahedron(2), 20, 0),
        (fixtures::boundary_simplex_uniform(3), 4, 0),
    ] {
        assert_eq!(l.cliques3(), brute_cliques3(&l));
        assert_eq!(l.cliques3().len(), c3);
        let found: Vec<Vec<usize>> = l
            .chordless_4_circuits()
            .iter()
            .map(|c| c.sorted_vertices())
            .collect();
        assert_eq!(found, brute_chordless4(&l));
        assert_eq!(found.len(), c4);
    }
    assert_eq!(fixtures::boundary_simplex_uniform(3).cliques4().len(), 1);
    assert!(fixtures::octahedron(2).cliques4().is_empty());
}

#[test]
fn suspension_recognition() {
    let l = fixtures::suspension(5, 2, 3);
    let s = l.suspension().unwrap();
    assert_eq!(s.poles, (5, 6));
    assert_eq!(s.equator.sorted_vertices(), vec![0, 1, 2, 3, 4]);
    // the octahedron is a suspension three ways
    assert_eq!(fixtures::octahedron(2).suspensions().len(), 3);
    assert!(fixtures::icosahedron(2).suspension().is_none());
    assert!(fixtures::boundary_simplex_uniform(3).is_boundary_simplex());
}

#[test]
fn document_round_trip() {
    let l = fixtures::icosahedron(3);
    let again = LabeledTriangulation::from_document(&l.to_document()).unwrap();
    assert_eq!(l, again);
    assert_eq!(l.digest(), again.digest());
    assert_eq!(l.digest().len(), 64);
}

proptest! {
    #[test]
    fn suspension_counts(n in 3usize..40, pole in 2u32..7, eq in 2u32..7) {
        let l = fixtures::suspension(n, pole, eq);
        let v = l.vertex_count();
        prop_assert_eq!(l.face_count(), 2 * v - 4);
        let valences: usize = (0..v).map(|x| l.valence(x)).sum();
        prop_assert_eq!(valences, 2 * l.edge_count());
        prop_assert_eq!(l.cliques3(), brute_cliques3(&l));
    }
}
