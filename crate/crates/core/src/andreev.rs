//! Andreev's conditions for the dual polytope of a labeled cell complex,
//! evaluated combinatorially on the complex with exact angle sums.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{compare_reciprocal_sum, Edge, LabeledCellComplex, Provenance};
use crate::error::{Error, Result};

/// The polytope dual to a cell complex: its faces are the complex's vertices
/// and its vertices are the cells. The dihedral angle at the edge dual to
/// `(a, b)` is `π / dihedral[(a, b)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPolytope {
    pub face_count: usize,
    pub edge_count: usize,
    /// Number of faces meeting at each polytope vertex, one per cell.
    pub vertex_valences: Vec<usize>,
    pub dihedral: BTreeMap<Edge, u32>,
    pub is_simplex: bool,
    pub is_triangular_prism: bool,
}

pub fn dual_polytope(x: &LabeledCellComplex) -> DualPolytope {
    DualPolytope {
        face_count: x.vertex_count(),
        edge_count: x.edge_count(),
        vertex_valences: x.cells().iter().map(|c| c.corners.len()).collect(),
        dihedral: x.labels().clone(),
        is_simplex: is_simplex(x),
        is_triangular_prism: prism_caps(x).is_some(),
    }
}

fn is_simplex(x: &LabeledCellComplex) -> bool {
    x.vertex_count() == 4 && (0..4).all(|v| x.valence(v) == 3)
}

/// For the triangulated bipyramid (dual of a triangular prism), the two
/// valence-3 vertices, whose edges are dual to the prism's base and top.
fn prism_caps(x: &LabeledCellComplex) -> Option<[usize; 2]> {
    if x.vertex_count() != 5 || x.cells().len() != 6 || x.cells().iter().any(|c| c.is_square()) {
        return None;
    }
    let caps: Vec<usize> = (0..5).filter(|&v| x.valence(v) == 3).collect();
    let fours = (0..5).filter(|&v| x.valence(v) == 4).count();
    match caps[..] {
        [a, b] if fours == 3 && !x.is_adjacent(a, b) => Some([a, b]),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    I,
    II,
    III,
    IV,
    V,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::I,
        Condition::II,
        Condition::III,
        Condition::IV,
        Condition::V,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
            Condition::IV => "iv",
            Condition::V => "v",
        }
    }
}

/// One checked configuration. `vertices` and `labels` are enough to re-decide
/// it against the complex:
/// (i) cell corners and its edge labels; (ii) a non-cell 3-clique;
/// (iii) an all-2 chordless 4-circuit; (iv) the two prism caps and their six
/// edge labels; (v) `[f1, f3, g]` with labels `[m(g, f1), m(g, f3)]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    pub vertices: Vec<usize>,
    pub labels: Vec<u32>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionRecord {
    pub condition: Condition,
    pub holds: bool,
    pub instances: Vec<Instance>,
}

impl ConditionRecord {
    /// The first failing instance.
    pub fn witness(&self) -> Option<&Instance> {
        self.instances.iter().find(|i| !i.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AndreevTranscript {
    pub passed: bool,
    pub conditions: Vec<ConditionRecord>,
}

impl AndreevTranscript {
    pub fn record(&self, c: Condition) -> &ConditionRecord {
        &self.conditions[c as usize]
    }

    pub fn failing(&self) -> Vec<Condition> {
        self.conditions
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.condition)
            .collect()
    }
}

fn record(condition: Condition, mut instances: Vec<Instance>) -> ConditionRecord {
    instances.sort();
    ConditionRecord {
        condition,
        holds: instances.iter().all(|i| i.holds),
        instances,
    }
}

pub fn andreev_check(x: &LabeledCellComplex) -> Result<AndreevTranscript> {
    if is_simplex(x) {
        return Err(Error::SimplexInput);
    }
    let conditions = vec![
        record(Condition::I, condition_i(x)),
        record(Condition::II, condition_ii(x)),
        record(Condition::III, condition_iii(x)),
        record(Condition::IV, condition_iv(x)),
        record(Condition::V, condition_v(x)),
    ];
    Ok(AndreevTranscript {
        passed: conditions.iter().all(|r| r.holds),
        conditions,
    })
}

fn condition_i(x: &LabeledCellComplex) -> Vec<Instance> {
    x.cells()
        .iter()
        .map(|c| {
            let labels: Vec<u32> = c.edges().iter().map(|&(a, b)| x.m(a, b)).collect();
            let holds = match c.provenance {
                Provenance::AddedSquare => labels.iter().all(|&m| m == 2),
                _ => c.corners.len() == 3 && compare_reciprocal_sum(&labels, 1) != Ordering::Less,
            };
            Instance {
                vertices: c.corners.clone(),
                labels,
                holds,
            }
        })
        .collect()
}

fn condition_ii(x: &LabeledCellComplex) -> Vec<Instance> {
    x.cliques3()
        .into_iter()
        .filter(|t| !x.spans_cell(t))
        .map(|[a, b, c]| {
            let labels = vec![x.m(a, b), x.m(b, c), x.m(a, c)];
            Instance {
                vertices: vec![a, b, c],
                holds: compare_reciprocal_sum(&labels, 1) == Ordering::Less,
                labels,
            }
        })
        .collect()
}

fn condition_iii(x: &LabeledCellComplex) -> Vec<Instance> {
    x.chordless_4_circuits()
        .into_iter()
        .filter_map(|q| {
            let labels: Vec<u32> = (0..4).map(|i| x.m(q[i], q[(i + 1) % 4])).collect();
            if labels.iter().any(|&m| m != 2) {
                return None;
            }
            Some(Instance {
                vertices: q.to_vec(),
                labels,
                holds: x.spans_cell(&q),
            })
        })
        .collect()
}

fn condition_iv(x: &LabeledCellComplex) -> Vec<Instance> {
    let Some([a, b]) = prism_caps(x) else {
        return Vec::new();
    };
    let mut labels = Vec::new();
    for cap in [a, b] {
        for &w in x.neighbors(cap) {
            labels.push(x.m(cap, w));
        }
    }
    let holds = labels.iter().any(|&m| m != 2);
    vec![Instance {
        vertices: vec![a, b],
        labels,
        holds,
    }]
}

fn condition_v(x: &LabeledCellComplex) -> Vec<Instance> {
    let squares: Vec<&Vec<usize>> = x
        .cells()
        .iter()
        .filter(|c| c.is_square())
        .map(|c| &c.corners)
        .collect();
    let mut out = Vec::new();
    for sq in &squares {
        for k in 0..2 {
            let (f1, f3) = (sq[k], sq[k + 2]);
            for &g in x.neighbors(f1) {
                if !x.is_adjacent(g, f3) {
                    continue;
                }
                let concurrent = squares
                    .iter()
                    .any(|s| s.contains(&f1) && s.contains(&f3) && s.contains(&g));
                if concurrent {
                    continue;
                }
                let labels = vec![x.m(g, f1), x.m(g, f3)];
                out.push(Instance {
                    vertices: vec![f1, f3, g],
                    holds: !(labels[0] == 2 && labels[1] == 2),
                    labels,
                });
            }
        }
    }
    out.dedup();
    out
}

/// Re-decides a transcript against `x`: every recorded instance must carry
/// the complex's labels and verdict, and the recorded instance sets must be
/// exactly those the complex produces.
pub fn recheck_transcript(
    x: &LabeledCellComplex,
    t: &AndreevTranscript,
) -> std::result::Result<(), String> {
    let fresh = andreev_check(x).map_err(|e| e.to_string())?;
    if t.conditions.len() != 5 {
        return Err("transcript must record five conditions".into());
    }
    for (want, got) in fresh.conditions.iter().zip(&t.conditions) {
        if want.condition != got.condition {
            return Err(format!("condition {} out of order", got.condition.roman()));
        }
        let mut recorded = got.instances.clone();
        recorded.sort();
        if recorded != want.instances {
            return Err(format!(
                "condition ({}) instances do not match the complex",
                want.condition.roman()
            ));
        }
        if got.holds != want.holds {
            return Err(format!(
                "condition ({}) verdict is wrong",
                want.condition.roman()
            ));
        }
    }
    if t.passed != fresh.passed {
        return Err("overall verdict is wrong".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Cell;
    use crate::fixtures;

    fn complex_of(l: &crate::complex::LabeledTriangulation) -> LabeledCellComplex {
        LabeledCellComplex::from_triangulation(l)
    }

    #[test]
    fn right_angled_icosahedron_passes() {
        let x = complex_of(&fixtures::icosahedron(2));
        let d = dual_polytope(&x);
        assert_eq!(d.face_count, 12);
        assert_eq!(d.vertex_valences, vec![3; 20]);
        let t = andreev_check(&x).unwrap();
        assert!(t.passed, "{:?}", t.failing());
        assert_eq!(t.record(Condition::II).instances.len(), 0);
        assert_eq!(t.record(Condition::I).instances.len(), 20);
        assert!(recheck_transcript(&x, &t).is_ok());
    }

    #[test]
    fn right_angled_prism_fails_iv_only() {
        // the equator must be hyperbolic for the input to be metric flag
        let x = complex_of(&fixtures::suspension(3, 2, 4));
        assert!(dual_polytope(&x).is_triangular_prism);
        let t = andreev_check(&x).unwrap();
        assert_eq!(t.failing(), vec![Condition::IV]);
        assert_eq!(
            t.record(Condition::IV).witness().unwrap().vertices,
            vec![3, 4]
        );
    }

    #[test]
    fn nonface_euclidean_clique_fails_ii() {
        // icosahedron with one face subdivided: the old face is a (3,3,3) non-cell clique
        let l = fixtures::stellar_subdivide(&fixtures::icosahedron(2), [0, 1, 2], [3, 3, 3]);
        let t = andreev_check(&complex_of(&l)).unwrap();
        assert_eq!(t.failing(), vec![Condition::II]);
        let w = t.record(Condition::II).witness().unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert_eq!(w.labels, vec![3, 3, 3]);
    }

    #[test]
    fn octahedron_fails_iii() {
        let t = andreev_check(&complex_of(&fixtures::octahedron(2))).unwrap();
        assert_eq!(t.failing(), vec![Condition::III]);
        assert_eq!(t.record(Condition::III).instances.len(), 3);
    }

    #[test]
    fn simplex_is_rejected() {
        let x = complex_of(&fixtures::boundary_simplex_uniform(3));
        assert!(dual_polytope(&x).is_simplex);
        assert_eq!(andreev_check(&x).unwrap_err(), Error::SimplexInput);
    }

    #[test]
    fn one_square_gives_one_four_valent_vertex() {
        // octahedron with the star of one pole replaced by a square: a square pyramid
        let mut cells = Vec::new();
        let o = fixtures::octahedron(2);
        for t in o.triangles().iter().filter(|t| !t.contains(&5)) {
            cells.push(Cell {
                corners: t.to_vec(),
                provenance: Provenance::OriginalTriangle,
            });
        }
        cells.push(Cell {
            corners: o.link(5).unwrap().vertices,
            provenance: Provenance::AddedSquare,
        });
        let labels = o
            .labels()
            .iter()
            .filter(|(&(a, b), _)| a != 5 && b != 5)
            .map(|(&e, &m)| (e, m))
            .collect();
        let x = LabeledCellComplex::new((0..5).map(|i| format!("v{i}")).collect(), cells, labels)
            .unwrap();
        let d = dual_polytope(&x);
        assert_eq!(d.vertex_valences.iter().filter(|&&k| k == 4).count(), 1);
        // the apex sees both members of each opposite pair with right angles
        let t = andreev_check(&x).unwrap();
        assert_eq!(t.failing(), vec![Condition::V]);
        assert_eq!(
            t.record(Condition::V).witness().unwrap().vertices,
            vec![0, 2, 4]
        );
    }

    #[test]
    fn transcript_tampering_is_detected() {
        let x = complex_of(&fixtures::icosahedron(2));
        let mut t = andreev_check(&x).unwrap();
        t.conditions[0].instances[0].labels[0] = 3;
        assert!(recheck_transcript(&x, &t).is_err());
    }
}
