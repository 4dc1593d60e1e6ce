use serde::{Deserialize, Serialize};

use super::gram::{gram_class, GramClass, LabelMatrix};
use crate::complex::{is_spherical_triple, LabeledTriangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagClause {
    /// A triangle of `L` is not spherical.
    A,
    /// A spherical 3-clique does not span a triangle.
    B,
    /// A 4-clique has a positive definite Gram form.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagViolation {
    pub clause: FlagClause,
    pub vertices: Vec<usize>,
    pub labels: Vec<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricFlagReport {
    pub violations: Vec<FlagViolation>,
}

impl MetricFlagReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            return "metric flag".into();
        }
        self.violations
            .iter()
            .map(|v| format!("clause ({:?}) at {:?}", v.clause, v.vertices).to_lowercase())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks that the labeled 1-skeleton determines `L`: triangles are spherical,
/// spherical 3-cliques are triangles, and no 4-clique is spherical.
pub fn metric_flag_check(l: &LabeledTriangulation) -> MetricFlagReport {
    let mut violations = Vec::new();
    let triple_labels = |[a, b, c]: [usize; 3]| [l.m(a, b), l.m(b, c), l.m(a, c)];
    for &t in l.triangles() {
        let ls = triple_labels(t);
        if !is_spherical_triple(ls) {
            violations.push(FlagViolation {
                clause: FlagClause::A,
                vertices: t.to_vec(),
                labels: ls.to_vec(),
            });
        }
    }
    for t in l.cliques3() {
        let ls = triple_labels(t);
        if is_spherical_triple(ls) && !l.has_triangle(t) {
            violations.push(FlagViolation {
                clause: FlagClause::B,
                vertices: t.to_vec(),
                labels: ls.to_vec(),
            });
        }
    }
    for q in l.cliques4() {
        let labels = LabelMatrix::from_triangulation(l, &q).expect("clique edges are finite");
        if gram_class(&labels).expect("size 4") == GramClass::PositiveDefinite {
            let mut ls = Vec::with_capacity(6);
            for i in 0..4 {
                for j in (i + 1)..4 {
                    ls.push(labels.get(i, j));
                }
            }
            violations.push(FlagViolation {
                clause: FlagClause::C,
                vertices: q.to_vec(),
                labels: ls,
            });
        }
    }
    MetricFlagReport { violations }
}
