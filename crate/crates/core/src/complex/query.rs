use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::cycle::CycleWithLabels;
use super::label::{edge, Edge};
use super::triangulation::LabeledTriangulation;
use crate::error::{Error, Result};

/// A subcomplex given by its simplices, each sorted by vertex index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subcomplex {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<Edge>,
    pub triangles: BTreeSet<[usize; 3]>,
}

impl Subcomplex {
    /// The cycle as a 1-dimensional subcomplex.
    pub fn from_cycle(c: &CycleWithLabels) -> Self {
        Subcomplex {
            vertices: c.vertex_set(),
            edges: c.edges().into_iter().collect(),
            triangles: BTreeSet::new(),
        }
    }
}

/// Closed star of a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: usize,
    pub triangles: Vec<[usize; 3]>,
    pub boundary: CycleWithLabels,
}

impl Star {
    pub fn to_subcomplex(&self) -> Subcomplex {
        let mut sub = Subcomplex::from_cycle(&self.boundary);
        sub.vertices.insert(self.center);
        for &w in &self.boundary.vertices {
            sub.edges.insert(edge(self.center, w));
        }
        sub.triangles.extend(self.triangles.iter().copied());
        sub
    }
}

/// Suspension structure: `poles` joined to every vertex of the `equator` cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suspension {
    pub poles: (usize, usize),
    pub equator: CycleWithLabels,
}

impl LabeledTriangulation {
    pub fn link(&self, v: usize) -> Result<CycleWithLabels> {
        self.check_vertex(v)?;
        self.cycle(self.link_order(v))
    }

    pub fn star(&self, v: usize) -> Result<Star> {
        let boundary = self.link(v)?;
        let triangles = self
            .triangles()
            .iter()
            .copied()
            .filter(|t| t.contains(&v))
            .collect();
        Ok(Star {
            center: v,
            triangles,
            boundary,
        })
    }

    /// All simplices of `self` spanned by vertices of `vertices`.
    pub fn induced_subcomplex(&self, vertices: &BTreeSet<usize>) -> Result<Subcomplex> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let edges = self
            .edges()
            .filter(|(a, b)| vertices.contains(a) && vertices.contains(b))
            .collect();
        let triangles = self
            .triangles()
            .iter()
            .copied()
            .filter(|t| t.iter().all(|v| vertices.contains(v)))
            .collect();
        Ok(Subcomplex {
            vertices: vertices.clone(),
            edges,
            triangles,
        })
    }

    /// Whether `sub` equals the subcomplex induced by its own vertex set.
    pub fn is_full(&self, sub: &Subcomplex) -> Result<bool> {
        Ok(self.induced_subcomplex(&sub.vertices)? == *sub)
    }

    /// Vertex triples that are pairwise adjacent, in lexicographic order.
    pub fn cliques3(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            for &b in self.neighbors(a).iter().filter(|&&b| b > a) {
                for &c in self.neighbors(b).iter().filter(|&&c| c > b) {
                    if self.is_adjacent(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Pairwise adjacent vertex quadruples, in lexicographic order.
    pub fn cliques4(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for [a, b, c] in self.cliques3() {
            for &d in self.neighbors(c).iter().filter(|&&d| d > c) {
                if self.is_adjacent(a, d) && self.is_adjacent(b, d) {
                    out.push([a, b, c, d]);
                }
            }
        }
        out
    }

    /// Induced 4-cycles (neither diagonal is an edge), ordered by their sorted
    /// vertex sets. Each cycle is returned in canonical orientation.
    pub fn chordless_4_circuits(&self) -> Vec<CycleWithLabels> {
        let n = self.vertex_count();
        let mut found: Vec<(Vec<usize>, CycleWithLabels)> = Vec::new();
        for a in 0..n {
            for c in (a + 1)..n {
                if self.is_adjacent(a, c) {
                    continue;
                }
                let common: Vec<usize> = self
                    .common_neighbors(a, c)
                    .into_iter()
                    .filter(|&x| x > a)
                    .collect();
                for (i, &b) in common.iter().enumerate() {
                    for &d in &common[i + 1..] {
                        if self.is_adjacent(b, d) {
                            continue;
                        }
                        let cycle = self
                            .cycle(&[a, b, c, d])
                            .expect("cycle edges exist")
                            .canonical();
                        let mut key = vec![a, b, c, d];
                        key.sort_unstable();
                        found.push((key, cycle));
                    }
                }
            }
        }
        // a is the minimum of each circuit; the diagonal {a, c} is unique, so
        // every circuit is produced exactly once.
        found.sort();
        found.into_iter().map(|(_, c)| c).collect()
    }

    pub fn is_boundary_simplex(&self) -> bool {
        self.vertex_count() == 4 && self.face_count() == 4 && self.edge_count() == 6
    }

    /// Suspension structure with the lexicographically smallest pole pair.
    pub fn suspension(&self) -> Option<Suspension> {
        let n = self.vertex_count();
        (0..n)
            .filter(|&p| self.valence(p) == n - 2)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .find_map(|(p, q)| self.suspension_with_poles(p, q))
    }

    /// Every suspension structure, ordered by pole pair.
    pub fn suspensions(&self) -> Vec<Suspension> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for p in 0..n {
            for q in (p + 1)..n {
                if let Some(s) = self.suspension_with_poles(p, q) {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn suspension_with_poles(&self, p: usize, q: usize) -> Option<Suspension> {
        let n = self.vertex_count();
        if p >= n || q >= n || p == q || self.is_adjacent(p, q) {
            return None;
        }
        if self.valence(p) != n - 2 || self.valence(q) != n - 2 {
            return None;
        }
        // p sees everything but q, so its link is a cycle on the rest
        let equator = self.link(p).ok()?;
        let rest: BTreeSet<usize> = (0..n).filter(|&v| v != p && v != q).collect();
        let induced = self.induced_subcomplex(&rest).ok()?;
        let as_cycle = Subcomplex::from_cycle(&equator);
        if induced.edges != as_cycle.edges || !induced.triangles.is_empty() {
            return None;
        }
        let (p, q) = if p < q { (p, q) } else { (q, p) };
        Some(Suspension {
            poles: (p, q),
            equator,
        })
    }

    /// Checks the link-cycle labeling condition without error plumbing.
    pub fn link_labels_all(&self, v: usize, m: u32) -> bool {
        self.link(v).map(|c| c.all_labels_equal(m)).unwrap_or(false)
    }

    pub fn ensure_vertices(&self, vs: &[usize]) -> Result<()> {
        match vs.iter().find(|&&v| v >= self.vertex_count()) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }
}
