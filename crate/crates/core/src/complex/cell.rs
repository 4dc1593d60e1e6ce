use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::label::{edge, is_euclidean_triple, Edge, Label};
use super::triangulation::LabeledTriangulation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    OriginalTriangle,
    AddedTriangle,
    AddedSquare,
}

/// A 2-cell: a triangle or square given by its corners in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub corners: Vec<usize>,
    pub provenance: Provenance,
}

impl Cell {
    pub fn is_square(&self) -> bool {
        self.corners.len() == 4
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.corners.len();
        (0..n)
            .map(|i| edge(self.corners[i], self.corners[(i + 1) % n]))
            .collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.corners.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplexDocument {
    pub vertices: Vec<String>,
    pub cells: Vec<Cell>,
    pub labels: Vec<[u64; 3]>,
}

/// A labeled cell decomposition of the 2-sphere into triangles and squares,
/// with strict intersections (two cells meet in nothing, a vertex, or an edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCellComplex {
    names: Vec<String>,
    cells: Vec<Cell>,
    labels: BTreeMap<Edge, u32>,
    neighbors: Vec<Vec<usize>>,
}

impl LabeledCellComplex {
    pub fn new(names: Vec<String>, cells: Vec<Cell>, labels: BTreeMap<Edge, u32>) -> Result<Self> {
        let n = names.len();
        let bad = |msg: String| Error::InvariantViolation(msg);
        let mut cells = cells;
        for c in &mut cells {
            if !(3..=4).contains(&c.corners.len()) {
                return Err(bad(format!(
                    "cell {:?} is not a triangle or square",
                    c.corners
                )));
            }
            if c.corners.iter().any(|&v| v >= n) {
                return Err(bad(format!("cell {:?} names an unknown vertex", c.corners)));
            }
            let set: BTreeSet<usize> = c.corners.iter().copied().collect();
            if set.len() != c.corners.len() {
                return Err(bad(format!("cell {:?} repeats a corner", c.corners)));
            }
            if (c.provenance == Provenance::AddedSquare) != c.is_square() {
                return Err(bad(format!(
                    "cell {:?} has mismatched provenance",
                    c.corners
                )));
            }
            canonicalize_corners(&mut c.corners);
        }
        cells.sort();

        let mut edge_use: BTreeMap<Edge, usize> = BTreeMap::new();
        for c in &cells {
            for e in c.edges() {
                *edge_use.entry(e).or_default() += 1;
            }
        }
        if let Some((e, k)) = edge_use.iter().find(|(_, &k)| k != 2) {
            return Err(bad(format!("edge {}-{} lies in {k} cells", e.0, e.1)));
        }
        if labels.keys().any(|e| !edge_use.contains_key(e)) || edge_use.len() != labels.len() {
            return Err(bad("labels do not match the cell edges".into()));
        }
        if labels.values().any(|&m| m < 2) {
            return Err(bad("label below 2".into()));
        }

        for c in &cells {
            let ls: Vec<u32> = c.edges().iter().map(|e| labels[e]).collect();
            match c.provenance {
                Provenance::AddedSquare if ls.iter().any(|&m| m != 2) => {
                    return Err(bad(format!(
                        "added square {:?} has a label other than 2",
                        c.corners
                    )));
                }
                Provenance::AddedTriangle if !is_euclidean_triple([ls[0], ls[1], ls[2]]) => {
                    return Err(bad(format!(
                        "added triangle {:?} does not have angle sum π",
                        c.corners
                    )));
                }
                _ => {}
            }
        }

        let mut neighbors = vec![BTreeSet::new(); n];
        for &(a, b) in edge_use.keys() {
            neighbors[a].insert(b);
            neighbors[b].insert(a);
        }
        for v in 0..n {
            if neighbors[v].is_empty() {
                return Err(bad(format!("vertex {v} lies in no cell")));
            }
            if !link_is_cycle(v, &neighbors[v], &cells) {
                return Err(bad(format!("link of vertex {v} is not a single cycle")));
            }
        }
        let chi = n as i64 - edge_use.len() as i64 + cells.len() as i64;
        if chi != 2 {
            return Err(bad(format!("Euler characteristic {chi} != 2")));
        }
        if let Some((a, b)) = first_bad_intersection(n, &cells) {
            return Err(bad(format!(
                "cells {:?} and {:?} do not meet in a single cell",
                cells[a].corners, cells[b].corners
            )));
        }
        Ok(Self {
            names,
            cells,
            labels,
            neighbors: neighbors
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        })
    }

    /// Every triangle becomes an `OriginalTriangle` cell.
    pub fn from_triangulation(l: &LabeledTriangulation) -> Self {
        let cells = l
            .triangles()
            .iter()
            .map(|t| Cell {
                corners: t.to_vec(),
                provenance: Provenance::OriginalTriangle,
            })
            .collect();
        Self::new(l.names().to_vec(), cells, l.labels().clone())
            .expect("a valid triangulation is a valid cell complex")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn labels(&self) -> &BTreeMap<Edge, u32> {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.labels.contains_key(&edge(a, b))
    }

    pub fn label(&self, a: usize, b: usize) -> Label {
        match self.labels.get(&edge(a, b)) {
            Some(&m) => Label::Finite(m),
            None => Label::Infinite,
        }
    }

    pub fn m(&self, a: usize, b: usize) -> u32 {
        self.labels[&edge(a, b)]
    }

    /// Whether some cell has exactly this vertex set.
    pub fn spans_cell(&self, vertices: &[usize]) -> bool {
        let want: BTreeSet<usize> = vertices.iter().copied().collect();
        self.cells
            .iter()
            .any(|c| c.corners.len() == want.len() && c.corners.iter().all(|v| want.contains(v)))
    }

    pub fn from_document(doc: &CellComplexDocument) -> Result<Self> {
        let labels = super::triangulation::label_rows(doc.vertices.len(), &doc.labels)?;
        Self::new(doc.vertices.clone(), doc.cells.clone(), labels)
    }

    pub fn to_document(&self) -> CellComplexDocument {
        CellComplexDocument {
            vertices: self.names.clone(),
            cells: self.cells.clone(),
            labels: self
                .labels
                .iter()
                .map(|(&(i, j), &m)| [i as u64, j as u64, m as u64])
                .collect(),
        }
    }

    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(&self.to_document()).expect("serialization is infallible");
        hex::encode(Sha256::digest(bytes))
    }

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

    /// Induced 4-cycles of the 1-skeleton as canonical vertex orders.
    pub fn chordless_4_circuits(&self) -> Vec<[usize; 4]> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for a in 0..n {
            for c in (a + 1)..n {
                if self.is_adjacent(a, c) {
                    continue;
                }
                let common: Vec<usize> = self.neighbors[a]
                    .iter()
                    .copied()
                    .filter(|&x| x > a && self.is_adjacent(x, c))
                    .collect();
                for (i, &b) in common.iter().enumerate() {
                    for &d in &common[i + 1..] {
                        if !self.is_adjacent(b, d) {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out.sort_by_key(|q| {
            let mut k = *q;
            k.sort_unstable();
            k
        });
        out
    }
}

/// Rotates to the smallest corner and orients towards its smaller neighbour.
fn canonicalize_corners(c: &mut [usize]) {
    let n = c.len();
    let start = (0..n).min_by_key(|&i| c[i]).unwrap();
    c.rotate_left(start);
    if c[n - 1] < c[1] {
        c[1..].reverse();
    }
}

fn link_is_cycle(v: usize, nodes: &BTreeSet<usize>, cells: &[Cell]) -> bool {
    let mut adj: BTreeMap<usize, Vec<usize>> = nodes.iter().map(|&x| (x, Vec::new())).collect();
    for c in cells.iter().filter(|c| c.contains(v)) {
        let n = c.corners.len();
        let i = c.corners.iter().position(|&x| x == v).unwrap();
        let (a, b) = (c.corners[(i + 1) % n], c.corners[(i + n - 1) % n]);
        for (x, y) in [(a, b), (b, a)] {
            match adj.get_mut(&x) {
                Some(list) => list.push(y),
                None => return false,
            }
        }
    }
    if nodes.len() < 2 || adj.values().any(|x| x.len() != 2) {
        return false;
    }
    // walk the arcs; a single cycle visits every node
    let start = *nodes.iter().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut prev = start;
    let mut cur = adj[&start][0];
    let mut steps = 0;
    while cur != start && steps <= nodes.len() {
        seen.insert(cur);
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        steps += 1;
    }
    seen.len() == nodes.len()
}

fn first_bad_intersection(n: usize, cells: &[Cell]) -> Option<(usize, usize)> {
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in cells.iter().enumerate() {
        for &v in &c.corners {
            at[v].push(i);
        }
    }
    let mut checked = BTreeSet::new();
    for list in &at {
        for (k, &i) in list.iter().enumerate() {
            for &j in &list[k + 1..] {
                if !checked.insert((i, j)) {
                    continue;
                }
                let shared: Vec<usize> = cells[i]
                    .corners
                    .iter()
                    .copied()
                    .filter(|v| cells[j].contains(*v))
                    .collect();
                let ok = match shared.len() {
                    1 => true,
                    2 => {
                        let e = edge(shared[0], shared[1]);
                        cells[i].edges().contains(&e) && cells[j].edges().contains(&e)
                    }
                    _ => false,
                };
                if !ok {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangulation_embeds_as_cell_complex() {
        let l = fixtures::icosahedron(2);
        let x = LabeledCellComplex::from_triangulation(&l);
        assert_eq!(x.cells().len(), 20);
        assert_eq!(x.edge_count(), 30);
        assert_eq!(x.cliques3().len(), 20);
    }

    #[test]
    fn square_with_diagonal_edge_is_rejected() {
        // octahedron with the star of vertex 0 replaced by a square, plus the
        // square's diagonal drawn on the other side: impossible as a strict complex
        let names = (0..4).map(|i| i.to_string()).collect();
        let cells = vec![
            Cell {
                corners: vec![0, 1, 2, 3],
                provenance: Provenance::AddedSquare,
            },
            Cell {
                corners: vec![0, 1, 2],
                provenance: Provenance::OriginalTriangle,
            },
            Cell {
                corners: vec![0, 2, 3],
                provenance: Provenance::OriginalTriangle,
            },
        ];
        let labels = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]
            .into_iter()
            .map(|e| (e, 2))
            .collect();
        assert!(matches!(
            LabeledCellComplex::new(names, cells, labels),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn added_square_requires_right_angles() {
        // a "pillow": two squares glued along their boundary is not strict either,
        // but the label check fires first
        let names = (0..4).map(|i| i.to_string()).collect();
        let cells = vec![
            Cell {
                corners: vec![0, 1, 2, 3],
                provenance: Provenance::AddedSquare,
            },
            Cell {
                corners: vec![0, 1, 2, 3],
                provenance: Provenance::AddedSquare,
            },
        ];
        let labels = [((0, 1), 3), ((1, 2), 2), ((2, 3), 2), ((0, 3), 2)]
            .into_iter()
            .collect();
        let err = LabeledCellComplex::new(names, cells, labels).unwrap_err();
        assert!(err.to_string().contains("other than 2"), "{err}");
    }
}
