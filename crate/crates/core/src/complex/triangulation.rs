use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::cycle::CycleWithLabels;
use super::label::{edge, Edge, Label, MAX_LABEL};
use crate::error::{Error, Result};

/// The JSON input format: 0-based indices, `i < j` in label rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationDocument {
    pub vertices: Vec<String>,
    pub triangles: Vec<[usize; 3]>,
    pub labels: Vec<[u64; 3]>,
}

/// An edge-labeled simplicial 2-sphere: the nerve of a Coxeter system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTriangulation {
    names: Vec<String>,
    triangles: Vec<[usize; 3]>,
    labels: BTreeMap<Edge, u32>,
    neighbors: Vec<Vec<usize>>,
    links: Vec<Vec<usize>>,
}

/// Reads `[i, j, m]` rows with `i < j < n` and `2 <= m <= MAX_LABEL`.
pub(crate) fn label_rows(n: usize, rows: &[[u64; 3]]) -> Result<BTreeMap<Edge, u32>> {
    let mut labels = BTreeMap::new();
    for row in rows {
        let [i, j, m] = *row;
        if i >= n as u64 || j >= n as u64 {
            return Err(Error::Schema(format!(
                "label row {row:?} names an unknown vertex"
            )));
        }
        if i >= j {
            return Err(Error::Label(format!(
                "label row {row:?} must satisfy i < j"
            )));
        }
        if m < 2 {
            return Err(Error::Label(format!("edge {i}-{j} has label {m} < 2")));
        }
        if m > MAX_LABEL as u64 {
            return Err(Error::Label(format!(
                "edge {i}-{j} has label {m} above the cap {MAX_LABEL}"
            )));
        }
        if labels.insert((i as usize, j as usize), m as u32).is_some() {
            return Err(Error::Label(format!("edge {i}-{j} labeled twice")));
        }
    }
    Ok(labels)
}

pub fn parse_triangulation(document: &[u8]) -> Result<LabeledTriangulation> {
    let doc: TriangulationDocument =
        serde_json::from_slice(document).map_err(|e| Error::Schema(e.to_string()))?;
    LabeledTriangulation::from_document(&doc)
}

fn sorted3(t: [usize; 3]) -> [usize; 3] {
    let mut t = t;
    t.sort_unstable();
    t
}

impl LabeledTriangulation {
    pub fn from_document(doc: &TriangulationDocument) -> Result<Self> {
        let labels = label_rows(doc.vertices.len(), &doc.labels)?;
        Self::new(doc.vertices.clone(), doc.triangles.clone(), labels)
    }

    /// Builds and validates a triangulation. Labels must cover exactly the
    /// edges of the triangles.
    pub fn new(
        names: Vec<String>,
        triangles: Vec<[usize; 3]>,
        labels: BTreeMap<Edge, u32>,
    ) -> Result<Self> {
        let n = names.len();
        let mut tris: Vec<[usize; 3]> = Vec::with_capacity(triangles.len());
        for t in &triangles {
            if t.iter().any(|&v| v >= n) {
                return Err(Error::Schema(format!(
                    "triangle {t:?} names an unknown vertex"
                )));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::Topology(format!("triangle {t:?} is degenerate")));
            }
            tris.push(sorted3(*t));
        }
        tris.sort_unstable();
        if let Some(w) = tris.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Topology(format!(
                "triangle {:?} appears twice",
                w[0]
            )));
        }

        let mut edge_use: BTreeMap<Edge, usize> = BTreeMap::new();
        for t in &tris {
            for e in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                *edge_use.entry(e).or_default() += 1;
            }
        }
        if let Some((e, c)) = edge_use.iter().find(|(_, &c)| c != 2) {
            return Err(Error::Topology(format!(
                "edge {}-{} lies in {c} triangles (expected 2)",
                e.0, e.1
            )));
        }

        for (&(i, j), &m) in &labels {
            if i >= j {
                return Err(Error::Label(format!(
                    "label key {i}-{j} must satisfy i < j"
                )));
            }
            if !(2..=MAX_LABEL).contains(&m) {
                return Err(Error::Label(format!("edge {i}-{j} has invalid label {m}")));
            }
            if !edge_use.contains_key(&(i, j)) {
                return Err(Error::Label(format!("label on non-edge {i}-{j}")));
            }
        }
        if let Some(e) = edge_use.keys().find(|e| !labels.contains_key(e)) {
            return Err(Error::Label(format!("edge {}-{} has no label", e.0, e.1)));
        }

        let mut neighbors = vec![BTreeSet::new(); n];
        for &(a, b) in edge_use.keys() {
            neighbors[a].insert(b);
            neighbors[b].insert(a);
        }
        let mut link_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for t in &tris {
            link_edges[t[0]].push((t[1], t[2]));
            link_edges[t[1]].push((t[0], t[2]));
            link_edges[t[2]].push((t[0], t[1]));
        }
        let mut links = Vec::with_capacity(n);
        for v in 0..n {
            if neighbors[v].is_empty() {
                return Err(Error::Topology(format!("vertex {v} lies in no triangle")));
            }
            let cycle = trace_cycle(&neighbors[v], &link_edges[v]).ok_or_else(|| {
                Error::Topology(format!("link of vertex {v} is not a single cycle"))
            })?;
            links.push(cycle);
        }

        if !is_connected(n, &neighbors) {
            return Err(Error::Topology("1-skeleton is disconnected".into()));
        }
        let chi = n as i64 - edge_use.len() as i64 + tris.len() as i64;
        if chi != 2 {
            return Err(Error::Topology(format!("Euler characteristic {chi} != 2")));
        }

        Ok(Self {
            names,
            triangles: tris,
            labels,
            neighbors: neighbors
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
            links,
        })
    }

    pub fn to_document(&self) -> TriangulationDocument {
        TriangulationDocument {
            vertices: self.names.clone(),
            triangles: self.triangles.clone(),
            labels: self
                .labels
                .iter()
                .map(|(&(i, j), &m)| [i as u64, j as u64, m as u64])
                .collect(),
        }
    }

    /// Compact JSON with sorted triangles and labels.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(&self.to_document()).expect("document serialization is infallible")
    }

    /// Lowercase hex SHA-256 of [`Self::canonical_bytes`].
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_bytes()))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn labels(&self) -> &BTreeMap<Edge, u32> {
        &self.labels
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.labels.keys().copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
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

    /// Label of an edge known to exist.
    pub fn m(&self, a: usize, b: usize) -> u32 {
        self.labels[&edge(a, b)]
    }

    pub fn has_triangle(&self, t: [usize; 3]) -> bool {
        self.triangles.binary_search(&sorted3(t)).is_ok()
    }

    /// Link vertices of `v` in cyclic order, starting at the smallest.
    pub(crate) fn link_order(&self, v: usize) -> &[usize] {
        &self.links[v]
    }

    pub fn common_neighbors(&self, a: usize, b: usize) -> Vec<usize> {
        let nb = &self.neighbors[b];
        self.neighbors[a]
            .iter()
            .copied()
            .filter(|x| nb.binary_search(x).is_ok())
            .collect()
    }

    /// Relabels with `v0, v1, …`; the generator uses this for stable output names.
    pub fn with_default_names(&self) -> Self {
        let mut out = self.clone();
        out.names = (0..self.names.len()).map(|i| format!("v{i}")).collect();
        out
    }
}

/// Orders a vertex's link as a cycle, starting at the smallest link vertex and
/// stepping to its smaller neighbour. `None` unless the link edges form one
/// simple cycle through every neighbour.
fn trace_cycle(nodes: &BTreeSet<usize>, link_edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = nodes.iter().map(|&x| (x, Vec::new())).collect();
    for &(a, b) in link_edges {
        adj.get_mut(&a)?.push(b);
        adj.get_mut(&b)?.push(a);
    }
    if nodes.len() < 3 || adj.values().any(|nb| nb.len() != 2) {
        return None;
    }
    let start = *nodes.iter().next()?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = *adj[&start].iter().min()?;
    while cur != start {
        order.push(cur);
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        if order.len() > nodes.len() {
            return None;
        }
    }
    (order.len() == nodes.len()).then_some(order)
}

fn is_connected(n: usize, neighbors: &[BTreeSet<usize>]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &neighbors[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl LabeledTriangulation {
    /// Labeled cycle through `vertices` in the given order.
    pub fn cycle(&self, vertices: &[usize]) -> Result<CycleWithLabels> {
        let n = vertices.len();
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            self.check_vertex(a)?;
            labels.push(
                self.label(a, b)
                    .finite()
                    .ok_or(Error::InfiniteLabel(a, b))?,
            );
        }
        Ok(CycleWithLabels {
            vertices: vertices.to_vec(),
            labels,
        })
    }
}
