use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::label::{edge, Edge};

/// A simple cycle in a host complex together with the labels of its own edges.
///
/// `labels[i]` is the label of the edge `vertices[i] – vertices[i + 1]` (indices mod `len`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleWithLabels {
    pub vertices: Vec<usize>,
    pub labels: Vec<u32>,
}

impl CycleWithLabels {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    pub fn sorted_vertices(&self) -> Vec<usize> {
        self.vertex_set().into_iter().collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| edge(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Rotates and reflects so the cycle starts at its smallest vertex and
    /// continues towards the smaller of that vertex's two neighbours.
    pub fn canonical(&self) -> CycleWithLabels {
        let n = self.vertices.len();
        if n < 3 {
            return self.clone();
        }
        let start = (0..n).min_by_key(|&i| self.vertices[i]).unwrap();
        let next = self.vertices[(start + 1) % n];
        let prev = self.vertices[(start + n - 1) % n];
        let mut vertices = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        if next <= prev {
            for k in 0..n {
                vertices.push(self.vertices[(start + k) % n]);
                labels.push(self.labels[(start + k) % n]);
            }
        } else {
            for k in 0..n {
                vertices.push(self.vertices[(start + n - k) % n]);
                // edge (start-k) – (start-k-1) is stored at index start-k-1
                labels.push(self.labels[(start + 2 * n - k - 1) % n]);
            }
        }
        CycleWithLabels { vertices, labels }
    }

    pub fn all_labels_equal(&self, m: u32) -> bool {
        self.labels.iter().all(|&l| l == m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_reverses_labels_consistently() {
        let c = CycleWithLabels {
            vertices: vec![5, 1, 7, 3],
            labels: vec![2, 3, 4, 5],
        };
        let k = c.canonical();
        assert_eq!(k.vertices, vec![1, 5, 3, 7]);
        // 1-5 had label 2, 5-3 had label 5, 3-7 label 4, 7-1 label 3
        assert_eq!(k.labels, vec![2, 5, 4, 3]);
        assert_eq!(k.canonical(), k);
    }
}
