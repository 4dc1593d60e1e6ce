use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{is_euclidean_triple, CycleWithLabels, LabeledTriangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircuitKind {
    Three,
    Four,
}

/// A Euclidean 3- or 4-circuit that bounds neither a vertex star nor a pair
/// of adjacent triangles, with the interior vertices of the two disks it cuts
/// the sphere into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptyEuclideanCircuit {
    pub kind: CircuitKind,
    pub cycle: CycleWithLabels,
    pub sides: [Vec<usize>; 2],
}

/// Connected components of the 1-skeleton with `cut` removed, each sorted,
/// ordered by smallest vertex.
pub fn components_without(l: &LabeledTriangulation, cut: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let n = l.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || cut.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &w in l.neighbors(v) {
                if !seen[w] && !cut.contains(&w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Checks the defining conditions of an empty Euclidean circuit for `cycle`
/// and returns it with its sides.
pub fn as_empty_euclidean_circuit(
    l: &LabeledTriangulation,
    cycle: &CycleWithLabels,
) -> Option<EmptyEuclideanCircuit> {
    let vs = &cycle.vertices;
    let set: BTreeSet<usize> = vs.iter().copied().collect();
    if set.len() != vs.len() || vs.iter().any(|&v| v >= l.vertex_count()) {
        return None;
    }
    let actual = l.cycle(vs).ok()?;
    if actual.labels != cycle.labels {
        return None;
    }
    let kind = match vs.len() {
        3 => {
            if !is_euclidean_triple([cycle.labels[0], cycle.labels[1], cycle.labels[2]]) {
                return None;
            }
            CircuitKind::Three
        }
        4 => {
            let chordless = !l.is_adjacent(vs[0], vs[2]) && !l.is_adjacent(vs[1], vs[3]);
            if !chordless || !cycle.all_labels_equal(2) {
                return None;
            }
            CircuitKind::Four
        }
        _ => return None,
    };
    let comps = components_without(l, &set);
    // one interior vertex means C is a vertex link; none means it bounds triangles
    if comps.len() != 2 || comps.iter().any(|c| c.len() < 2) {
        return None;
    }
    let mut comps = comps.into_iter();
    Some(EmptyEuclideanCircuit {
        kind,
        cycle: cycle.canonical(),
        sides: [comps.next().unwrap(), comps.next().unwrap()],
    })
}

/// Every empty Euclidean circuit: 3-circuits first, then 4-circuits, each in
/// lexicographic order of their sorted vertex sets.
pub fn find_empty_euclidean_circuits(l: &LabeledTriangulation) -> Vec<EmptyEuclideanCircuit> {
    let mut out = Vec::new();
    for t in l.cliques3() {
        let cycle = l.cycle(&t).expect("clique edges exist");
        if let Some(c) = as_empty_euclidean_circuit(l, &cycle) {
            out.push(c);
        }
    }
    for cycle in l.chordless_4_circuits() {
        if let Some(c) = as_empty_euclidean_circuit(l, &cycle) {
            out.push(c);
        }
    }
    out
}
