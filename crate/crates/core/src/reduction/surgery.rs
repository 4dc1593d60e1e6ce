use std::collections::{BTreeMap, BTreeSet};

use super::circuits::{as_empty_euclidean_circuit, EmptyEuclideanCircuit};
use super::classify::classify_vertex;
use crate::complex::{edge, CycleWithLabels, Edge, LabeledTriangulation};
use crate::coxeter::metric_flag_check;
use crate::error::{Error, Result};

/// One half of a split: the capped disk, the cone vertex (always the last
/// index), and for every other vertex its index in the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPiece {
    pub triangulation: LabeledTriangulation,
    pub cap: usize,
    pub vertex_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub circuit: EmptyEuclideanCircuit,
    pub pieces: [SplitPiece; 2],
}

/// Cuts `l` along an empty Euclidean circuit and cones each boundary with a
/// new vertex whose spokes are labeled 2.
pub fn split_along_circuit(l: &LabeledTriangulation, cycle: &CycleWithLabels) -> Result<Split> {
    let circuit = as_empty_euclidean_circuit(l, cycle)
        .ok_or_else(|| Error::NotEmptyCircuit(cycle.vertices.clone()))?;
    let c = &circuit.cycle;
    let cap_name = format!(
        "cap[{}]",
        c.vertices
            .iter()
            .map(|&v| l.name(v))
            .collect::<Vec<_>>()
            .join(",")
    );
    let mut pieces = Vec::with_capacity(2);
    for side in &circuit.sides {
        let mut keep: BTreeSet<usize> = side.iter().copied().collect();
        keep.extend(c.vertices.iter().copied());
        let vertex_map: Vec<usize> = keep.iter().copied().collect();
        let index: BTreeMap<usize, usize> = vertex_map
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let cap = vertex_map.len();

        let mut tris = Vec::new();
        for t in l.triangles() {
            if t.iter().all(|v| keep.contains(v)) && t.iter().any(|v| side.binary_search(v).is_ok())
            {
                tris.push(t.map(|v| index[&v]));
            }
        }
        let k = c.len();
        for i in 0..k {
            tris.push([index[&c.vertices[i]], index[&c.vertices[(i + 1) % k]], cap]);
        }
        let mut labels = BTreeMap::new();
        for (&(a, b), &m) in l.labels() {
            if keep.contains(&a) && keep.contains(&b) {
                labels.insert(edge(index[&a], index[&b]), m);
            }
        }
        for v in &c.vertices {
            labels.insert(edge(index[v], cap), 2);
        }
        let mut names: Vec<String> = vertex_map.iter().map(|&v| l.name(v).to_string()).collect();
        names.push(cap_name.clone());
        let triangulation = LabeledTriangulation::new(names, tris, labels)
            .map_err(|e| Error::InternalContradiction(format!("split piece is invalid: {e}")))?;
        pieces.push(SplitPiece {
            triangulation,
            cap,
            vertex_map,
        });
    }
    let second = pieces.pop().unwrap();
    let first = pieces.pop().unwrap();
    Ok(Split {
        circuit,
        pieces: [first, second],
    })
}

/// The result of gluing two triangulations along the links of Euclidean
/// vertices. `from_first[v]` / `from_second[v]` give the merged index of each
/// input vertex (`None` for the removed vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merged {
    pub triangulation: LabeledTriangulation,
    pub seam: Vec<usize>,
    pub from_first: Vec<Option<usize>>,
    pub from_second: Vec<Option<usize>>,
}

/// Inverse of [`split_along_circuit`]: removes the open stars of `s1` and `s2`
/// and identifies their links by the first label-preserving dihedral
/// correspondence (rotations before reflections).
pub fn merge_along_euclidean_vertices(
    l1: &LabeledTriangulation,
    s1: usize,
    l2: &LabeledTriangulation,
    s2: usize,
) -> Result<Merged> {
    check_merge_inputs(l1, s1, l2, s2)?;
    let c1 = l1.link(s1)?;
    let c2 = l2.link(s2)?;
    if c1.len() != c2.len() {
        return Err(Error::LinkMismatch);
    }
    let n = c1.len();
    for reflect in [false, true] {
        for shift in 0..n {
            let image = |i: usize| {
                if reflect {
                    c2.vertices[(shift + n - i % n) % n]
                } else {
                    c2.vertices[(shift + i) % n]
                }
            };
            let ok =
                (0..n).all(|i| l2.label(image(i), image(i + 1)).finite() == Some(c1.labels[i]));
            if ok {
                let pairing: Vec<(usize, usize)> =
                    (0..n).map(|i| (c1.vertices[i], image(i))).collect();
                return merge_with_pairing(l1, s1, l2, s2, &pairing);
            }
        }
    }
    Err(Error::LinkMismatch)
}

fn check_merge_inputs(
    l1: &LabeledTriangulation,
    s1: usize,
    l2: &LabeledTriangulation,
    s2: usize,
) -> Result<()> {
    for (l, s) in [(l1, s1), (l2, s2)] {
        if !classify_vertex(l, s)?.is_euclidean() {
            return Err(Error::PreconditionViolated(format!(
                "vertex {s} is not Euclidean"
            )));
        }
        let report = metric_flag_check(l);
        if !report.passed() {
            return Err(Error::PreconditionViolated(report.summary()));
        }
    }
    Ok(())
}

/// Glue with an explicit identification `(vertex of link(s1), vertex of link(s2))`.
pub fn merge_with_pairing(
    l1: &LabeledTriangulation,
    s1: usize,
    l2: &LabeledTriangulation,
    s2: usize,
    pairing: &[(usize, usize)],
) -> Result<Merged> {
    check_merge_inputs(l1, s1, l2, s2)?;
    let c1 = l1.link(s1)?;
    let c2 = l2.link(s2)?;
    let n = c1.len();
    let map21: BTreeMap<usize, usize> = pairing.iter().map(|&(a, b)| (b, a)).collect();
    let firsts: BTreeSet<usize> = pairing.iter().map(|p| p.0).collect();
    if pairing.len() != n
        || map21.len() != n
        || firsts != c1.vertex_set()
        || map21.keys().copied().collect::<BTreeSet<_>>() != c2.vertex_set()
    {
        return Err(Error::LinkMismatch);
    }
    // the pairing must carry link edges to link edges with equal labels
    for i in 0..n {
        let (a, b) = (c1.vertices[i], c1.vertices[(i + 1) % n]);
        let (a2, b2) = (
            pairing.iter().find(|p| p.0 == a).unwrap().1,
            pairing.iter().find(|p| p.0 == b).unwrap().1,
        );
        if l2.label(a2, b2).finite() != Some(c1.labels[i]) {
            return Err(Error::LinkMismatch);
        }
    }

    let mut from_first = vec![None; l1.vertex_count()];
    let mut names = Vec::new();
    for v in 0..l1.vertex_count() {
        if v != s1 {
            from_first[v] = Some(names.len());
            names.push(l1.name(v).to_string());
        }
    }
    let mut from_second = vec![None; l2.vertex_count()];
    for v in 0..l2.vertex_count() {
        if v == s2 {
            continue;
        }
        from_second[v] = match map21.get(&v) {
            Some(&a) => from_first[a],
            None => {
                names.push(l2.name(v).to_string());
                Some(names.len() - 1)
            }
        };
    }

    let mut tris = Vec::new();
    for t in l1.triangles() {
        if !t.contains(&s1) {
            tris.push(t.map(|v| from_first[v].unwrap()));
        }
    }
    for t in l2.triangles() {
        if !t.contains(&s2) {
            tris.push(t.map(|v| from_second[v].unwrap()));
        }
    }
    let mut labels: BTreeMap<Edge, u32> = BTreeMap::new();
    for (&(a, b), &m) in l1.labels() {
        if a != s1 && b != s1 {
            labels.insert(edge(from_first[a].unwrap(), from_first[b].unwrap()), m);
        }
    }
    let seam_edges: BTreeSet<Edge> = c1
        .edges()
        .into_iter()
        .map(|(a, b)| edge(from_first[a].unwrap(), from_first[b].unwrap()))
        .collect();
    for (&(a, b), &m) in l2.labels() {
        if a == s2 || b == s2 {
            continue;
        }
        let e = edge(from_second[a].unwrap(), from_second[b].unwrap());
        if let Some(&old) = labels.get(&e) {
            if !seam_edges.contains(&e) || old != m {
                return Err(Error::DegenerateGlue(format!(
                    "edge {}-{} arises from both sides",
                    e.0, e.1
                )));
            }
        }
        labels.insert(e, m);
    }
    let triangulation = LabeledTriangulation::new(names, tris, labels)
        .map_err(|e| Error::DegenerateGlue(e.to_string()))?;
    let report = metric_flag_check(&triangulation);
    if !report.passed() {
        return Err(Error::DegenerateGlue(report.summary()));
    }
    Ok(Merged {
        triangulation,
        seam: c1
            .vertices
            .iter()
            .map(|&v| from_first[v].unwrap())
            .collect(),
        from_first,
        from_second,
    })
}
