//! Small named triangulations used by the tests, the generator, and the CLI docs.

use std::collections::BTreeMap;

use crate::complex::{edge, LabeledTriangulation};

/// Builds a triangulation on `n` vertices, labeling each edge with `label(a, b)`.
pub fn from_triangles(
    n: usize,
    triangles: &[[usize; 3]],
    mut label: impl FnMut(usize, usize) -> u32,
) -> LabeledTriangulation {
    let mut labels = BTreeMap::new();
    for t in triangles {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            let e = edge(a, b);
            labels.entry(e).or_insert_with(|| label(e.0, e.1));
        }
    }
    let names = (0..n).map(|i| format!("v{i}")).collect();
    LabeledTriangulation::new(names, triangles.to_vec(), labels)
        .expect("fixture is a valid triangulation")
}

pub fn boundary_simplex_triangles() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
}

/// Boundary of the 3-simplex with `m[i][j]` on edge `i–j`.
pub fn boundary_simplex(m: [[u32; 4]; 4]) -> LabeledTriangulation {
    from_triangles(4, &boundary_simplex_triangles(), |a, b| m[a][b])
}

pub fn boundary_simplex_uniform(m: u32) -> LabeledTriangulation {
    boundary_simplex([[m; 4]; 4])
}

/// The 4-cycle 0-1-2-3 labeled 3, diagonals 2: the affine group Ã₃.
pub fn affine_boundary_simplex() -> LabeledTriangulation {
    let mut m = [[2; 4]; 4];
    for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
        m[a][b] = 3;
        m[b][a] = 3;
    }
    boundary_simplex(m)
}

/// Linear diagram 5–3–4 on vertices 0-1-2-3, all other pairs 2: a Lannér group.
pub fn linear_534_boundary_simplex() -> LabeledTriangulation {
    let mut m = [[2; 4]; 4];
    for (a, b, l) in [(0, 1, 5), (1, 2, 3), (2, 3, 4)] {
        m[a][b] = l;
        m[b][a] = l;
    }
    boundary_simplex(m)
}

/// Suspension of an `n`-gon: equator `0..n`, poles `n` and `n + 1`.
pub fn suspension_triangles(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        out.push([i, j, n]);
        out.push([i, j, n + 1]);
    }
    out
}

/// Suspension of an `n`-gon with pole edges `pole` and equator edges `equator`.
pub fn suspension(n: usize, pole: u32, equator: u32) -> LabeledTriangulation {
    from_triangles(n + 2, &suspension_triangles(n), |_, b| {
        if b >= n {
            pole
        } else {
            equator
        }
    })
}

pub fn octahedron(m: u32) -> LabeledTriangulation {
    suspension(4, m, m)
}

pub fn icosahedron_triangles() -> Vec<[usize; 3]> {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut out = Vec::new();
    for i in 0..5 {
        out.push([0, up(i), up(i + 1)]);
        out.push([11, low(i), low(i + 1)]);
        out.push([up(i), up(i + 1), low(i)]);
        out.push([low(i), low(i + 1), up(i + 1)]);
    }
    out
}

pub fn icosahedron(m: u32) -> LabeledTriangulation {
    from_triangles(12, &icosahedron_triangles(), |_, _| m)
}

/// Square antiprism with both squares coned off (16 faces): poles `0` and `9`,
/// squares `1..=4` and `5..=8`.
pub fn capped_antiprism_triangles() -> Vec<[usize; 3]> {
    let a = |i: usize| 1 + i % 4;
    let b = |i: usize| 5 + i % 4;
    let mut out = Vec::new();
    for i in 0..4 {
        out.push([0, a(i), a(i + 1)]);
        out.push([9, b(i), b(i + 1)]);
        out.push([a(i), a(i + 1), b(i)]);
        out.push([b(i), b(i + 1), a(i + 1)]);
    }
    out
}

/// Capped antiprism whose square edges are labeled 2 (both poles 4-Euclidean)
/// and every other edge `other`.
pub fn capped_antiprism(other: u32) -> LabeledTriangulation {
    let square = |a: usize, b: usize| {
        (1..=4).contains(&a) && (1..=4).contains(&b) || (5..=8).contains(&a) && (5..=8).contains(&b)
    };
    from_triangles(10, &capped_antiprism_triangles(), |a, b| {
        if square(a, b) {
            2
        } else {
            other
        }
    })
}

/// Vertex indices of [`l6_coned`].
pub mod l6 {
    pub const T: usize = 0;
    pub const B: usize = 1;
    pub const L: usize = 2;
    pub const S1: usize = 3;
    pub const V: usize = 4;
    pub const S2: usize = 5;
    pub const R: usize = 6;
    pub const X: usize = 7;
}

/// Two 4-Euclidean vertices whose stars share the adjacent edges `t–v`, `v–b`,
/// with the boundary of that configuration coned off by `x`. The pole edges of
/// `l`, `v`, `r` are labeled 2; every other edge gets `other`.
pub fn l6_coned(other: u32) -> LabeledTriangulation {
    use l6::*;
    let hexagon = [L, S1, V, S2, R, X];
    let mut tris = Vec::new();
    for i in 0..6 {
        let (a, c) = (hexagon[i], hexagon[(i + 1) % 6]);
        tris.push([a, c, T]);
        tris.push([a, c, B]);
    }
    from_triangles(8, &tris, |a, b| {
        let pole = a == T || a == B;
        if pole && [L, V, R].contains(&b) {
            2
        } else {
            other
        }
    })
}

/// Stellar subdivision of face `face` of `l`: a new last vertex joined to the
/// three corners by edges labeled 2; the face's own edges are relabeled with
/// `face_labels` (for `[a, b, c]`: edges a-b, b-c, a-c).
pub fn stellar_subdivide(
    l: &LabeledTriangulation,
    face: [usize; 3],
    face_labels: [u32; 3],
) -> LabeledTriangulation {
    let s = l.vertex_count();
    let mut tris: Vec<[usize; 3]> = l
        .triangles()
        .iter()
        .copied()
        .filter(|t| {
            let mut f = face;
            f.sort_unstable();
            *t != f
        })
        .collect();
    let [a, b, c] = face;
    tris.extend([[a, b, s], [b, c, s], [a, c, s]]);
    let mut labels = l.labels().clone();
    labels.insert(edge(a, b), face_labels[0]);
    labels.insert(edge(b, c), face_labels[1]);
    labels.insert(edge(a, c), face_labels[2]);
    for x in face {
        labels.insert(edge(x, s), 2);
    }
    let mut names = l.names().to_vec();
    names.push(format!("v{s}"));
    LabeledTriangulation::new(names, tris, labels).expect("stellar subdivision is valid")
}
