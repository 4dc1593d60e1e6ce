//! Seeded generator of metric-flag labeled triangulations, optionally with
//! planted empty Euclidean circuits.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{edge, is_spherical_triple, Edge, LabeledTriangulation};
use crate::coxeter::metric_flag_check;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::reduction::{
    find_empty_euclidean_circuits, merge_along_euclidean_vertices, CircuitKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub vertices: usize,
    pub palette: Vec<u32>,
    pub plant_3: usize,
    pub plant_4: usize,
}

impl GeneratorConfig {
    pub fn new(seed: u64, vertices: usize) -> Self {
        GeneratorConfig {
            seed,
            vertices,
            palette: vec![2, 3, 4, 5],
            plant_3: 0,
            plant_4: 0,
        }
    }

    pub fn with_plants(mut self, plant_3: usize, plant_4: usize) -> Self {
        self.plant_3 = plant_3;
        self.plant_4 = plant_4;
        self
    }
}

/// The reference corpus entry for `seed`: sizes run through 8..=60 and
/// three seeds in four plant at least one circuit.
pub fn corpus_config(seed: u64) -> GeneratorConfig {
    let n = 8 + (seed as usize * 7) % 53;
    let (p3, p4) = match seed % 4 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (1, 1),
        _ => (0, 0),
    };
    let (p3, p4) = if MIN_FLAG + 3 * p3 + 2 * p4 <= n {
        (p3, p4)
    } else {
        (0, p4.min(1))
    };
    GeneratorConfig::new(seed, n).with_plants(p3, p4)
}

/// Smallest flag triangulation (the octahedron).
const MIN_FLAG: usize = 6;
const ATTEMPTS: usize = 32;
const EUCLIDEAN_TRIPLES: [[u32; 3]; 3] = [[3, 3, 3], [2, 4, 4], [2, 3, 6]];

pub fn generate(cfg: &GeneratorConfig) -> Result<LabeledTriangulation> {
    let fail = |reason: String| Error::GenerationFailed {
        seed: cfg.seed,
        reason,
    };
    if cfg.vertices < 5 {
        return Err(fail(format!(
            "{} vertices is below the minimum of 5",
            cfg.vertices
        )));
    }
    if cfg.palette.is_empty() || cfg.palette.iter().any(|&m| m < 2) {
        return Err(fail("palette must be non-empty with labels ≥ 2".into()));
    }
    let planted = cfg.plant_3 + cfg.plant_4 > 0;
    let needed = MIN_FLAG + 3 * cfg.plant_3 + 2 * cfg.plant_4;
    if planted && cfg.vertices < needed {
        return Err(fail(format!(
            "{} vertices cannot hold the planted circuits (need {needed})",
            cfg.vertices
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last = String::new();
    for _ in 0..ATTEMPTS {
        match attempt(cfg, &mut rng) {
            Ok(l) => return Ok(l.with_default_names()),
            Err(e) => last = e,
        }
    }
    Err(fail(format!(
        "no valid triangulation after {ATTEMPTS} attempts: {last}"
    )))
}

type Attempt<T> = std::result::Result<T, String>;

fn attempt(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Attempt<LabeledTriangulation> {
    if cfg.vertices == 5 {
        return bipyramid(cfg, rng);
    }
    // split the vertex budget between the base and the planted pieces
    let mut spare = cfg.vertices - MIN_FLAG - 3 * cfg.plant_3 - 2 * cfg.plant_4;
    let mut pieces = Vec::new();
    for kind in std::iter::repeat_n(CircuitKind::Three, cfg.plant_3)
        .chain(std::iter::repeat_n(CircuitKind::Four, cfg.plant_4))
    {
        let extra = rng.gen_range(0..=spare.min(4));
        spare -= extra;
        pieces.push((kind, MIN_FLAG + extra));
    }
    pieces.shuffle(rng);
    let mut frozen = BTreeSet::new();
    let base = flag_triangulation(rng, MIN_FLAG + spare)?;
    let mut l = labeled(rng, &base, &cfg.palette, &frozen)?;

    for (kind, size) in pieces {
        let piece = flag_triangulation(rng, size)?;
        let piece = labeled(rng, &piece, &cfg.palette, &BTreeSet::new())?;
        let (merged, seam) = plant(rng, &l, &piece, kind, &frozen)?;
        l = merged;
        frozen.extend(seam);
    }

    if l.vertex_count() != cfg.vertices {
        return Err(format!(
            "built {} vertices, wanted {}",
            l.vertex_count(),
            cfg.vertices
        ));
    }
    let report = metric_flag_check(&l);
    if !report.passed() {
        return Err(report.summary());
    }
    let found = find_empty_euclidean_circuits(&l);
    let count = |k: CircuitKind| found.iter().filter(|c| c.kind == k).count();
    if count(CircuitKind::Three) < cfg.plant_3 || count(CircuitKind::Four) < cfg.plant_4 {
        return Err("planted circuits did not survive".into());
    }
    Ok(l)
}

/// Five vertices: a bipyramid over a hyperbolic triangle.
fn bipyramid(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Attempt<LabeledTriangulation> {
    let tris = fixtures::suspension_triangles(3);
    let mut labels = BTreeMap::new();
    for t in &tris {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            labels
                .entry(edge(a, b))
                .or_insert_with(|| *cfg.palette.choose(rng).unwrap());
        }
    }
    let equator = [edge(0, 1), edge(1, 2), edge(0, 2)];
    let eq: Vec<u32> = equator.iter().map(|e| labels[e]).collect();
    if crate::complex::compare_reciprocal_sum(&eq, 1) != std::cmp::Ordering::Less {
        return Err("equator is not hyperbolic".into());
    }
    let frozen: BTreeSet<Edge> = equator.into_iter().collect();
    repair(&tris, &mut labels, &frozen)?;
    let l = LabeledTriangulation::new(names(5), tris, labels).map_err(|e| e.to_string())?;
    let report = metric_flag_check(&l);
    if !report.passed() {
        return Err(report.summary());
    }
    Ok(l)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn right_angled(n: usize, tris: Vec<[usize; 3]>) -> Attempt<LabeledTriangulation> {
    let mut labels = BTreeMap::new();
    for t in &tris {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            labels.insert(edge(a, b), 2);
        }
    }
    LabeledTriangulation::new(names(n), tris, labels).map_err(|e| e.to_string())
}

/// A flag triangulation (every 3-clique a face, no 4-clique) with `n ≥ 6`
/// vertices; labels are placeholders.
pub(crate) fn flag_triangulation(rng: &mut ChaCha8Rng, n: usize) -> Attempt<LabeledTriangulation> {
    let mut l = if n <= 12 {
        right_angled(n, fixtures::suspension_triangles(n - 2))?
    } else {
        fixtures::icosahedron(2)
    };
    while l.vertex_count() < n {
        l = vertex_split(rng, &l)?;
    }
    for _ in 0..2 * n {
        if let Some(next) = edge_flip(rng, &l) {
            l = next;
        }
    }
    Ok(l)
}

/// Splits a random vertex along two link vertices at least two steps apart on
/// both arcs. The new vertex is last.
fn vertex_split(rng: &mut ChaCha8Rng, l: &LabeledTriangulation) -> Attempt<LabeledTriangulation> {
    let n = l.vertex_count();
    let v = rng.gen_range(0..n);
    let link = l.link(v).map_err(|e| e.to_string())?.vertices;
    let k = link.len();
    if k < 4 {
        return Ok(l.clone());
    }
    let i = rng.gen_range(0..k);
    let span = rng.gen_range(2..=k - 2);
    let j = (i + span) % k;
    let w = n;
    // v keeps the arc link[i..=j]; w takes link[j..=i]
    let keep: BTreeSet<usize> = (0..=span).map(|d| link[(i + d) % k]).collect();
    let mut tris = Vec::new();
    for t in l.triangles() {
        if !t.contains(&v) {
            tris.push(*t);
            continue;
        }
        let others: Vec<usize> = t.iter().copied().filter(|&x| x != v).collect();
        if others.iter().all(|x| keep.contains(x)) {
            tris.push(*t);
        } else {
            tris.push([w, others[0], others[1]]);
        }
    }
    tris.push([v, w, link[i]]);
    tris.push([v, w, link[j]]);
    right_angled(n + 1, tris)
}

/// A flip of a random edge that keeps the triangulation flag, if one is found.
fn edge_flip(rng: &mut ChaCha8Rng, l: &LabeledTriangulation) -> Option<LabeledTriangulation> {
    let edges: Vec<Edge> = l.edges().collect();
    let (a, b) = *edges.choose(rng)?;
    let cd = l.common_neighbors(a, b);
    let [c, d] = cd[..] else { return None };
    if l.is_adjacent(c, d) || l.valence(a) < 5 || l.valence(b) < 5 {
        return None;
    }
    let mut tris: Vec<[usize; 3]> = l
        .triangles()
        .iter()
        .copied()
        .filter(|t| !(t.contains(&a) && t.contains(&b)))
        .collect();
    tris.push([a, c, d]);
    tris.push([b, c, d]);
    let next = right_angled(l.vertex_count(), tris).ok()?;
    // the new edge c-d must not close a 3-clique other than its two faces
    let mut common = next.common_neighbors(c, d);
    common.sort_unstable();
    let mut want = vec![a, b];
    want.sort_unstable();
    (common == want).then_some(next)
}

/// Random palette labels, then faces repaired until all are spherical.
/// Labels 2 are drawn more often so that Euclidean vertices show up.
fn labeled(
    rng: &mut ChaCha8Rng,
    l: &LabeledTriangulation,
    palette: &[u32],
    frozen: &BTreeSet<Edge>,
) -> Attempt<LabeledTriangulation> {
    let mut labels = BTreeMap::new();
    for e in l.edges() {
        let m = if palette.contains(&2) && rng.gen_bool(0.35) {
            2
        } else {
            *palette.choose(rng).unwrap()
        };
        labels.insert(e, m);
    }
    let tris = l.triangles().to_vec();
    repair(&tris, &mut labels, frozen)?;
    LabeledTriangulation::new(l.names().to_vec(), tris, labels).map_err(|e| e.to_string())
}

/// Lowers the largest unfrozen label of every non-spherical face to 2.
fn repair(
    tris: &[[usize; 3]],
    labels: &mut BTreeMap<Edge, u32>,
    frozen: &BTreeSet<Edge>,
) -> Attempt<()> {
    loop {
        let mut changed = false;
        for &[a, b, c] in tris {
            let es = [edge(a, b), edge(b, c), edge(a, c)];
            let ms = es.map(|e| labels[&e]);
            if is_spherical_triple(ms) {
                continue;
            }
            let target = es
                .iter()
                .filter(|e| !frozen.contains(e) && labels[e] > 2)
                .max_by_key(|e| (labels[e], **e))
                .copied()
                .ok_or_else(|| format!("face {:?} cannot be repaired", [a, b, c]))?;
            labels.insert(target, 2);
            changed = true;
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Plants an empty circuit of `kind` by coning a face (or subdividing an
/// edge) in both `l` and `piece` with a Euclidean vertex and gluing.
/// Returns the merged triangulation and its frozen seam edges.
fn plant(
    rng: &mut ChaCha8Rng,
    l: &LabeledTriangulation,
    piece: &LabeledTriangulation,
    kind: CircuitKind,
    frozen: &BTreeSet<Edge>,
) -> Attempt<(LabeledTriangulation, Vec<Edge>)> {
    let ((l1, s1), (l2, s2)) = match kind {
        CircuitKind::Three => {
            let triple = *EUCLIDEAN_TRIPLES.choose(rng).unwrap();
            (
                cone_face(rng, l, triple, frozen)?,
                cone_face(rng, piece, triple, &BTreeSet::new())?,
            )
        }
        CircuitKind::Four => (
            subdivide_edge(rng, l, frozen)?,
            subdivide_edge(rng, piece, &BTreeSet::new())?,
        ),
    };
    let merged = merge_along_euclidean_vertices(&l1, s1, &l2, s2).map_err(|e| e.to_string())?;
    let seam = merged.seam.clone();
    let k = seam.len();
    let seam_edges = (0..k).map(|i| edge(seam[i], seam[(i + 1) % k])).collect();
    Ok((merged.triangulation, seam_edges))
}

fn touches(frozen: &BTreeSet<Edge>, es: &[Edge]) -> bool {
    es.iter().any(|e| frozen.contains(e))
}

/// Stellar subdivision of a random face away from frozen edges; the face takes
/// a Euclidean triple and the spokes are labeled 2.
fn cone_face(
    rng: &mut ChaCha8Rng,
    l: &LabeledTriangulation,
    triple: [u32; 3],
    frozen: &BTreeSet<Edge>,
) -> Attempt<(LabeledTriangulation, usize)> {
    let faces: Vec<[usize; 3]> = l
        .triangles()
        .iter()
        .copied()
        .filter(|&[a, b, c]| !touches(frozen, &[edge(a, b), edge(b, c), edge(a, c)]))
        .collect();
    let face = *faces.choose(rng).ok_or("no face away from earlier seams")?;
    let mut triple = triple;
    triple.shuffle(rng);
    let s = l.vertex_count();
    let [a, b, c] = face;
    let mut tris: Vec<[usize; 3]> = l
        .triangles()
        .iter()
        .copied()
        .filter(|&t| t != face)
        .collect();
    tris.extend([[a, b, s], [b, c, s], [a, c, s]]);
    let mut labels = l.labels().clone();
    let face_edges = [edge(a, b), edge(b, c), edge(a, c)];
    for (e, m) in face_edges.iter().zip(triple) {
        labels.insert(*e, m);
    }
    for x in face {
        labels.insert(edge(x, s), 2);
    }
    let mut keep = frozen.clone();
    keep.extend(face_edges);
    repair(&tris, &mut labels, &keep)?;
    let mut names = l.names().to_vec();
    names.push(format!("v{s}"));
    let out = LabeledTriangulation::new(names, tris, labels).map_err(|e| e.to_string())?;
    Ok((out, s))
}

/// Subdivides a random edge `x-y` with faces `x y c`, `x y d` by a vertex
/// joined to `x, c, y, d`, with the four link edges and the spokes labeled 2.
fn subdivide_edge(
    rng: &mut ChaCha8Rng,
    l: &LabeledTriangulation,
    frozen: &BTreeSet<Edge>,
) -> Attempt<(LabeledTriangulation, usize)> {
    let candidates: Vec<(Edge, usize, usize)> = l
        .edges()
        .filter_map(|(x, y)| {
            let cd = l.common_neighbors(x, y);
            let [c, d] = cd[..] else { return None };
            (!l.is_adjacent(c, d)
                && !touches(
                    frozen,
                    &[edge(x, y), edge(x, c), edge(c, y), edge(y, d), edge(d, x)],
                ))
            .then_some(((x, y), c, d))
        })
        .collect();
    let ((x, y), c, d) = *candidates
        .choose(rng)
        .ok_or("no edge away from earlier seams")?;
    let s = l.vertex_count();
    let mut tris: Vec<[usize; 3]> = l
        .triangles()
        .iter()
        .copied()
        .filter(|t| !(t.contains(&x) && t.contains(&y)))
        .collect();
    tris.extend([[x, c, s], [c, y, s], [y, d, s], [d, x, s]]);
    let mut labels = l.labels().clone();
    labels.remove(&edge(x, y));
    for e in [edge(x, c), edge(c, y), edge(y, d), edge(d, x)] {
        labels.insert(e, 2);
    }
    for v in [x, c, y, d] {
        labels.insert(edge(v, s), 2);
    }
    let mut names = l.names().to_vec();
    names.push(format!("v{s}"));
    let out = LabeledTriangulation::new(names, tris, labels).map_err(|e| e.to_string())?;
    Ok((out, s))
}
