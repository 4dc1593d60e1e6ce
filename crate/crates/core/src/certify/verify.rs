use serde::{Deserialize, Serialize};

use super::engine::{iii_failures_are_euclidean_links, pole_edges_right, small_suspension};
use super::{CertNode, Certificate, SplitChild, SuspensionCase, SuspensionSubcase};
use crate::andreev::{recheck_transcript, AndreevTranscript, Condition};
use crate::complex::{is_spherical_triple, LabeledCellComplex, LabeledTriangulation};
use crate::coxeter::{gram_class, metric_flag_check, GramClass, LabelMatrix};
use crate::reduction::{
    as_empty_euclidean_circuit, classify_vertex, euclidean_vertices, find_empty_euclidean_circuits,
    recognize_l6, reduce_stars, split_along_circuit, CircuitKind, EmptyEuclideanCircuit,
    ReducedComplex, StarReduction, VertexClass,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFailure {
    /// Location in the tree, e.g. `root.children[1]`.
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub accepted: bool,
    pub nodes_checked: usize,
    pub failures: Vec<VerificationFailure>,
}

struct Checker {
    nodes: usize,
    failures: Vec<VerificationFailure>,
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Re-checks `cert` against `l` from scratch.
pub fn verify(l: &LabeledTriangulation, cert: &Certificate) -> VerificationReport {
    let mut c = Checker {
        nodes: 0,
        failures: Vec::new(),
    };
    let root = "root".to_string();
    let digest = l.digest();
    if cert.input_digest != digest {
        c.fail(
            &root,
            format!(
                "input digest {} does not match {}",
                cert.input_digest, digest
            ),
        );
    } else {
        let report = metric_flag_check(l);
        if report.passed() {
            c.node(l, &cert.root, &root, 0, l.vertex_count());
        } else {
            c.fail(
                &root,
                format!("input is not metric flag: {}", report.summary()),
            );
        }
    }
    VerificationReport {
        accepted: c.failures.is_empty(),
        nodes_checked: c.nodes,
        failures: c.failures,
    }
}

fn euclid(l: &LabeledTriangulation, v: usize, class: VertexClass) -> Check {
    ensure(
        v < l.vertex_count() && classify_vertex(l, v) == Ok(class),
        || format!("vertex {v} is not {class:?}"),
    )
}

fn star_full(l: &LabeledTriangulation, v: usize) -> Check {
    let star = l.star(v).map_err(|e| e.to_string())?;
    ensure(l.is_full(&star.to_subcomplex()) == Ok(true), || {
        format!("star of {v} is not full")
    })
}

fn direct_failing(direct: &AndreevTranscript, want: &[Condition]) -> Check {
    ensure(direct.failing() == want, || {
        format!(
            "direct transcript fails {:?}, expected {:?}",
            direct.failing(),
            want
        )
    })
}

fn reduce(
    l: &LabeledTriangulation,
    t: &[usize],
    digest: &str,
) -> std::result::Result<ReducedComplex, String> {
    match reduce_stars(l, t) {
        Ok(StarReduction::Reduced(r)) => {
            ensure(r.complex.digest() == digest, || {
                "reduced complex digest mismatch".into()
            })?;
            Ok(r)
        }
        Ok(StarReduction::L6Detected { .. }) => Err("stars overlap".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn is_simplex(x: &LabeledCellComplex) -> bool {
    x.vertex_count() == 4 && (0..4).all(|v| x.valence(v) == 3)
}

impl Checker {
    fn fail(&mut self, path: &str, reason: String) {
        self.failures.push(VerificationFailure {
            path: path.to_string(),
            reason,
        });
    }

    fn node(
        &mut self,
        l: &LabeledTriangulation,
        node: &CertNode,
        path: &str,
        depth: usize,
        max_depth: usize,
    ) {
        self.nodes += 1;
        if depth > max_depth {
            self.fail(path, format!("depth {depth} exceeds {max_depth}"));
            return;
        }
        if let Err(e) = precedence(l, node) {
            self.fail(path, e);
            return;
        }
        let result = match node {
            CertNode::BaseSimplexEuclidean { gram } => {
                base_simplex(l, gram, GramClass::PositiveSemidefinite { corank: 1 })
            }
            CertNode::BaseSimplexHyperbolic { gram } => {
                base_simplex(l, gram, GramClass::Indefinite).and_then(|_| {
                    ensure(
                        l.triangles().iter().all(|&[a, b, c]| {
                            is_spherical_triple([l.m(a, b), l.m(b, c), l.m(a, c)])
                        }),
                        || "a face is not spherical".into(),
                    )
                })
            }
            CertNode::SuspensionCase(s) => suspension_case(l, s),
            CertNode::L6 { witness } => {
                ensure(witness.holds(l), || "L6 witness does not match".into())
            }
            CertNode::CircuitSplit { circuit, children } => {
                match check_split(l, circuit, children) {
                    Ok(()) => {
                        for (i, child) in children.iter().enumerate() {
                            // documents were compared against the recomputed split
                            let lc = LabeledTriangulation::from_document(&child.triangulation)
                                .expect("checked above");
                            let sub = format!("{path}.children[{i}]");
                            self.node(&lc, &child.certificate, &sub, depth + 1, max_depth);
                        }
                        Ok(())
                    }
                    Err(e) => Err(e),
                }
            }
            CertNode::EuclideanReduction {
                t,
                reduced_digest,
                transcript,
            } => check_t(l, t).and_then(|_| {
                let r = reduce(l, t, reduced_digest)?;
                ensure(!is_simplex(&r.complex), || "[L - T] is a simplex".into())?;
                recheck_transcript(&r.complex, transcript)?;
                ensure(transcript.passed, || "transcript does not pass".into())
            }),
            CertNode::SimplexAfterReduction {
                t,
                reduced_digest,
                gram,
            } => check_t(l, t).and_then(|_| {
                let r = reduce(l, t, reduced_digest)?;
                let x = &r.complex;
                ensure(is_simplex(x), || "[L - T] is not a simplex".into())?;
                let m = LabelMatrix::from_fn(4, |i, j| x.label(i, j)).map_err(|e| e.to_string())?;
                let fresh = gram_class(&m).map_err(|e| e.to_string())?;
                ensure(fresh == *gram && fresh == GramClass::Indefinite, || {
                    format!("Gram class {fresh:?} (recorded {gram:?}) is not indefinite")
                })
            }),
        };
        if let Err(e) = result {
            self.fail(path, e);
        }
    }
}

fn check_split(
    l: &LabeledTriangulation,
    circuit: &EmptyEuclideanCircuit,
    children: &[SplitChild],
) -> Check {
    let fresh = as_empty_euclidean_circuit(l, &circuit.cycle).ok_or_else(|| {
        format!(
            "{:?} is not an empty Euclidean circuit",
            circuit.cycle.vertices
        )
    })?;
    ensure(fresh == *circuit, || {
        "circuit kind or sides do not match".into()
    })?;
    let split = split_along_circuit(l, &circuit.cycle).map_err(|e| e.to_string())?;
    ensure(children.len() == 2, || {
        format!("{} children", children.len())
    })?;
    let class = match circuit.kind {
        CircuitKind::Three => VertexClass::Euclid3,
        CircuitKind::Four => VertexClass::Euclid4,
    };
    let mut total = 0;
    for (child, piece) in children.iter().zip(&split.pieces) {
        ensure(
            child.triangulation == piece.triangulation.to_document(),
            || "child triangulation does not match the split".into(),
        )?;
        ensure(
            child.cap == piece.cap && child.vertex_map == piece.vertex_map,
            || "child cap or vertex map does not match the split".into(),
        )?;
        let lc = &piece.triangulation;
        ensure(lc.vertex_count() < l.vertex_count(), || {
            "child is not smaller".into()
        })?;
        let report = metric_flag_check(lc);
        ensure(report.passed(), || {
            format!("child is not metric flag: {}", report.summary())
        })?;
        euclid(lc, child.cap, class)?;
        total += lc.vertex_count();
    }
    ensure(total == l.vertex_count() + circuit.cycle.len() + 2, || {
        "child vertex counts do not add up".into()
    })
}

/// The node kind must be the first applicable step of the dispatch order.
fn precedence(l: &LabeledTriangulation, node: &CertNode) -> Check {
    let expected: &[&str] = if l.is_boundary_simplex() {
        &["BaseSimplexEuclidean", "BaseSimplexHyperbolic"]
    } else if small_suspension(l).is_some() {
        &["SuspensionCase"]
    } else if recognize_l6(l).is_some() {
        &["L6"]
    } else if !find_empty_euclidean_circuits(l).is_empty() {
        &["CircuitSplit"]
    } else {
        &["EuclideanReduction", "SimplexAfterReduction"]
    };
    ensure(expected.contains(&node.kind()), || {
        format!("node kind {} where {:?} applies", node.kind(), expected)
    })
}

fn base_simplex(l: &LabeledTriangulation, recorded: &GramClass, want: GramClass) -> Check {
    let m = LabelMatrix::from_triangulation(l, &[0, 1, 2, 3]).map_err(|e| e.to_string())?;
    let fresh = gram_class(&m).map_err(|e| e.to_string())?;
    ensure(fresh == *recorded && fresh == want, || {
        format!("Gram class {fresh:?}, recorded {recorded:?}, expected {want:?}")
    })
}

fn check_t(l: &LabeledTriangulation, t: &[usize]) -> Check {
    ensure(t == euclidean_vertices(l), || {
        "T is not the set of Euclidean vertices".into()
    })?;
    for (i, &a) in t.iter().enumerate() {
        for &b in &t[i + 1..] {
            ensure(!l.is_adjacent(a, b), || {
                format!("T contains adjacent vertices {a}, {b}")
            })?;
        }
    }
    Ok(())
}

fn suspension_case(l: &LabeledTriangulation, s: &SuspensionCase) -> Check {
    let [p, q] = s.poles;
    let susp = l
        .suspension_with_poles(p, q)
        .ok_or_else(|| format!("{p}, {q} are not suspension points"))?;
    ensure(
        susp.equator.canonical().vertices == s.equator && s.n == s.equator.len(),
        || "equator does not match".into(),
    )?;
    ensure((3..=5).contains(&s.n), || {
        format!("n = {} is not 3, 4 or 5", s.n)
    })?;
    recheck_transcript(&LabeledCellComplex::from_triangulation(l), &s.direct)?;
    let equator = &s.equator;
    let in_equator = |v: usize| {
        ensure(equator.contains(&v), || {
            format!("{v} is not on the equator")
        })
    };
    let right = |skip: &[usize], listed: &[usize]| -> Check {
        let mut rest: Vec<usize> = equator
            .iter()
            .copied()
            .filter(|v| !skip.contains(v))
            .collect();
        rest.sort_unstable();
        ensure(rest == listed, || {
            "right-angled vertex list does not match".into()
        })?;
        ensure(
            rest.iter().all(|&v| pole_edges_right(l, s.poles, v)),
            || "a listed vertex has a pole edge not labeled 2".into(),
        )
    };
    let isolated_e4 = |v: usize| -> Check {
        in_equator(v)?;
        euclid(l, v, VertexClass::Euclid4)?;
        ensure(
            !l.neighbors(v)
                .iter()
                .any(|&w| classify_vertex(l, w) == Ok(VertexClass::Euclid4)),
            || format!("{v} has a 4-Euclidean neighbour"),
        )
    };
    match &s.subcase {
        SuspensionSubcase::AndreevDirect => {
            ensure(s.direct.passed, || "direct transcript does not pass".into())
        }
        SuspensionSubcase::RightAngledSuspension => {
            ensure(s.n == 3, || "right-angled case needs a 3-gon".into())?;
            direct_failing(&s.direct, &[Condition::IV])?;
            right(&[], &{
                let mut e = equator.clone();
                e.sort_unstable();
                e
            })
        }
        SuspensionSubcase::EuclideanPolesSplit => {
            let class = match s.n {
                3 => {
                    ensure(s.direct.failing().contains(&Condition::II), || {
                        "3-gon split needs a (ii) failure".into()
                    })?;
                    VertexClass::Euclid3
                }
                4 => {
                    direct_failing(&s.direct, &[Condition::III])?;
                    VertexClass::Euclid4
                }
                _ => return Err("pole split needs a 3- or 4-gon".into()),
            };
            for v in s.poles {
                euclid(l, v, class)?;
                star_full(l, v)?;
            }
            Ok(())
        }
        SuspensionSubcase::FiveGonReduction {
            v,
            reduced_digest,
            transcript,
        } => {
            ensure(s.n == 5, || "needs a 5-gon".into())?;
            direct_failing(&s.direct, &[Condition::III])?;
            isolated_e4(*v)?;
            let r = reduce(l, &[*v], reduced_digest)?;
            recheck_transcript(&r.complex, transcript)?;
            ensure(transcript.passed, || {
                "[L - v] transcript does not pass".into()
            })
        }
        SuspensionSubcase::FiveGonFigure4Split {
            v,
            g,
            s: sv,
            right_angled,
            reduced_digest,
            transcript,
        } => {
            ensure(s.n == 5, || "needs a 5-gon".into())?;
            direct_failing(&s.direct, &[Condition::III])?;
            isolated_e4(*v)?;
            let r = reduce(l, &[*v], reduced_digest)?;
            recheck_transcript(&r.complex, transcript)?;
            let failing = transcript.failing();
            ensure(
                failing.contains(&Condition::V)
                    && failing
                        .iter()
                        .all(|c| [Condition::III, Condition::V].contains(c)),
                || format!("[L - v] fails {failing:?}, expected (v)"),
            )?;
            let at_g = transcript
                .record(Condition::V)
                .instances
                .iter()
                .any(|i| !i.holds && r.source.get(i.vertices[2]) == Some(g));
            ensure(at_g, || format!("(v) does not fail at {g}"))?;
            in_equator(*sv)?;
            euclid(l, *sv, VertexClass::Euclid4)?;
            ensure(*sv != *g && !l.is_adjacent(*v, *sv), || {
                "s must be opposite v".into()
            })?;
            ensure(
                iii_failures_are_euclidean_links(l, *v, &r.source, transcript),
                || "[L - v] fails (iii) away from the links of 4-Euclidean vertices".into(),
            )?;
            star_full(l, *v)?;
            star_full(l, *sv)?;
            right(&[*v, *sv], right_angled)
        }
        SuspensionSubcase::FiveGonAdjacentEuclidean {
            v,
            w,
            v_prime,
            right_angled,
        } => {
            ensure(s.n == 5, || "needs a 5-gon".into())?;
            direct_failing(&s.direct, &[Condition::III])?;
            for x in [*v, *w, *v_prime] {
                in_equator(x)?;
                euclid(l, x, VertexClass::Euclid4)?;
            }
            ensure(l.is_adjacent(*v, *w), || {
                format!("{v} and {w} are not adjacent")
            })?;
            star_full(l, *v_prime)?;
            right(&[*v_prime], right_angled)
        }
    }
}
