use super::{CertNode, Certificate, SplitChild, SuspensionCase, SuspensionSubcase};
use crate::andreev::{andreev_check, AndreevTranscript, Condition};
use crate::complex::{LabeledCellComplex, LabeledTriangulation, Suspension};
use crate::coxeter::{gram_class, metric_flag_check, GramClass, LabelMatrix};
use crate::error::{Error, Result};
use crate::reduction::{
    classify_vertex, euclidean_vertices, find_empty_euclidean_circuits, recognize_l6, reduce_stars,
    split_along_circuit, StarReduction, VertexClass,
};
use crate::ENGINE_VERSION;

fn contradiction(msg: impl Into<String>) -> Error {
    Error::InternalContradiction(msg.into())
}

/// Builds a certificate for a metric-flag triangulation.
pub fn certify(l: &LabeledTriangulation) -> Result<Certificate> {
    let report = metric_flag_check(l);
    if !report.passed() {
        return Err(Error::NotMetricFlag(report.summary()));
    }
    Ok(Certificate {
        engine_version: ENGINE_VERSION.to_string(),
        input_digest: l.digest(),
        root: node(l, 0, l.vertex_count())?,
    })
}

/// Suspension of a 3-, 4- or 5-gon, if `l` is one.
pub(crate) fn small_suspension(l: &LabeledTriangulation) -> Option<Suspension> {
    l.suspension()
        .filter(|s| (3..=5).contains(&s.equator.len()))
}

fn node(l: &LabeledTriangulation, depth: usize, max_depth: usize) -> Result<CertNode> {
    if depth > max_depth {
        return Err(contradiction(format!(
            "recursion depth {depth} exceeds {max_depth}"
        )));
    }
    if l.is_boundary_simplex() {
        return base_simplex(l);
    }
    if let Some(s) = small_suspension(l) {
        return suspension_case(l, s).map(CertNode::SuspensionCase);
    }
    if let Some(witness) = recognize_l6(l) {
        return Ok(CertNode::L6 { witness });
    }
    if let Some(circuit) = find_empty_euclidean_circuits(l).into_iter().next() {
        let split = split_along_circuit(l, &circuit.cycle)?;
        let mut children = Vec::with_capacity(2);
        for piece in split.pieces {
            let child = &piece.triangulation;
            if child.vertex_count() >= l.vertex_count() {
                return Err(contradiction("split piece is not smaller than its parent"));
            }
            let report = metric_flag_check(child);
            if !report.passed() {
                return Err(contradiction(format!(
                    "split piece along {:?} is not metric flag: {}",
                    circuit.cycle.vertices,
                    report.summary()
                )));
            }
            children.push(SplitChild {
                triangulation: child.to_document(),
                cap: piece.cap,
                vertex_map: piece.vertex_map,
                certificate: Box::new(node(child, depth + 1, max_depth)?),
            });
        }
        return Ok(CertNode::CircuitSplit {
            circuit: split.circuit,
            children,
        });
    }
    euclidean_reduction(l)
}

fn base_simplex(l: &LabeledTriangulation) -> Result<CertNode> {
    let gram = gram_class(&LabelMatrix::from_triangulation(l, &[0, 1, 2, 3])?)?;
    match gram {
        GramClass::PositiveSemidefinite { corank: 1 } => {
            Ok(CertNode::BaseSimplexEuclidean { gram })
        }
        GramClass::Indefinite => Ok(CertNode::BaseSimplexHyperbolic { gram }),
        other => Err(contradiction(format!(
            "boundary simplex has Gram class {other:?}"
        ))),
    }
}

fn direct_transcript(l: &LabeledTriangulation) -> Result<AndreevTranscript> {
    andreev_check(&LabeledCellComplex::from_triangulation(l))
}

pub(crate) fn pole_edges_right(l: &LabeledTriangulation, poles: [usize; 2], v: usize) -> bool {
    l.m(poles[0], v) == 2 && l.m(poles[1], v) == 2
}

fn suspension_case(l: &LabeledTriangulation, s: Suspension) -> Result<SuspensionCase> {
    let n = s.equator.len();
    let mut poles = [s.poles.0, s.poles.1];
    let mut equator = s.equator.canonical().vertices;
    let direct = direct_transcript(l)?;
    let failing = direct.failing();
    let is = |c: Condition| failing == [c];

    let subcase = if direct.passed {
        SuspensionSubcase::AndreevDirect
    } else {
        match n {
            3 if failing.contains(&Condition::II) => {
                for p in poles {
                    if classify_vertex(l, p)? != VertexClass::Euclid3 {
                        return Err(contradiction(format!(
                            "3-gon suspension fails (ii) but pole {p} is not 3-Euclidean"
                        )));
                    }
                }
                SuspensionSubcase::EuclideanPolesSplit
            }
            3 if is(Condition::IV) => {
                if !equator.iter().all(|&v| pole_edges_right(l, poles, v)) {
                    return Err(contradiction(
                        "prism failure without right-angled pole edges",
                    ));
                }
                SuspensionSubcase::RightAngledSuspension
            }
            4 if is(Condition::III) => {
                let pair = l
                    .suspensions()
                    .into_iter()
                    .find(|s| {
                        [s.poles.0, s.poles.1]
                            .iter()
                            .all(|&p| classify_vertex(l, p) == Ok(VertexClass::Euclid4))
                    })
                    .ok_or_else(|| {
                        contradiction("4-gon suspension fails (iii) without Euclidean poles")
                    })?;
                poles = [pair.poles.0, pair.poles.1];
                equator = pair.equator.canonical().vertices;
                SuspensionSubcase::EuclideanPolesSplit
            }
            5 if is(Condition::III) => five_gon(l, poles, &equator)?,
            _ => {
                return Err(contradiction(format!(
                    "suspension of a {n}-gon fails Andreev conditions {:?}",
                    failing
                )))
            }
        }
    };
    Ok(SuspensionCase {
        n,
        poles,
        equator,
        direct,
        subcase,
    })
}

fn five_gon(
    l: &LabeledTriangulation,
    poles: [usize; 2],
    equator: &[usize],
) -> Result<SuspensionSubcase> {
    let mut sorted_e4: Vec<usize> = equator
        .iter()
        .copied()
        .filter(|&v| classify_vertex(l, v) == Ok(VertexClass::Euclid4))
        .collect();
    sorted_e4.sort_unstable();
    if sorted_e4.is_empty() {
        return Err(contradiction(
            "5-gon suspension fails (iii) without a 4-Euclidean vertex",
        ));
    }
    let isolated = sorted_e4
        .iter()
        .copied()
        .find(|&v| !sorted_e4.iter().any(|&w| l.is_adjacent(v, w)));
    let right_except = |skip: &[usize]| -> Result<Vec<usize>> {
        let mut rest: Vec<usize> = equator
            .iter()
            .copied()
            .filter(|v| !skip.contains(v))
            .collect();
        rest.sort_unstable();
        if let Some(&bad) = rest.iter().find(|&&v| !pole_edges_right(l, poles, v)) {
            return Err(contradiction(format!(
                "equator vertex {bad} has a pole edge not labeled 2"
            )));
        }
        Ok(rest)
    };

    if let Some(v) = isolated {
        let StarReduction::Reduced(r) = reduce_stars(l, &[v])? else {
            return Err(contradiction("a single star cannot overlap itself"));
        };
        let transcript = andreev_check(&r.complex)?;
        let reduced_digest = r.complex.digest();
        if transcript.passed {
            return Ok(SuspensionSubcase::FiveGonReduction {
                v,
                reduced_digest,
                transcript,
            });
        }
        let failing = transcript.failing();
        if !failing.contains(&Condition::V)
            || failing
                .iter()
                .any(|c| ![Condition::III, Condition::V].contains(c))
        {
            return Err(contradiction(format!(
                "[L - v] fails {failing:?}, expected (v)"
            )));
        }
        let witness = transcript
            .record(Condition::V)
            .witness()
            .expect("failing record has a witness");
        let g = r.source[witness.vertices[2]];
        // s is the other equator vertex at distance 2 from v
        let i = equator.iter().position(|&x| x == v).unwrap();
        let far = [equator[(i + 2) % 5], equator[(i + 3) % 5]];
        let s = *far
            .iter()
            .find(|&&x| x != g)
            .ok_or_else(|| contradiction("failing vertex is not opposite v"))?;
        if !far.contains(&g) || classify_vertex(l, s)? != VertexClass::Euclid4 {
            return Err(contradiction(format!(
                "no 4-Euclidean vertex opposite the failure at {g}"
            )));
        }
        // stars of other 4-Euclidean vertices survive in [L - v]; their links are the only possible (iii) failures
        if !iii_failures_are_euclidean_links(l, v, &r.source, &transcript) {
            return Err(contradiction(
                "[L - v] fails (iii) away from the links of 4-Euclidean vertices",
            ));
        }
        return Ok(SuspensionSubcase::FiveGonFigure4Split {
            v,
            g,
            s,
            right_angled: right_except(&[v, s])?,
            reduced_digest,
            transcript,
        });
    }

    let v = sorted_e4[0];
    let w = *sorted_e4.iter().find(|&&w| l.is_adjacent(v, w)).unwrap();
    let v_prime = equator
        .iter()
        .copied()
        .filter(|&x| !pole_edges_right(l, poles, x))
        .min()
        .unwrap_or(v);
    if classify_vertex(l, v_prime)? != VertexClass::Euclid4 {
        return Err(contradiction(format!(
            "vertex {v_prime} is not 4-Euclidean"
        )));
    }
    Ok(SuspensionSubcase::FiveGonAdjacentEuclidean {
        v,
        w,
        v_prime,
        right_angled: right_except(&[v_prime])?,
    })
}

/// Every (iii) failure of `[L - v]` is the link of a 4-Euclidean vertex of `L`
/// other than `v`.
pub(crate) fn iii_failures_are_euclidean_links(
    l: &LabeledTriangulation,
    v: usize,
    source: &[usize],
    transcript: &AndreevTranscript,
) -> bool {
    let links: Vec<Vec<usize>> = (0..l.vertex_count())
        .filter(|&w| w != v && classify_vertex(l, w) == Ok(VertexClass::Euclid4))
        .filter_map(|w| l.link(w).ok().map(|c| c.sorted_vertices()))
        .collect();
    transcript
        .record(Condition::III)
        .instances
        .iter()
        .filter(|i| !i.holds)
        .all(|i| {
            let mut got: Vec<usize> = i.vertices.iter().map(|&x| source[x]).collect();
            got.sort_unstable();
            links.contains(&got)
        })
}

fn euclidean_reduction(l: &LabeledTriangulation) -> Result<CertNode> {
    let t = euclidean_vertices(l);
    for (i, &a) in t.iter().enumerate() {
        if let Some(&b) = t[i + 1..].iter().find(|&&b| l.is_adjacent(a, b)) {
            return Err(contradiction(format!(
                "Euclidean vertices {a} and {b} are adjacent"
            )));
        }
    }
    let r = match reduce_stars(l, &t) {
        Ok(StarReduction::Reduced(r)) => r,
        Ok(StarReduction::L6Detected { first, second }) => {
            return Err(contradiction(format!(
                "stars of {first} and {second} overlap outside an L6-triangulation"
            )))
        }
        Err(e) => return Err(contradiction(format!("[L - T] is not a cell complex: {e}"))),
    };
    let x = &r.complex;
    let reduced_digest = x.digest();
    if x.vertex_count() == 4 && (0..4).all(|v| x.valence(v) == 3) {
        let gram = gram_class(&LabelMatrix::from_fn(4, |i, j| x.label(i, j))?)?;
        if gram != GramClass::Indefinite {
            return Err(contradiction(format!(
                "[L - T] is a simplex with Gram class {gram:?}"
            )));
        }
        return Ok(CertNode::SimplexAfterReduction {
            t,
            reduced_digest,
            gram,
        });
    }
    let transcript = andreev_check(x)?;
    if !transcript.passed {
        let failing = transcript.failing();
        let witness = transcript.record(failing[0]).witness().cloned();
        return Err(contradiction(format!(
            "[L - T] fails Andreev condition ({}) at {:?}",
            failing[0].roman(),
            witness
        )));
    }
    Ok(CertNode::EuclideanReduction {
        t,
        reduced_digest,
        transcript,
    })
}
