//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any FAIL.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::{Duration, Instant};

use singer_core::andreev::{andreev_check, Condition};
use singer_core::certify::{certify, serialize, verify, CertNode, Certificate};
use singer_core::complex::{Label, LabeledCellComplex, LabeledTriangulation};
use singer_core::coxeter::{
    format_fraction, l2_euler_characteristic, metric_flag_check, spherical_order, GramClass,
    LabelMatrix,
};
use singer_core::generate::{corpus_config, generate};
use singer_core::reduction::{
    classify_vertex, find_empty_euclidean_circuits, CircuitKind, VertexClass,
};
use singer_core::{fixtures, Error, Rational};

struct Entry {
    l: LabeledTriangulation,
    cert: Option<Certificate>,
}

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, name: &str, problems: &[String], detail: String) {
        if problems.is_empty() {
            println!("PASS {name}: {detail}");
        } else {
            self.failed += 1;
            println!("FAIL {name}: {detail}");
            for p in problems.iter().take(10) {
                println!("     {p}");
            }
        }
    }
}

fn main() {
    let mut report = Report { failed: 0 };

    let (corpus, sweep) = soundness(&mut report);
    euler(&mut report, &corpus);
    named_fixtures(&mut report);
    andreev_suite(&mut report);
    no_adjacent_euclidean(&mut report, &corpus);
    split_bookkeeping(&mut report, &corpus);
    oracles(&mut report, &corpus);
    determinism(&mut report, &corpus);
    println!("corpus sweep took {:.2?}", sweep);

    if report.failed > 0 {
        std::process::exit(1);
    }
}

fn soundness(report: &mut Report) -> (Vec<Entry>, Duration) {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut corpus = Vec::new();
    let (mut planted, mut sizes) = (0, BTreeSet::new());
    for seed in 1..=200u64 {
        let cfg = corpus_config(seed);
        let l = match generate(&cfg) {
            Ok(l) => l,
            Err(e) => {
                problems.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        sizes.insert(l.vertex_count());
        if cfg.plant_3 + cfg.plant_4 > 0 && !find_empty_euclidean_circuits(&l).is_empty() {
            planted += 1;
        }
        let cert = match certify(&l) {
            Ok(c) => Some(c),
            Err(e) => {
                problems.push(format!("seed {seed}: {e}"));
                None
            }
        };
        if let Some(c) = &cert {
            let r = verify(&l, c);
            if !r.accepted {
                problems.push(format!("seed {seed}: verifier rejected {:?}", r.failures));
            }
        }
        corpus.push(Entry { l, cert });
    }
    let elapsed = start.elapsed();
    if planted < 50 {
        problems.push(format!("only {planted} inputs carry planted circuits"));
    }
    if elapsed > Duration::from_secs(60) {
        problems.push(format!("took {elapsed:.2?}"));
    }
    let (lo, hi) = (
        sizes.first().copied().unwrap_or(0),
        sizes.last().copied().unwrap_or(0),
    );
    if lo < 8 || hi > 60 {
        problems.push(format!("sizes outside 8..=60: {lo}..={hi}"));
    }
    report.line(
        "soundness sweep",
        &problems,
        format!("{} seeds certified and verified, V in {lo}..={hi}, {planted} with planted circuits, {elapsed:.2?}", corpus.len()),
    );
    (corpus, elapsed)
}

fn euler(report: &mut Report, corpus: &[Entry]) {
    let mut problems = Vec::new();
    let named = [
        ("octahedron", fixtures::octahedron(2)),
        ("icosahedron", fixtures::icosahedron(2)),
        ("affine simplex", fixtures::affine_boundary_simplex()),
    ];
    let inputs = corpus
        .iter()
        .enumerate()
        .map(|(i, e)| (format!("seed {}", i + 1), &e.l))
        .chain(named.iter().map(|(n, l)| (n.to_string(), l)));
    let mut count = 0;
    for (name, l) in inputs {
        count += 1;
        match l2_euler_characteristic(l) {
            Ok(x) if format_fraction(&x) == "0/1" => {}
            Ok(x) => problems.push(format!("{name}: {}", format_fraction(&x))),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    report.line(
        "euler characteristic oracle",
        &problems,
        format!("{count} inputs give exactly 0/1"),
    );
}

fn named_fixtures(report: &mut Report) {
    let mut problems = Vec::new();
    let mut check =
        |name: &str, l: LabeledTriangulation, ok: &dyn Fn(&CertNode) -> bool| match certify(&l) {
            Ok(c) if ok(&c.root) && verify(&l, &c).accepted => {}
            Ok(c) => problems.push(format!("{name}: {}", c.summary())),
            Err(e) => problems.push(format!("{name}: {e}")),
        };
    check(
        "icosahedron",
        fixtures::icosahedron(2),
        &|n| matches!(n, CertNode::EuclideanReduction { t, transcript, .. } if t.is_empty() && transcript.passed),
    );
    check(
        "octahedron",
        fixtures::octahedron(2),
        &|n| matches!(n, CertNode::SuspensionCase(s) if s.n == 4),
    );
    check(
        "affine simplex",
        fixtures::affine_boundary_simplex(),
        &|n| {
            *n == CertNode::BaseSimplexEuclidean {
                gram: GramClass::PositiveSemidefinite { corank: 1 },
            }
        },
    );
    check(
        "(5,3,4) simplex",
        fixtures::linear_534_boundary_simplex(),
        &|n| {
            *n == CertNode::BaseSimplexHyperbolic {
                gram: GramClass::Indefinite,
            }
        },
    );
    report.line(
        "named fixtures",
        &problems,
        "icosahedron, octahedron, affine and (5,3,4) simplices".into(),
    );
}

fn andreev_suite(report: &mut Report) {
    let mut problems = Vec::new();
    let mut expect = |name: &str,
                      l: &LabeledTriangulation,
                      c: Condition,
                      ok: &dyn Fn(&[usize], &[u32]) -> bool| {
        let t = match andreev_check(&LabeledCellComplex::from_triangulation(l)) {
            Ok(t) => t,
            Err(e) => return problems.push(format!("{name}: {e}")),
        };
        if t.failing() != [c] {
            return problems.push(format!("{name}: fails {:?}", t.failing()));
        }
        let w = t.record(c).witness().unwrap();
        if !ok(&w.vertices, &w.labels) {
            problems.push(format!("{name}: witness {:?} {:?}", w.vertices, w.labels));
        }
    };
    // triangular prism: the two triangle faces are the poles
    expect(
        "prism",
        &fixtures::suspension(3, 2, 4),
        Condition::IV,
        &|v, _| v == [3, 4],
    );
    let stellar = fixtures::stellar_subdivide(&fixtures::icosahedron(2), [0, 1, 2], [3, 3, 3]);
    expect("non-face clique", &stellar, Condition::II, &|v, m| {
        v == [0, 1, 2] && m == [3, 3, 3]
    });
    let oct = fixtures::octahedron(2);
    expect("4-circuit", &oct, Condition::III, &|v, m| {
        let circuits: Vec<Vec<usize>> = oct
            .chordless_4_circuits()
            .iter()
            .map(|c| c.vertices.clone())
            .collect();
        m == [2, 2, 2, 2] && circuits.iter().any(|c| same_cycle(c, v))
    });
    report.line(
        "andreev unit suite",
        &problems,
        "prism (iv), non-face clique (ii), 4-circuit (iii)".into(),
    );
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    n == b.len()
        && (0..n).any(|s| {
            (0..n).all(|i| a[(s + i) % n] == b[i]) || (0..n).all(|i| a[(s + n - i) % n] == b[i])
        })
}

/// Every node of every corpus certificate with its triangulation and depth.
fn each_node(corpus: &[Entry], f: &mut dyn FnMut(usize, &LabeledTriangulation, &CertNode, usize)) {
    for (i, e) in corpus.iter().enumerate() {
        if let Some(c) = &e.cert {
            c.root.walk(&e.l, 0, &mut |l, n, d| f(i + 1, l, n, d));
        }
    }
}

fn no_adjacent_euclidean(report: &mut Report, corpus: &[Entry]) {
    let (mut problems, mut nodes) = (Vec::new(), 0);
    each_node(corpus, &mut |seed, l, n, _| {
        if let CertNode::EuclideanReduction { t, .. } = n {
            nodes += 1;
            for (i, &a) in t.iter().enumerate() {
                for &b in &t[i + 1..] {
                    if l.is_adjacent(a, b) {
                        problems.push(format!("seed {seed}: {a} and {b} adjacent"));
                    }
                }
            }
        }
    });
    report.line(
        "no adjacent Euclidean vertices",
        &problems,
        format!("{nodes} reduction nodes"),
    );
}

fn split_bookkeeping(report: &mut Report, corpus: &[Entry]) {
    let (mut problems, mut splits, mut max_ratio) = (Vec::new(), 0, 0.0f64);
    for (i, e) in corpus.iter().enumerate() {
        let Some(c) = &e.cert else { continue };
        let root_v = e.l.vertex_count();
        c.root.walk(&e.l, 0, &mut |l, n, depth| {
            max_ratio = max_ratio.max(depth as f64 / root_v as f64);
            if depth > root_v {
                problems.push(format!("seed {}: depth {depth} > {root_v}", i + 1));
            }
            let CertNode::CircuitSplit { circuit, children } = n else {
                return;
            };
            splits += 1;
            let v = l.vertex_count();
            let k = circuit.cycle.vertices.len();
            let kids: Vec<LabeledTriangulation> = children
                .iter()
                .filter_map(|c| LabeledTriangulation::from_document(&c.triangulation).ok())
                .collect();
            if kids.len() != 2 {
                return problems.push(format!("seed {}: {} readable children", i + 1, kids.len()));
            }
            let total = kids[0].vertex_count() + kids[1].vertex_count();
            // each side keeps the circuit and gains a cap
            if total != v + k + 2 {
                problems.push(format!(
                    "seed {}: V1+V2 = {total}, V = {v}, |C| = {k}",
                    i + 1
                ));
            }
            let want = match circuit.kind {
                CircuitKind::Three => VertexClass::Euclid3,
                CircuitKind::Four => VertexClass::Euclid4,
            };
            for (kid, child) in kids.iter().zip(children) {
                if !metric_flag_check(kid).passed() {
                    problems.push(format!("seed {}: child not metric flag", i + 1));
                }
                if classify_vertex(kid, child.cap) != Ok(want) {
                    problems.push(format!("seed {}: cap {} is not {want:?}", i + 1, child.cap));
                }
                if kid.vertex_count() >= v {
                    problems.push(format!("seed {}: child not smaller", i + 1));
                }
            }
        });
    }
    if splits == 0 {
        problems.push("no CircuitSplit nodes in the corpus".into());
    }
    report.line(
        "split bookkeeping",
        &problems,
        format!("{splits} splits satisfy V1+V2 = V+|C|+2 with Euclidean caps; max depth/V = {max_ratio:.3}"),
    );
}

type Brute = (Vec<[usize; 3]>, Vec<[usize; 4]>, BTreeSet<Vec<usize>>);

fn brute_cliques(l: &LabeledTriangulation) -> Brute {
    let n = l.vertex_count();
    let adj = |a: usize, b: usize| l.labels().contains_key(&(a.min(b), a.max(b)));
    let (mut c3, mut c4, mut circ) = (Vec::new(), Vec::new(), BTreeSet::new());
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj(a, b) && adj(b, c) && adj(a, c) {
                    c3.push([a, b, c]);
                }
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let edges = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| adj(q[i], q[j]))
                        .count();
                    if edges == 6 {
                        c4.push(q);
                    }
                    // exactly a 4-cycle: 4 edges, every vertex of degree 2
                    let deg = |x: usize| q.iter().filter(|&&y| y != x && adj(x, y)).count();
                    if edges == 4 && q.iter().all(|&x| deg(x) == 2) {
                        circ.insert(q.to_vec());
                    }
                }
            }
        }
    }
    (c3, c4, circ)
}

fn group_order(m: &LabelMatrix) -> usize {
    let r = m.size();
    let b = |i: usize, j: usize| {
        if i == j {
            1.0
        } else {
            -(std::f64::consts::PI / m.get(i, j) as f64).cos()
        }
    };
    // reflection s_i in the basis of simple roots
    let gens: Vec<Vec<f64>> = (0..r)
        .map(|i| {
            let mut s = vec![0.0; r * r];
            for j in 0..r {
                s[j * r + j] += 1.0;
                s[j * r + i] -= 2.0 * b(i, j);
            }
            s
        })
        .collect();
    let mul = |x: &[f64], y: &[f64]| -> Vec<f64> {
        (0..r * r)
            .map(|k| (0..r).map(|t| x[(k / r) * r + t] * y[t * r + k % r]).sum())
            .collect()
    };
    let key = |x: &[f64]| {
        x.iter()
            .map(|v| (v * 1e6).round() as i64)
            .collect::<Vec<_>>()
    };
    let id: Vec<f64> = (0..r * r)
        .map(|k| if k / r == k % r { 1.0 } else { 0.0 })
        .collect();
    let mut seen = HashSet::from([key(&id)]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mul(g, &x);
            if seen.insert(key(&y)) {
                queue.push_back(y);
            }
            assert!(seen.len() < 100_000, "group is not finite");
        }
    }
    seen.len()
}

fn whole(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn oracles(report: &mut Report, corpus: &[Entry]) {
    let mut problems = Vec::new();
    let mut small: Vec<(String, LabeledTriangulation)> = corpus
        .iter()
        .enumerate()
        .filter(|(_, e)| e.l.vertex_count() <= 12)
        .map(|(i, e)| (format!("seed {}", i + 1), e.l.clone()))
        .collect();
    // split children are corpus inputs too
    each_node(corpus, &mut |seed, l, _, depth| {
        if depth > 0 && l.vertex_count() <= 12 {
            small.push((format!("seed {seed} child"), l.clone()));
        }
    });
    small.push(("octahedron".into(), fixtures::octahedron(2)));
    small.push(("icosahedron".into(), fixtures::icosahedron(2)));
    for (name, l) in &small {
        let (c3, c4, circ) = brute_cliques(l);
        let got: BTreeSet<Vec<usize>> = l
            .chordless_4_circuits()
            .iter()
            .map(|c| c.sorted_vertices())
            .collect();
        if l.cliques3() != c3
            || l.cliques4() != c4
            || got != circ
            || got.len() != l.chordless_4_circuits().len()
        {
            problems.push(format!("{name}: triangulation enumeration differs"));
        }
        let x = LabeledCellComplex::from_triangulation(l);
        let got: BTreeSet<Vec<usize>> = x
            .chordless_4_circuits()
            .iter()
            .map(|c| {
                let mut v = c.to_vec();
                v.sort_unstable();
                v
            })
            .collect();
        if x.cliques3() != c3 || got != circ {
            problems.push(format!("{name}: cell complex enumeration differs"));
        }
    }
    let mut triples = 0;
    for p in 2..=6u32 {
        for q in 2..=6u32 {
            let m = LabelMatrix::from_fn(2, |_, _| Label::Finite(p)).unwrap();
            if q == 2 && spherical_order(&m).ok() != Some(whole(group_order(&m))) {
                problems.push(format!("dihedral {p}"));
            }
            for r in 2..=6u32 {
                if 1.0 / p as f64 + 1.0 / q as f64 + 1.0 / r as f64 <= 1.0 + 1e-12 {
                    continue;
                }
                let ls = [[0, p, r], [p, 0, q], [r, q, 0]];
                let m = LabelMatrix::from_fn(3, |i, j| Label::Finite(ls[i][j])).unwrap();
                let brute = group_order(&m);
                triples += 1;
                match spherical_order(&m) {
                    Ok(o) if o == whole(brute) => {}
                    other => problems.push(format!("({p},{q},{r}): {other:?} vs {brute}")),
                }
            }
        }
    }
    match spherical_order(&LabelMatrix::from_fn(3, |_, _| Label::Finite(3)).unwrap()) {
        Err(Error::NotSpherical(_)) => {}
        other => problems.push(format!("(3,3,3) gave {other:?}")),
    }
    report.line(
        "oracle equivalence",
        &problems,
        format!("{} complexes with V <= 12 match brute force; {triples} spherical triples match group enumeration", small.len()),
    );
}

fn determinism(report: &mut Report, corpus: &[Entry]) {
    let mut problems = Vec::new();
    let mut inputs: Vec<(String, LabeledTriangulation)> = vec![
        ("octahedron".into(), fixtures::octahedron(2)),
        ("icosahedron".into(), fixtures::icosahedron(2)),
        ("affine simplex".into(), fixtures::affine_boundary_simplex()),
        (
            "(5,3,4) simplex".into(),
            fixtures::linear_534_boundary_simplex(),
        ),
        ("L6".into(), fixtures::l6_coned(3)),
        ("capped antiprism".into(), fixtures::capped_antiprism(3)),
    ];
    for (i, e) in corpus.iter().enumerate().step_by(10) {
        inputs.push((format!("seed {}", i + 1), e.l.clone()));
    }
    for (name, l) in &inputs {
        let runs: Vec<Vec<u8>> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..3)
                .map(|_| s.spawn(|| certify(l).map(|c| serialize(&c))))
                .collect();
            hs.into_iter()
                .map(|h| h.join().unwrap().unwrap_or_default())
                .collect()
        });
        let again = generate(&corpus_config(1))
            .map(|l| l.canonical_bytes())
            .ok();
        if runs[0].is_empty() || runs.iter().any(|r| r != &runs[0]) {
            problems.push(format!("{name}: certificates differ"));
        }
        if again != Some(corpus[0].l.canonical_bytes()) {
            problems.push("generator is not deterministic".into());
        }
    }
    report.line(
        "determinism",
        &problems,
        format!(
            "{} inputs certified three times byte-identically",
            inputs.len()
        ),
    );
}
