//! Certificates: a tree of decomposition steps, each carrying the witnesses
//! needed to re-check it without running the engine.
//!
//! The verifier checks that every node's hypotheses hold on its triangulation.
//! It does not re-prove that those hypotheses imply ℓ²-acyclicity.

mod engine;
mod verify;

use serde::{Deserialize, Serialize};

use crate::andreev::AndreevTranscript;
use crate::complex::{LabeledTriangulation, TriangulationDocument};
use crate::coxeter::GramClass;
use crate::error::{Error, Result};
use crate::reduction::{EmptyEuclideanCircuit, L6Witness};

pub use engine::certify;
pub use verify::{verify, VerificationFailure, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub engine_version: String,
    /// SHA-256 of the canonical triangulation document, lowercase hex.
    pub input_digest: String,
    pub root: CertNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum CertNode {
    /// ∂Δ³ whose Gram form is degenerate of corank 1: a Euclidean simplex group.
    BaseSimplexEuclidean {
        gram: GramClass,
    },
    /// ∂Δ³ with an indefinite Gram form and spherical faces: a Lannér group.
    BaseSimplexHyperbolic {
        gram: GramClass,
    },
    SuspensionCase(SuspensionCase),
    L6 {
        witness: L6Witness,
    },
    CircuitSplit {
        circuit: EmptyEuclideanCircuit,
        children: Vec<SplitChild>,
    },
    /// `[L − T]` is realized by Andreev's theorem.
    EuclideanReduction {
        t: Vec<usize>,
        reduced_digest: String,
        transcript: AndreevTranscript,
    },
    /// `[L − T]` is the boundary of a simplex with a hyperbolic Gram form.
    SimplexAfterReduction {
        t: Vec<usize>,
        reduced_digest: String,
        gram: GramClass,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuspensionCase {
    pub n: usize,
    pub poles: [usize; 2],
    pub equator: Vec<usize>,
    /// Andreev's conditions on the triangulation itself.
    pub direct: AndreevTranscript,
    pub subcase: SuspensionSubcase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", deny_unknown_fields)]
pub enum SuspensionSubcase {
    /// The direct transcript passes.
    AndreevDirect,
    /// 3-gon failing only (iv): every pole edge is labeled 2.
    RightAngledSuspension,
    /// Both poles are Euclidean; L is the union of their stars.
    EuclideanPolesSplit,
    /// `v` is 4-Euclidean with no 4-Euclidean neighbour and `[L − v]` passes.
    FiveGonReduction {
        v: usize,
        reduced_digest: String,
        transcript: AndreevTranscript,
    },
    /// `[L − v]` fails (v) at `g`; `s` is 4-Euclidean and the remaining
    /// equator vertices have every pole edge labeled 2.
    FiveGonFigure4Split {
        v: usize,
        g: usize,
        s: usize,
        right_angled: Vec<usize>,
        reduced_digest: String,
        transcript: AndreevTranscript,
    },
    /// `v`, `w` are adjacent 4-Euclidean vertices; `v_prime` is 4-Euclidean
    /// and every other equator vertex has its pole edges labeled 2.
    FiveGonAdjacentEuclidean {
        v: usize,
        w: usize,
        v_prime: usize,
        right_angled: Vec<usize>,
    },
}

impl SuspensionSubcase {
    pub fn name(&self) -> &'static str {
        match self {
            SuspensionSubcase::AndreevDirect => "AndreevDirect",
            SuspensionSubcase::RightAngledSuspension => "RightAngledSuspension",
            SuspensionSubcase::EuclideanPolesSplit => "EuclideanPolesSplit",
            SuspensionSubcase::FiveGonReduction { .. } => "FiveGonReduction",
            SuspensionSubcase::FiveGonFigure4Split { .. } => "FiveGonFigure4Split",
            SuspensionSubcase::FiveGonAdjacentEuclidean { .. } => "FiveGonAdjacentEuclidean",
        }
    }
}

/// One capped piece of a split with its own certificate. `vertex_map[i]` is
/// the parent vertex behind child vertex `i`; the cap is the last vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitChild {
    pub triangulation: TriangulationDocument,
    pub cap: usize,
    pub vertex_map: Vec<usize>,
    pub certificate: Box<CertNode>,
}

impl CertNode {
    pub fn kind(&self) -> &'static str {
        match self {
            CertNode::BaseSimplexEuclidean { .. } => "BaseSimplexEuclidean",
            CertNode::BaseSimplexHyperbolic { .. } => "BaseSimplexHyperbolic",
            CertNode::SuspensionCase(_) => "SuspensionCase",
            CertNode::L6 { .. } => "L6",
            CertNode::CircuitSplit { .. } => "CircuitSplit",
            CertNode::EuclideanReduction { .. } => "EuclideanReduction",
            CertNode::SimplexAfterReduction { .. } => "SimplexAfterReduction",
        }
    }

    /// One-line description, e.g. `SuspensionCase n=4 EuclideanPolesSplit`.
    pub fn summary(&self) -> String {
        match self {
            CertNode::SuspensionCase(s) => format!("SuspensionCase n={} {}", s.n, s.subcase.name()),
            CertNode::CircuitSplit { children, .. } => {
                let parts: Vec<String> = children.iter().map(|c| c.certificate.summary()).collect();
                format!("CircuitSplit [{}]", parts.join(" | "))
            }
            CertNode::EuclideanReduction { t, .. } => format!("EuclideanReduction |T|={}", t.len()),
            other => other.kind().to_string(),
        }
    }

    /// Visits every node with its triangulation and depth (root = 0).
    /// Children whose embedded document does not parse are skipped.
    pub fn walk(
        &self,
        l: &LabeledTriangulation,
        depth: usize,
        f: &mut dyn FnMut(&LabeledTriangulation, &CertNode, usize),
    ) {
        f(l, self, depth);
        if let CertNode::CircuitSplit { children, .. } = self {
            for c in children {
                if let Ok(child) = LabeledTriangulation::from_document(&c.triangulation) {
                    c.certificate.walk(&child, depth + 1, f);
                }
            }
        }
    }
}

impl Certificate {
    pub fn summary(&self) -> String {
        self.root.summary()
    }
}

/// Canonical compact JSON.
pub fn serialize(cert: &Certificate) -> Vec<u8> {
    serde_json::to_vec(cert).expect("certificates serialize")
}

pub fn deserialize(bytes: &[u8]) -> Result<Certificate> {
    serde_json::from_slice(bytes).map_err(|e| Error::Schema(e.to_string()))
}
