use serde::{Deserialize, Serialize};

use super::classify::{classify_vertex, VertexClass};
use crate::complex::LabeledTriangulation;

/// An L6-triangulation: the suspension of a hexagon in which every other
/// hexagon vertex (one of them `v`) has both pole edges labeled 2. The other class is then 4-Euclidean, and
/// the stars of `s1`, `s2` meet in the path `t – v – b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct L6Witness {
    pub poles: (usize, usize),
    pub hexagon: Vec<usize>,
    pub s1: usize,
    pub s2: usize,
    pub v: usize,
    pub x: usize,
}

pub fn recognize_l6(l: &LabeledTriangulation) -> Option<L6Witness> {
    if l.vertex_count() != 8 {
        return None;
    }
    let s = l.suspension()?;
    let (t, b) = s.poles;
    let hex = s.equator.canonical().vertices;
    for parity in 0..2 {
        let right: Vec<usize> = (0..6).filter(|i| i % 2 == parity).map(|i| hex[i]).collect();
        let mut other: Vec<usize> = (0..6).filter(|i| i % 2 != parity).map(|i| hex[i]).collect();
        if !right.iter().all(|&w| l.m(t, w) == 2 && l.m(b, w) == 2) {
            continue;
        }
        if !other
            .iter()
            .all(|&w| classify_vertex(l, w) == Ok(VertexClass::Euclid4))
        {
            continue;
        }
        other.sort_unstable();
        let (s1, s2, x) = (other[0], other[1], other[2]);
        let v = *right
            .iter()
            .find(|&&w| l.is_adjacent(w, s1) && l.is_adjacent(w, s2))
            .expect("two vertices of one hexagon class share a neighbour");
        return Some(L6Witness {
            poles: (t, b),
            hexagon: hex,
            s1,
            s2,
            v,
            x,
        });
    }
    None
}

impl L6Witness {
    /// Re-checks the witness against `l`.
    pub fn holds(&self, l: &LabeledTriangulation) -> bool {
        recognize_l6(l).as_ref() == Some(self)
    }
}
