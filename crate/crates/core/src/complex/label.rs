use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::Rational;

/// Largest finite label accepted anywhere in the crate.
pub const MAX_LABEL: u32 = 1_000_000;

/// An edge label `m_st`. Non-edges carry the infinite label; it is never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }
}

/// Unordered vertex pair, stored with the smaller index first.
pub type Edge = (usize, usize);

pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Compares `Σ 1/m` against the integer `target` exactly.
///
/// Angle conditions of the form `Σ π/m ⋚ kπ` reduce to this comparison.
pub fn compare_reciprocal_sum(labels: &[u32], target: u32) -> Ordering {
    let product: u128 = labels.iter().map(|&m| m as u128).product();
    let numerator: u128 = labels.iter().map(|&m| product / m as u128).sum();
    numerator.cmp(&(product * target as u128))
}

pub fn reciprocal_sum(labels: &[u32]) -> Rational {
    labels
        .iter()
        .map(|&m| Rational::new(1.into(), m.into()))
        .fold(Rational::from_integer(0.into()), |acc, x| acc + x)
}

/// `1/p + 1/q + 1/r > 1`: the triangle spans a spherical simplex.
pub fn is_spherical_triple(labels: [u32; 3]) -> bool {
    compare_reciprocal_sum(&labels, 1) == Ordering::Greater
}

/// `1/p + 1/q + 1/r = 1`: the angles of a Euclidean triangle.
pub fn is_euclidean_triple(labels: [u32; 3]) -> bool {
    compare_reciprocal_sum(&labels, 1) == Ordering::Equal
}
