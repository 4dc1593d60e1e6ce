use num_traits::{One, Zero};

use super::gram::{gram_class, GramClass, LabelMatrix};
use super::metric_flag::metric_flag_check;
use crate::complex::{compare_reciprocal_sum, LabeledTriangulation};
use crate::error::{Error, Result};
use crate::Rational;

/// Whether the generators described by `labels` generate a finite group.
pub fn is_spherical(labels: &LabelMatrix) -> Result<bool> {
    Ok(match labels.size() {
        0..=2 => true,
        3 => {
            compare_reciprocal_sum(&[labels.get(0, 1), labels.get(1, 2), labels.get(0, 2)], 1)
                == std::cmp::Ordering::Greater
        }
        _ => gram_class(labels)? == GramClass::PositiveDefinite,
    })
}

/// `|W_T|` for a spherical subset of size at most 3.
///
/// Rank 3 uses `4 / (1/p + 1/q + 1/r − 1)`, which counts the triangles
/// tiling the sphere by the Schwarz triangle.
pub fn spherical_order(labels: &LabelMatrix) -> Result<Rational> {
    let not_spherical = || Error::NotSpherical((0..labels.size()).collect());
    match labels.size() {
        0 => Ok(Rational::one()),
        1 => Ok(Rational::from_integer(2.into())),
        2 => Ok(Rational::from_integer((2 * labels.get(0, 1) as u64).into())),
        3 => {
            let ls = [labels.get(0, 1), labels.get(1, 2), labels.get(0, 2)];
            let excess = triangle_excess(ls);
            if excess <= Rational::zero() {
                return Err(not_spherical());
            }
            Ok(Rational::from_integer(4.into()) / excess)
        }
        n => Err(Error::SubsetTooLarge(n)),
    }
}

/// `1/p + 1/q + 1/r − 1`.
pub fn triangle_excess(labels: [u32; 3]) -> Rational {
    crate::complex::reciprocal_sum(&labels) - Rational::one()
}

pub fn is_spherical_subset(l: &LabeledTriangulation, subset: &[usize]) -> Result<bool> {
    if subset.len() >= 2 && !all_adjacent(l, subset) {
        l.ensure_vertices(subset)?;
        return Ok(false);
    }
    is_spherical(&LabelMatrix::from_triangulation(l, subset)?)
}

pub fn spherical_order_of(l: &LabeledTriangulation, subset: &[usize]) -> Result<Rational> {
    let labels = LabelMatrix::from_triangulation(l, subset).map_err(|e| match e {
        Error::InfiniteLabel(..) => Error::NotSpherical(subset.to_vec()),
        e => e,
    })?;
    spherical_order(&labels).map_err(|e| match e {
        Error::NotSpherical(_) => Error::NotSpherical(subset.to_vec()),
        e => e,
    })
}

fn all_adjacent(l: &LabeledTriangulation, subset: &[usize]) -> bool {
    subset
        .iter()
        .enumerate()
        .all(|(i, &a)| subset[i + 1..].iter().all(|&b| l.is_adjacent(a, b)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalSubset {
    pub vertices: Vec<usize>,
    pub order: Rational,
}

/// Spherical subsets with their group orders: ∅, vertices, edges, triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalPoset {
    pub elements: Vec<SphericalSubset>,
}

impl SphericalPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Σ (−1)^|T| / |W_T|`.
    pub fn alternating_sum(&self) -> Rational {
        self.elements.iter().fold(Rational::zero(), |acc, t| {
            let term = t.order.recip();
            if t.vertices.len() % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }
}

pub fn spherical_poset(l: &LabeledTriangulation) -> Result<SphericalPoset> {
    let report = metric_flag_check(l);
    if !report.passed() {
        return Err(Error::NotMetricFlag(report.summary()));
    }
    let mut elements = vec![SphericalSubset {
        vertices: vec![],
        order: Rational::one(),
    }];
    for v in 0..l.vertex_count() {
        elements.push(SphericalSubset {
            vertices: vec![v],
            order: Rational::from_integer(2.into()),
        });
    }
    for ((a, b), m) in l.labels() {
        elements.push(SphericalSubset {
            vertices: vec![*a, *b],
            order: Rational::from_integer((2 * *m as u64).into()),
        });
    }
    for t in l.triangles() {
        elements.push(SphericalSubset {
            vertices: t.to_vec(),
            order: spherical_order_of(l, t)?,
        });
    }
    Ok(SphericalPoset { elements })
}
