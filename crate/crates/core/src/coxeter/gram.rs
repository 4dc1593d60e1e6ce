use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::complex::{compare_reciprocal_sum, Label, LabeledTriangulation};
use crate::error::{Error, Result};
use crate::scalar::{Fixed, GramScalar, Precision};

/// Signature class of the cosine form `G_ii = 1`, `G_ij = −cos(π/m_ij)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum GramClass {
    PositiveDefinite,
    PositiveSemidefinite { corank: u8 },
    Indefinite,
}

/// Symmetric labels on at most four generators; the diagonal is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMatrix {
    size: usize,
    labels: [[u32; 4]; 4],
}

impl LabelMatrix {
    pub fn from_fn(size: usize, mut label: impl FnMut(usize, usize) -> Label) -> Result<Self> {
        if size > 4 {
            return Err(Error::SubsetTooLarge(size));
        }
        let mut labels = [[0; 4]; 4];
        for i in 0..size {
            for j in (i + 1)..size {
                let m = label(i, j).finite().ok_or(Error::InfiniteLabel(i, j))?;
                labels[i][j] = m;
                labels[j][i] = m;
            }
        }
        Ok(LabelMatrix { size, labels })
    }

    /// Labels among `subset` in `l`; errors carry the original vertex indices.
    pub fn from_triangulation(l: &LabeledTriangulation, subset: &[usize]) -> Result<Self> {
        l.ensure_vertices(subset)?;
        if subset.len() > 4 {
            return Err(Error::SubsetTooLarge(subset.len()));
        }
        LabelMatrix::from_fn(subset.len(), |i, j| l.label(subset[i], subset[j])).map_err(
            |e| match e {
                Error::InfiniteLabel(i, j) => Error::InfiniteLabel(subset[i], subset[j]),
                e => e,
            },
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.labels[i][j]
    }

    pub fn max_label(&self) -> u32 {
        self.labels
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(2)
            .max(2)
    }
}

/// The cosine matrix over a chosen scalar type.
#[derive(Debug, Clone)]
pub struct GramMatrix<S> {
    entries: Vec<Vec<S>>,
}

impl<S: GramScalar> GramMatrix<S> {
    /// `None` when some `cos(π/m)` is not representable in `S`.
    pub fn from_labels(labels: &LabelMatrix, ctx: &S::Context) -> Option<Self> {
        let n = labels.size();
        let mut entries = vec![vec![S::from_int(0, ctx); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = if i == j {
                    S::from_int(1, ctx)
                } else {
                    -S::cos_pi_over(labels.get(i, j), ctx)?
                };
            }
        }
        Some(GramMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i][j]
    }

    fn minor(&self, rows: &[usize], ctx: &S::Context) -> S {
        match rows.len() {
            0 => S::from_int(1, ctx),
            1 => self.entries[rows[0]][rows[0]].clone(),
            _ => {
                // Laplace expansion along the first row
                let first = rows[0];
                let mut acc = S::from_int(0, ctx);
                for (k, &col) in rows.iter().enumerate() {
                    let rest_rows = &rows[1..];
                    let rest_cols: Vec<usize> =
                        rows.iter().copied().filter(|&c| c != col).collect();
                    let sub = self.submatrix_det(rest_rows, &rest_cols, ctx);
                    let term = self.entries[first][col].clone() * sub;
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    fn submatrix_det(&self, rows: &[usize], cols: &[usize], ctx: &S::Context) -> S {
        match rows.len() {
            0 => S::from_int(1, ctx),
            1 => self.entries[rows[0]][cols[0]].clone(),
            _ => {
                let mut acc = S::from_int(0, ctx);
                for k in 0..cols.len() {
                    let rest: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != k)
                        .map(|(_, &c)| c)
                        .collect();
                    let term = self.entries[rows[0]][cols[k]].clone()
                        * self.submatrix_det(&rows[1..], &rest, ctx);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    pub fn determinant(&self, ctx: &S::Context) -> S {
        let all: Vec<usize> = (0..self.size()).collect();
        self.minor(&all, ctx)
    }

    /// `e_k` = sum of the `k × k` principal minors, for `k = 1..=n`. The
    /// characteristic polynomial is `Σ (−1)^k e_k t^(n−k)`.
    pub fn principal_minor_sums(&self, ctx: &S::Context) -> Vec<S> {
        let n = self.size();
        let mut sums = vec![S::from_int(0, ctx); n];
        for mask in 1u32..(1 << n) {
            let rows: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let k = rows.len();
            sums[k - 1] = sums[k - 1].clone() + self.minor(&rows, ctx);
        }
        sums
    }

    /// A real symmetric matrix is positive semidefinite iff every `e_k ≥ 0`;
    /// its rank is then the largest `k` with `e_k > 0`.
    pub fn classify(&self, ctx: &S::Context) -> GramClass {
        let n = self.size();
        let signs: Vec<Ordering> = self
            .principal_minor_sums(ctx)
            .iter()
            .map(|e| e.sign(ctx))
            .collect();
        if signs.contains(&Ordering::Less) {
            return GramClass::Indefinite;
        }
        let rank = signs
            .iter()
            .rposition(|&s| s == Ordering::Greater)
            .map_or(0, |i| i + 1);
        if rank == n {
            GramClass::PositiveDefinite
        } else {
            GramClass::PositiveSemidefinite {
                corank: (n - rank) as u8,
            }
        }
    }
}

/// Classifies the cosine form of at most four generators.
///
/// Up to rank 3 the decision is exact: a pair is always positive definite and
/// a triple compares `1/p + 1/q + 1/r` with 1. Rank 4 uses [`Fixed`] at the
/// working precision from `SINGER_PRECISION_BITS`.
pub fn gram_class(labels: &LabelMatrix) -> Result<GramClass> {
    gram_class_with_precision(labels, Precision::from_env())
}

pub fn gram_class_with_precision(labels: &LabelMatrix, precision: Precision) -> Result<GramClass> {
    Ok(match labels.size() {
        0..=2 => GramClass::PositiveDefinite,
        3 => {
            match compare_reciprocal_sum(&[labels.get(0, 1), labels.get(1, 2), labels.get(0, 2)], 1)
            {
                Ordering::Greater => GramClass::PositiveDefinite,
                Ordering::Equal => GramClass::PositiveSemidefinite { corank: 1 },
                Ordering::Less => GramClass::Indefinite,
            }
        }
        4 => {
            let ctx = precision.scaled_for(labels.max_label());
            GramMatrix::<Fixed>::from_labels(labels, &ctx)
                .expect("fixed point represents every cosine")
                .classify(&ctx)
        }
        n => return Err(Error::SubsetTooLarge(n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FloatTolerance;
    use crate::Rational;

    fn matrix(size: usize, pairs: &[(usize, usize, u32)]) -> LabelMatrix {
        LabelMatrix::from_fn(size, |i, j| {
            pairs
                .iter()
                .find(|&&(a, b, _)| (a, b) == (i, j) || (b, a) == (i, j))
                .map_or(Label::Finite(2), |&(_, _, m)| Label::Finite(m))
        })
        .unwrap()
    }

    fn affine_cycle() -> LabelMatrix {
        matrix(4, &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (0, 3, 3)])
    }

    #[test]
    fn identity_form_is_positive_definite() {
        assert_eq!(
            gram_class(&matrix(4, &[])).unwrap(),
            GramClass::PositiveDefinite
        );
    }

    #[test]
    fn affine_four_cycle_has_corank_one() {
        // circulant with eigenvalues {0, 1, 2, 1}
        assert_eq!(
            gram_class(&affine_cycle()).unwrap(),
            GramClass::PositiveSemidefinite { corank: 1 }
        );
    }

    #[test]
    fn affine_four_cycle_exactly_over_rationals() {
        let g = GramMatrix::<Rational>::from_labels(&affine_cycle(), &()).unwrap();
        assert_eq!(g.determinant(&()), Rational::from_integer(0.into()));
        let e: Vec<Rational> = g.principal_minor_sums(&());
        // char poly t(t-1)^2(t-2) = t^4 - 4t^3 + 5t^2 - 2t
        let want = [4, 5, 2, 0].map(|x| Rational::from_integer(x.into()));
        assert_eq!(e, want.to_vec());
        assert_eq!(
            g.classify(&()),
            GramClass::PositiveSemidefinite { corank: 1 }
        );
    }

    #[test]
    fn linear_534_is_indefinite() {
        let m = matrix(4, &[(0, 1, 5), (1, 2, 3), (2, 3, 4)]);
        assert_eq!(gram_class(&m).unwrap(), GramClass::Indefinite);
        // the same decision in plain floating point, for comparison
        let g = GramMatrix::<f64>::from_labels(&m, &FloatTolerance::default()).unwrap();
        assert!(g.determinant(&FloatTolerance::default()) < 0.0);
    }

    #[test]
    fn affine_c3_and_b3_tilde_are_degenerate() {
        // C̃3: 4–3–4 linear; B̃3: 4–3 with a fork
        let c3 = matrix(4, &[(0, 1, 4), (1, 2, 3), (2, 3, 4)]);
        let b3 = matrix(4, &[(0, 1, 4), (1, 2, 3), (1, 3, 3)]);
        for m in [c3, b3] {
            assert_eq!(
                gram_class(&m).unwrap(),
                GramClass::PositiveSemidefinite { corank: 1 }
            );
        }
    }

    #[test]
    fn finite_rank_four_groups_are_positive_definite() {
        // A4, B4, D4, F4, H4
        let cases = [
            matrix(4, &[(0, 1, 3), (1, 2, 3), (2, 3, 3)]),
            matrix(4, &[(0, 1, 4), (1, 2, 3), (2, 3, 3)]),
            matrix(4, &[(0, 1, 3), (1, 2, 3), (1, 3, 3)]),
            matrix(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
            matrix(4, &[(0, 1, 5), (1, 2, 3), (2, 3, 3)]),
        ];
        for m in cases {
            assert_eq!(
                gram_class(&m).unwrap(),
                GramClass::PositiveDefinite,
                "{m:?}"
            );
        }
    }

    #[test]
    fn euclidean_triangle_times_point_has_corank_one() {
        // Ã2 × A1
        let m = matrix(4, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]);
        assert_eq!(
            gram_class(&m).unwrap(),
            GramClass::PositiveSemidefinite { corank: 1 }
        );
    }

    #[test]
    fn oversized_and_infinite_inputs_are_rejected() {
        assert_eq!(
            LabelMatrix::from_fn(5, |_, _| Label::Finite(2)),
            Err(Error::SubsetTooLarge(5))
        );
        assert_eq!(
            LabelMatrix::from_fn(3, |i, j| if (i, j) == (0, 2) {
                Label::Infinite
            } else {
                Label::Finite(3)
            }),
            Err(Error::InfiniteLabel(0, 2))
        );
    }

    #[test]
    fn triples_agree_with_the_reciprocal_test_exhaustively() {
        // the numeric route over Fixed against the exact route, labels up to 50
        let ctx = Precision::default();
        for p in 2..=50u32 {
            for q in p..=50 {
                for r in q..=50 {
                    let m = matrix(3, &[(0, 1, p), (1, 2, q), (0, 2, r)]);
                    let exact = gram_class(&m).unwrap();
                    let numeric = GramMatrix::<Fixed>::from_labels(&m, &ctx)
                        .unwrap()
                        .classify(&ctx);
                    assert_eq!(exact, numeric, "({p},{q},{r})");
                }
            }
        }
    }
}
