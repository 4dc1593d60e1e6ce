//! Coxeter-theoretic predicates on labeled complexes.

mod euler;
mod gram;
mod metric_flag;
mod spherical;

pub use euler::{format_fraction, l2_euler_characteristic};
pub use gram::{gram_class, gram_class_with_precision, GramClass, GramMatrix, LabelMatrix};
pub use metric_flag::{metric_flag_check, FlagClause, FlagViolation, MetricFlagReport};
pub use spherical::{
    is_spherical, is_spherical_subset, spherical_order, spherical_order_of, spherical_poset,
    triangle_excess, SphericalPoset, SphericalSubset,
};
