use super::spherical::spherical_poset;
use crate::complex::LabeledTriangulation;
use crate::error::Result;
use crate::Rational;

/// Exact ℓ²-Euler characteristic `Σ_{T spherical} (−1)^|T| / |W_T|`.
pub fn l2_euler_characteristic(l: &LabeledTriangulation) -> Result<Rational> {
    Ok(spherical_poset(l)?.alternating_sum())
}

/// Formats as `"p/q"`, including `"0/1"` for zero.
pub fn format_fraction(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
