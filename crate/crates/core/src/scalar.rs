//! Scalar types the Gram-matrix classifier can run over.
//!
//! The classifier only needs ring operations, `cos(π/m)`, and a sign test with
//! a zero threshold, so it is generic over [`GramScalar`]. Implementations are
//! provided for `f32`/`f64`, for exact rationals (labels 2 and 3 only, where
//! the cosine is rational), and for [`Fixed`], a binary fixed-point type with a
//! configurable number of fractional bits used for certified decisions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Float, FloatConst, Signed, Zero};

use crate::Rational;

pub trait GramScalar:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    type Context: Clone + Debug;

    fn from_int(n: i64, ctx: &Self::Context) -> Self;

    /// `cos(π/m)`, or `None` if this scalar type cannot represent it.
    fn cos_pi_over(m: u32, ctx: &Self::Context) -> Option<Self>;

    /// Sign, with magnitudes below the context's zero threshold reported as `Equal`.
    fn sign(&self, ctx: &Self::Context) -> Ordering;
}

/// Zero threshold for IEEE floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatTolerance<F>(pub F);

impl<F: Float> Default for FloatTolerance<F> {
    fn default() -> Self {
        FloatTolerance(F::epsilon().sqrt())
    }
}

macro_rules! float_gram_scalar {
    ($($f:ty),*) => {$(
        impl GramScalar for $f {
            type Context = FloatTolerance<$f>;

            fn from_int(n: i64, _: &Self::Context) -> Self {
                n as $f
            }

            fn cos_pi_over(m: u32, _: &Self::Context) -> Option<Self> {
                Some((<$f as FloatConst>::PI() / m as $f).cos())
            }

            fn sign(&self, ctx: &Self::Context) -> Ordering {
                if self.abs() < ctx.0 {
                    Ordering::Equal
                } else if *self > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    )*};
}

float_gram_scalar!(f32, f64);

impl GramScalar for Rational {
    type Context = ();

    fn from_int(n: i64, _: &()) -> Self {
        Rational::from_integer(n.into())
    }

    fn cos_pi_over(m: u32, _: &()) -> Option<Self> {
        match m {
            2 => Some(Rational::zero()),
            3 => Some(Rational::new(1.into(), 2.into())),
            _ => None,
        }
    }

    fn sign(&self, _: &()) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

/// Default fractional bits for [`Fixed`].
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// Environment variable overriding [`DEFAULT_PRECISION_BITS`].
pub const PRECISION_ENV: &str = "SINGER_PRECISION_BITS";

/// Working precision and zero threshold (`|x| < 10^-zero_exponent`) for [`Fixed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub bits: u32,
    pub zero_exponent: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            bits: DEFAULT_PRECISION_BITS,
            zero_exponent: 20,
        }
    }
}

impl Precision {
    /// Reads `SINGER_PRECISION_BITS`; unparsable or too-small values fall back to the default.
    pub fn from_env() -> Self {
        let bits = std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .filter(|&b| b >= 96)
            .unwrap_or(DEFAULT_PRECISION_BITS);
        Precision {
            bits,
            ..Precision::default()
        }
    }

    /// Raises the working precision for large labels: cosines of `π/m` sit
    /// within `~5/m²` of 1, so each doubling of `m` costs two more bits per
    /// factor in a degree-4 minor.
    pub fn scaled_for(self, max_label: u32) -> Self {
        let label_bits = 32 - max_label.leading_zeros();
        Precision {
            bits: self.bits.max(96 + 8 * label_bits),
            ..self
        }
    }
}

/// Binary fixed-point number `raw / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    raw: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn to_f64(&self) -> f64 {
        // keep 60 significant fractional bits
        let shift = self.bits.saturating_sub(60);
        let top: BigInt = &self.raw >> shift;
        let v: f64 = top.to_string().parse().unwrap_or(f64::NAN);
        v / 2f64.powi((self.bits - shift) as i32)
    }

    fn check(&self, other: &Fixed) {
        assert_eq!(
            self.bits, other.bits,
            "mixed-precision fixed-point arithmetic"
        );
    }
}

impl Add for Fixed {
    type Output = Fixed;
    fn add(self, rhs: Fixed) -> Fixed {
        self.check(&rhs);
        Fixed {
            raw: self.raw + rhs.raw,
            bits: self.bits,
        }
    }
}

impl Sub for Fixed {
    type Output = Fixed;
    fn sub(self, rhs: Fixed) -> Fixed {
        self.check(&rhs);
        Fixed {
            raw: self.raw - rhs.raw,
            bits: self.bits,
        }
    }
}

impl Mul for Fixed {
    type Output = Fixed;
    fn mul(self, rhs: Fixed) -> Fixed {
        self.check(&rhs);
        Fixed {
            raw: (self.raw * rhs.raw) >> self.bits,
            bits: self.bits,
        }
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            raw: -self.raw,
            bits: self.bits,
        }
    }
}

const GUARD_BITS: u32 = 32;

/// `π · 2^bits` via Machin's formula `π = 16 atan(1/5) − 4 atan(1/239)`.
fn pi_scaled(bits: u32) -> BigInt {
    fn atan_inv(x: u32, bits: u32) -> BigInt {
        let one = BigInt::from(1) << bits;
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut power = one / &x;
        let mut sum = BigInt::zero();
        let mut k: u32 = 0;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if k.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            k += 1;
        }
        sum
    }
    atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4
}

/// `cos(π/m) · 2^bits` by Taylor series at `bits + GUARD_BITS`.
fn cos_pi_over_scaled(m: u32, bits: u32) -> BigInt {
    let w = bits + GUARD_BITS;
    let theta = pi_scaled(w) / BigInt::from(m);
    let theta2 = (&theta * &theta) >> w;
    let mut term = BigInt::from(1) << w;
    let mut sum = term.clone();
    let mut k: u64 = 1;
    while !term.is_zero() {
        term = (term * &theta2) >> w;
        term /= BigInt::from((2 * k - 1) * (2 * k));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    sum >> GUARD_BITS
}

fn cached_cos(m: u32, bits: u32) -> BigInt {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), BigInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(m, bits)) {
        return v.clone();
    }
    let v = cos_pi_over_scaled(m, bits);
    cache.lock().unwrap().insert((m, bits), v.clone());
    v
}

impl GramScalar for Fixed {
    type Context = Precision;

    fn from_int(n: i64, ctx: &Precision) -> Self {
        Fixed {
            raw: BigInt::from(n) << ctx.bits,
            bits: ctx.bits,
        }
    }

    fn cos_pi_over(m: u32, ctx: &Precision) -> Option<Self> {
        let raw = match m {
            2 => BigInt::zero(),
            3 => BigInt::from(1) << (ctx.bits - 1),
            _ => cached_cos(m, ctx.bits),
        };
        Some(Fixed {
            raw,
            bits: ctx.bits,
        })
    }

    fn sign(&self, ctx: &Precision) -> Ordering {
        let threshold = (BigInt::from(1) << self.bits) / BigInt::from(10).pow(ctx.zero_exponent);
        if self.raw.abs() < threshold {
            Ordering::Equal
        } else if self.raw.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}
