//! Scalar abstraction shared by every evaluation and matrix routine.
//!
//! Cosine evaluation and the dense matrices are generic over [`Scalar`]
//! (implemented for `f32` and `f64`). Exactly representable quantities,
//! namely node angles and recurrence/weight coefficients, are kept as
//! [`Rational`] and converted once at the point of use.

use std::fmt::{Debug, Display, LowerExp};

use nalgebra::{ClosedAddAssign, ClosedDivAssign, ClosedMulAssign, ClosedSubAssign};
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, One, ToPrimitive, Zero};

/// Exact rational number used for node angles and matrix coefficients.
pub type Rational = Ratio<i64>;

/// Floating point type the transform can be computed in.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + nalgebra::Scalar
    + ClosedAddAssign
    + ClosedSubAssign
    + ClosedMulAssign
    + ClosedDivAssign
    + Send
    + Sync
    + Debug
    + Display
    + LowerExp
{
    /// Relative off-diagonal level of `FᵀH⊕F` tolerated by plan construction.
    const DIAGONAL_TOL: f64;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn from_rational(r: Rational) -> Self {
        Self::lit(*r.numer() as f64) / Self::lit(*r.denom() as f64)
    }
}

impl Scalar for f32 {
    const DIAGONAL_TOL: f64 = 1e-3;
}

impl Scalar for f64 {
    const DIAGONAL_TOL: f64 = 1e-9;
}

/// Largest absolute value in a sequence, `0` when empty.
pub fn max_abs<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
}

/// `cos(2π·r)` for an exact rational number of turns.
///
/// The argument is reduced modulo one and folded into `[0, 1/8]` exactly,
/// so multiples of a quarter turn give exact `0` and `±1`.
pub fn cos_turns<T: Scalar>(r: Rational) -> T {
    let half = Rational::new(1, 2);
    let quarter = Rational::new(1, 4);
    let eighth = Rational::new(1, 8);

    let mut f = r - r.floor();
    if f > half {
        f = Rational::one() - f;
    }
    let (f, sign) = if f > quarter {
        (half - f, -T::one())
    } else {
        (f, T::one())
    };
    let tau = T::TAU();
    let value = if f.is_zero() {
        T::one()
    } else if f == quarter {
        T::zero()
    } else if f > eighth {
        (tau * T::from_rational(quarter - f)).sin()
    } else {
        (tau * T::from_rational(f)).cos()
    };
    sign * value
}
