//! Scalar abstractions underlying every evaluator in the crate.
//!
//! Two layers are involved:
//!
//! * [`Real`] — the base floating-point type (`f32` or `f64`) everything is
//!   generic over.
//! * [`Coeff`] — the coefficient ring a metric evaluator actually computes
//!   in. This is either a bare [`Real`] (plain numeric evaluation) or a
//!   [`HyperDual`](crate::hyperdual::HyperDual) over it (evaluation that
//!   carries first- and second-order derivative tangents along). Writing
//!   evaluators against `Coeff` is what lets a single definition of a metric
//!   serve values, exact derivatives, and finite-difference probes alike.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Base floating-point scalar. Implemented for `f32` and `f64`.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Convert an `f64` constant into any [`Real`] type.
///
/// Panics only if the constant is not representable at all, which cannot
/// happen for the finite literals used in this crate.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 constant must convert")
}

/// Arguments of `sqrt` / `abs` smaller than this (in absolute value) are
/// considered too close to the nonsmooth point of those functions to be
/// differentiated through; derivative-carrying evaluations refuse them.
pub const MIN_SMOOTH_ARG: f64 = 1e-30;

/// Coefficient ring for metric evaluators: the four arithmetic operations
/// plus the handful of real elementary functions the metric zoo needs.
///
/// Implemented for every [`Real`] (plain evaluation) and for
/// [`HyperDual`](crate::hyperdual::HyperDual) over a `Real` (derivative
/// evaluation). Complex arithmetic is layered on top by
/// [`Cx`](crate::complex::Cx), which is generic over this trait.
pub trait Coeff:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The underlying floating-point type.
    type Base: Real;

    /// `true` when values of this type carry derivative tangents. Guards
    /// against differentiating `sqrt`/`abs` at their nonsmooth point.
    const CARRIES_DERIVATIVES: bool;

    /// Lift a base constant (derivative parts, if any, are zero).
    fn from_base(x: Self::Base) -> Self;

    /// The value part, with derivative information stripped.
    fn value(self) -> Self::Base;

    /// Square root. For derivative-carrying types the argument must stay
    /// clear of zero (see [`MIN_SMOOTH_ARG`]); outside that range the result
    /// is generated by the usual smooth rule.
    fn sqrt(self) -> Self;

    /// Absolute value, differentiated by the sign rule away from zero.
    fn abs(self) -> Self;

    /// Exponential.
    fn exp(self) -> Self;

    /// `true` when every component of the value is finite.
    fn is_finite(self) -> bool;

    #[inline]
    fn zero() -> Self {
        Self::from_base(<Self::Base as num_traits::Zero>::zero())
    }

    #[inline]
    fn one() -> Self {
        Self::from_base(<Self::Base as num_traits::One>::one())
    }

    /// Lift an `f64` constant.
    #[inline]
    fn from_f64(x: f64) -> Self {
        Self::from_base(real::<Self::Base>(x))
    }

    /// Integer power by repeated multiplication (exact chain rule for
    /// derivative-carrying types). Negative exponents go through division.
    fn powi(self, n: i32) -> Self {
        if n < 0 {
            return Self::one() / self.powi(-n);
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl<T: Real> Coeff for T {
    type Base = T;

    const CARRIES_DERIVATIVES: bool = false;

    #[inline]
    fn from_base(x: T) -> Self {
        x
    }

    #[inline]
    fn value(self) -> T {
        self
    }

    #[inline]
    fn sqrt(self) -> Self {
        Float::sqrt(self)
    }

    #[inline]
    fn abs(self) -> Self {
        Float::abs(self)
    }

    #[inline]
    fn exp(self) -> Self {
        Float::exp(self)
    }

    #[inline]
    fn is_finite(self) -> bool {
        Float::is_finite(self)
    }

    #[inline]
    fn powi(self, n: i32) -> Self {
        Float::powi(self, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_lift_round_trips() {
        assert_eq!(real::<f64>(0.25), 0.25);
        assert_eq!(real::<f32>(0.25), 0.25f32);
    }

    #[test]
    fn plain_coeff_operations_match_float() {
        let x: f64 = 2.0;
        assert_eq!(Coeff::sqrt(x), x.sqrt());
        assert_eq!(Coeff::powi(x, 3), 8.0);
        assert_eq!(Coeff::powi(x, -2), 0.25);
        assert_eq!(<f64 as Coeff>::from_f64(1.5), 1.5);
        assert!(Coeff::is_finite(x));
        assert!(!Coeff::is_finite(f64::NAN));
    }
}
