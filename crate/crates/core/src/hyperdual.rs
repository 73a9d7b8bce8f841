//! Hyper-dual numbers: forward-mode automatic differentiation carrying one
//! value, two first-order tangents and the corresponding mixed second-order
//! term through arbitrary arithmetic.
//!
//! A hyper-dual number represents the truncated Taylor expansion
//! `f = value + d1·ε₁ + d2·ε₂ + d12·ε₁ε₂` with `ε₁² = ε₂² = 0`. Seeding
//! `d1`/`d2` with unit tangents on two chosen coordinates and evaluating a
//! function yields the exact first partials in those directions (`d1`, `d2`)
//! and the exact mixed second partial (`d12`) — no truncation error, only
//! rounding. One evaluation therefore covers one variable pair.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Float;

use crate::scalar::{real, Coeff, Real, MIN_SMOOTH_ARG};

/// Second-order forward-mode dual number. See the module docs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperDual<T> {
    /// Value part.
    pub value: T,
    /// Coefficient of the first tangent direction.
    pub d1: T,
    /// Coefficient of the second tangent direction.
    pub d2: T,
    /// Mixed second-order coefficient.
    pub d12: T,
}

impl<T: Real> HyperDual<T> {
    /// A constant: value only, all tangents zero.
    #[inline]
    pub fn constant(value: T) -> Self {
        Self {
            value,
            d1: T::zero(),
            d2: T::zero(),
            d12: T::zero(),
        }
    }

    /// A variable with the given seeds on the two tangent slots
    /// (each seed is typically `0` or `1`).
    #[inline]
    pub fn seeded(value: T, d1: T, d2: T) -> Self {
        Self {
            value,
            d1,
            d2,
            d12: T::zero(),
        }
    }

    /// Reciprocal `1/self`.
    #[inline]
    pub fn recip(self) -> Self {
        let v = T::one() / self.value;
        let v2 = v * v;
        let two = real::<T>(2.0);
        Self {
            value: v,
            d1: -self.d1 * v2,
            d2: -self.d2 * v2,
            d12: (two * self.d1 * self.d2 * v - self.d12) * v2,
        }
    }

    /// Apply a smooth scalar function given its value and first two
    /// derivatives at `self.value` (the univariate chain rule).
    #[inline]
    fn chain(self, f: T, df: T, ddf: T) -> Self {
        Self {
            value: f,
            d1: df * self.d1,
            d2: df * self.d2,
            d12: df * self.d12 + ddf * self.d1 * self.d2,
        }
    }
}

impl<T: Real> Add for HyperDual<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            d1: self.d1 + rhs.d1,
            d2: self.d2 + rhs.d2,
            d12: self.d12 + rhs.d12,
        }
    }
}

impl<T: Real> Sub for HyperDual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self {
            value: self.value - rhs.value,
            d1: self.d1 - rhs.d1,
            d2: self.d2 - rhs.d2,
            d12: self.d12 - rhs.d12,
        }
    }
}

impl<T: Real> Neg for HyperDual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            d1: -self.d1,
            d2: -self.d2,
            d12: -self.d12,
        }
    }
}

impl<T: Real> Mul for HyperDual<T> {
    type Output = Self;
    /// Product rule on both tangent slots:
    /// `(f·g)₁₂ = f·g₁₂ + f₁·g₂ + f₂·g₁ + f₁₂·g`.
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self {
            value: self.value * rhs.value,
            d1: self.value * rhs.d1 + self.d1 * rhs.value,
            d2: self.value * rhs.d2 + self.d2 * rhs.value,
            d12: self.value * rhs.d12
                + self.d1 * rhs.d2
                + self.d2 * rhs.d1
                + self.d12 * rhs.value,
        }
    }
}

impl<T: Real> Div for HyperDual<T> {
    type Output = Self;
    /// Direct quotient rule (`f = a/b` solved from `a = f·b`), which is
    /// slightly better conditioned than multiplying by the reciprocal.
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let value = self.value / rhs.value;
        let d1 = (self.d1 - value * rhs.d1) / rhs.value;
        let d2 = (self.d2 - value * rhs.d2) / rhs.value;
        let d12 = (self.d12 - value * rhs.d12 - d1 * rhs.d2 - d2 * rhs.d1) / rhs.value;
        Self { value, d1, d2, d12 }
    }
}

impl<T: Real> Coeff for HyperDual<T> {
    type Base = T;

    const CARRIES_DERIVATIVES: bool = true;

    #[inline]
    fn from_base(x: T) -> Self {
        Self::constant(x)
    }

    #[inline]
    fn value(self) -> T {
        self.value
    }

    /// Smooth square-root rule. Arguments below [`MIN_SMOOTH_ARG`] sit on
    /// (or past) the nonsmooth point and are refused by returning NaN in
    /// every slot; downstream finiteness checks turn that into an error.
    fn sqrt(self) -> Self {
        if self.value < real::<T>(MIN_SMOOTH_ARG) {
            return Self::constant(T::nan());
        }
        let s = Float::sqrt(self.value);
        let half = real::<T>(0.5);
        let df = half / s;
        // d²/dx² √x = -1/(4 x^{3/2})
        let ddf = -half * df / self.value;
        self.chain(s, df, ddf)
    }

    /// Sign rule `|x|' = sign(x)` away from zero; values within
    /// [`MIN_SMOOTH_ARG`] of zero are refused via NaN.
    fn abs(self) -> Self {
        if Float::abs(self.value) < real::<T>(MIN_SMOOTH_ARG) {
            return Self::constant(T::nan());
        }
        if self.value < T::zero() {
            -self
        } else {
            self
        }
    }

    fn exp(self) -> Self {
        let e = Float::exp(self.value);
        self.chain(e, e, e)
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d12.is_finite()
    }
}
