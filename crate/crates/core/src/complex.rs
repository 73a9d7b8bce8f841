//! Complex numbers over a generic coefficient ring.
//!
//! [`Cx<R>`] is a complex number whose real and imaginary parts live in any
//! [`Coeff`] ring — plain `f32`/`f64`, or a
//! [`HyperDual`](crate::hyperdual::HyperDual) over them. With hyper-dual
//! coefficients a `Cx` value transports first and mixed second derivatives
//! of both parts with respect to two chosen **real** coordinates, which is
//! exactly what the Wirtinger-derivative assembly downstream consumes.
//!
//! The type is deliberately small: the four arithmetic operations, conjugate,
//! squared modulus, and a principal square root written as a composition of
//! smooth real operations (so that derivative coefficients propagate
//! correctly off the branch cut). Nothing here assumes the standard library's
//! float-only complex facilities.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Coeff;

/// Complex number with parts in the coefficient ring `R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cx<R> {
    /// Real part.
    pub re: R,
    /// Imaginary part.
    pub im: R,
}

impl<R: Coeff> Cx<R> {
    #[inline]
    pub fn new(re: R, im: R) -> Self {
        Self { re, im }
    }

    /// Purely real value.
    #[inline]
    pub fn from_real(re: R) -> Self {
        Self { re, im: R::zero() }
    }

    /// Lift a pair of `f64` constants.
    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Self {
        Self {
            re: R::from_f64(re),
            im: R::from_f64(im),
        }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::from_real(R::zero())
    }

    #[inline]
    pub fn one() -> Self {
        Self::from_real(R::one())
    }

    /// The imaginary unit.
    #[inline]
    pub fn i() -> Self {
        Self {
            re: R::zero(),
            im: R::one(),
        }
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    /// Squared modulus `re² + im²` — exactly real, hence returned in `R`.
    #[inline]
    pub fn normsq(self) -> R {
        self.re * self.re + self.im * self.im
    }

    /// Modulus `√(re² + im²)`.
    #[inline]
    pub fn modulus(self) -> R {
        self.normsq().sqrt()
    }

    /// Scale by a coefficient.
    #[inline]
    pub fn scale(self, s: R) -> Self {
        Self {
            re: self.re * s,
            im: self.im * s,
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Integer power by repeated multiplication; negative exponents divide.
    pub fn powi(self, n: i32) -> Self {
        if n < 0 {
            return Self::one() / self.powi(-n);
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Principal square root.
    ///
    /// Uses the numerically stable half-angle form: with `m = |w|`,
    /// for `Re w ≥ 0` the root is `t + i·b/(2t)` where `t = √((m+a)/2)`;
    /// for `Re w < 0` it is `|b|/(2s) ± i·s` with `s = √((m−a)/2)`, signs
    /// chosen so the real part stays nonnegative. Every step is a smooth
    /// real operation wherever `w` avoids the branch cut `(-∞, 0]`, so
    /// hyper-dual coefficients come through with correct derivatives.
    ///
    /// At `w` exactly on the cut (or at zero) the value side is still the
    /// principal root, but derivative-carrying coefficient types will pick
    /// up the underlying real `sqrt` guard (NaN below the smoothness
    /// threshold). Callers that need a diagnosable error instead of NaN
    /// check the argument first (the expression evaluator does).
    pub fn sqrt(self) -> Self {
        let two = R::from_f64(2.0);
        let m = self.normsq().sqrt();
        if self.re.value() >= R::Base::zero() {
            let t = ((m + self.re) / two).sqrt();
            if t.value() == R::Base::zero() {
                // w == 0 exactly: the root is 0; avoid 0/0 in the else-arm.
                return Self::zero();
            }
            Self {
                re: t,
                im: self.im / (two * t),
            }
        } else {
            let s = ((m - self.re) / two).sqrt();
            if self.im.value() >= R::Base::zero() {
                Self {
                    re: self.im / (two * s),
                    im: s,
                }
            } else {
                Self {
                    re: -self.im / (two * s),
                    im: -s,
                }
            }
        }
    }
}

impl<R: Coeff> Add for Cx<R> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<R: Coeff> Sub for Cx<R> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<R: Coeff> Neg for Cx<R> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<R: Coeff> Mul for Cx<R> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<R: Coeff> Mul<R> for Cx<R> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: R) -> Self {
        self.scale(rhs)
    }
}

impl<R: Coeff> Div for Cx<R> {
    type Output = Self;
    /// Division by multiplying with the conjugate; no smallness guard here —
    /// callers that must diagnose near-zero denominators check first.
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let d = rhs.normsq();
        Self {
            re: (self.re * rhs.re + self.im * rhs.im) / d,
            im: (self.im * rhs.re - self.re * rhs.im) / d,
        }
    }
}

/// Hermitian pairing `Σ aₖ · conj(bₖ)` of two equal-length slices.
pub fn herm<R: Coeff>(a: &[Cx<R>], b: &[Cx<R>]) -> Cx<R> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Cx::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc + *x * y.conj();
    }
    acc
}

/// Sum of squared moduli `Σ |aₖ|²` of a slice — exactly real.
pub fn normsq_slice<R: Coeff>(a: &[Cx<R>]) -> R {
    let mut acc = R::zero();
    for x in a {
        acc = acc + x.normsq();
    }
    acc
}
