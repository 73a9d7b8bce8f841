//! Metric fields: a named Finsler metric on a domain, evaluable at any
//! coefficient ring (plain numbers or derivative-carrying hyper-duals).
//!
//! A metric is either *real* — `F(x, u)` on a domain of `R^m` with tangent
//! `u ≠ 0` — or *complex* — `F(z, v)` on a domain of `C^n`. Complex metrics
//! can be viewed as real ones on `R^{2n}` via [`MetricField::to_real`],
//! which packs `z = x' + i·x''` as `(x'_1..x'_n, x''_1..x''_n)` and likewise
//! for tangents.
//!
//! Each metric exposes both `F` and `F²` as separately implemented
//! evaluations where a closed form for the square exists; this makes
//! consistency checks such as `(F²)_u = 2·F·F_u` meaningful rather than
//! tautological.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{normsq_slice, Cx};
use crate::dsl::{self, Bindings, MetricExpr};
use crate::error::{Error, Result};
use crate::sample::{BaseRegion, ComplexTangentSample, RealTangentSample, SampleSpec};
use crate::scalar::{real, Coeff, Real};

/// Largest complex dimension accepted without an explicit override.
pub const MAX_COMPLEX_DIM: usize = 4;
/// Largest real dimension accepted without an explicit override.
pub const MAX_REAL_DIM: usize = 8;

/// Whether a metric's coordinates are real or complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Real,
    Complex,
}

/// Where a metric is defined, as a predicate on the (packed, for complex
/// metrics) base point. Margins keep evaluations away from the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Domain {
    /// The whole space.
    All,
    /// The open ball of the given radius; points are accepted only if
    /// `‖x‖ ≤ radius − margin`.
    Ball { radius: f64, margin: f64 },
    /// Points where `1 + coeff·x[coord] > floor` (0-based coordinate on the
    /// packed real layout, so `coord = 0` is `Re z¹` for complex metrics).
    AffineHalfSpace {
        coord: usize,
        coeff: f64,
        floor: f64,
    },
}

impl Domain {
    /// Test a (packed) base point, shrinking ball domains by `extra` on top
    /// of the built-in margin.
    pub fn contains_with_margin<T: Real>(&self, x: &[T], extra: f64) -> bool {
        match *self {
            Domain::All => true,
            Domain::Ball { radius, margin } => {
                let r2: T = x.iter().fold(T::zero(), |acc, &c| acc + c * c);
                let bound = (radius - margin - extra).max(0.0);
                r2 <= real::<T>(bound * bound)
            }
            Domain::AffineHalfSpace {
                coord,
                coeff,
                floor,
            } => match x.get(coord) {
                Some(&c) => real::<T>(1.0) + real::<T>(coeff) * c > real::<T>(floor + extra),
                None => false,
            },
        }
    }

    pub fn contains<T: Real>(&self, x: &[T]) -> bool {
        self.contains_with_margin(x, 0.0)
    }
}

/// The computational recipe behind a metric.
#[derive(Clone, Debug)]
pub(crate) enum Body<T: Real> {
    /// `F = ‖u‖` on `R^m`.
    EuclideanReal,
    /// `F = (1 + c·x¹)·‖u‖`: not projectively or dually flat, a control case.
    ScaledEuclideanReal { c: T },
    /// The Funk metric of the unit ball:
    /// `F = (√((1−‖x‖²)‖u‖² + ⟨x,u⟩²) + ⟨x,u⟩) / (1−‖x‖²)`.
    FunkReal,
    /// The same formula read with complex coordinates and the Hermitian
    /// pairing `⟨z,v⟩ = Σ z_k·conj(v_k)` (only its real part enters):
    /// not complex-homogeneous, kept as a counterexample.
    FunkComplexForm,
    /// `F = ‖v‖` on `C^n`.
    ComplexEuclidean,
    /// `F² = v† H v` for a constant positive Hermitian `H` (diagonal entries
    /// plus one optional off-diagonal coupling between the first two axes).
    ComplexHermitianConst { diag: Vec<T>, off: (T, T) },
    /// `F² = ‖v‖² + ε·|v₁|⁴/‖v‖²`: complex Minkowski (z-independent) but not
    /// Hermitian quadratic.
    ComplexMinkowskiPhi { eps: T },
    /// `F² = (1 + t·Re z¹)·‖v‖²`: z-dependent, not flat, with a parameter
    /// that drives the flatness defect linearly.
    PerturbedFamily { t: T },
    /// `F² = exp(c·Re z¹)·‖v‖²`: Hermitian at every point but z-dependent.
    HermitianZDependent { c: T },
    /// A parsed expression tree; `F²` is evaluated as the square of `F`.
    Expr {
        expr: Arc<MetricExpr>,
        params: Vec<T>,
    },
    /// A complex metric viewed through packed real coordinates.
    Realified(Box<MetricField<T>>),
}

/// A named metric with its domain and parameters, generic over the scalar
/// precision `T` used for parameter storage and evaluation.
#[derive(Clone, Debug)]
pub struct MetricField<T: Real> {
    name: String,
    kind: Kind,
    dim: usize,
    params: BTreeMap<String, f64>,
    pub(crate) body: Body<T>,
    domain: Domain,
}

fn dot<R: Coeff>(a: &[R], b: &[R]) -> R {
    let mut acc = R::zero();
    for (&x, &y) in a.iter().zip(b) {
        acc = acc + x * y;
    }
    acc
}

fn lift<R: Coeff>(xs: &[R]) -> Vec<Cx<R>> {
    xs.iter().map(|&x| Cx::from_real(x)).collect()
}

/// Pack `m = 2n` real coordinates into `n` complex ones
/// (`z_k = x_k + i·x_{k+n}`).
fn pack_complex<R: Coeff>(x: &[R]) -> Vec<Cx<R>> {
    let n = x.len() / 2;
    (0..n).map(|k| Cx::new(x[k], x[k + n])).collect()
}

impl<T: Real> MetricField<T> {
    pub(crate) fn from_parts(
        name: impl Into<String>,
        kind: Kind,
        dim: usize,
        params: BTreeMap<String, f64>,
        body: Body<T>,
        domain: Domain,
    ) -> Self {
        MetricField {
            name: name.into(),
            kind,
            dim,
            params,
            body,
            domain,
        }
    }

    /// Build a metric from expression source text. The metric is defined on
    /// the whole space; expression-level guards (square roots of negative
    /// reals, near-zero divisions) still surface as evaluation errors.
    pub fn from_expr_source(
        name: impl Into<String>,
        source: &str,
        kind: Kind,
        dim: usize,
        params: &[(String, f64)],
        raise_dim_cap: bool,
    ) -> Result<Self> {
        check_dim(kind, dim, raise_dim_cap)?;
        let mut names = Vec::with_capacity(params.len());
        let mut values = Vec::with_capacity(params.len());
        let mut map = BTreeMap::new();
        for (pname, pvalue) in params {
            validate_param_name(pname)?;
            if !pvalue.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "parameter '{pname}' must be finite, got {pvalue}"
                )));
            }
            if map.insert(pname.clone(), *pvalue).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "parameter '{pname}' supplied more than once"
                )));
            }
            names.push(pname.clone());
            values.push(real::<T>(*pvalue));
        }
        let expr = dsl::parse(source, kind, dim, &names)?;
        Ok(MetricField::from_parts(
            name,
            kind,
            dim,
            map,
            Body::Expr {
                expr: Arc::new(expr),
                params: values,
            },
            Domain::All,
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// The coordinate dimension in the metric's own kind (`n` for complex,
    /// `m` for real).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The dimension of the packed real coordinate layout (`2n` for complex
    /// metrics, `m` for real ones).
    pub fn real_dim(&self) -> usize {
        match self.kind {
            Kind::Real => self.dim,
            Kind::Complex => 2 * self.dim,
        }
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Warnings produced when the metric was parsed from expression text.
    pub fn expr_warnings(&self) -> &[dsl::Warning] {
        match &self.body {
            Body::Expr { expr, .. } => &expr.warnings,
            _ => &[],
        }
    }

    /// View a complex metric as a real one on packed coordinates. Real
    /// metrics are returned unchanged (minus the name suffix).
    pub fn to_real(&self) -> MetricField<T> {
        match self.kind {
            Kind::Real => self.clone(),
            Kind::Complex => MetricField {
                name: format!("{}(realified)", self.name),
                kind: Kind::Real,
                dim: 2 * self.dim,
                params: self.params.clone(),
                body: Body::Realified(Box::new(self.clone())),
                domain: self.domain,
            },
        }
    }

    /// A sampling region sitting comfortably inside the domain.
    pub fn default_base_region(&self) -> BaseRegion {
        match self.domain {
            Domain::All => BaseRegion::Box { lo: -1.0, hi: 1.0 },
            Domain::Ball { radius, .. } => BaseRegion::Ball {
                radius: 0.8 * radius,
            },
            Domain::AffineHalfSpace { .. } => BaseRegion::Box { lo: -0.5, hi: 0.5 },
        }
    }

    pub fn default_sample_spec(&self, seed: u64, count: usize) -> SampleSpec {
        SampleSpec {
            seed,
            count,
            base: self.default_base_region(),
        }
    }

    // -- raw evaluations (no domain checks; used by jets and residuals) ----

    /// `F(x, u)` for a real-kind metric, at any coefficient ring over `T`.
    pub(crate) fn f_real<R: Coeff<Base = T>>(&self, x: &[R], u: &[R]) -> Result<R> {
        match &self.body {
            Body::EuclideanReal => Ok(dot(u, u).sqrt()),
            Body::ScaledEuclideanReal { c } => {
                let scale = R::one() + R::from_base(*c) * x[0];
                Ok(scale * dot(u, u).sqrt())
            }
            Body::FunkReal => {
                let one = R::one();
                let xx = dot(x, x);
                let uu = dot(u, u);
                let xu = dot(x, u);
                let denom = one - xx;
                let disc = denom * uu + xu * xu;
                Ok((disc.sqrt() + xu) / denom)
            }
            Body::Realified(inner) => {
                let z = pack_complex(x);
                let v = pack_complex(u);
                inner.f_complex(&z, &v)
            }
            Body::Expr { expr, params } => {
                let xs = lift(x);
                let us = lift(u);
                Ok(dsl::eval_metric_value(
                    expr,
                    &Bindings {
                        base: &xs,
                        tangent: &us,
                        params,
                    },
                )?)
            }
            _ => Err(Error::Usage(format!(
                "metric '{}' is complex; use the complex evaluation entry points",
                self.name
            ))),
        }
    }

    /// `F²(x, u)` for a real-kind metric.
    pub(crate) fn f2_real<R: Coeff<Base = T>>(&self, x: &[R], u: &[R]) -> Result<R> {
        match &self.body {
            Body::EuclideanReal => Ok(dot(u, u)),
            Body::ScaledEuclideanReal { c } => {
                let scale = R::one() + R::from_base(*c) * x[0];
                Ok(scale * scale * dot(u, u))
            }
            Body::Realified(inner) => {
                let z = pack_complex(x);
                let v = pack_complex(u);
                inner.f2_complex(&z, &v)
            }
            _ => {
                let f = self.f_real(x, u)?;
                Ok(f * f)
            }
        }
    }

    /// `F(z, v)` for a complex-kind metric.
    pub(crate) fn f_complex<R: Coeff<Base = T>>(&self, z: &[Cx<R>], v: &[Cx<R>]) -> Result<R> {
        match &self.body {
            Body::ComplexEuclidean => Ok(normsq_slice(v).sqrt()),
            Body::FunkComplexForm => {
                let one = R::one();
                let zz = normsq_slice(z);
                let vv = normsq_slice(v);
                let zv = crate::complex::herm(z, v).re;
                let denom = one - zz;
                let disc = denom * vv + zv * zv;
                Ok((disc.sqrt() + zv) / denom)
            }
            Body::ComplexHermitianConst { .. }
            | Body::ComplexMinkowskiPhi { .. }
            | Body::PerturbedFamily { .. }
            | Body::HermitianZDependent { .. } => Ok(self.f2_complex(z, v)?.sqrt()),
            Body::Expr { expr, params } => Ok(dsl::eval_metric_value(
                expr,
                &Bindings {
                    base: z,
                    tangent: v,
                    params,
                },
            )?),
            _ => Err(Error::Usage(format!(
                "metric '{}' is real; use the real evaluation entry points",
                self.name
            ))),
        }
    }

    /// `F²(z, v)` for a complex-kind metric.
    pub(crate) fn f2_complex<R: Coeff<Base = T>>(&self, z: &[Cx<R>], v: &[Cx<R>]) -> Result<R> {
        match &self.body {
            Body::ComplexEuclidean => Ok(normsq_slice(v)),
            Body::ComplexHermitianConst { diag, off } => {
                // v† H v with H Hermitian: Σ h_k |v_k|² + 2·Re(conj(v₁)·H₁₂·v₂).
                let mut acc = R::zero();
                for (k, &h) in diag.iter().enumerate() {
                    acc = acc + R::from_base(h) * v[k].normsq();
                }
                if diag.len() >= 2 {
                    let h12 = Cx::new(R::from_base(off.0), R::from_base(off.1));
                    let cross = v[0].conj() * h12 * v[1];
                    acc = acc + (cross.re + cross.re);
                }
                Ok(acc)
            }
            Body::ComplexMinkowskiPhi { eps } => {
                let vv = normsq_slice(v);
                let q = v[0].normsq();
                Ok(vv + R::from_base(*eps) * q * q / vv)
            }
            Body::PerturbedFamily { t } => {
                let scale = R::one() + R::from_base(*t) * z[0].re;
                Ok(scale * normsq_slice(v))
            }
            Body::HermitianZDependent { c } => {
                let scale = (R::from_base(*c) * z[0].re).exp();
                Ok(scale * normsq_slice(v))
            }
            Body::FunkComplexForm | Body::Expr { .. } => {
                let f = self.f_complex(z, v)?;
                Ok(f * f)
            }
            _ => Err(Error::Usage(format!(
                "metric '{}' is real; use the real evaluation entry points",
                self.name
            ))),
        }
    }

    /// `F` on the packed real layout, for either kind.
    pub(crate) fn f_packed<R: Coeff<Base = T>>(&self, x: &[R], u: &[R]) -> Result<R> {
        match self.kind {
            Kind::Real => self.f_real(x, u),
            Kind::Complex => {
                let z = pack_complex(x);
                let v = pack_complex(u);
                self.f_complex(&z, &v)
            }
        }
    }

    /// `F²` on the packed real layout, for either kind.
    pub(crate) fn f2_packed<R: Coeff<Base = T>>(&self, x: &[R], u: &[R]) -> Result<R> {
        match self.kind {
            Kind::Real => self.f2_real(x, u),
            Kind::Complex => {
                let z = pack_complex(x);
                let v = pack_complex(u);
                self.f2_complex(&z, &v)
            }
        }
    }

    // -- checked public evaluation -----------------------------------------

    fn check_real_args(&self, x: &[T], u: &[T]) -> Result<()> {
        if self.kind != Kind::Real {
            return Err(Error::Usage(format!(
                "metric '{}' is complex; call evaluate_complex",
                self.name
            )));
        }
        if x.len() != self.dim || u.len() != self.dim {
            return Err(Error::Usage(format!(
                "metric '{}' has dimension {}, got base of length {} and tangent of length {}",
                self.name,
                self.dim,
                x.len(),
                u.len()
            )));
        }
        if u.iter().all(|&c| c == T::zero()) {
            return Err(Error::Domain(
                "tangent vector must be nonzero".to_string(),
            ));
        }
        if !self.domain.contains(x) {
            return Err(Error::Domain(format!(
                "base point lies outside the domain of metric '{}'",
                self.name
            )));
        }
        Ok(())
    }

    fn finite_positive(&self, f: T) -> Result<T> {
        let fv = f.to_f64().unwrap_or(f64::NAN);
        if !fv.is_finite() {
            return Err(Error::Numerics(format!(
                "metric '{}' evaluated to a non-finite value",
                self.name
            )));
        }
        if fv <= 0.0 {
            return Err(Error::Numerics(format!(
                "metric '{}' evaluated to a non-positive value {fv}; not a metric there",
                self.name
            )));
        }
        Ok(f)
    }

    /// Evaluate `F(x, u)` with full argument, domain, and positivity checks.
    pub fn evaluate_real(&self, sample: &RealTangentSample<T>) -> Result<T> {
        self.check_real_args(&sample.x, &sample.u)?;
        let f = self.f_real(&sample.x, &sample.u)?;
        self.finite_positive(f)
    }

    /// Evaluate `F(z, v)` with full argument, domain, and positivity checks.
    pub fn evaluate_complex(&self, sample: &ComplexTangentSample<T>) -> Result<T> {
        if self.kind != Kind::Complex {
            return Err(Error::Usage(format!(
                "metric '{}' is real; call evaluate_real",
                self.name
            )));
        }
        if sample.z.len() != self.dim || sample.v.len() != self.dim {
            return Err(Error::Usage(format!(
                "metric '{}' has complex dimension {}, got base of length {} and tangent of length {}",
                self.name,
                self.dim,
                sample.z.len(),
                sample.v.len()
            )));
        }
        if sample.v.iter().all(|c| c.re == T::zero() && c.im == T::zero()) {
            return Err(Error::Domain(
                "tangent vector must be nonzero".to_string(),
            ));
        }
        let packed_x = sample.packed_base();
        if !self.domain.contains(&packed_x) {
            return Err(Error::Domain(format!(
                "base point lies outside the domain of metric '{}'",
                self.name
            )));
        }
        let f = self.f_complex(&sample.z, &sample.v)?;
        self.finite_positive(f)
    }
}

/// Reject parameter names that would shadow coordinates, the imaginary
/// unit, or a function name.
fn validate_param_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::InvalidParameter(
            "parameter names must be nonempty".to_string(),
        ));
    }
    if !name
        .bytes()
        .next()
        .map(|b| b.is_ascii_alphabetic())
        .unwrap_or(false)
        || !name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
    {
        return Err(Error::InvalidParameter(format!(
            "parameter name '{name}' must start with a letter and contain only letters, digits, and underscores"
        )));
    }
    if name == "i" || dsl::FUNCTION_NAMES.contains(&name) {
        return Err(Error::InvalidParameter(format!(
            "parameter name '{name}' is reserved"
        )));
    }
    let mut chars = name.chars();
    let head = chars.next().unwrap();
    if matches!(head, 'z' | 'v' | 'x' | 'u') {
        let rest = chars.as_str();
        let digits = rest.strip_prefix('_').unwrap_or(rest);
        if digits.is_empty() && rest.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "parameter name '{name}' collides with a coordinate group"
            )));
        }
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidParameter(format!(
                "parameter name '{name}' collides with a coordinate variable"
            )));
        }
    }
    Ok(())
}

/// Enforce the dimension caps unless explicitly raised.
pub(crate) fn check_dim(kind: Kind, dim: usize, raise_cap: bool) -> Result<()> {
    if dim == 0 {
        return Err(Error::Usage("dimension must be at least 1".to_string()));
    }
    let cap = match kind {
        Kind::Complex => MAX_COMPLEX_DIM,
        Kind::Real => MAX_REAL_DIM,
    };
    if dim > cap && !raise_cap {
        return Err(Error::Usage(format!(
            "dimension {dim} exceeds the default cap of {cap} for {} metrics; pass the explicit override to go higher",
            match kind {
                Kind::Complex => "complex",
                Kind::Real => "real",
            }
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{ComplexTangentSample, RealTangentSample};

    fn funk() -> MetricField<f64> {
        MetricField::from_parts(
            "funk-real",
            Kind::Real,
            2,
            BTreeMap::new(),
            Body::FunkReal,
            Domain::Ball {
                radius: 1.0,
                margin: 1e-6,
            },
        )
    }

    #[test]
    fn funk_value_at_reference_point() {
        // x = (0.5, 0), u = (1, 0): √((1−0.25)·1 + 0.25) = 1, so F = (1 + 0.5)/0.75 = 2.
        let m = funk();
        let f = m
            .evaluate_real(&RealTangentSample {
                x: vec![0.5, 0.0],
                u: vec![1.0, 0.0],
            })
            .unwrap();
        assert!((f - 2.0).abs() < 1e-15);
    }

    #[test]
    fn funk_rejects_points_outside_the_ball() {
        let m = funk();
        let err = m
            .evaluate_real(&RealTangentSample {
                x: vec![1.2, 0.0],
                u: vec![1.0, 0.0],
            })
            .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn zero_tangent_is_rejected() {
        let m = funk();
        let err = m
            .evaluate_real(&RealTangentSample {
                x: vec![0.0, 0.0],
                u: vec![0.0, 0.0],
            })
            .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn realified_complex_metric_matches_packed_evaluation() {
        let m = MetricField::<f64>::from_parts(
            "complex-euclidean",
            Kind::Complex,
            2,
            BTreeMap::new(),
            Body::ComplexEuclidean,
            Domain::All,
        );
        let s = ComplexTangentSample {
            z: vec![Cx::from_f64(0.3, -0.2), Cx::from_f64(0.0, 0.1)],
            v: vec![Cx::from_f64(1.0, 2.0), Cx::from_f64(-0.5, 0.25)],
        };
        let direct = m.evaluate_complex(&s).unwrap();
        let realified = m.to_real();
        assert_eq!(realified.kind(), Kind::Real);
        assert_eq!(realified.dim(), 4);
        let via_packed = realified
            .evaluate_real(&RealTangentSample {
                x: s.packed_base(),
                u: s.packed_tangent(),
            })
            .unwrap();
        assert!((direct - via_packed).abs() < 1e-15);
    }

    #[test]
    fn expression_metric_matches_builtin_euclidean() {
        let m = MetricField::<f64>::from_expr_source(
            "expr-euclid",
            "sqrt(normsq(u))",
            Kind::Real,
            2,
            &[],
            false,
        )
        .unwrap();
        let f = m
            .evaluate_real(&RealTangentSample {
                x: vec![0.0, 0.0],
                u: vec![3.0, 4.0],
            })
            .unwrap();
        assert!((f - 5.0).abs() < 1e-15);
    }

    #[test]
    fn parameter_name_validation() {
        for bad in ["i", "sqrt", "u_1", "z2", "v", "1t", "a b"] {
            assert!(
                validate_param_name(bad).is_err(),
                "'{bad}' should be rejected"
            );
        }
        for good in ["t", "eps", "c", "h1", "off_re", "zeta", "under_score"] {
            assert!(
                validate_param_name(good).is_ok(),
                "'{good}' should be accepted"
            );
        }
    }

    #[test]
    fn dimension_caps_enforced_and_raisable() {
        assert!(check_dim(Kind::Complex, 5, false).is_err());
        assert!(check_dim(Kind::Complex, 5, true).is_ok());
        assert!(check_dim(Kind::Real, 9, false).is_err());
        assert!(check_dim(Kind::Real, 9, true).is_ok());
        assert!(check_dim(Kind::Real, 0, true).is_err());
    }

    #[test]
    fn domain_margins_shrink_the_ball() {
        let d = Domain::Ball {
            radius: 1.0,
            margin: 1e-6,
        };
        assert!(d.contains(&[0.9f64, 0.0]));
        assert!(!d.contains(&[0.9999999f64, 0.0]));
        assert!(!d.contains_with_margin(&[0.95f64, 0.0], 0.1));
        let h = Domain::AffineHalfSpace {
            coord: 0,
            coeff: 0.2,
            floor: 0.05,
        };
        assert!(h.contains(&[0.0f64, 0.0]));
        assert!(!h.contains(&[-5.0f64, 0.0]));
    }
}
