//! A numerical laboratory for real and complex Finsler metrics.
//!
//! The crate evaluates the classical flatness characterizations of Finsler
//! geometry as computable residuals:
//!
//! * **projective flatness** of a real metric `F(x, u)` via the Hamel
//!   residual `Σ_b F_{x^b u^a}·u^b − F_{x^a}`,
//! * **dual flatness** via the analogous residual on `F²`,
//! * their **complex counterparts** for metrics `F(z, v)` on domains in
//!   `Cⁿ`, written with Wirtinger derivatives,
//!
//! and demonstrates the rigidity phenomenon these characterizations imply:
//! a strongly convex, complex-homogeneous metric that satisfies either
//! flatness condition cannot depend on the base point at all — it is a
//! complex Minkowski metric. [`flatness::rigidity_scan`] measures this on
//! sampled data and classifies metrics as `MINKOWSKI` or `NON-FLAT`;
//! [`flatness::proof_chain`] exposes each intermediate identity of the
//! derivation as its own residual.
//!
//! Derivatives come from forward-mode automatic differentiation with
//! hyper-dual numbers ([`hyperdual::HyperDual`]), cross-checked against
//! central finite differences ([`jet::fd_real_jet2`]). Complex metrics are
//! handled by evaluating on packed real coordinates and assembling
//! Wirtinger blocks ([`jet::complex_jet2`]), so one evaluation path serves
//! both the real and the complex view of a metric.
//!
//! The built-in metric catalog lives in [`zoo`]; user-defined metrics can
//! be supplied as expressions in a small DSL ([`dsl`], [`metric::MetricField::from_expr_source`]).
//! Geodesics of real metrics integrate with fixed-step RK4
//! ([`geodesic::integrate_geodesic`]), quantifying the "geodesics are
//! straight lines" meaning of projective flatness. Sampling
//! ([`sample`]) is fully deterministic: an explicit SplitMix64 generator
//! and rejection sampling keep batches identical across platforms.
//!
//! Everything numeric is generic over the scalar type through
//! [`scalar::Real`] (implemented by `f32` and `f64`); the crate root
//! exports concrete `…64`/`…32` aliases for the common case.

pub mod axioms;
pub mod complex;
pub mod dsl;
pub mod error;
pub mod flatness;
pub mod geodesic;
pub mod hyperdual;
pub mod jet;
pub mod linalg;
pub mod metric;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod zoo;

pub use complex::Cx;
pub use error::{DslError, Error, Result};
pub use flatness::{Classification, FlatVerdict, ProofChainReport, ScanSummary};
pub use geodesic::{GeodesicTrace, Termination};
pub use hyperdual::HyperDual;
pub use jet::{ComplexJet2, FdOptions, RealJet2};
pub use metric::{Domain, Kind, MetricField};
pub use report::{CheckOptions, CheckReport, CheckRow, RigidityReport, Tolerances, Verdict};
pub use sample::{BaseRegion, ComplexTangentSample, RealTangentSample, SampleSpec, SplitMix64};
pub use scalar::Real;

/// Double-precision metric field.
pub type MetricField64 = metric::MetricField<f64>;
/// Single-precision metric field.
pub type MetricField32 = metric::MetricField<f32>;
/// Double-precision complex scalar.
pub type Cx64 = complex::Cx<f64>;
/// Single-precision complex scalar.
pub type Cx32 = complex::Cx<f32>;
/// Double-precision hyper-dual scalar.
pub type HyperDual64 = hyperdual::HyperDual<f64>;
/// Single-precision hyper-dual scalar.
pub type HyperDual32 = hyperdual::HyperDual<f32>;
/// Double-precision real jet.
pub type RealJet264 = jet::RealJet2<f64>;
/// Double-precision complex jet.
pub type ComplexJet264 = jet::ComplexJet2<f64>;
/// Double-precision real tangent sample.
pub type RealTangentSample64 = sample::RealTangentSample<f64>;
/// Double-precision complex tangent sample.
pub type ComplexTangentSample64 = sample::ComplexTangentSample<f64>;
