//! The metric catalog: a fixed set of named example metrics with known
//! properties, parameter specifications, and (where practical) equivalent
//! expression-language renderings used for cross-validation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{check_dim, Body, Domain, Kind, MetricField};
use crate::scalar::{real, Real};

/// One tunable parameter of a catalog metric.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub doc: &'static str,
}

/// Ground-truth properties claimed for a catalog metric at its default
/// parameters. `None` means the property is not applicable or not claimed.
/// Real-kind properties on a complex entry refer to its realified form.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Flags {
    /// `F(x, λu) = |λ|·F(x, u)` for all real λ ≠ 0.
    pub absolutely_homogeneous_real: Option<bool>,
    /// `F(x, λu) = λ·F(x, u)` for all real λ > 0.
    pub positively_homogeneous_real: Option<bool>,
    /// `F(z, λv) = |λ|·F(z, v)` for all complex λ ≠ 0.
    pub homogeneous_complex: Option<bool>,
    /// The real fundamental tensor `½·(F²)_uu` is positive definite.
    pub strongly_convex: Option<bool>,
    /// The complex fundamental tensor `(F²)_{v v̄}` is positive definite.
    pub strongly_pseudoconvex: Option<bool>,
    pub projectively_flat_real: Option<bool>,
    pub dually_flat_real: Option<bool>,
    pub complex_projectively_flat: Option<bool>,
    pub complex_dually_flat: Option<bool>,
}

/// A catalog entry: everything needed to describe and build one metric.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ZooEntry {
    pub name: &'static str,
    pub kind: Kind,
    pub summary: &'static str,
    pub default_dim: usize,
    pub params: &'static [ParamSpec],
    /// An equivalent expression-language rendering, when one exists.
    pub dsl: Option<&'static str>,
    pub flags: Flags,
}

const NO_PARAMS: &[ParamSpec] = &[];

const SCALED_PARAMS: &[ParamSpec] = &[ParamSpec {
    name: "c",
    default: 0.1,
    doc: "slope of the conformal factor 1 + c·x₁",
}];

const HERMITIAN_PARAMS: &[ParamSpec] = &[
    ParamSpec {
        name: "h1",
        default: 1.0,
        doc: "diagonal entry H₁₁ (> 0)",
    },
    ParamSpec {
        name: "h2",
        default: 1.0,
        doc: "diagonal entry H₂₂ (> 0, used when dim ≥ 2)",
    },
    ParamSpec {
        name: "h3",
        default: 1.0,
        doc: "diagonal entry H₃₃ (> 0, used when dim ≥ 3)",
    },
    ParamSpec {
        name: "h4",
        default: 1.0,
        doc: "diagonal entry H₄₄ (> 0, used when dim ≥ 4)",
    },
    ParamSpec {
        name: "off_re",
        default: 0.0,
        doc: "real part of the coupling H₁₂ (requires dim ≥ 2)",
    },
    ParamSpec {
        name: "off_im",
        default: 0.0,
        doc: "imaginary part of the coupling H₁₂ (requires dim ≥ 2)",
    },
];

const MINKOWSKI_PARAMS: &[ParamSpec] = &[ParamSpec {
    name: "eps",
    default: 0.1,
    doc: "strength of the quartic deviation from the Hermitian norm (|eps| ≤ 0.2)",
}];

const PERTURBED_PARAMS: &[ParamSpec] = &[ParamSpec {
    name: "t",
    default: 0.2,
    doc: "strength of the base-point dependence (|t| ≤ 0.5)",
}];

const HERMITIAN_Z_PARAMS: &[ParamSpec] = &[ParamSpec {
    name: "c",
    default: 0.3,
    doc: "exponent slope of the conformal factor exp(c·Re z₁)",
}];

const ZOO: &[ZooEntry] = &[
    ZooEntry {
        name: "euclidean-real",
        kind: Kind::Real,
        summary: "F = ‖u‖: the flat reference norm on R^m",
        default_dim: 2,
        params: NO_PARAMS,
        dsl: Some("sqrt(normsq(u))"),
        flags: Flags {
            absolutely_homogeneous_real: Some(true),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: None,
            strongly_convex: Some(true),
            strongly_pseudoconvex: None,
            projectively_flat_real: Some(true),
            dually_flat_real: Some(true),
            complex_projectively_flat: None,
            complex_dually_flat: None,
        },
    },
    ZooEntry {
        name: "scaled-euclidean-real",
        kind: Kind::Real,
        summary: "F = (1 + c·x₁)·‖u‖: a conformal rescaling that breaks both flatness properties",
        default_dim: 2,
        params: SCALED_PARAMS,
        dsl: Some("(1 + c*x_1) * sqrt(normsq(u))"),
        flags: Flags {
            absolutely_homogeneous_real: Some(true),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: None,
            strongly_convex: Some(true),
            strongly_pseudoconvex: None,
            projectively_flat_real: Some(false),
            dually_flat_real: Some(false),
            complex_projectively_flat: None,
            complex_dually_flat: None,
        },
    },
    ZooEntry {
        name: "funk-real",
        kind: Kind::Real,
        summary: "the Funk metric of the unit ball: projectively flat and dually flat, \
                  but only positively homogeneous",
        default_dim: 2,
        params: NO_PARAMS,
        dsl: Some(
            "(sqrt((1 - normsq(x))*normsq(u) + herm(x,u)^2) + herm(x,u)) / (1 - normsq(x))",
        ),
        flags: Flags {
            absolutely_homogeneous_real: Some(false),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: None,
            strongly_convex: Some(true),
            strongly_pseudoconvex: None,
            projectively_flat_real: Some(true),
            dually_flat_real: Some(true),
            complex_projectively_flat: None,
            complex_dually_flat: None,
        },
    },
    ZooEntry {
        name: "funk-complex-form",
        kind: Kind::Complex,
        summary: "the Funk formula read with complex coordinates and Re⟨z,v⟩: \
                  fails complex homogeneity, kept as a counterexample",
        default_dim: 2,
        params: NO_PARAMS,
        dsl: Some(
            "(sqrt((1 - normsq(z))*normsq(v) + re(herm(z,v))^2) + re(herm(z,v))) / (1 - normsq(z))",
        ),
        flags: Flags {
            absolutely_homogeneous_real: Some(false),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: Some(false),
            strongly_convex: None,
            strongly_pseudoconvex: None,
            projectively_flat_real: None,
            dually_flat_real: None,
            complex_projectively_flat: None,
            complex_dually_flat: None,
        },
    },
    ZooEntry {
        name: "complex-euclidean",
        kind: Kind::Complex,
        summary: "F = ‖v‖ on C^n: the flat complex reference norm",
        default_dim: 2,
        params: NO_PARAMS,
        dsl: Some("sqrt(normsq(v))"),
        flags: Flags {
            absolutely_homogeneous_real: Some(true),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: Some(true),
            strongly_convex: Some(true),
            strongly_pseudoconvex: Some(true),
            projectively_flat_real: Some(true),
            dually_flat_real: Some(true),
            complex_projectively_flat: Some(true),
            complex_dually_flat: Some(true),
        },
    },
    ZooEntry {
        name: "complex-hermitian-const",
        kind: Kind::Complex,
        summary: "F² = v†Hv for a constant positive Hermitian H: flat in every sense",
        default_dim: 2,
        params: HERMITIAN_PARAMS,
        dsl: None,
        flags: Flags {
            absolutely_homogeneous_real: Some(true),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: Some(true),
            strongly_convex: Some(true),
            strongly_pseudoconvex: Some(true),
            projectively_flat_real: Some(true),
            dually_flat_real: Some(true),
            complex_projectively_flat: Some(true),
            complex_dually_flat: Some(true),
        },
    },
    ZooEntry {
        name: "complex-minkowski-phi",
        kind: Kind::Complex,
        summary: "F² = ‖v‖² + ε·|v₁|⁴/‖v‖²: z-independent but not Hermitian quadratic",
        default_dim: 2,
        params: MINKOWSKI_PARAMS,
        dsl: Some("sqrt(normsq(v) + eps*(v_1*conj(v_1))^2/normsq(v))"),
        flags: Flags {
            absolutely_homogeneous_real: Some(true),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: Some(true),
            strongly_convex: Some(true),
            strongly_pseudoconvex: Some(true),
            projectively_flat_real: Some(true),
            dually_flat_real: Some(true),
            complex_projectively_flat: Some(true),
            complex_dually_flat: Some(true),
        },
    },
    ZooEntry {
        name: "perturbed-family",
        kind: Kind::Complex,
        summary: "F² = (1 + t·Re z₁)·‖v‖²: the defect from flatness scales linearly in t",
        default_dim: 2,
        params: PERTURBED_PARAMS,
        dsl: Some("sqrt((1 + t*re(z_1)) * normsq(v))"),
        flags: Flags {
            absolutely_homogeneous_real: Some(true),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: Some(true),
            strongly_convex: Some(true),
            strongly_pseudoconvex: Some(true),
            projectively_flat_real: Some(false),
            dually_flat_real: Some(false),
            complex_projectively_flat: Some(false),
            complex_dually_flat: Some(false),
        },
    },
    ZooEntry {
        name: "hermitian-z-dependent",
        kind: Kind::Complex,
        summary: "F² = exp(c·Re z₁)·‖v‖²: Hermitian at every point, yet not flat",
        default_dim: 2,
        params: HERMITIAN_Z_PARAMS,
        dsl: None,
        flags: Flags {
            absolutely_homogeneous_real: Some(true),
            positively_homogeneous_real: Some(true),
            homogeneous_complex: Some(true),
            strongly_convex: Some(true),
            strongly_pseudoconvex: Some(true),
            projectively_flat_real: Some(false),
            dually_flat_real: Some(false),
            complex_projectively_flat: Some(false),
            complex_dually_flat: Some(false),
        },
    },
];

/// All catalog entries, in presentation order.
pub fn zoo() -> &'static [ZooEntry] {
    ZOO
}

/// Look up a catalog entry by name.
pub fn find(name: &str) -> Option<&'static ZooEntry> {
    ZOO.iter().find(|e| e.name == name)
}

fn resolve_params(
    entry: &ZooEntry,
    overrides: &[(String, f64)],
) -> Result<BTreeMap<String, f64>> {
    let mut map: BTreeMap<String, f64> = entry
        .params
        .iter()
        .map(|p| (p.name.to_string(), p.default))
        .collect();
    for (name, value) in overrides {
        if !map.contains_key(name.as_str()) {
            return Err(Error::InvalidParameter(format!(
                "metric '{}' has no parameter '{name}'; available: {}",
                entry.name,
                if entry.params.is_empty() {
                    "(none)".to_string()
                } else {
                    entry
                        .params
                        .iter()
                        .map(|p| p.name)
                        .collect::<Vec<_>>()
                        .join(", ")
                }
            )));
        }
        if !value.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "parameter '{name}' must be finite, got {value}"
            )));
        }
        map.insert(name.clone(), *value);
    }
    Ok(map)
}

fn validated_body<T: Real>(
    entry: &ZooEntry,
    dim: usize,
    params: &BTreeMap<String, f64>,
) -> Result<(Body<T>, Domain)> {
    let get = |name: &str| -> f64 { *params.get(name).expect("resolved parameter") };
    match entry.name {
        "euclidean-real" => Ok((Body::EuclideanReal, Domain::All)),
        "scaled-euclidean-real" => {
            let c = get("c");
            Ok((
                Body::ScaledEuclideanReal { c: real::<T>(c) },
                Domain::AffineHalfSpace {
                    coord: 0,
                    coeff: c,
                    floor: 0.1,
                },
            ))
        }
        "funk-real" => Ok((
            Body::FunkReal,
            Domain::Ball {
                radius: 1.0,
                margin: 1e-6,
            },
        )),
        "funk-complex-form" => Ok((
            Body::FunkComplexForm,
            Domain::Ball {
                radius: 1.0,
                margin: 1e-6,
            },
        )),
        "complex-euclidean" => Ok((Body::ComplexEuclidean, Domain::All)),
        "complex-hermitian-const" => {
            let diag: Vec<T> = (1..=dim)
                .map(|k| {
                    let h = get(&format!("h{k}"));
                    if h <= 0.0 {
                        Err(Error::InvalidParameter(format!(
                            "diagonal entry h{k} must be positive, got {h}"
                        )))
                    } else {
                        Ok(real::<T>(h))
                    }
                })
                .collect::<Result<_>>()?;
            let off_re = get("off_re");
            let off_im = get("off_im");
            if dim < 2 && (off_re != 0.0 || off_im != 0.0) {
                return Err(Error::InvalidParameter(
                    "the off-diagonal coupling requires dimension at least 2".to_string(),
                ));
            }
            if dim >= 2 {
                // Positive definiteness of the leading 2×2 block:
                // h1·h2 − |H₁₂|² > 0 (the rest of H is diagonal).
                let h1 = get("h1");
                let h2 = get("h2");
                if off_re * off_re + off_im * off_im >= h1 * h2 {
                    return Err(Error::InvalidParameter(format!(
                        "|off|² = {} must be smaller than h1·h2 = {} for H to stay positive",
                        off_re * off_re + off_im * off_im,
                        h1 * h2
                    )));
                }
            }
            Ok((
                Body::ComplexHermitianConst {
                    diag,
                    off: (real::<T>(off_re), real::<T>(off_im)),
                },
                Domain::All,
            ))
        }
        "complex-minkowski-phi" => {
            let eps = get("eps");
            if eps.abs() > 0.2 {
                return Err(Error::InvalidParameter(format!(
                    "eps must satisfy |eps| ≤ 0.2 to keep the metric strongly pseudoconvex, got {eps}"
                )));
            }
            Ok((
                Body::ComplexMinkowskiPhi {
                    eps: real::<T>(eps),
                },
                Domain::All,
            ))
        }
        "perturbed-family" => {
            let t = get("t");
            if t.abs() > 0.5 {
                return Err(Error::InvalidParameter(format!(
                    "t must satisfy |t| ≤ 0.5 to keep the conformal factor positive on the \
                     working region, got {t}"
                )));
            }
            Ok((
                Body::PerturbedFamily { t: real::<T>(t) },
                Domain::AffineHalfSpace {
                    coord: 0,
                    coeff: t,
                    floor: 0.05,
                },
            ))
        }
        "hermitian-z-dependent" => {
            let c = get("c");
            if c.abs() > 2.0 {
                return Err(Error::InvalidParameter(format!(
                    "c must satisfy |c| ≤ 2 to keep the conformal factor well scaled, got {c}"
                )));
            }
            Ok((
                Body::HermitianZDependent { c: real::<T>(c) },
                Domain::All,
            ))
        }
        other => Err(Error::UnknownMetric(other.to_string())),
    }
}

/// Build a catalog metric with optional dimension and parameter overrides.
pub fn build<T: Real>(
    name: &str,
    dim: Option<usize>,
    overrides: &[(String, f64)],
) -> Result<MetricField<T>> {
    build_with_opts(name, dim, overrides, false)
}

/// As [`build`], but optionally raising the dimension caps.
pub fn build_with_opts<T: Real>(
    name: &str,
    dim: Option<usize>,
    overrides: &[(String, f64)],
    raise_dim_cap: bool,
) -> Result<MetricField<T>> {
    let entry = find(name).ok_or_else(|| Error::UnknownMetric(name.to_string()))?;
    let dim = dim.unwrap_or(entry.default_dim);
    check_dim(entry.kind, dim, raise_dim_cap)?;
    if entry.name == "complex-hermitian-const" && dim > 4 {
        return Err(Error::Usage(
            "complex-hermitian-const supports dimension at most 4".to_string(),
        ));
    }
    let params = resolve_params(entry, overrides)?;
    let (body, domain) = validated_body::<T>(entry, dim, &params)?;
    Ok(MetricField::from_parts(
        entry.name, entry.kind, dim, params, body, domain,
    ))
}

/// Build the expression-language twin of a catalog metric: the same formula
/// routed through the parser and generic evaluator, with the same domain.
/// Returns `Ok(None)` for entries without a rendering.
pub fn build_dsl_twin<T: Real>(
    name: &str,
    dim: Option<usize>,
    overrides: &[(String, f64)],
) -> Result<Option<MetricField<T>>> {
    let entry = find(name).ok_or_else(|| Error::UnknownMetric(name.to_string()))?;
    let Some(source) = entry.dsl else {
        return Ok(None);
    };
    // Build the builtin first: it validates parameters and fixes the domain.
    let builtin = build::<T>(name, dim, overrides)?;
    let params: Vec<(String, f64)> = builtin
        .params()
        .iter()
        .map(|(k, v)| (k.clone(), *v))
        .collect();
    let twin = MetricField::from_expr_source(
        format!("{name}(expr)"),
        source,
        entry.kind,
        builtin.dim(),
        &params,
        true,
    )?;
    // Carry the builtin's domain over so both sides are compared on the
    // same region.
    Ok(Some(MetricField::from_parts(
        twin.name().to_string(),
        entry.kind,
        builtin.dim(),
        builtin.params().clone(),
        match twin.body {
            Body::Expr { expr, params } => Body::Expr { expr, params },
            _ => unreachable!("from_expr_source always builds an expression body"),
        },
        builtin.domain(),
    )))
}
