//! Check orchestration and serializable reports.
//!
//! A check report runs every applicable axiom and flatness check for one
//! metric over a seeded sample set and records, per check, the maximum
//! absolute and relative residuals together with a verdict. Reports
//! serialize with stable field order and contain no wall-clock data, so a
//! repeated invocation is byte-identical.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::axioms::{
    complex_homogeneity_residual, complex_lambdas, fundamental_tensors_from_jet,
    real_homogeneity_residual, real_lambdas_absolute, real_lambdas_positive,
};
use crate::error::{Error, Result};
use crate::flatness::{
    classify, complex_df_residual, complex_pf_residual, dualflat_residual, flat_verdict,
    hamel_residual, z_gradient_norms, Classification, FlatVerdict, ScanSummary,
};
use crate::jet::{assemble_complex, fd_real_jet2, jet_discrepancy, real_jet2, FdOptions};
use crate::metric::{Kind, MetricField};
use crate::sample::{complex_samples, real_samples, SampleSpec};
use crate::scalar::Real;

/// Tolerances used by checks and classification.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    /// Homogeneity residual bound (absolute).
    pub homog: f64,
    /// Positive-definiteness margin for fundamental tensors.
    pub posdef: f64,
    /// Relative residual bound below which a metric counts as flat.
    pub flat: f64,
    /// Relative residual bound above which a metric counts as non-flat.
    pub nonflat: f64,
    /// Relative discrepancy bound for the finite-difference cross-check.
    pub fd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            homog: 1e-9,
            posdef: 1e-12,
            flat: 1e-8,
            nonflat: 1e-4,
            fd: 1e-5,
        }
    }
}

/// Verdict of one check row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// Reported for information only; never affects the exit code.
    #[serde(rename = "INFO")]
    Info,
    /// Not applicable; the note explains why.
    #[serde(rename = "SKIPPED")]
    Skipped,
    /// The value falls between the pass and fail thresholds.
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Verdict {
    /// Canonical uppercase label, identical to the serialized form.
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
            Verdict::Skipped => "SKIPPED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// One named check with its residual maxima and verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub max_abs: f64,
    pub max_rel: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Full per-metric check report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub version: String,
    pub metric: String,
    pub params: BTreeMap<String, f64>,
    pub kind: Kind,
    pub dim: usize,
    pub sample_spec: SampleSpec,
    pub samples_used: usize,
    pub sample_failures: usize,
    pub rows: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
}

impl CheckReport {
    /// True when no row carries a FAIL or INCONCLUSIVE verdict.
    pub fn all_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.verdict, Verdict::Pass | Verdict::Info | Verdict::Skipped))
    }
}

/// Options for [`run_check`].
#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Cross-check the automatic derivatives against finite differences
    /// and add an `ad-vs-fd` row.
    pub fd_check: bool,
    pub fd: FdOptions,
}

/// Parameter sweep entry: one parameter assignment and its scan summary.
#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub params: BTreeMap<String, f64>,
    pub summary: ScanSummary,
}

/// Rigidity report over one metric or a parameter sweep.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub version: String,
    pub metric: String,
    pub kind: Kind,
    pub dim: usize,
    pub sample_spec: SampleSpec,
    pub tol_flat: f64,
    pub tol_nonflat: f64,
    pub entries: Vec<SweepEntry>,
}

impl RigidityReport {
    /// True when no entry ends INCONCLUSIVE or THEOREM-VIOLATION.
    pub fn all_classified(&self) -> bool {
        self.entries.iter().all(|e| {
            matches!(
                e.summary.classification,
                Classification::Minkowski | Classification::NonFlat | Classification::Skipped
            )
        })
    }
}

pub(crate) fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

struct Accum {
    max_abs: f64,
    max_rel: f64,
}

impl Accum {
    fn new() -> Self {
        Accum {
            max_abs: 0.0,
            max_rel: 0.0,
        }
    }
    fn push(&mut self, abs: f64, rel: f64) {
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
    }
    fn pass_fail(&self, tol: f64, on_abs: bool) -> Verdict {
        let v = if on_abs { self.max_abs } else { self.max_rel };
        if v <= tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

fn to64<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn skipped_row(name: &str, tolerance: f64, reason: &str) -> CheckRow {
    CheckRow {
        name: name.to_string(),
        max_abs: 0.0,
        max_rel: 0.0,
        tolerance,
        verdict: Verdict::Skipped,
        note: Some(reason.to_string()),
    }
}

fn three_way_row(name: &str, acc: &Accum, tol: &Tolerances) -> CheckRow {
    let verdict = match flat_verdict(acc.max_rel, tol.flat, tol.nonflat) {
        FlatVerdict::Flat => Verdict::Pass,
        FlatVerdict::NonFlat => Verdict::Fail,
        FlatVerdict::Inconclusive => Verdict::Inconclusive,
    };
    CheckRow {
        name: name.to_string(),
        max_abs: acc.max_abs,
        max_rel: acc.max_rel,
        tolerance: tol.flat,
        verdict,
        note: None,
    }
}

/// Run every applicable check for one metric and assemble the report.
pub fn run_check<T: Real>(
    metric: &MetricField<T>,
    spec: &SampleSpec,
    tol: &Tolerances,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    match metric.kind() {
        Kind::Real => run_check_real(metric, spec, tol, opts),
        Kind::Complex => run_check_complex(metric, spec, tol, opts),
    }
}

fn run_check_real<T: Real>(
    metric: &MetricField<T>,
    spec: &SampleSpec,
    tol: &Tolerances,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let m = metric.real_dim();
    let lam_pos = real_lambdas_positive::<T>();
    let lam_abs = real_lambdas_absolute::<T>();

    let mut used = 0usize;
    let mut failures = 0usize;
    let mut homog_pos = Accum::new();
    let mut homog_abs = Accum::new();
    let mut min_g = f64::INFINITY;
    let mut pf = Accum::new();
    let mut df = Accum::new();
    let mut fd = Accum::new();

    for s in real_samples::<T>(spec, m) {
        let step = (|| -> Result<()> {
            let f = metric.evaluate_real(&s)?;
            let scale = 1.0 + to64(f);
            let hp = to64(real_homogeneity_residual(metric, &s, &lam_pos)?);
            homog_pos.push(hp, hp / scale);
            let ha = to64(real_homogeneity_residual(metric, &s, &lam_abs)?);
            homog_abs.push(ha, ha / scale);

            let jet = real_jet2(metric, &s.x, &s.u)?;
            let tensors = fundamental_tensors_from_jet(metric, &jet)?;
            min_g = min_g.min(to64(tensors.g_min_eig));

            let r = hamel_residual(&jet, &s.u);
            pf.push(to64(r.max_abs()), to64(r.max_rel()));
            let d = dualflat_residual(&jet, &s.u);
            df.push(to64(d.max_abs()), to64(d.max_rel()));

            if opts.fd_check {
                let fd_jet = fd_real_jet2(metric, &s.x, &s.u, &opts.fd)?;
                let disc = jet_discrepancy(&jet, &fd_jet);
                fd.push(disc, disc);
            }
            Ok(())
        })();
        match step {
            Ok(()) => used += 1,
            Err(Error::Numerics(_)) | Err(Error::Domain(_)) | Err(Error::SingularMetric(_)) => {
                failures += 1;
            }
            Err(e) => return Err(e),
        }
    }
    if used == 0 {
        return Err(Error::Numerics(format!(
            "no usable samples while checking '{}'",
            metric.name()
        )));
    }

    let gate_ok = homog_pos.max_abs <= tol.homog;
    let mut rows = Vec::new();
    rows.push(CheckRow {
        name: "homogeneity-positive".to_string(),
        max_abs: homog_pos.max_abs,
        max_rel: homog_pos.max_rel,
        tolerance: tol.homog,
        verdict: homog_pos.pass_fail(tol.homog, true),
        note: None,
    });
    rows.push(CheckRow {
        name: "homogeneity-absolute".to_string(),
        max_abs: homog_abs.max_abs,
        max_rel: homog_abs.max_rel,
        tolerance: tol.homog,
        verdict: Verdict::Info,
        note: Some(
            "informational: positively homogeneous metrics may fail absolute homogeneity"
                .to_string(),
        ),
    });
    rows.push(CheckRow {
        name: "strong-convexity".to_string(),
        max_abs: min_g,
        max_rel: min_g,
        tolerance: tol.posdef,
        verdict: if min_g > tol.posdef {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        note: Some("value is the minimum eigenvalue of g across samples".to_string()),
    });
    if gate_ok {
        rows.push(three_way_row("projective-flatness", &pf, tol));
        rows.push(three_way_row("dual-flatness", &df, tol));
    } else {
        let reason = "positive homogeneity fails; the flatness characterizations assume it";
        rows.push(skipped_row("projective-flatness", tol.flat, reason));
        rows.push(skipped_row("dual-flatness", tol.flat, reason));
    }
    if opts.fd_check {
        rows.push(CheckRow {
            name: "ad-vs-fd".to_string(),
            max_abs: fd.max_abs,
            max_rel: fd.max_rel,
            tolerance: tol.fd,
            verdict: fd.pass_fail(tol.fd, false),
            note: None,
        });
    }

    Ok(CheckReport {
        version: tool_version(),
        metric: metric.name().to_string(),
        params: metric.params().clone(),
        kind: metric.kind(),
        dim: metric.dim(),
        sample_spec: *spec,
        samples_used: used,
        sample_failures: failures,
        rows,
        classification: None,
    })
}

fn run_check_complex<T: Real>(
    metric: &MetricField<T>,
    spec: &SampleSpec,
    tol: &Tolerances,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let n = metric.dim();
    let lambdas = complex_lambdas::<T>();

    let mut used = 0usize;
    let mut failures = 0usize;
    let mut homog = Accum::new();
    let mut min_g = f64::INFINITY;
    let mut min_gg = f64::INFINITY;
    let mut implication_ok = true;
    let mut pf = Accum::new();
    let mut df = Accum::new();
    let mut zg = Accum::new();
    let mut fd = Accum::new();

    for s in complex_samples::<T>(spec, n) {
        let step = (|| -> Result<()> {
            let f = metric.evaluate_complex(&s)?;
            let scale = 1.0 + to64(f);
            let h = to64(complex_homogeneity_residual(metric, &s, &lambdas)?);
            homog.push(h, h / scale);

            let x = s.packed_base();
            let u = s.packed_tangent();
            let jet = real_jet2(metric, &x, &u)?;
            let tensors = fundamental_tensors_from_jet(metric, &jet)?;
            let ge = to64(tensors.g_min_eig);
            let be = to64(tensors.big_g_min_eig.expect("complex metric has G"));
            min_g = min_g.min(ge);
            min_gg = min_gg.min(be);
            if ge > tol.posdef && be <= tol.posdef {
                implication_ok = false;
            }

            let cjet = assemble_complex(n, &jet)?;
            let p = complex_pf_residual(&cjet, &s.v);
            pf.push(to64(p.max_abs()), to64(p.max_rel()));
            let q = complex_df_residual(&cjet, &s.v);
            df.push(to64(q.max_abs()), to64(q.max_rel()));
            let zn = z_gradient_norms(&cjet);
            zg.push(
                zn.f_abs.max(zn.f2_abs),
                zn.f_rel.max(zn.f2_rel),
            );

            if opts.fd_check {
                let fd_jet = fd_real_jet2(metric, &x, &u, &opts.fd)?;
                let disc = jet_discrepancy(&jet, &fd_jet);
                fd.push(disc, disc);
            }
            Ok(())
        })();
        match step {
            Ok(()) => used += 1,
            Err(Error::Numerics(_)) | Err(Error::Domain(_)) | Err(Error::SingularMetric(_)) => {
                failures += 1;
            }
            Err(e) => return Err(e),
        }
    }
    if used == 0 {
        return Err(Error::Numerics(format!(
            "no usable samples while checking '{}'",
            metric.name()
        )));
    }

    let gate_ok = homog.max_abs <= tol.homog;
    let mut rows = Vec::new();
    rows.push(CheckRow {
        name: "homogeneity-complex".to_string(),
        max_abs: homog.max_abs,
        max_rel: homog.max_rel,
        tolerance: tol.homog,
        verdict: homog.pass_fail(tol.homog, true),
        note: None,
    });
    rows.push(CheckRow {
        name: "strong-pseudoconvexity".to_string(),
        max_abs: min_gg,
        max_rel: min_gg,
        tolerance: tol.posdef,
        verdict: if min_gg > tol.posdef {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        note: Some("value is the minimum eigenvalue of G across samples".to_string()),
    });
    rows.push(CheckRow {
        name: "strong-convexity-realified".to_string(),
        max_abs: min_g,
        max_rel: min_g,
        tolerance: tol.posdef,
        verdict: if min_g > tol.posdef && implication_ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        note: Some(
            "value is the minimum eigenvalue of g of the real form across samples".to_string(),
        ),
    });

    let classification;
    if gate_ok {
        rows.push(three_way_row("complex-projective-flatness", &pf, tol));
        rows.push(three_way_row("complex-dual-flatness", &df, tol));
        let pf_v = flat_verdict(pf.max_rel, tol.flat, tol.nonflat);
        let df_v = flat_verdict(df.max_rel, tol.flat, tol.nonflat);
        let agreement = match (pf_v, df_v) {
            (a, b) if a == b && a != FlatVerdict::Inconclusive => Verdict::Pass,
            (FlatVerdict::Flat, FlatVerdict::NonFlat)
            | (FlatVerdict::NonFlat, FlatVerdict::Flat) => Verdict::Fail,
            _ => Verdict::Inconclusive,
        };
        rows.push(CheckRow {
            name: "projective-dual-agreement".to_string(),
            max_abs: (pf.max_rel - df.max_rel).abs(),
            max_rel: (pf.max_rel - df.max_rel).abs(),
            tolerance: 0.0,
            verdict: agreement,
            note: Some(
                "the two flatness characterizations must reach the same verdict".to_string(),
            ),
        });
        classification = Some(classify(pf_v, df_v, zg.max_rel, tol.flat, tol.nonflat));
    } else {
        let reason = "complex homogeneity fails; the flatness characterizations assume it";
        rows.push(skipped_row("complex-projective-flatness", tol.flat, reason));
        rows.push(skipped_row("complex-dual-flatness", tol.flat, reason));
        rows.push(skipped_row("projective-dual-agreement", 0.0, reason));
        classification = Some(Classification::Skipped);
    }
    if opts.fd_check {
        rows.push(CheckRow {
            name: "ad-vs-fd".to_string(),
            max_abs: fd.max_abs,
            max_rel: fd.max_rel,
            tolerance: tol.fd,
            verdict: fd.pass_fail(tol.fd, false),
            note: None,
        });
    }

    Ok(CheckReport {
        version: tool_version(),
        metric: metric.name().to_string(),
        params: metric.params().clone(),
        kind: metric.kind(),
        dim: metric.dim(),
        sample_spec: *spec,
        samples_used: used,
        sample_failures: failures,
        rows,
        classification,
    })
}

fn fmt_sci(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.3e}")
    }
}

/// Plain-text rendering of a check report.
pub fn render_check_text(report: &CheckReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "metric {} (kind {}, dim {}), seed {}, samples {} ({} used, {} failed)\n",
        report.metric,
        match report.kind {
            Kind::Real => "real",
            Kind::Complex => "complex",
        },
        report.dim,
        report.sample_spec.seed,
        report.sample_spec.count,
        report.samples_used,
        report.sample_failures,
    ));
    if !report.params.is_empty() {
        let params: Vec<String> = report
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.push_str(&format!("params: {}\n", params.join(", ")));
    }
    out.push_str(&format!(
        "{:<32} {:>12} {:>12} {:>10} {}\n",
        "check", "max-abs", "max-rel", "tol", "verdict"
    ));
    for row in &report.rows {
        out.push_str(&format!(
            "{:<32} {:>12} {:>12} {:>10} {}\n",
            row.name,
            fmt_sci(row.max_abs),
            fmt_sci(row.max_rel),
            fmt_sci(row.tolerance),
            row.verdict.label(),
        ));
        if let Some(note) = &row.note {
            out.push_str(&format!("  note: {note}\n"));
        }
    }
    if let Some(c) = report.classification {
        out.push_str(&format!("classification: {}\n", c.label()));
    }
    out
}

/// Plain-text rendering of a rigidity report.
pub fn render_rigidity_text(report: &RigidityReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "rigidity scan of {} (dim {}), seed {}, samples {}\n",
        report.metric, report.dim, report.sample_spec.seed, report.sample_spec.count
    ));
    out.push_str(&format!(
        "{:<24} {:>12} {:>12} {:>12} {:>12} {}\n",
        "params", "max-pf-rel", "max-df-rel", "zgrad-F", "zgrad-F²", "classification"
    ));
    for e in &report.entries {
        let params: Vec<String> = e
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let label = if params.is_empty() {
            "(defaults)".to_string()
        } else {
            params.join(",")
        };
        out.push_str(&format!(
            "{:<24} {:>12} {:>12} {:>12} {:>12} {}\n",
            label,
            fmt_sci(e.summary.max_pf_rel),
            fmt_sci(e.summary.max_df_rel),
            fmt_sci(e.summary.max_zgrad_f_abs),
            fmt_sci(e.summary.max_zgrad_f2_abs),
            e.summary.classification.label(),
        ));
        if let Some(reason) = &e.summary.skip_reason {
            out.push_str(&format!("  reason: {reason}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn names(report: &CheckReport) -> Vec<&str> {
        report.rows.iter().map(|r| r.name.as_str()).collect()
    }

    #[test]
    fn funk_real_check_passes() {
        let m = zoo::build::<f64>("funk-real", None, &[]).unwrap();
        let spec = m.default_sample_spec(7, 50);
        let r = run_check(&m, &spec, &Tolerances::default(), &CheckOptions::default()).unwrap();
        assert!(r.all_pass(), "{r:#?}");
        assert_eq!(
            names(&r),
            vec![
                "homogeneity-positive",
                "homogeneity-absolute",
                "strong-convexity",
                "projective-flatness",
                "dual-flatness"
            ]
        );
        // The absolute-homogeneity row is informational and nonzero here.
        assert_eq!(r.rows[1].verdict, Verdict::Info);
        assert!(r.rows[1].max_abs > 1e-3);
        assert!(r.classification.is_none());
        assert_eq!(r.sample_failures, 0);
    }

    #[test]
    fn scaled_euclidean_check_fails_flatness() {
        let m = zoo::build::<f64>("scaled-euclidean-real", None, &[]).unwrap();
        let spec = m.default_sample_spec(7, 50);
        let r = run_check(&m, &spec, &Tolerances::default(), &CheckOptions::default()).unwrap();
        assert!(!r.all_pass());
        let pf = r.rows.iter().find(|x| x.name == "projective-flatness").unwrap();
        let df = r.rows.iter().find(|x| x.name == "dual-flatness").unwrap();
        assert_eq!(pf.verdict, Verdict::Fail);
        assert_eq!(df.verdict, Verdict::Fail);
    }

    #[test]
    fn complex_euclidean_check_is_minkowski() {
        let m = zoo::build::<f64>("complex-euclidean", None, &[]).unwrap();
        let spec = m.default_sample_spec(1, 100);
        let r = run_check(&m, &spec, &Tolerances::default(), &CheckOptions::default()).unwrap();
        assert!(r.all_pass(), "{r:#?}");
        assert_eq!(r.classification, Some(Classification::Minkowski));
        assert_eq!(
            names(&r),
            vec![
                "homogeneity-complex",
                "strong-pseudoconvexity",
                "strong-convexity-realified",
                "complex-projective-flatness",
                "complex-dual-flatness",
                "projective-dual-agreement"
            ]
        );
    }

    #[test]
    fn funk_complex_form_check_skips_flatness() {
        let m = zoo::build::<f64>("funk-complex-form", None, &[]).unwrap();
        let spec = m.default_sample_spec(3, 40);
        let r = run_check(&m, &spec, &Tolerances::default(), &CheckOptions::default()).unwrap();
        assert_eq!(r.classification, Some(Classification::Skipped));
        let homog = r.rows.iter().find(|x| x.name == "homogeneity-complex").unwrap();
        assert_eq!(homog.verdict, Verdict::Fail);
        for name in [
            "complex-projective-flatness",
            "complex-dual-flatness",
            "projective-dual-agreement",
        ] {
            let row = r.rows.iter().find(|x| x.name == name).unwrap();
            assert_eq!(row.verdict, Verdict::Skipped, "{name}");
            assert!(row.note.is_some());
        }
    }

    #[test]
    fn hermitian_z_check_fails_with_agreeing_verdicts() {
        let m = zoo::build::<f64>("hermitian-z-dependent", None, &[]).unwrap();
        let spec = m.default_sample_spec(5, 60);
        let r = run_check(&m, &spec, &Tolerances::default(), &CheckOptions::default()).unwrap();
        assert_eq!(r.classification, Some(Classification::NonFlat));
        let agree = r
            .rows
            .iter()
            .find(|x| x.name == "projective-dual-agreement")
            .unwrap();
        assert_eq!(agree.verdict, Verdict::Pass);
    }

    #[test]
    fn fd_check_row_appears_and_passes() {
        let m = zoo::build::<f64>("perturbed-family", None, &[]).unwrap();
        let spec = m.default_sample_spec(9, 10);
        let opts = CheckOptions {
            fd_check: true,
            fd: FdOptions::default(),
        };
        let r = run_check(&m, &spec, &Tolerances::default(), &opts).unwrap();
        let fd = r.rows.iter().find(|x| x.name == "ad-vs-fd").unwrap();
        assert_eq!(fd.verdict, Verdict::Pass, "{fd:?}");
        assert!(fd.max_rel <= 1e-5);
    }

    #[test]
    fn report_serialization_is_stable() {
        let m = zoo::build::<f64>("complex-minkowski-phi", None, &[]).unwrap();
        let spec = m.default_sample_spec(2, 20);
        let tol = Tolerances::default();
        let opts = CheckOptions::default();
        let a = serde_json::to_string_pretty(&run_check(&m, &spec, &tol, &opts).unwrap()).unwrap();
        let b = serde_json::to_string_pretty(&run_check(&m, &spec, &tol, &opts).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"classification\": \"MINKOWSKI\""), "{a}");
    }
}
