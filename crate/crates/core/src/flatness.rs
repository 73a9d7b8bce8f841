//! Flatness characterizations as computable residuals.
//!
//! A real metric is projectively flat exactly when the Hamel residual
//! `R_a = Σ_b F_{x^b u^a}·u^b − F_{x^a}` vanishes, and dually flat exactly
//! when `D_a = Σ_b (F²)_{x^b u^a}·u^b − 2·(F²)_{x^a}` vanishes. The complex
//! counterparts replace coordinate derivatives by Wirtinger derivatives:
//! `P_i = Σ_j F_{z^j v^i}·v^j + Σ_j F_{z̄^j v^i}·v̄^j − F_{z^i}` and
//! `Q_i = Σ_j (F²)_{z^j v^i}·v^j + Σ_j (F²)_{z̄^j v^i}·v̄^j − 2·(F²)_{z^i}`.
//!
//! For complex-homogeneous metrics, either flatness condition forces every
//! `z`-derivative to vanish, i.e. the metric is complex Minkowski. The
//! [`proof_chain`] report evaluates each intermediate identity of that
//! derivation as an independent residual, and [`rigidity_scan`] turns the
//! sampled maxima into a MINKOWSKI / NON-FLAT classification.

use serde::Serialize;

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::jet::{complex_jet2, real_jet2, ComplexJet2, RealJet2};
use crate::metric::{Kind, MetricField};
use crate::sample::{complex_samples, ComplexTangentSample, RealTangentSample, SampleSpec};
use crate::scalar::{real, Real};

/// Absolute homogeneity residual above which a metric is excluded from
/// rigidity classification (the theorem's hypotheses are not met).
pub const HOMOGENEITY_PROBE_TOL: f64 = 1e-6;

/// Number of samples used by the homogeneity pre-probe of a rigidity scan.
const HOMOGENEITY_PROBE_COUNT: usize = 25;

/// A residual vector with real components and its reporting scale.
#[derive(Clone, Debug)]
pub struct RealResidual<T: Real> {
    pub components: Vec<T>,
    /// `1 + F + max magnitude across the jet blocks used`, making relative
    /// norms robust to the overall size of the metric.
    pub scale: T,
}

impl<T: Real> RealResidual<T> {
    pub fn max_abs(&self) -> T {
        self.components
            .iter()
            .fold(T::zero(), |acc, &c| acc.max(c.abs()))
    }

    pub fn max_rel(&self) -> T {
        self.max_abs() / self.scale
    }
}

/// A residual vector with complex components and its reporting scale.
#[derive(Clone, Debug)]
pub struct ComplexResidual<T: Real> {
    pub components: Vec<Cx<T>>,
    pub scale: T,
}

impl<T: Real> ComplexResidual<T> {
    pub fn max_abs(&self) -> T {
        self.components
            .iter()
            .fold(T::zero(), |acc, c| acc.max(c.modulus()))
    }

    pub fn max_rel(&self) -> T {
        self.max_abs() / self.scale
    }
}

fn block_max_r<T: Real>(vec: &[T], mat: &[Vec<T>]) -> T {
    let v = vec.iter().fold(T::zero(), |acc, &c| acc.max(c.abs()));
    mat.iter()
        .flatten()
        .fold(v, |acc, &c| acc.max(c.abs()))
}

fn block_max_c<T: Real>(vec: &[Cx<T>], mats: &[&[Vec<Cx<T>>]]) -> T {
    let mut m = vec.iter().fold(T::zero(), |acc, c| acc.max(c.modulus()));
    for mat in mats {
        m = mat.iter().flatten().fold(m, |acc, c| acc.max(c.modulus()));
    }
    m
}

/// Hamel residual `R_a = Σ_b F_{x^b u^a}·u^b − F_{x^a}` from a real jet.
pub fn hamel_residual<T: Real>(jet: &RealJet2<T>, u: &[T]) -> RealResidual<T> {
    let m = jet.m;
    let mut components = Vec::with_capacity(m);
    for a in 0..m {
        let mut acc = T::zero();
        for (b, &ub) in u.iter().enumerate() {
            acc = acc + jet.f_xu[a][b] * ub;
        }
        components.push(acc - jet.f_x[a]);
    }
    let scale = T::one() + jet.f + block_max_r(&jet.f_x, &jet.f_xu);
    RealResidual { components, scale }
}

/// Dual-flatness residual `D_a = Σ_b (F²)_{x^b u^a}·u^b − 2·(F²)_{x^a}`.
pub fn dualflat_residual<T: Real>(jet: &RealJet2<T>, u: &[T]) -> RealResidual<T> {
    let m = jet.m;
    let two = real::<T>(2.0);
    let mut components = Vec::with_capacity(m);
    for a in 0..m {
        let mut acc = T::zero();
        for (b, &ub) in u.iter().enumerate() {
            acc = acc + jet.f2_xu[a][b] * ub;
        }
        components.push(acc - two * jet.f2_x[a]);
    }
    let scale = T::one() + jet.f2 + block_max_r(&jet.f2_x, &jet.f2_xu);
    RealResidual { components, scale }
}

/// Complex projective-flatness residual
/// `P_i = Σ_j F_{z^j v^i}·v^j + Σ_j F_{z̄^j v^i}·v̄^j − F_{z^i}`.
pub fn complex_pf_residual<T: Real>(jet: &ComplexJet2<T>, v: &[Cx<T>]) -> ComplexResidual<T> {
    let n = jet.n;
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Cx::<T>::zero();
        for (j, &vj) in v.iter().enumerate() {
            acc = acc + jet.f_zv[i][j] * vj + jet.f_zbv[i][j] * vj.conj();
        }
        components.push(acc - jet.f_z[i]);
    }
    let scale = T::one()
        + jet.f
        + block_max_c(&jet.f_z, &[&jet.f_zv, &jet.f_zbv]);
    ComplexResidual { components, scale }
}

/// Complex dual-flatness residual
/// `Q_i = Σ_j (F²)_{z^j v^i}·v^j + Σ_j (F²)_{z̄^j v^i}·v̄^j − 2·(F²)_{z^i}`.
pub fn complex_df_residual<T: Real>(jet: &ComplexJet2<T>, v: &[Cx<T>]) -> ComplexResidual<T> {
    let n = jet.n;
    let two = real::<T>(2.0);
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Cx::<T>::zero();
        for (j, &vj) in v.iter().enumerate() {
            acc = acc + jet.f2_zv[i][j] * vj + jet.f2_zbv[i][j] * vj.conj();
        }
        components.push(acc - jet.f2_z[i] * two);
    }
    let scale = T::one()
        + jet.f2
        + block_max_c(&jet.f2_z, &[&jet.f2_zv, &jet.f2_zbv]);
    ComplexResidual { components, scale }
}

/// Hamel residual of a real metric at a sample.
pub fn hamel_residual_at<T: Real>(
    metric: &MetricField<T>,
    s: &RealTangentSample<T>,
) -> Result<RealResidual<T>> {
    let jet = real_jet2(metric, &s.x, &s.u)?;
    Ok(hamel_residual(&jet, &s.u))
}

/// Dual-flatness residual of a real metric at a sample.
pub fn dualflat_residual_at<T: Real>(
    metric: &MetricField<T>,
    s: &RealTangentSample<T>,
) -> Result<RealResidual<T>> {
    let jet = real_jet2(metric, &s.x, &s.u)?;
    Ok(dualflat_residual(&jet, &s.u))
}

/// Complex projective-flatness residual of a complex metric at a sample.
pub fn complex_pf_residual_at<T: Real>(
    metric: &MetricField<T>,
    s: &ComplexTangentSample<T>,
) -> Result<ComplexResidual<T>> {
    let jet = complex_jet2(metric, &s.z, &s.v)?;
    Ok(complex_pf_residual(&jet, &s.v))
}

/// Complex dual-flatness residual of a complex metric at a sample.
pub fn complex_df_residual_at<T: Real>(
    metric: &MetricField<T>,
    s: &ComplexTangentSample<T>,
) -> Result<ComplexResidual<T>> {
    let jet = complex_jet2(metric, &s.z, &s.v)?;
    Ok(complex_df_residual(&jet, &s.v))
}

/// Each intermediate identity in the derivation "flat ⟹ z-independent",
/// evaluated as an independent nonnegative residual. The first six entries
/// belong to the chain for `F`, the rest to the chain for `F²`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProofChainReport {
    /// `|Σ_i F_{z^i}·v^i − Σ_i F_{z̄^i}·v̄^i|`: the radial derivative along
    /// `v` equals its own conjugate.
    pub radial_contraction: f64,
    /// `max_i |F_{z^i} + Σ_j F_{z^j v^i}·v^j − Σ_j F_{z̄^j v^i}·v̄^j|`: the
    /// tangent derivative of the radial identity.
    pub differentiated_radial: f64,
    /// `max_i |Σ_j F_{z^j v^i}·v^j|`: the holomorphic mixed block
    /// contracted with the tangent vanishes.
    pub holomorphic_contraction: f64,
    /// `|Σ_j F_{z^j}·v^j|`: the radial derivative itself vanishes.
    pub radial_z: f64,
    /// `max_i |Σ_j F_{z̄^j v^i}·v̄^j|`: the conjugate mixed block
    /// contracted with the conjugate tangent vanishes.
    pub conjugate_mixed: f64,
    /// `max_i |F_{z^i}|`: the final conclusion — no base dependence.
    pub z_gradient: f64,
    /// `|Σ_i (F²)_{z^i}·v^i − Σ_i (F²)_{z̄^i}·v̄^i|`.
    pub radial_contraction_sq: f64,
    /// `max_i |(F²)_{z^i} + Σ_j (F²)_{z^j v^i}·v^j − Σ_j (F²)_{z̄^j v^i}·v̄^j|`.
    pub differentiated_radial_sq: f64,
    /// `max_i |Σ_j (F²)_{z̄^j v^i}·v̄^j − 3·Σ_j (F²)_{z^j v^i}·v^j|`: the
    /// three-to-one relation between the conjugate and holomorphic blocks.
    pub three_to_one_mixed: f64,
    /// `|Σ_j (F²)_{z̄^j}·v̄^j − 3·Σ_j (F²)_{z^j}·v^j|`.
    pub three_to_one_radial: f64,
    /// `|Σ_j (F²)_{z^j}·v^j − 3·Σ_j (F²)_{z̄^j}·v̄^j|`: the same relation
    /// with the two sides exchanged; together they force both to vanish.
    pub three_to_one_radial_rev: f64,
    /// `max(|Σ_j (F²)_{z^j}·v^j|, |Σ_j (F²)_{z̄^j}·v̄^j|)`.
    pub radial_z_sq: f64,
    /// `max_i |Σ_j (F²)_{z̄^j v^i}·v̄^j|`.
    pub conjugate_mixed_sq: f64,
    /// `max_i |(F²)_{z^i}|`: no base dependence of the squared metric.
    pub z_gradient_sq: f64,
}

impl ProofChainReport {
    /// All entries in declaration order, paired with their field names.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("radial_contraction", self.radial_contraction),
            ("differentiated_radial", self.differentiated_radial),
            ("holomorphic_contraction", self.holomorphic_contraction),
            ("radial_z", self.radial_z),
            ("conjugate_mixed", self.conjugate_mixed),
            ("z_gradient", self.z_gradient),
            ("radial_contraction_sq", self.radial_contraction_sq),
            ("differentiated_radial_sq", self.differentiated_radial_sq),
            ("three_to_one_mixed", self.three_to_one_mixed),
            ("three_to_one_radial", self.three_to_one_radial),
            ("three_to_one_radial_rev", self.three_to_one_radial_rev),
            ("radial_z_sq", self.radial_z_sq),
            ("conjugate_mixed_sq", self.conjugate_mixed_sq),
            ("z_gradient_sq", self.z_gradient_sq),
        ]
    }

    pub fn max_entry(&self) -> f64 {
        self.entries()
            .into_iter()
            .fold(0.0, |acc, (_, v)| acc.max(v))
    }
}

fn to64<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Evaluate the proof-chain identities at one sample.
pub fn proof_chain<T: Real>(jet: &ComplexJet2<T>, v: &[Cx<T>]) -> ProofChainReport {
    let n = jet.n;
    let three = real::<T>(3.0);

    // Radial derivatives along v for F and F².
    let mut r_f = Cx::<T>::zero();
    let mut rb_f = Cx::<T>::zero();
    let mut r_f2 = Cx::<T>::zero();
    let mut rb_f2 = Cx::<T>::zero();
    for (j, &vj) in v.iter().enumerate() {
        r_f = r_f + jet.f_z[j] * vj;
        rb_f = rb_f + jet.f_zbar(j) * vj.conj();
        r_f2 = r_f2 + jet.f2_z[j] * vj;
        rb_f2 = rb_f2 + jet.f2_zbar(j) * vj.conj();
    }

    let mut differentiated = T::zero();
    let mut holo = T::zero();
    let mut conj_mixed = T::zero();
    let mut differentiated_sq = T::zero();
    let mut three_mixed = T::zero();
    let mut conj_mixed_sq = T::zero();
    let mut zg = T::zero();
    let mut zg_sq = T::zero();
    for i in 0..n {
        let mut hv = Cx::<T>::zero();
        let mut cv = Cx::<T>::zero();
        let mut hv2 = Cx::<T>::zero();
        let mut cv2 = Cx::<T>::zero();
        for (j, &vj) in v.iter().enumerate() {
            hv = hv + jet.f_zv[i][j] * vj;
            cv = cv + jet.f_zbv[i][j] * vj.conj();
            hv2 = hv2 + jet.f2_zv[i][j] * vj;
            cv2 = cv2 + jet.f2_zbv[i][j] * vj.conj();
        }
        differentiated = differentiated.max((jet.f_z[i] + hv - cv).modulus());
        holo = holo.max(hv.modulus());
        conj_mixed = conj_mixed.max(cv.modulus());
        differentiated_sq = differentiated_sq.max((jet.f2_z[i] + hv2 - cv2).modulus());
        three_mixed = three_mixed.max((cv2 - hv2 * three).modulus());
        conj_mixed_sq = conj_mixed_sq.max(cv2.modulus());
        zg = zg.max(jet.f_z[i].modulus());
        zg_sq = zg_sq.max(jet.f2_z[i].modulus());
    }

    ProofChainReport {
        radial_contraction: to64((r_f - rb_f).modulus()),
        differentiated_radial: to64(differentiated),
        holomorphic_contraction: to64(holo),
        radial_z: to64(r_f.modulus()),
        conjugate_mixed: to64(conj_mixed),
        z_gradient: to64(zg),
        radial_contraction_sq: to64((r_f2 - rb_f2).modulus()),
        differentiated_radial_sq: to64(differentiated_sq),
        three_to_one_mixed: to64(three_mixed),
        three_to_one_radial: to64((rb_f2 - r_f2 * three).modulus()),
        three_to_one_radial_rev: to64((r_f2 - rb_f2 * three).modulus()),
        radial_z_sq: to64(r_f2.modulus().max(rb_f2.modulus())),
        conjugate_mixed_sq: to64(conj_mixed_sq),
        z_gradient_sq: to64(zg_sq),
    }
}

/// Evaluate the proof chain for a complex metric at a sample.
pub fn proof_chain_at<T: Real>(
    metric: &MetricField<T>,
    s: &ComplexTangentSample<T>,
) -> Result<ProofChainReport> {
    let jet = complex_jet2(metric, &s.z, &s.v)?;
    Ok(proof_chain(&jet, &s.v))
}

/// `max_i |F_{z^i}|` and `max_i |(F²)_{z^i}|` with their relative versions.
pub struct ZGradientNorms {
    pub f_abs: f64,
    pub f_rel: f64,
    pub f2_abs: f64,
    pub f2_rel: f64,
}

pub fn z_gradient_norms<T: Real>(jet: &ComplexJet2<T>) -> ZGradientNorms {
    let mut zg = T::zero();
    let mut zg_sq = T::zero();
    for i in 0..jet.n {
        zg = zg.max(jet.f_z[i].modulus());
        zg_sq = zg_sq.max(jet.f2_z[i].modulus());
    }
    let f_abs = to64(zg);
    let f2_abs = to64(zg_sq);
    ZGradientNorms {
        f_abs,
        f_rel: f_abs / (1.0 + to64(jet.f) + f_abs),
        f2_abs,
        f2_rel: f2_abs / (1.0 + to64(jet.f2) + f2_abs),
    }
}

/// Relative residual of the contraction identity
/// `Σ_i v^i·P_i = ½·(Σ_j F_{z^j}·v^j + Σ_j F_{z̄^j}·v̄^j) − Σ_i F_{z^i}·v^i`,
/// which homogeneity forces for every complex-homogeneous metric
/// regardless of flatness.
pub fn pf_contraction_identity_rel<T: Real>(jet: &ComplexJet2<T>, v: &[Cx<T>]) -> f64 {
    let p = complex_pf_residual(jet, v);
    let mut lhs = Cx::<T>::zero();
    for (i, &vi) in v.iter().enumerate() {
        lhs = lhs + p.components[i] * vi;
    }
    let mut r = Cx::<T>::zero();
    let mut rb = Cx::<T>::zero();
    for (j, &vj) in v.iter().enumerate() {
        r = r + jet.f_z[j] * vj;
        rb = rb + jet.f_zbar(j) * vj.conj();
    }
    let half = real::<T>(0.5);
    let rhs = (r + rb) * half - r;
    let num = to64((lhs - rhs).modulus());
    let den = 1.0 + to64(lhs.modulus()).max(to64(rhs.modulus()));
    num / den
}

/// Three-way verdict for one flatness characterization over a scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlatVerdict {
    #[serde(rename = "FLAT")]
    Flat,
    #[serde(rename = "NON-FLAT")]
    NonFlat,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

/// Outcome of a rigidity scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Both flatness residuals and both z-gradients vanish to tolerance:
    /// the metric is (numerically) complex Minkowski.
    #[serde(rename = "MINKOWSKI")]
    Minkowski,
    /// Both flatness residuals are decisively nonzero.
    #[serde(rename = "NON-FLAT")]
    NonFlat,
    /// The two flatness verdicts, or the flatness verdicts and the
    /// z-gradient, contradict the rigidity theorem — this should never
    /// happen and would indicate a defect in the computation.
    #[serde(rename = "THEOREM-VIOLATION")]
    TheoremViolation,
    /// Residuals fall in the gap between the flat and non-flat tolerances.
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    /// The metric fails complex homogeneity, so the theorem's hypotheses
    /// are not met and no classification is attempted.
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl Classification {
    /// Canonical uppercase label, identical to the serialized form.
    pub fn label(self) -> &'static str {
        match self {
            Classification::Minkowski => "MINKOWSKI",
            Classification::NonFlat => "NON-FLAT",
            Classification::TheoremViolation => "THEOREM-VIOLATION",
            Classification::Inconclusive => "INCONCLUSIVE",
            Classification::Skipped => "SKIPPED",
        }
    }
}

/// Sampled maxima and classification produced by [`rigidity_scan`].
#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub metric: String,
    pub samples_used: usize,
    /// Samples where the jet computation failed (recorded, not fatal).
    pub failures: usize,
    pub max_pf_abs: f64,
    pub max_pf_rel: f64,
    pub max_df_abs: f64,
    pub max_df_rel: f64,
    pub max_zgrad_f_abs: f64,
    pub max_zgrad_f_rel: f64,
    pub max_zgrad_f2_abs: f64,
    pub max_zgrad_f2_rel: f64,
    pub pf_verdict: FlatVerdict,
    pub df_verdict: FlatVerdict,
    pub classification: Classification,
    /// Max absolute complex-homogeneity residual over the pre-probe.
    pub homogeneity_max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
}

/// Three-way verdict from a relative residual norm.
pub fn flat_verdict(rel: f64, tol_flat: f64, tol_nonflat: f64) -> FlatVerdict {
    if rel <= tol_flat {
        FlatVerdict::Flat
    } else if rel >= tol_nonflat {
        FlatVerdict::NonFlat
    } else {
        FlatVerdict::Inconclusive
    }
}

/// Combine the two flatness verdicts and the relative z-gradient maximum
/// into a rigidity classification.
pub fn classify(
    pf: FlatVerdict,
    df: FlatVerdict,
    zg_rel: f64,
    tol_flat: f64,
    tol_nonflat: f64,
) -> Classification {
    let zg_small = zg_rel <= tol_flat;
    let zg_large = zg_rel >= tol_nonflat;
    use FlatVerdict as V;
    match (pf, df) {
        (V::Flat, V::Flat) if zg_small => Classification::Minkowski,
        (V::Flat, V::Flat) if zg_large => Classification::TheoremViolation,
        (V::Flat, V::Flat) => Classification::Inconclusive,
        (V::NonFlat, V::NonFlat) if zg_small => Classification::TheoremViolation,
        (V::NonFlat, V::NonFlat) => Classification::NonFlat,
        (V::Flat, V::NonFlat) | (V::NonFlat, V::Flat) => Classification::TheoremViolation,
        _ => Classification::Inconclusive,
    }
}

/// Scan a complex metric over seeded samples, report the maxima of the
/// complex flatness residuals and the z-gradients, and classify the metric
/// per the rigidity theorem. Metrics failing the complex-homogeneity
/// pre-probe are reported as SKIPPED rather than classified.
pub fn rigidity_scan<T: Real>(
    metric: &MetricField<T>,
    spec: &SampleSpec,
    tol_flat: f64,
    tol_nonflat: f64,
) -> Result<ScanSummary> {
    if metric.kind() != Kind::Complex {
        return Err(Error::Usage(format!(
            "metric '{}' is real; the rigidity scan requires a complex metric",
            metric.name()
        )));
    }

    // Homogeneity pre-probe: the theorem assumes complex homogeneity.
    let probe_spec = SampleSpec {
        seed: spec.seed,
        count: spec.count.min(HOMOGENEITY_PROBE_COUNT),
        base: spec.base,
    };
    let lambdas = crate::axioms::complex_lambdas::<T>();
    let mut homog_max = 0.0f64;
    for s in complex_samples::<T>(&probe_spec, metric.dim()) {
        let r = crate::axioms::complex_homogeneity_residual(metric, &s, &lambdas)?;
        homog_max = homog_max.max(to64(r));
    }

    let mut summary = ScanSummary {
        metric: metric.name().to_string(),
        samples_used: 0,
        failures: 0,
        max_pf_abs: 0.0,
        max_pf_rel: 0.0,
        max_df_abs: 0.0,
        max_df_rel: 0.0,
        max_zgrad_f_abs: 0.0,
        max_zgrad_f_rel: 0.0,
        max_zgrad_f2_abs: 0.0,
        max_zgrad_f2_rel: 0.0,
        pf_verdict: FlatVerdict::Inconclusive,
        df_verdict: FlatVerdict::Inconclusive,
        classification: Classification::Skipped,
        homogeneity_max_residual: homog_max,
        skip_reason: None,
    };

    if homog_max > HOMOGENEITY_PROBE_TOL {
        summary.skip_reason = Some(format!(
            "complex homogeneity fails (max residual {homog_max:.3e} > {HOMOGENEITY_PROBE_TOL:.0e}); \
             the rigidity theorem does not apply"
        ));
        return Ok(summary);
    }

    for s in complex_samples::<T>(spec, metric.dim()) {
        let jet = match complex_jet2(metric, &s.z, &s.v) {
            Ok(j) => j,
            Err(Error::Numerics(_)) | Err(Error::Domain(_)) => {
                summary.failures += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        summary.samples_used += 1;
        let p = complex_pf_residual(&jet, &s.v);
        let q = complex_df_residual(&jet, &s.v);
        let zg = z_gradient_norms(&jet);
        summary.max_pf_abs = summary.max_pf_abs.max(to64(p.max_abs()));
        summary.max_pf_rel = summary.max_pf_rel.max(to64(p.max_rel()));
        summary.max_df_abs = summary.max_df_abs.max(to64(q.max_abs()));
        summary.max_df_rel = summary.max_df_rel.max(to64(q.max_rel()));
        summary.max_zgrad_f_abs = summary.max_zgrad_f_abs.max(zg.f_abs);
        summary.max_zgrad_f_rel = summary.max_zgrad_f_rel.max(zg.f_rel);
        summary.max_zgrad_f2_abs = summary.max_zgrad_f2_abs.max(zg.f2_abs);
        summary.max_zgrad_f2_rel = summary.max_zgrad_f2_rel.max(zg.f2_rel);
    }

    if summary.samples_used == 0 {
        return Err(Error::Numerics(format!(
            "no usable samples in the rigidity scan of '{}'",
            metric.name()
        )));
    }

    summary.pf_verdict = flat_verdict(summary.max_pf_rel, tol_flat, tol_nonflat);
    summary.df_verdict = flat_verdict(summary.max_df_rel, tol_flat, tol_nonflat);
    let zg_rel = summary.max_zgrad_f_rel.max(summary.max_zgrad_f2_rel);
    summary.classification = classify(
        summary.pf_verdict,
        summary.df_verdict,
        zg_rel,
        tol_flat,
        tol_nonflat,
    );
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn cx(re: f64, im: f64) -> Cx<f64> {
        Cx::from_f64(re, im)
    }

    #[test]
    fn euclidean_real_residuals_vanish() {
        let m = zoo::build::<f64>("euclidean-real", None, &[]).unwrap();
        let s = RealTangentSample {
            x: vec![0.4, -0.7],
            u: vec![0.3, 1.1],
        };
        let r = hamel_residual_at(&m, &s).unwrap();
        let d = dualflat_residual_at(&m, &s).unwrap();
        assert!(r.max_abs() <= 1e-14);
        assert!(d.max_abs() <= 1e-14);
    }

    #[test]
    fn scaled_euclidean_hand_values() {
        let m = zoo::build::<f64>("scaled-euclidean-real", None, &[]).unwrap();
        let s = RealTangentSample {
            x: vec![0.0, 0.0],
            u: vec![0.0, 1.0],
        };
        // F = (1 + 0.1·x¹)|u|: the mixed term vanishes at this sample and
        // F_{x¹} = 0.1, so R = (−0.1, 0).
        let r = hamel_residual_at(&m, &s).unwrap();
        assert!((r.components[0] + 0.1).abs() < 1e-12, "{:?}", r.components);
        assert!(r.components[1].abs() < 1e-12);
        // F² = (1 + 0.1·x¹)²|u|²: (F²)_{x¹} = 0.2 here and the mixed
        // contraction vanishes, so D₁ = −2·0.2 = −0.4.
        let d = dualflat_residual_at(&m, &s).unwrap();
        assert!((d.components[0] + 0.4).abs() < 1e-12, "{:?}", d.components);
        assert!(d.components[1].abs() < 1e-12);
    }

    #[test]
    fn funk_real_is_projectively_and_dually_flat() {
        let m = zoo::build::<f64>("funk-real", None, &[]).unwrap();
        let s = RealTangentSample {
            x: vec![0.3, 0.2],
            u: vec![0.7, -0.4],
        };
        let r = hamel_residual_at(&m, &s).unwrap();
        let d = dualflat_residual_at(&m, &s).unwrap();
        assert!(r.max_abs() <= 1e-12, "hamel {:?}", r.max_abs());
        assert!(d.max_abs() <= 1e-12, "dualflat {:?}", d.max_abs());
    }

    #[test]
    fn complex_euclidean_is_flat_with_empty_proof_chain() {
        let m = zoo::build::<f64>("complex-euclidean", None, &[]).unwrap();
        let s = ComplexTangentSample {
            z: vec![cx(0.3, -0.2), cx(0.0, 0.5)],
            v: vec![cx(1.0, 0.25), cx(-0.4, 0.6)],
        };
        let p = complex_pf_residual_at(&m, &s).unwrap();
        let q = complex_df_residual_at(&m, &s).unwrap();
        assert!(p.max_abs() <= 1e-14);
        assert!(q.max_abs() <= 1e-14);
        let chain = proof_chain_at(&m, &s).unwrap();
        assert!(chain.max_entry() <= 1e-14, "{chain:?}");
    }

    #[test]
    fn perturbed_family_hand_values() {
        let m = zoo::build::<f64>("perturbed-family", None, &[]).unwrap();
        let s = ComplexTangentSample {
            z: vec![cx(0.0, 0.0), cx(0.0, 0.0)],
            v: vec![cx(0.0, 0.0), cx(1.0, 0.0)],
        };
        // F² = (1 + t·Re z¹)·‖v‖² with t = 0.2: at z = 0, v = (0,1) the
        // mixed contractions cancel to −t/4 in P₁ and −t in Q₁.
        let p = complex_pf_residual_at(&m, &s).unwrap();
        assert!((p.components[0].re + 0.05).abs() < 1e-10, "{:?}", p.components);
        assert!(p.components[0].im.abs() < 1e-10);
        assert!(p.components[1].modulus() < 1e-10);
        let q = complex_df_residual_at(&m, &s).unwrap();
        assert!((q.components[0].re + 0.2).abs() < 1e-10, "{:?}", q.components);
        assert!(q.components[0].im.abs() < 1e-10);
        assert!(q.components[1].modulus() < 1e-10);
        // Proof chain at the same sample: the radial contraction for F²
        // vanishes (v¹ = 0) while the z-gradient of F² is t/2 = 0.1.
        let chain = proof_chain_at(&m, &s).unwrap();
        assert!(chain.radial_z_sq < 1e-10, "{chain:?}");
        assert!((chain.z_gradient_sq - 0.1).abs() < 1e-10, "{chain:?}");
    }

    #[test]
    fn hermitian_z_dependent_dual_residual() {
        let m = zoo::build::<f64>("hermitian-z-dependent", None, &[]).unwrap();
        let s = ComplexTangentSample {
            z: vec![cx(0.0, 0.0), cx(0.0, 0.0)],
            v: vec![cx(0.0, 0.0), cx(1.0, 0.0)],
        };
        // F² = e^{0.3·Re z¹}·‖v‖²: (F²)_{z¹} = 0.15 at z = 0 and the mixed
        // contractions vanish at v = (0,1), so Q₁ = −0.3.
        let q = complex_df_residual_at(&m, &s).unwrap();
        assert!((q.components[0].re + 0.3).abs() < 1e-10, "{:?}", q.components);
        assert!(q.components[0].modulus() > 0.29);
    }

    #[test]
    fn dual_residual_scales_linearly_in_t() {
        for &t in &[0.05, 0.1, 0.2] {
            let m =
                zoo::build::<f64>("perturbed-family", None, &[("t".to_string(), t)]).unwrap();
            let s = ComplexTangentSample {
                z: vec![cx(0.0, 0.0), cx(0.0, 0.0)],
                v: vec![cx(0.0, 0.0), cx(1.0, 0.0)],
            };
            let q = complex_df_residual_at(&m, &s).unwrap();
            let norm = q.max_abs();
            assert!(
                (norm - t).abs() / t <= 0.05,
                "t = {t}: dual-flat residual norm {norm}"
            );
        }
    }

    #[test]
    fn rigidity_scan_classifies_minkowski() {
        let m = zoo::build::<f64>("complex-minkowski-phi", None, &[]).unwrap();
        let spec = m.default_sample_spec(7, 200);
        let s = rigidity_scan(&m, &spec, 1e-8, 1e-4).unwrap();
        assert_eq!(s.classification, Classification::Minkowski, "{s:?}");
        assert!(s.max_pf_abs <= 1e-9, "{s:?}");
        assert!(s.max_df_abs <= 1e-9);
        assert!(s.max_zgrad_f_abs <= 1e-9);
        assert!(s.max_zgrad_f2_abs <= 1e-9);
        assert_eq!(s.failures, 0);
    }

    #[test]
    fn rigidity_scan_classifies_perturbed_family_nonflat() {
        let m = zoo::build::<f64>("perturbed-family", None, &[]).unwrap();
        let spec = m.default_sample_spec(7, 200);
        let s = rigidity_scan(&m, &spec, 1e-8, 1e-4).unwrap();
        assert_eq!(s.classification, Classification::NonFlat, "{s:?}");
        assert!(s.max_pf_abs > 1e-2, "{s:?}");
        assert!(s.max_df_abs > 1e-2);
        assert!(s.max_zgrad_f2_abs > 1e-2);
        assert_eq!(s.pf_verdict, s.df_verdict);
    }

    #[test]
    fn rigidity_scan_skips_inhomogeneous_metric() {
        let m = zoo::build::<f64>("funk-complex-form", None, &[]).unwrap();
        let spec = m.default_sample_spec(7, 50);
        let s = rigidity_scan(&m, &spec, 1e-8, 1e-4).unwrap();
        assert_eq!(s.classification, Classification::Skipped);
        assert!(s.skip_reason.is_some());
        assert!(s.homogeneity_max_residual > 1e-3, "{s:?}");
    }

    #[test]
    fn contraction_identity_holds_for_homogeneous_metrics() {
        for name in [
            "complex-euclidean",
            "complex-minkowski-phi",
            "perturbed-family",
            "hermitian-z-dependent",
        ] {
            let m = zoo::build::<f64>(name, None, &[]).unwrap();
            let spec = m.default_sample_spec(23, 40);
            for s in complex_samples::<f64>(&spec, m.dim()) {
                let jet = complex_jet2(&m, &s.z, &s.v).unwrap();
                let r = pf_contraction_identity_rel(&jet, &s.v);
                assert!(r <= 1e-9, "{name}: contraction identity residual {r}");
            }
        }
    }
}
