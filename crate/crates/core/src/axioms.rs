//! Definitional axiom checks: homogeneity of the metric in the tangent
//! variable (real, positive-real, and complex versions), strong convexity
//! (positive definiteness of the real fundamental tensor), strong
//! pseudoconvexity (positive definiteness of the complex fundamental
//! tensor), and the Euler identities that homogeneity forces on the jets.

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::jet::{assemble_complex, real_jet2, ComplexJet2, RealJet2};
use crate::linalg::{
    asymmetry, hermitian_min_eigenvalue, non_hermitian, symmetric_min_eigenvalue,
};
use crate::metric::{Kind, MetricField};
use crate::sample::{complex_samples, real_samples, ComplexTangentSample, RealTangentSample, SampleSpec};
use crate::scalar::{real, Real};

/// Positive scaling factors for the positive-homogeneity check.
pub fn real_lambdas_positive<T: Real>() -> Vec<T> {
    vec![real::<T>(2.0), real::<T>(0.5)]
}

/// Scaling factors for the absolute-homogeneity check (`F(x, λu) = |λ|F`),
/// including a sign flip.
pub fn real_lambdas_absolute<T: Real>() -> Vec<T> {
    vec![real::<T>(2.0), real::<T>(-1.0), real::<T>(0.5)]
}

/// Scaling factors for the complex-homogeneity check: the real set plus
/// three genuinely complex values (a quarter rotation, an eighth rotation,
/// and a rotation with modulus 2).
pub fn complex_lambdas<T: Real>() -> Vec<Cx<T>> {
    vec![
        Cx::from_f64(2.0, 0.0),
        Cx::from_f64(-1.0, 0.0),
        Cx::from_f64(0.5, 0.0),
        Cx::from_f64(0.0, 1.0),
        // e^{iπ/4}
        Cx::from_f64(0.7071067811865476, 0.7071067811865475),
        // 2e^{2i}
        Cx::from_f64(-0.8322936730942848, 1.8185948536513634),
    ]
}

/// `max over λ of |F(x, λu) − |λ|·F(x, u)|` for a real metric.
pub fn real_homogeneity_residual<T: Real>(
    metric: &MetricField<T>,
    s: &RealTangentSample<T>,
    lambdas: &[T],
) -> Result<T> {
    let base = metric.evaluate_real(s)?;
    let mut worst = T::zero();
    for &lam in lambdas {
        if lam == T::zero() {
            return Err(Error::Usage(
                "homogeneity scaling factors must be nonzero".to_string(),
            ));
        }
        let scaled = RealTangentSample {
            x: s.x.clone(),
            u: s.u.iter().map(|&c| lam * c).collect(),
        };
        let f = metric.evaluate_real(&scaled)?;
        let r = (f - lam.abs() * base).abs();
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

/// `max over λ of |F(z, λv) − |λ|·F(z, v)|` for a complex metric.
pub fn complex_homogeneity_residual<T: Real>(
    metric: &MetricField<T>,
    s: &ComplexTangentSample<T>,
    lambdas: &[Cx<T>],
) -> Result<T> {
    let base = metric.evaluate_complex(s)?;
    let mut worst = T::zero();
    for &lam in lambdas {
        let modulus = lam.modulus();
        if modulus == T::zero() {
            return Err(Error::Usage(
                "homogeneity scaling factors must be nonzero".to_string(),
            ));
        }
        let scaled = ComplexTangentSample {
            z: s.z.clone(),
            v: s.v.iter().map(|&c| c * lam).collect(),
        };
        let f = metric.evaluate_complex(&scaled)?;
        let r = (f - modulus * base).abs();
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

/// The real and (for complex metrics) complex fundamental tensors at one
/// sample, with their smallest eigenvalues and symmetry defects.
#[derive(Clone, Debug)]
pub struct FundamentalTensors<T: Real> {
    /// `g_ab = ½·∂²F²/∂u^a∂u^b` in the (packed) real coordinates.
    pub g: Vec<Vec<T>>,
    pub g_min_eig: T,
    pub g_asymmetry: T,
    /// `G_{αβ̄} = ∂²F²/∂v^α∂v̄^β`; only for complex metrics.
    pub big_g: Option<Vec<Vec<Cx<T>>>>,
    pub big_g_min_eig: Option<T>,
    pub big_g_non_hermitian: Option<T>,
}

/// Compute the fundamental tensors at a packed-real sample. For complex
/// metrics both `g` (of the real form) and `G` are produced from one jet.
pub fn fundamental_tensors<T: Real>(
    metric: &MetricField<T>,
    x_packed: &[T],
    u_packed: &[T],
) -> Result<FundamentalTensors<T>> {
    let jet = real_jet2(metric, x_packed, u_packed)?;
    fundamental_tensors_from_jet(metric, &jet)
}

/// As [`fundamental_tensors`], reusing an already computed jet.
pub fn fundamental_tensors_from_jet<T: Real>(
    metric: &MetricField<T>,
    jet: &RealJet2<T>,
) -> Result<FundamentalTensors<T>> {
    let g = jet.fundamental_tensor();
    let g_asym = asymmetry(&g);
    let g_scale = g
        .iter()
        .flatten()
        .fold(T::zero(), |acc, &v| acc.max(v.abs()));
    if g_asym > real::<T>(1e-10) * (T::one() + g_scale) {
        return Err(Error::Numerics(format!(
            "real fundamental tensor of '{}' failed the symmetry check (defect {:?})",
            metric.name(),
            g_asym.to_f64()
        )));
    }
    let g_min = symmetric_min_eigenvalue(&g);

    let (big_g, big_g_min, big_g_defect) = if metric.kind() == Kind::Complex {
        let cjet = assemble_complex(metric.dim(), jet)?;
        let gg = cjet.f2_vvb.clone();
        let defect = non_hermitian(&gg);
        let gg_scale = gg
            .iter()
            .flatten()
            .fold(T::zero(), |acc, v| acc.max(v.modulus()));
        if defect > real::<T>(1e-10) * (T::one() + gg_scale) {
            return Err(Error::Numerics(format!(
                "complex fundamental tensor of '{}' failed the Hermitian check (defect {:?})",
                metric.name(),
                defect.to_f64()
            )));
        }
        let min = hermitian_min_eigenvalue(&gg);
        (Some(gg), Some(min), Some(defect))
    } else {
        (None, None, None)
    };

    Ok(FundamentalTensors {
        g,
        g_min_eig: g_min,
        g_asymmetry: g_asym,
        big_g,
        big_g_min_eig: big_g_min,
        big_g_non_hermitian: big_g_defect,
    })
}

/// Sampled convexity verdicts for one metric.
#[derive(Clone, Debug)]
pub struct ConvexityScan {
    pub metric: String,
    pub samples_used: usize,
    /// Samples where the jet computation failed (recorded, not fatal).
    pub failures: usize,
    /// Minimum over samples of the smallest eigenvalue of `g`.
    pub min_g_eig: f64,
    /// Minimum over samples of the smallest eigenvalue of `G`
    /// (complex metrics only).
    pub min_big_g_eig: Option<f64>,
    /// `g` positive definite (eigenvalue above tolerance) on every sample.
    pub strongly_convex: bool,
    /// `G` positive definite on every sample (complex metrics only).
    pub strongly_pseudoconvex: Option<bool>,
    /// Whether `min-eig(g) > 0 ⟹ min-eig(G) > 0` held at every sample
    /// (trivially true for real metrics).
    pub implication_holds: bool,
}

/// Sample the domain and report strong convexity (and, for complex
/// metrics, strong pseudoconvexity plus the convexity ⟹ pseudoconvexity
/// implication).
pub fn strong_convexity_scan<T: Real>(
    metric: &MetricField<T>,
    spec: &SampleSpec,
    tol_posdef: f64,
) -> Result<ConvexityScan> {
    let m = metric.real_dim();
    let samples = real_samples::<T>(spec, m);
    let is_complex = metric.kind() == Kind::Complex;
    let mut used = 0usize;
    let mut failures = 0usize;
    let mut min_g = f64::INFINITY;
    let mut min_gg = f64::INFINITY;
    let mut implication = true;
    for s in &samples {
        match fundamental_tensors(metric, &s.x, &s.u) {
            Ok(t) => {
                used += 1;
                let ge = t.g_min_eig.to_f64().unwrap_or(f64::NAN);
                min_g = min_g.min(ge);
                if let Some(be) = t.big_g_min_eig {
                    let be = be.to_f64().unwrap_or(f64::NAN);
                    min_gg = min_gg.min(be);
                    if ge > tol_posdef && be <= tol_posdef {
                        implication = false;
                    }
                }
            }
            Err(Error::Numerics(_)) | Err(Error::Domain(_)) => failures += 1,
            Err(e) => return Err(e),
        }
    }
    if used == 0 {
        return Err(Error::Numerics(format!(
            "no usable samples for the convexity scan of '{}'",
            metric.name()
        )));
    }
    Ok(ConvexityScan {
        metric: metric.name().to_string(),
        samples_used: used,
        failures,
        min_g_eig: min_g,
        min_big_g_eig: if is_complex { Some(min_gg) } else { None },
        strongly_convex: min_g > tol_posdef,
        strongly_pseudoconvex: if is_complex {
            Some(min_gg > tol_posdef)
        } else {
            None
        },
        implication_holds: implication,
    })
}

/// Sampled homogeneity residual maxima for one metric: the value is the
/// max over samples of the per-sample residual.
pub fn homogeneity_scan_real<T: Real>(
    metric: &MetricField<T>,
    spec: &SampleSpec,
    lambdas: &[T],
) -> Result<f64> {
    let samples = real_samples::<T>(spec, metric.real_dim());
    let mut worst = 0.0f64;
    for s in &samples {
        let r = real_homogeneity_residual(metric, s, lambdas)?;
        worst = worst.max(r.to_f64().unwrap_or(f64::NAN));
    }
    Ok(worst)
}

/// As [`homogeneity_scan_real`] for complex metrics and complex scalings.
pub fn homogeneity_scan_complex<T: Real>(
    metric: &MetricField<T>,
    spec: &SampleSpec,
    lambdas: &[Cx<T>],
) -> Result<f64> {
    if metric.kind() != Kind::Complex {
        return Err(Error::Usage(format!(
            "metric '{}' is real; complex homogeneity does not apply",
            metric.name()
        )));
    }
    let samples = complex_samples::<T>(spec, metric.dim());
    let mut worst = 0.0f64;
    for s in &samples {
        let r = complex_homogeneity_residual(metric, s, lambdas)?;
        worst = worst.max(r.to_f64().unwrap_or(f64::NAN));
    }
    Ok(worst)
}

fn rel_gap(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / (1.0 + lhs.abs().max(rhs.abs()))
}

/// Relative residual of the degree-one Euler identity
/// `Σ_a u^a·F_{u^a} = F`.
pub fn euler_degree1_rel<T: Real>(jet: &RealJet2<T>, u: &[T]) -> f64 {
    let mut acc = T::zero();
    for (a, &ua) in u.iter().enumerate() {
        acc = acc + ua * jet.f_u[a];
    }
    rel_gap(
        acc.to_f64().unwrap_or(f64::NAN),
        jet.f.to_f64().unwrap_or(f64::NAN),
    )
}

/// Relative residual of the degree-two Euler identity
/// `Σ_a u^a·(F²)_{u^a} = 2F²`.
pub fn euler_degree2_rel<T: Real>(jet: &RealJet2<T>, u: &[T]) -> f64 {
    let mut acc = T::zero();
    for (a, &ua) in u.iter().enumerate() {
        acc = acc + ua * jet.f2_u[a];
    }
    rel_gap(
        acc.to_f64().unwrap_or(f64::NAN),
        2.0 * jet.f2.to_f64().unwrap_or(f64::NAN),
    )
}

/// Relative residual of the complex tangent Euler identity
/// `Σ_i v^i·F_{v^i} = F/2`.
pub fn complex_euler_tangent_rel<T: Real>(jet: &ComplexJet2<T>, v: &[Cx<T>]) -> f64 {
    let mut acc = Cx::<T>::zero();
    for (i, &vi) in v.iter().enumerate() {
        acc = acc + jet.f_v[i] * vi;
    }
    let lhs = acc;
    let rhs = Cx::from_real(jet.f * real::<T>(0.5));
    let num = (lhs - rhs).modulus().to_f64().unwrap_or(f64::NAN);
    let den = 1.0
        + lhs
            .modulus()
            .to_f64()
            .unwrap_or(f64::NAN)
            .max(rhs.modulus().to_f64().unwrap_or(f64::NAN));
    num / den
}

/// Relative residual of the mixed complex Euler identity
/// `Σ_i v^i·F_{z^j v^i} = ½·F_{z^j}`, maximized over `j`.
pub fn complex_euler_mixed_rel<T: Real>(jet: &ComplexJet2<T>, v: &[Cx<T>]) -> f64 {
    let n = jet.n;
    let mut worst = 0.0f64;
    for j in 0..n {
        let mut acc = Cx::<T>::zero();
        for (i, &vi) in v.iter().enumerate() {
            acc = acc + jet.f_zv[i][j] * vi;
        }
        let rhs = jet.f_z[j] * real::<T>(0.5);
        let num = (acc - rhs).modulus().to_f64().unwrap_or(f64::NAN);
        let den = 1.0
            + acc
                .modulus()
                .to_f64()
                .unwrap_or(f64::NAN)
                .max(rhs.modulus().to_f64().unwrap_or(f64::NAN));
        worst = worst.max(num / den);
    }
    worst
}
