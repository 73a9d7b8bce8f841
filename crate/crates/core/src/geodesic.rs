//! Geodesics of real Finsler metrics and the "geodesics are straight
//! lines" criterion for projective flatness.
//!
//! The spray coefficients are the standard
//! `G^a = ¼·g^{ab}·(Σ_c (F²)_{x^c u^b}·u^c − (F²)_{x^b})` with
//! `g = ½·∂²F²/∂u∂u`, and geodesics solve `ẍ^a + 2·G^a(x, ẋ) = 0`.
//! Straightness is measured geometrically — the distance from the traced
//! points to the line through the initial point along the initial
//! velocity, normalized by path length — never by comparing to the affine
//! parametrization, since projective flatness permits reparametrized
//! straight lines.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{real_jet2, RealJet2};
use crate::linalg::solve_spd;
use crate::metric::{Kind, MetricField};
use crate::scalar::{real, Real};

/// Margin used for early stopping: integration halts once the base point
/// can no longer keep this distance from the domain boundary.
pub const DOMAIN_MARGIN: f64 = 1e-3;

/// How a geodesic integration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// All requested steps were taken.
    Completed,
    /// The base point exited the domain-with-margin; trace is partial.
    LeftDomain,
    /// The metric became singular or non-finite mid-trajectory; trace is
    /// partial.
    StepFailure,
}

/// A fixed-step geodesic trace.
#[derive(Clone, Debug)]
pub struct GeodesicTrace<T: Real> {
    /// Strictly increasing sample times, starting at 0.
    pub t: Vec<T>,
    /// Base point at each time.
    pub x: Vec<Vec<T>>,
    /// Velocity at each time.
    pub u: Vec<Vec<T>>,
    pub termination: Termination,
    /// Max over samples of the distance from `x(t)` to the line through
    /// `x(0)` spanned by `u(0)`, normalized by the traced path length.
    pub straightness_deviation: f64,
    /// Total polygonal length of the traced path.
    pub path_length: f64,
}

/// Spray coefficients `G^a` from an already computed jet.
pub fn spray_coefficients<T: Real>(jet: &RealJet2<T>, u: &[T]) -> Result<Vec<T>> {
    let m = jet.m;
    let g = jet.fundamental_tensor();
    let mut w = Vec::with_capacity(m);
    for b in 0..m {
        let mut acc = T::zero();
        for (c, &uc) in u.iter().enumerate() {
            acc = acc + jet.f2_xu[b][c] * uc;
        }
        w.push(acc - jet.f2_x[b]);
    }
    let y = solve_spd(&g, &w).ok_or_else(|| {
        Error::SingularMetric(
            "fundamental tensor is not positive definite at this sample".to_string(),
        )
    })?;
    let quarter = real::<T>(0.25);
    Ok(y.into_iter().map(|v| v * quarter).collect())
}

/// Spray coefficients of a real metric at `(x, u)`.
pub fn spray_at<T: Real>(metric: &MetricField<T>, x: &[T], u: &[T]) -> Result<Vec<T>> {
    let jet = real_jet2(metric, x, u)?;
    spray_coefficients(&jet, u)
}

/// How far `g` is from being collinear with `u`, relative to its size:
/// `‖g − (⟨g,u⟩/⟨u,u⟩)·u‖_∞ / (1 + ‖g‖_∞)`. Sprays of projectively flat
/// metrics are collinear with the velocity.
pub fn collinearity_defect<T: Real>(g: &[T], u: &[T]) -> f64 {
    let mut gu = T::zero();
    let mut uu = T::zero();
    for (&gi, &ui) in g.iter().zip(u) {
        gu = gu + gi * ui;
        uu = uu + ui * ui;
    }
    let factor = gu / uu;
    let mut num = T::zero();
    let mut den = T::one();
    for (&gi, &ui) in g.iter().zip(u) {
        num = num.max((gi - factor * ui).abs());
        den = den.max(T::one() + gi.abs());
    }
    (num / den).to_f64().unwrap_or(f64::NAN)
}

fn rk4_stage<T: Real>(
    metric: &MetricField<T>,
    x: &[T],
    u: &[T],
) -> Result<(Vec<T>, Vec<T>)> {
    let jet = real_jet2(metric, x, u)?;
    let g = spray_coefficients(&jet, u)?;
    let two = real::<T>(2.0);
    let du: Vec<T> = g.into_iter().map(|gi| -(two * gi)).collect();
    Ok((u.to_vec(), du))
}

fn axpy<T: Real>(x: &[T], h: T, d: &[T]) -> Vec<T> {
    x.iter().zip(d).map(|(&xi, &di)| xi + h * di).collect()
}

/// Integrate the geodesic equation `ẍ + 2G(x, ẋ) = 0` with classical
/// fixed-step fourth-order Runge–Kutta from `(x0, u0)` over `[0, horizon]`
/// in `steps` equal steps.
pub fn integrate_geodesic<T: Real>(
    metric: &MetricField<T>,
    x0: &[T],
    u0: &[T],
    horizon: f64,
    steps: usize,
) -> Result<GeodesicTrace<T>> {
    if metric.kind() != Kind::Real {
        return Err(Error::Usage(format!(
            "metric '{}' is complex; integrate geodesics of its real form instead",
            metric.name()
        )));
    }
    let m = metric.real_dim();
    if x0.len() != m || u0.len() != m {
        return Err(Error::Usage(format!(
            "metric '{}' lives in dimension {m}; got x0 of length {} and u0 of length {}",
            metric.name(),
            x0.len(),
            u0.len()
        )));
    }
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::Usage(format!(
            "integration horizon must be positive and finite, got {horizon}"
        )));
    }
    if steps == 0 {
        return Err(Error::Usage("step count must be positive".to_string()));
    }
    if u0.iter().all(|&c| c == T::zero()) {
        return Err(Error::Usage(
            "initial velocity must be nonzero".to_string(),
        ));
    }
    if !metric.domain().contains_with_margin(x0, DOMAIN_MARGIN) {
        return Err(Error::Domain(format!(
            "initial point is outside the domain of '{}' (with margin {DOMAIN_MARGIN})",
            metric.name()
        )));
    }

    let h = real::<T>(horizon / steps as f64);
    let half = real::<T>(0.5);
    let sixth = real::<T>(1.0 / 6.0);
    let two = real::<T>(2.0);

    let mut t = vec![T::zero()];
    let mut xs = vec![x0.to_vec()];
    let mut us = vec![u0.to_vec()];
    let mut termination = Termination::Completed;

    'steps: for k in 0..steps {
        let x = xs.last().unwrap().clone();
        let u = us.last().unwrap().clone();

        let mut stages: Vec<(Vec<T>, Vec<T>)> = Vec::with_capacity(4);
        let offsets = [
            (T::zero(), T::zero()),
            (half, half),
            (half, half),
            (T::one(), T::one()),
        ];
        for (idx, &(cx, _)) in offsets.iter().enumerate() {
            let (xe, ue) = if idx == 0 {
                (x.clone(), u.clone())
            } else {
                let (dx, du) = {
                    let prev = &stages[idx - 1];
                    (prev.0.clone(), prev.1.clone())
                };
                (axpy(&x, cx * h, &dx), axpy(&u, cx * h, &du))
            };
            match rk4_stage(metric, &xe, &ue) {
                Ok(s) => stages.push(s),
                Err(Error::Domain(_)) => {
                    termination = Termination::LeftDomain;
                    break 'steps;
                }
                Err(Error::SingularMetric(_)) | Err(Error::Numerics(_)) => {
                    termination = Termination::StepFailure;
                    break 'steps;
                }
                Err(e) => return Err(e),
            }
        }

        let mut x_next = Vec::with_capacity(m);
        let mut u_next = Vec::with_capacity(m);
        for a in 0..m {
            let dx = stages[0].0[a] + two * stages[1].0[a] + two * stages[2].0[a] + stages[3].0[a];
            let du = stages[0].1[a] + two * stages[1].1[a] + two * stages[2].1[a] + stages[3].1[a];
            x_next.push(x[a] + h * sixth * dx);
            u_next.push(u[a] + h * sixth * du);
        }
        if x_next.iter().any(|c| !c.is_finite()) || u_next.iter().any(|c| !c.is_finite()) {
            termination = Termination::StepFailure;
            break;
        }
        if !metric.domain().contains_with_margin(&x_next, DOMAIN_MARGIN) {
            termination = Termination::LeftDomain;
            break;
        }
        t.push(h * real::<T>((k + 1) as f64));
        xs.push(x_next);
        us.push(u_next);
    }

    let (deviation, path_length) = straightness(&xs, u0);
    Ok(GeodesicTrace {
        t,
        x: xs,
        u: us,
        termination,
        straightness_deviation: deviation,
        path_length,
    })
}

/// Max distance from the traced points to the line through the first point
/// along `u0`, normalized by the polygonal path length.
fn straightness<T: Real>(xs: &[Vec<T>], u0: &[T]) -> (f64, f64) {
    let x0 = &xs[0];
    let mut unorm = T::zero();
    for &c in u0 {
        unorm = unorm + c * c;
    }
    let unorm = unorm.sqrt();
    let dir: Vec<T> = u0.iter().map(|&c| c / unorm).collect();

    let mut max_dist = T::zero();
    let mut length = T::zero();
    for (k, p) in xs.iter().enumerate() {
        let mut along = T::zero();
        for (a, &pa) in p.iter().enumerate() {
            along = along + (pa - x0[a]) * dir[a];
        }
        let mut perp_sq = T::zero();
        for (a, &pa) in p.iter().enumerate() {
            let w = pa - x0[a] - along * dir[a];
            perp_sq = perp_sq + w * w;
        }
        max_dist = max_dist.max(perp_sq.sqrt());
        if k + 1 < xs.len() {
            let mut seg = T::zero();
            for (a, &pa) in xs[k + 1].iter().enumerate() {
                let d = pa - p[a];
                seg = seg + d * d;
            }
            length = length + seg.sqrt();
        }
    }
    let len64 = length.to_f64().unwrap_or(f64::NAN);
    let dev64 = max_dist.to_f64().unwrap_or(f64::NAN);
    if len64 > 0.0 {
        (dev64 / len64, len64)
    } else {
        (0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::real_samples;
    use crate::zoo;

    #[test]
    fn euclidean_spray_vanishes() {
        let m = zoo::build::<f64>("euclidean-real", None, &[]).unwrap();
        let g = spray_at(&m, &[0.3, -0.8], &[1.0, 2.0]).unwrap();
        assert!(g.iter().all(|c| c.abs() < 1e-14), "{g:?}");
    }

    #[test]
    fn scaled_euclidean_spray_hand_value() {
        let m = zoo::build::<f64>("scaled-euclidean-real", None, &[]).unwrap();
        // g = I at x = 0 and the mixed contraction vanishes at u = (0,1),
        // so G = −¼·(0.2, 0) = (−0.05, 0).
        let g = spray_at(&m, &[0.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!((g[0] + 0.05).abs() < 1e-12, "{g:?}");
        assert!(g[1].abs() < 1e-12);
    }

    #[test]
    fn funk_spray_is_half_f_times_velocity() {
        // Established numerically: the spray of the Funk metric satisfies
        // 2·G^a = F·u^a.
        let m = zoo::build::<f64>("funk-real", None, &[]).unwrap();
        let spec = m.default_sample_spec(41, 50);
        for s in real_samples::<f64>(&spec, m.dim()) {
            let jet = real_jet2(&m, &s.x, &s.u).unwrap();
            let g = spray_coefficients(&jet, &s.u).unwrap();
            let mut worst = 0.0f64;
            for a in 0..m.dim() {
                let expect = jet.f * s.u[a];
                let rel = (2.0 * g[a] - expect).abs() / (1.0 + expect.abs());
                worst = worst.max(rel);
            }
            assert!(worst <= 1e-6, "defect {worst} at {:?}", s.x);
            assert!(collinearity_defect(&g, &s.u) <= 1e-6);
        }
    }

    #[test]
    fn euclidean_geodesics_are_coordinate_lines() {
        let m = zoo::build::<f64>("euclidean-real", None, &[]).unwrap();
        let tr = integrate_geodesic(&m, &[0.0, 0.0], &[1.0, 0.0], 1.0, 100).unwrap();
        assert_eq!(tr.termination, Termination::Completed);
        assert_eq!(tr.t.len(), 101);
        assert!(tr.straightness_deviation <= 1e-14);
        let last = tr.x.last().unwrap();
        assert!((last[0] - 1.0).abs() < 1e-12 && last[1].abs() < 1e-14);
    }

    #[test]
    fn funk_geodesics_are_straight() {
        let m = zoo::build::<f64>("funk-real", None, &[]).unwrap();
        let tr = integrate_geodesic(&m, &[0.0, 0.0], &[0.6, 0.8], 1.0, 1000).unwrap();
        assert!(
            matches!(tr.termination, Termination::Completed | Termination::LeftDomain),
            "{:?}",
            tr.termination
        );
        assert!(tr.straightness_deviation <= 1e-6, "{}", tr.straightness_deviation);
    }

    #[test]
    fn scaled_euclidean_geodesics_bend() {
        let m = zoo::build::<f64>(
            "scaled-euclidean-real",
            None,
            &[("c".to_string(), 0.5)],
        )
        .unwrap();
        let tr = integrate_geodesic(&m, &[0.0, 0.0], &[0.0, 1.0], 1.0, 1000).unwrap();
        assert_eq!(tr.termination, Termination::Completed);
        assert!(tr.straightness_deviation > 1e-3, "{}", tr.straightness_deviation);
    }

    #[test]
    fn rk4_halving_converges_at_fourth_order() {
        let m = zoo::build::<f64>(
            "scaled-euclidean-real",
            None,
            &[("c".to_string(), 0.5)],
        )
        .unwrap();
        let x0 = [0.0, 0.0];
        let u0 = [0.0, 1.0];
        let reference = integrate_geodesic(&m, &x0, &u0, 1.0, 8192).unwrap();
        let err = |n: usize| -> f64 {
            let tr = integrate_geodesic(&m, &x0, &u0, 1.0, n).unwrap();
            assert_eq!(tr.termination, Termination::Completed);
            let stride = 8192 / n;
            let mut worst = 0.0f64;
            for (k, p) in tr.x.iter().enumerate() {
                let r = &reference.x[k * stride];
                let mut d = 0.0;
                for a in 0..2 {
                    d += (p[a] - r[a]).powi(2);
                }
                worst = worst.max(d.sqrt());
            }
            worst
        };
        // Compare in the asymptotic regime: by N ≈ 1024 the error reaches
        // the f64 rounding floor (≈4e-15 here) and the ratio degrades.
        let e1 = err(128);
        let e2 = err(256);
        assert!(
            e1 / e2 >= 8.0,
            "halving the step only reduced the error by {}",
            e1 / e2
        );
    }

    #[test]
    fn leaves_domain_cleanly() {
        let m = zoo::build::<f64>("funk-real", None, &[]).unwrap();
        // Aim straight at the boundary with a long horizon but few steps:
        // large fixed steps overshoot the contraction near the boundary.
        let tr = integrate_geodesic(&m, &[0.9, 0.0], &[1.0, 0.0], 40.0, 40).unwrap();
        assert_eq!(tr.termination, Termination::LeftDomain);
        assert!(!tr.x.is_empty());
        for p in &tr.x {
            assert!(p[0] * p[0] + p[1] * p[1] < 1.0);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let m = zoo::build::<f64>("euclidean-real", None, &[]).unwrap();
        assert!(integrate_geodesic(&m, &[0.0, 0.0], &[0.0, 0.0], 1.0, 10).is_err());
        assert!(integrate_geodesic(&m, &[0.0, 0.0], &[1.0, 0.0], 0.0, 10).is_err());
        assert!(integrate_geodesic(&m, &[0.0, 0.0], &[1.0, 0.0], 1.0, 0).is_err());
        assert!(integrate_geodesic(&m, &[0.0], &[1.0], 1.0, 10).is_err());
    }
}
