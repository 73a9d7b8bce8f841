//! Second-order jets of a metric: the value together with the first
//! derivatives and the mixed second derivatives in base and tangent
//! directions, for both `F` and `F²`.
//!
//! Jets are computed with hyper-dual numbers: one evaluation of the metric
//! per derivative pair, with no truncation error. An independent
//! finite-difference engine produces the same shape of data for
//! cross-checking.
//!
//! Index conventions (all 0-based): `f_xu[a][b] = ∂²F/∂x^b ∂u^a` — the
//! tangent index comes first — and `f_uu[a][b] = ∂²F/∂u^a ∂u^b`. Complex
//! jets use the packed real layout `z_k = x_k + i·x_{k+n}` internally and
//! assemble Wirtinger derivatives from it.

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::hyperdual::HyperDual;
use crate::metric::{Kind, MetricField};
use crate::scalar::{real, Real};

/// Value, gradients, and second derivatives of one scalar function of
/// `(x, u)`.
#[derive(Clone, Debug)]
struct JetParts<T> {
    f: T,
    f_x: Vec<T>,
    f_u: Vec<T>,
    /// `[a][b] = ∂²/∂x^b ∂u^a`.
    f_xu: Vec<Vec<T>>,
    /// `[a][b] = ∂²/∂u^a ∂u^b` (symmetric).
    f_uu: Vec<Vec<T>>,
}

/// The full second-order jet of a metric in real (possibly packed)
/// coordinates: `F` and `F²` side by side.
#[derive(Clone, Debug)]
pub struct RealJet2<T: Real> {
    /// Coordinate dimension (the packed dimension `2n` for complex metrics).
    pub m: usize,
    pub f: T,
    pub f_x: Vec<T>,
    pub f_u: Vec<T>,
    /// `[a][b] = ∂²F/∂x^b ∂u^a`.
    pub f_xu: Vec<Vec<T>>,
    /// `[a][b] = ∂²F/∂u^a ∂u^b`.
    pub f_uu: Vec<Vec<T>>,
    pub f2: T,
    pub f2_x: Vec<T>,
    pub f2_u: Vec<T>,
    pub f2_xu: Vec<Vec<T>>,
    pub f2_uu: Vec<Vec<T>>,
}

impl<T: Real> RealJet2<T> {
    /// The real fundamental tensor `g_ab = ½·∂²F²/∂u^a∂u^b`.
    pub fn fundamental_tensor(&self) -> Vec<Vec<T>> {
        let half = real::<T>(0.5);
        self.f2_uu
            .iter()
            .map(|row| row.iter().map(|&v| half * v).collect())
            .collect()
    }
}

/// The Wirtinger second-order jet of a complex metric: holomorphic and
/// antiholomorphic derivatives of `F` and `F²`. Because the metric is
/// real-valued, `∂F/∂z̄^j = conj(∂F/∂z^j)`; only the holomorphic gradients
/// are stored, with accessors for the conjugates.
#[derive(Clone, Debug)]
pub struct ComplexJet2<T: Real> {
    pub n: usize,
    pub f: T,
    /// `F_{z^j}`.
    pub f_z: Vec<Cx<T>>,
    /// `F_{v^i}`.
    pub f_v: Vec<Cx<T>>,
    /// `[i][j] = ∂²F/∂z^j ∂v^i`.
    pub f_zv: Vec<Vec<Cx<T>>>,
    /// `[i][j] = ∂²F/∂z̄^j ∂v^i`.
    pub f_zbv: Vec<Vec<Cx<T>>>,
    /// `[α][β] = ∂²F/∂v^α ∂v̄^β`.
    pub f_vvb: Vec<Vec<Cx<T>>>,
    pub f2: T,
    pub f2_z: Vec<Cx<T>>,
    pub f2_v: Vec<Cx<T>>,
    pub f2_zv: Vec<Vec<Cx<T>>>,
    pub f2_zbv: Vec<Vec<Cx<T>>>,
    /// The complex fundamental tensor `G_{αβ̄} = ∂²F²/∂v^α∂v̄^β`.
    pub f2_vvb: Vec<Vec<Cx<T>>>,
}

impl<T: Real> ComplexJet2<T> {
    /// `F_{z̄^j} = conj(F_{z^j})` for the real-valued `F`.
    pub fn f_zbar(&self, j: usize) -> Cx<T> {
        self.f_z[j].conj()
    }

    /// `(F²)_{z̄^j}`.
    pub fn f2_zbar(&self, j: usize) -> Cx<T> {
        self.f2_z[j].conj()
    }
}

fn ensure_finite<T: Real>(parts: &JetParts<T>, what: &str) -> Result<()> {
    let ok = parts.f.is_finite()
        && parts.f_x.iter().all(|v| v.is_finite())
        && parts.f_u.iter().all(|v| v.is_finite())
        && parts.f_xu.iter().flatten().all(|v| v.is_finite())
        && parts.f_uu.iter().flatten().all(|v| v.is_finite());
    if ok {
        Ok(())
    } else {
        Err(Error::Numerics(format!(
            "{what} produced a non-finite derivative (evaluation too close to a \
             nonsmooth point?)"
        )))
    }
}

/// Hyper-dual jet of one closure: `m² + m(m+1)/2` evaluations.
fn jet_core<T, F>(x: &[T], u: &[T], eval: F) -> Result<JetParts<T>>
where
    T: Real,
    F: Fn(&[HyperDual<T>], &[HyperDual<T>]) -> Result<HyperDual<T>>,
{
    let m = x.len();
    let xs_base: Vec<HyperDual<T>> = x.iter().map(|&c| HyperDual::constant(c)).collect();
    let us_base: Vec<HyperDual<T>> = u.iter().map(|&c| HyperDual::constant(c)).collect();

    let mut parts = JetParts {
        f: T::zero(),
        f_x: vec![T::zero(); m],
        f_u: vec![T::zero(); m],
        f_xu: vec![vec![T::zero(); m]; m],
        f_uu: vec![vec![T::zero(); m]; m],
    };

    for a in 0..m {
        for b in 0..m {
            let mut xs = xs_base.clone();
            let mut us = us_base.clone();
            us[a].d1 = T::one();
            xs[b].d2 = T::one();
            let w = eval(&xs, &us)?;
            if a == 0 {
                parts.f_x[b] = w.d2;
            }
            if b == 0 {
                parts.f = w.value;
                parts.f_u[a] = w.d1;
            }
            parts.f_xu[a][b] = w.d12;
        }
    }
    for a in 0..m {
        for b in a..m {
            let mut us = us_base.clone();
            us[a].d1 = T::one();
            us[b].d2 = T::one();
            let w = eval(&xs_base, &us)?;
            parts.f_uu[a][b] = w.d12;
            parts.f_uu[b][a] = w.d12;
        }
    }
    Ok(parts)
}

fn check_jet_args<T: Real>(metric: &MetricField<T>, x: &[T], u: &[T]) -> Result<()> {
    let m = metric.real_dim();
    if x.len() != m || u.len() != m {
        return Err(Error::Usage(format!(
            "metric '{}' has packed real dimension {m}, got base of length {} and tangent of \
             length {}",
            metric.name(),
            x.len(),
            u.len()
        )));
    }
    if u.iter().all(|&c| c == T::zero()) {
        return Err(Error::Domain("tangent vector must be nonzero".to_string()));
    }
    if !metric.domain().contains(x) {
        return Err(Error::Domain(format!(
            "base point lies outside the domain of metric '{}'",
            metric.name()
        )));
    }
    Ok(())
}

/// Second-order jet of `F` and `F²` at a real (packed, for complex metrics)
/// base point and tangent, via hyper-dual evaluation.
pub fn real_jet2<T: Real>(metric: &MetricField<T>, x: &[T], u: &[T]) -> Result<RealJet2<T>> {
    check_jet_args(metric, x, u)?;
    let fp = jet_core(x, u, |xs, us| metric.f_packed(xs, us))?;
    ensure_finite(&fp, "metric jet")?;
    let sp = jet_core(x, u, |xs, us| metric.f2_packed(xs, us))?;
    ensure_finite(&sp, "squared-metric jet")?;
    Ok(RealJet2 {
        m: x.len(),
        f: fp.f,
        f_x: fp.f_x,
        f_u: fp.f_u,
        f_xu: fp.f_xu,
        f_uu: fp.f_uu,
        f2: sp.f,
        f2_x: sp.f_x,
        f2_u: sp.f_u,
        f2_xu: sp.f_xu,
        f2_uu: sp.f_uu,
    })
}

/// Assemble the Wirtinger blocks of one function from its packed real jet.
fn wirtinger_blocks<T: Real>(
    n: usize,
    f_x: &[T],
    f_u: &[T],
    f_xu: &[Vec<T>],
    f_uu: &[Vec<T>],
) -> (Vec<Cx<T>>, Vec<Cx<T>>, Vec<Vec<Cx<T>>>, Vec<Vec<Cx<T>>>, Vec<Vec<Cx<T>>>) {
    let half = real::<T>(0.5);
    let quarter = real::<T>(0.25);
    let f_z: Vec<Cx<T>> = (0..n)
        .map(|j| Cx::new(half * f_x[j], -(half * f_x[j + n])))
        .collect();
    let f_v: Vec<Cx<T>> = (0..n)
        .map(|i| Cx::new(half * f_u[i], -(half * f_u[i + n])))
        .collect();
    let mut f_zv = vec![vec![Cx::<T>::zero(); n]; n];
    let mut f_zbv = vec![vec![Cx::<T>::zero(); n]; n];
    let mut f_vvb = vec![vec![Cx::<T>::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // ∂_{z^j}∂_{v^i} = ¼(∂x^j − i∂x^{j+n})(∂u^i − i∂u^{i+n}).
            f_zv[i][j] = Cx::new(
                quarter * (f_xu[i][j] - f_xu[i + n][j + n]),
                -(quarter * (f_xu[i + n][j] + f_xu[i][j + n])),
            );
            // ∂_{z̄^j}∂_{v^i} = ¼(∂x^j + i∂x^{j+n})(∂u^i − i∂u^{i+n}).
            f_zbv[i][j] = Cx::new(
                quarter * (f_xu[i][j] + f_xu[i + n][j + n]),
                quarter * (f_xu[i][j + n] - f_xu[i + n][j]),
            );
            // ∂_{v^α}∂_{v̄^β} = ¼(∂u^α − i∂u^{α+n})(∂u^β + i∂u^{β+n}).
            f_vvb[i][j] = Cx::new(
                quarter * (f_uu[i][j] + f_uu[i + n][j + n]),
                quarter * (f_uu[i][j + n] - f_uu[i + n][j]),
            );
        }
    }
    (f_z, f_v, f_zv, f_zbv, f_vvb)
}

/// Second-order Wirtinger jet of a complex metric at `(z, v)`.
pub fn complex_jet2<T: Real>(
    metric: &MetricField<T>,
    z: &[Cx<T>],
    v: &[Cx<T>],
) -> Result<ComplexJet2<T>> {
    if metric.kind() != Kind::Complex {
        return Err(Error::Usage(format!(
            "metric '{}' is real; complex jets require a complex metric",
            metric.name()
        )));
    }
    let n = metric.dim();
    if z.len() != n || v.len() != n {
        return Err(Error::Usage(format!(
            "metric '{}' has complex dimension {n}, got base of length {} and tangent of length {}",
            metric.name(),
            z.len(),
            v.len()
        )));
    }
    let mut x = Vec::with_capacity(2 * n);
    let mut u = Vec::with_capacity(2 * n);
    x.extend(z.iter().map(|c| c.re));
    x.extend(z.iter().map(|c| c.im));
    u.extend(v.iter().map(|c| c.re));
    u.extend(v.iter().map(|c| c.im));
    let jet = real_jet2(metric, &x, &u)?;
    assemble_complex(n, &jet)
}

/// Assemble the Wirtinger jet of a complex metric from its packed real
/// jet (packing: real parts first, then imaginary parts). This lets one
/// real jet serve both the realified and the complex views of the metric.
pub fn assemble_complex<T: Real>(n: usize, jet: &RealJet2<T>) -> Result<ComplexJet2<T>> {
    if jet.m != 2 * n {
        return Err(Error::Usage(format!(
            "packed real jet has {} coordinates; expected {} for complex dimension {n}",
            jet.m,
            2 * n
        )));
    }
    let (f_z, f_v, f_zv, f_zbv, f_vvb) =
        wirtinger_blocks(n, &jet.f_x, &jet.f_u, &jet.f_xu, &jet.f_uu);
    let (f2_z, f2_v, f2_zv, f2_zbv, f2_vvb) =
        wirtinger_blocks(n, &jet.f2_x, &jet.f2_u, &jet.f2_xu, &jet.f2_uu);
    Ok(ComplexJet2 {
        n,
        f: jet.f,
        f_z,
        f_v,
        f_zv,
        f_zbv,
        f_vvb,
        f2: jet.f2,
        f2_z,
        f2_v,
        f2_zv,
        f2_zbv,
        f2_vvb,
    })
}

// ---------------------------------------------------------------------------
// Finite-difference oracle
// ---------------------------------------------------------------------------

/// Options for the finite-difference engine.
#[derive(Clone, Copy, Debug)]
pub struct FdOptions {
    /// Base relative step; the step for a coordinate `c` is
    /// `step·(1 + |c|)`.
    pub step: f64,
    /// Re-evaluate at half the step and Richardson-extrapolate,
    /// cancelling the leading O(h²) error of the central differences.
    pub richardson: bool,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions {
            step: 1e-5,
            richardson: false,
        }
    }
}

/// Central-difference jet of one closure at a fixed base step factor.
fn fd_core<T, F>(x: &[T], u: &[T], eval: &F, step: f64) -> Result<JetParts<T>>
where
    T: Real,
    F: Fn(&[T], &[T]) -> Result<T>,
{
    let m = x.len();
    let two = real::<T>(2.0);
    let four = real::<T>(4.0);
    let hx: Vec<T> = x.iter().map(|&c| real::<T>(step) * (T::one() + c.abs())).collect();
    let hu: Vec<T> = u.iter().map(|&c| real::<T>(step) * (T::one() + c.abs())).collect();

    let shifted = |base: &[T], idx: usize, delta: T| -> Vec<T> {
        let mut out = base.to_vec();
        out[idx] = out[idx] + delta;
        out
    };

    let f = eval(x, u)?;
    let mut f_x = vec![T::zero(); m];
    let mut f_u = vec![T::zero(); m];
    for b in 0..m {
        let p = eval(&shifted(x, b, hx[b]), u)?;
        let q = eval(&shifted(x, b, -hx[b]), u)?;
        f_x[b] = (p - q) / (two * hx[b]);
    }
    for a in 0..m {
        let p = eval(x, &shifted(u, a, hu[a]))?;
        let q = eval(x, &shifted(u, a, -hu[a]))?;
        f_u[a] = (p - q) / (two * hu[a]);
    }

    let mut f_xu = vec![vec![T::zero(); m]; m];
    for a in 0..m {
        for b in 0..m {
            let xp = shifted(x, b, hx[b]);
            let xm = shifted(x, b, -hx[b]);
            let up = shifted(u, a, hu[a]);
            let um = shifted(u, a, -hu[a]);
            let pp = eval(&xp, &up)?;
            let pm = eval(&xp, &um)?;
            let mp = eval(&xm, &up)?;
            let mm = eval(&xm, &um)?;
            f_xu[a][b] = (pp - pm - mp + mm) / (four * hx[b] * hu[a]);
        }
    }

    let mut f_uu = vec![vec![T::zero(); m]; m];
    for a in 0..m {
        let p = eval(x, &shifted(u, a, hu[a]))?;
        let q = eval(x, &shifted(u, a, -hu[a]))?;
        f_uu[a][a] = (p - two * f + q) / (hu[a] * hu[a]);
        for b in (a + 1)..m {
            let pp = eval(x, &shifted(&shifted(u, a, hu[a]), b, hu[b]))?;
            let pm = eval(x, &shifted(&shifted(u, a, hu[a]), b, -hu[b]))?;
            let mp = eval(x, &shifted(&shifted(u, a, -hu[a]), b, hu[b]))?;
            let mm = eval(x, &shifted(&shifted(u, a, -hu[a]), b, -hu[b]))?;
            let d = (pp - pm - mp + mm) / (four * hu[a] * hu[b]);
            f_uu[a][b] = d;
            f_uu[b][a] = d;
        }
    }

    Ok(JetParts {
        f,
        f_x,
        f_u,
        f_xu,
        f_uu,
    })
}

/// Richardson-combine two central-difference jets computed at steps `h` and
/// `h/2`: derivative entries become `(4·D(h/2) − D(h))/3`; the value is
/// exact and carried over.
fn richardson_combine<T: Real>(at_h: JetParts<T>, at_half: JetParts<T>) -> JetParts<T> {
    let third = real::<T>(1.0 / 3.0);
    let four = real::<T>(4.0);
    let comb = |a: T, b: T| (four * b - a) * third;
    JetParts {
        f: at_half.f,
        f_x: at_h
            .f_x
            .iter()
            .zip(&at_half.f_x)
            .map(|(&a, &b)| comb(a, b))
            .collect(),
        f_u: at_h
            .f_u
            .iter()
            .zip(&at_half.f_u)
            .map(|(&a, &b)| comb(a, b))
            .collect(),
        f_xu: at_h
            .f_xu
            .iter()
            .zip(&at_half.f_xu)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(&a, &b)| comb(a, b)).collect())
            .collect(),
        f_uu: at_h
            .f_uu
            .iter()
            .zip(&at_half.f_uu)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(&a, &b)| comb(a, b)).collect())
            .collect(),
    }
}

fn fd_jet_of<T, F>(x: &[T], u: &[T], eval: F, opts: &FdOptions) -> Result<JetParts<T>>
where
    T: Real,
    F: Fn(&[T], &[T]) -> Result<T>,
{
    let at_h = fd_core(x, u, &eval, opts.step)?;
    if !opts.richardson {
        return Ok(at_h);
    }
    let at_half = fd_core(x, u, &eval, opts.step / 2.0)?;
    Ok(richardson_combine(at_h, at_half))
}

/// The finite-difference counterpart of [`real_jet2`]: same shape, no
/// hyper-dual numbers involved.
pub fn fd_real_jet2<T: Real>(
    metric: &MetricField<T>,
    x: &[T],
    u: &[T],
    opts: &FdOptions,
) -> Result<RealJet2<T>> {
    check_jet_args(metric, x, u)?;
    let fp = fd_jet_of(x, u, |xs: &[T], us: &[T]| metric.f_packed(xs, us), opts)?;
    ensure_finite(&fp, "finite-difference metric jet")?;
    let sp = fd_jet_of(x, u, |xs: &[T], us: &[T]| metric.f2_packed(xs, us), opts)?;
    ensure_finite(&sp, "finite-difference squared-metric jet")?;
    Ok(RealJet2 {
        m: x.len(),
        f: fp.f,
        f_x: fp.f_x,
        f_u: fp.f_u,
        f_xu: fp.f_xu,
        f_uu: fp.f_uu,
        f2: sp.f,
        f2_x: sp.f_x,
        f2_u: sp.f_u,
        f2_xu: sp.f_xu,
        f2_uu: sp.f_uu,
    })
}

fn rel<T: Real>(a: T, b: T) -> f64 {
    let a = a.to_f64().unwrap_or(f64::NAN);
    let b = b.to_f64().unwrap_or(f64::NAN);
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

/// The largest relative discrepancy between corresponding entries of two
/// jets (`|a−b| / (1 + max(|a|,|b|))` over every stored quantity).
pub fn jet_discrepancy<T: Real>(a: &RealJet2<T>, b: &RealJet2<T>) -> f64 {
    let mut worst = rel(a.f, b.f).max(rel(a.f2, b.f2));
    let pairs = |xs: &[T], ys: &[T], worst: &mut f64| {
        for (&p, &q) in xs.iter().zip(ys) {
            *worst = worst.max(rel(p, q));
        }
    };
    pairs(&a.f_x, &b.f_x, &mut worst);
    pairs(&a.f_u, &b.f_u, &mut worst);
    pairs(&a.f2_x, &b.f2_x, &mut worst);
    pairs(&a.f2_u, &b.f2_u, &mut worst);
    for (ra, rb) in a.f_xu.iter().zip(&b.f_xu) {
        pairs(ra, rb, &mut worst);
    }
    for (ra, rb) in a.f_uu.iter().zip(&b.f_uu) {
        pairs(ra, rb, &mut worst);
    }
    for (ra, rb) in a.f2_xu.iter().zip(&b.f2_xu) {
        pairs(ra, rb, &mut worst);
    }
    for (ra, rb) in a.f2_uu.iter().zip(&b.f2_uu) {
        pairs(ra, rb, &mut worst);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn cx(re: f64, im: f64) -> Cx<f64> {
        Cx::from_f64(re, im)
    }

    #[test]
    fn complex_euclidean_tangent_gradient() {
        let m = zoo::build::<f64>("complex-euclidean", None, &[]).unwrap();
        let z = [cx(0.0, 0.0), cx(0.0, 0.0)];
        let v = [cx(1.0, 0.0), cx(0.0, 0.0)];
        let jet = complex_jet2(&m, &z, &v).unwrap();
        // F_{v¹} = v̄₁/(2F) = ½ at v = (1, 0).
        assert!((jet.f_v[0].re - 0.5).abs() < 1e-14);
        assert!(jet.f_v[0].im.abs() < 1e-14);
        assert!((jet.f - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_fundamental_tensor_is_the_matrix() {
        let m = zoo::build::<f64>(
            "complex-hermitian-const",
            None,
            &[("h2".to_string(), 2.0)],
        )
        .unwrap();
        let z = [cx(0.3, -0.1), cx(0.0, 0.2)];
        let v = [cx(0.7, 0.4), cx(-0.2, 1.1)];
        let jet = complex_jet2(&m, &z, &v).unwrap();
        // (F²)_{v v̄} is exactly H = diag(1, 2), independent of (z, v).
        assert!((jet.f2_vvb[0][0].re - 1.0).abs() < 1e-10);
        assert!((jet.f2_vvb[1][1].re - 2.0).abs() < 1e-10);
        for (i, j) in [(0, 1), (1, 0)] {
            assert!(jet.f2_vvb[i][j].modulus() < 1e-10);
        }
        // And all z-derivatives vanish.
        for j in 0..2 {
            assert!(jet.f2_z[j].modulus() < 1e-10);
            assert!(jet.f_z[j].modulus() < 1e-10);
        }
    }

    #[test]
    fn perturbed_family_base_gradient() {
        // F² = (1 + t·Re z¹)‖v‖², so (F²)_{z¹} = t/2·‖v‖².
        let t = 0.2;
        let m = zoo::build::<f64>("perturbed-family", None, &[("t".to_string(), t)]).unwrap();
        let z = [cx(0.0, 0.0), cx(0.0, 0.0)];
        let v = [cx(0.0, 0.0), cx(1.0, 0.0)];
        let jet = complex_jet2(&m, &z, &v).unwrap();
        assert!((jet.f2_z[0].re - t / 2.0).abs() < 1e-12);
        assert!(jet.f2_z[0].im.abs() < 1e-12);
        assert!(jet.f2_z[1].modulus() < 1e-12);
    }

    #[test]
    fn hermitian_z_dependent_base_gradient() {
        // F² = exp(c·Re z¹)‖v‖²: at z = 0, ‖v‖ = 1, (F²)_{z¹} = c/2.
        let m = zoo::build::<f64>("hermitian-z-dependent", None, &[]).unwrap();
        let z = [cx(0.0, 0.0), cx(0.0, 0.0)];
        let v = [cx(1.0, 0.0), cx(0.0, 0.0)];
        let jet = complex_jet2(&m, &z, &v).unwrap();
        assert!((jet.f2_z[0].re - 0.15).abs() < 1e-12);
        assert!(jet.f2_z[0].im.abs() < 1e-12);
    }

    #[test]
    fn squared_metric_gradient_consistency() {
        // (F²)_u = 2·F·F_u ties the two independently computed jets together.
        for name in [
            "euclidean-real",
            "scaled-euclidean-real",
            "funk-real",
            "complex-euclidean",
            "complex-minkowski-phi",
            "perturbed-family",
            "hermitian-z-dependent",
        ] {
            let m = zoo::build::<f64>(name, None, &[]).unwrap();
            let spec = m.default_sample_spec(3, 10);
            for s in crate::sample::real_samples::<f64>(&spec, m.real_dim()) {
                let jet = real_jet2(&m, &s.x, &s.u).unwrap();
                for a in 0..jet.m {
                    let lhs = jet.f2_u[a];
                    let rhs = 2.0 * jet.f * jet.f_u[a];
                    assert!(
                        (lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs().max(rhs.abs())),
                        "{name}: (F²)_u = 2FF_u violated: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn funk_jet_matches_finite_differences() {
        let m = zoo::build::<f64>("funk-real", None, &[]).unwrap();
        let x = [0.3, -0.2];
        let u = [0.8, 0.5];
        let exact = real_jet2(&m, &x, &u).unwrap();
        let fd = fd_real_jet2(&m, &x, &u, &FdOptions::default()).unwrap();
        assert!(jet_discrepancy(&exact, &fd) <= 1e-5);
        let fd_rich = fd_real_jet2(
            &m,
            &x,
            &u,
            &FdOptions {
                step: 1e-4,
                richardson: true,
            },
        )
        .unwrap();
        let plain_err = jet_discrepancy(&exact, &fd);
        let rich_err = jet_discrepancy(&exact, &fd_rich);
        assert!(rich_err <= 1e-5);
        assert!(
            rich_err <= plain_err * 10.0,
            "extrapolation should not be much worse: {rich_err} vs {plain_err}"
        );
    }

    #[test]
    fn expression_twin_jet_matches_builtin() {
        let builtin = zoo::build::<f64>("complex-minkowski-phi", None, &[]).unwrap();
        let twin = zoo::build_dsl_twin::<f64>("complex-minkowski-phi", None, &[])
            .unwrap()
            .unwrap();
        let z = [cx(0.1, -0.3), cx(0.4, 0.2)];
        let v = [cx(0.9, 0.1), cx(-0.3, 0.6)];
        let a = complex_jet2(&builtin, &z, &v).unwrap();
        let b = complex_jet2(&twin, &z, &v).unwrap();
        for i in 0..2 {
            assert!((a.f_v[i] - b.f_v[i]).modulus() < 1e-10);
            assert!((a.f2_z[i] - b.f2_z[i]).modulus() < 1e-10);
            for j in 0..2 {
                assert!((a.f_zv[i][j] - b.f_zv[i][j]).modulus() < 1e-10);
                assert!((a.f2_vvb[i][j] - b.f2_vvb[i][j]).modulus() < 1e-10);
            }
        }
    }

    #[test]
    fn positively_homogeneous_metric_satisfies_euler_identity() {
        // Σ_a u_a·F_{u^a} = F for a degree-one positively homogeneous metric.
        let m = zoo::build::<f64>("funk-real", None, &[]).unwrap();
        let x = [0.2, 0.4];
        let u = [-0.3, 0.9];
        let jet = real_jet2(&m, &x, &u).unwrap();
        let euler: f64 = (0..2).map(|a| u[a] * jet.f_u[a]).sum();
        assert!((euler - jet.f).abs() < 1e-12);
    }

    #[test]
    fn jets_reject_bad_arguments() {
        let m = zoo::build::<f64>("funk-real", None, &[]).unwrap();
        assert!(real_jet2(&m, &[0.0, 0.0], &[0.0, 0.0]).is_err()); // zero tangent
        assert!(real_jet2(&m, &[1.5, 0.0], &[1.0, 0.0]).is_err()); // outside ball
        assert!(real_jet2(&m, &[0.0], &[1.0]).is_err()); // wrong arity
        let c = zoo::build::<f64>("complex-euclidean", None, &[]).unwrap();
        assert!(complex_jet2(&m.to_real(), &[cx(0.0, 0.0)], &[cx(1.0, 0.0)]).is_err());
        assert!(complex_jet2(&c, &[cx(0.0, 0.0)], &[cx(1.0, 0.0)]).is_err()); // wrong arity
    }
}
