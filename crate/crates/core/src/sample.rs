//! Slit-tangent-bundle samples and the deterministic generator that
//! produces them.
//!
//! Checks in this crate are statistical only in the sense that they evaluate
//! residuals on a batch of sampled points; for reproducible reports the
//! batch must be a pure function of the seed. The generator is therefore
//! spelled out here rather than delegated: SplitMix64 (a fixed, documented
//! 64-bit mixing sequence) drives coordinate draws, and every draw uses only
//! IEEE-exact operations (`+ - * /`, `sqrt`, comparisons) so the sequence is
//! identical on every platform. In particular, directions on the unit sphere
//! come from rejection sampling of the cube rather than from transcendental
//! transforms.

use serde::Serialize;

use crate::complex::Cx;
use crate::scalar::{real, Real};

/// SplitMix64: state advances by the golden-ratio increment, output is the
/// finalizer of Steele, Lea & Flood. Constants are fixed by the algorithm.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)` using the top 53 bits (exact in an `f64`).
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn next_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_unit()
    }
}

/// Region the base point is drawn from, per sample batch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum BaseRegion {
    /// The same interval `[lo, hi]` on every real coordinate.
    Box { lo: f64, hi: f64 },
    /// Euclidean ball of the given radius about the origin (on the real
    /// coordinates; for complex metrics this bounds `‖z‖`).
    Ball { radius: f64 },
}

/// A reproducible batch description: seed, batch size, and base region.
/// Tangent vectors are always drawn uniformly from the unit sphere (scale
/// invariance of every check makes other magnitudes redundant).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleSpec {
    pub seed: u64,
    pub count: usize,
    pub base: BaseRegion,
}

impl SampleSpec {
    pub fn new(seed: u64, count: usize, base: BaseRegion) -> Self {
        Self { seed, count, base }
    }
}

/// A point of the slit tangent bundle over a real domain: base point `x`
/// and a nonzero tangent `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealTangentSample<T> {
    pub x: Vec<T>,
    pub u: Vec<T>,
}

/// A point of the slit tangent bundle over a complex domain: base point `z`
/// and a nonzero tangent `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexTangentSample<T> {
    pub z: Vec<Cx<T>>,
    pub v: Vec<Cx<T>>,
}

impl<T: Real> RealTangentSample<T> {
    pub fn new(x: Vec<T>, u: Vec<T>) -> Self {
        Self { x, u }
    }

    /// Reinterpret `2n` real coordinates as `n` complex ones: real slot `a`
    /// becomes the real part of component `a` for `a < n` and the imaginary
    /// part of component `a − n` otherwise. Pure reindexing.
    pub fn packed_complex(&self, n: usize) -> ComplexTangentSample<T> {
        debug_assert_eq!(self.x.len(), 2 * n);
        let z = (0..n).map(|i| Cx::new(self.x[i], self.x[i + n])).collect();
        let v = (0..n).map(|i| Cx::new(self.u[i], self.u[i + n])).collect();
        ComplexTangentSample { z, v }
    }
}

impl<T: Real> ComplexTangentSample<T> {
    pub fn new(z: Vec<Cx<T>>, v: Vec<Cx<T>>) -> Self {
        Self { z, v }
    }

    /// Packed real coordinates of the base point (real parts first, then
    /// imaginary parts).
    pub fn packed_base(&self) -> Vec<T> {
        let mut x = Vec::with_capacity(2 * self.z.len());
        for c in &self.z {
            x.push(c.re);
        }
        for c in &self.z {
            x.push(c.im);
        }
        x
    }

    /// Packed real coordinates of the tangent vector (real parts first,
    /// then imaginary parts).
    pub fn packed_tangent(&self) -> Vec<T> {
        let mut u = Vec::with_capacity(2 * self.v.len());
        for c in &self.v {
            u.push(c.re);
        }
        for c in &self.v {
            u.push(c.im);
        }
        u
    }

    /// Inverse of [`RealTangentSample::packed_complex`]: split `n` complex
    /// coordinates into `2n` real ones (real parts first, then imaginary).
    pub fn packed_real(&self) -> RealTangentSample<T> {
        let n = self.z.len();
        let mut x = Vec::with_capacity(2 * n);
        let mut u = Vec::with_capacity(2 * n);
        for c in &self.z {
            x.push(c.re);
        }
        for c in &self.z {
            x.push(c.im);
        }
        for c in &self.v {
            u.push(c.re);
        }
        for c in &self.v {
            u.push(c.im);
        }
        RealTangentSample { x, u }
    }
}

/// Draw a base point in the region (dimension `m` real coordinates).
fn draw_base(rng: &mut SplitMix64, region: BaseRegion, m: usize) -> Vec<f64> {
    match region {
        BaseRegion::Box { lo, hi } => (0..m).map(|_| rng.next_in(lo, hi)).collect(),
        BaseRegion::Ball { radius } => loop {
            let cand: Vec<f64> = (0..m).map(|_| rng.next_in(-radius, radius)).collect();
            let s: f64 = cand.iter().map(|c| c * c).sum();
            if s <= radius * radius {
                return cand;
            }
        },
    }
}

/// Draw a unit-sphere direction by rejection from the cube: accept a draw
/// in `[-1, 1)^m` when its squared norm lies in `[10⁻⁴, 1]`, then normalize.
/// Only exact IEEE operations are involved, keeping the sequence
/// platform-independent.
fn draw_unit_sphere(rng: &mut SplitMix64, m: usize) -> Vec<f64> {
    loop {
        let cand: Vec<f64> = (0..m).map(|_| rng.next_in(-1.0, 1.0)).collect();
        let s: f64 = cand.iter().map(|c| c * c).sum();
        if (1e-4..=1.0).contains(&s) {
            let inv = 1.0 / s.sqrt();
            return cand.iter().map(|c| c * inv).collect();
        }
    }
}

/// Deterministic batch of real tangent-bundle samples in dimension `m`.
pub fn real_samples<T: Real>(spec: &SampleSpec, m: usize) -> Vec<RealTangentSample<T>> {
    let mut rng = SplitMix64::new(spec.seed);
    (0..spec.count)
        .map(|_| {
            let x = draw_base(&mut rng, spec.base, m);
            let u = draw_unit_sphere(&mut rng, m);
            RealTangentSample {
                x: x.into_iter().map(real::<T>).collect(),
                u: u.into_iter().map(real::<T>).collect(),
            }
        })
        .collect()
}

/// Deterministic batch of complex tangent-bundle samples in complex
/// dimension `n` (the underlying draws happen in `R^{2n}`; tangents are unit
/// vectors there, i.e. `‖v‖ = 1`).
pub fn complex_samples<T: Real>(spec: &SampleSpec, n: usize) -> Vec<ComplexTangentSample<T>> {
    real_samples::<T>(spec, 2 * n)
        .into_iter()
        .map(|s| s.packed_complex(n))
        .collect()
}
