//! Direct evaluation of the Grassmannian volume integral
//!
//! ```text
//! ∫_{M(n−k,k;ℂ)} det(1_k + Z†Z)^{−n} ∏ d²z_ij
//! ```
//!
//! by importance-sampled Monte Carlo (any `k`), and for `k = 1` by the
//! deterministic polar / simplex substitution reduced to one-dimensional
//! Gauss–Legendre quadratures.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::det_lambda;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::random::stream_rng;

/// Samples per RNG stream. Fixed so results do not depend on thread count.
const CHUNK: u64 = 1 << 15;

/// Proposal distribution for the Monte-Carlo estimator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingLaw {
    /// Entries of `Z` i.i.d. with density `1/(π(1+|z|²)²)`.
    ///
    /// Exact for `(k, n) = (1, 2)`; the estimator variance is only
    /// logarithmically finite for `k(n−k) = 2` and infinite for `(2, 4)`.
    Entrywise,
    /// `Z` as a whole with density `∝ (1 + ‖Z‖²_F)^{−β}` on `ℝ^{2k(n−k)}`.
    ///
    /// Since `det(1+Z†Z) ≥ 1 + ‖Z‖²_F`, the weight is controlled along every
    /// ray. `β` is placed in the window where the fourth moment of the weight
    /// is finite whenever that window exists.
    #[default]
    Radial,
}

/// Result of [`mc_volume`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples`.
    pub standard_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl VolumeEstimate {
    /// `(mean − reference)/standard_error`; zero when both the error and the
    /// standard error vanish to rounding.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if diff.abs() <= 64.0 * f64::EPSILON * reference.abs() {
            0.0
        } else {
            diff / self.standard_error
        }
    }
}

/// Radial exponent `β` of [`SamplingLaw::Radial`] for real dimension `2·half_dim`.
///
/// Along rank-one rays the squared weight integrates like `a^{6β − 6n − 2}`, so
/// the fourth moment is finite for `half_dim < β < n + 1/3`; we take the midpoint.
/// Shapes with no such window fall back to a proposal just heavier than the
/// integrand's tail.
pub(crate) fn radial_beta(half_dim: f64, n: f64) -> f64 {
    let upper = n + 1.0 / 3.0;
    if half_dim < upper {
        0.5 * (half_dim + upper)
    } else {
        half_dim + 0.5
    }
}

struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn new() -> Self {
        Self {
            count: 0,
            mean: 0.0,
            m2: 0.0,
        }
    }

    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        Moments { count, mean, m2 }
    }
}

struct Sampler {
    n: usize,
    k: usize,
    law: SamplingLaw,
    beta: f64,
    log_norm: f64,
    radial_num: Option<Gamma<f64>>,
    radial_den: Option<Gamma<f64>>,
}

impl Sampler {
    fn new(k: usize, n: usize, law: SamplingLaw) -> Self {
        let half_dim = (k * (n - k)) as f64;
        match law {
            SamplingLaw::Entrywise => Self {
                n,
                k,
                law,
                beta: 0.0,
                log_norm: half_dim * PI.ln(),
                radial_num: None,
                radial_den: None,
            },
            SamplingLaw::Radial => {
                let beta = radial_beta(half_dim, n as f64);
                // normalising constant of (1+r²)^{−β} over ℝ^{2·half_dim}
                let log_norm = half_dim * PI.ln() + libm::lgamma(beta - half_dim)
                    - libm::lgamma(beta);
                Self {
                    n,
                    k,
                    law,
                    beta,
                    log_norm,
                    radial_num: Some(Gamma::new(half_dim, 1.0).expect("positive shape")),
                    radial_den: Some(Gamma::new(beta - half_dim, 1.0).expect("positive shape")),
                }
            }
        }
    }

    /// Draws `Z` and returns the importance weight `f(Z)/q(Z)`.
    fn weight<R: Rng>(&self, rng: &mut R) -> f64 {
        let rows = self.n - self.k;
        let cols = self.k;
        match self.law {
            SamplingLaw::Entrywise => {
                let mut log_q_inv = 0.0;
                let z = ComplexMatrix::from_fn(rows, cols, |_, _| {
                    let u: f64 = rng.random();
                    let theta = 2.0 * PI * rng.random::<f64>();
                    let r2 = u / (1.0 - u);
                    // 1/q per entry is π(1+|z|²)² = π/(1−u)²
                    log_q_inv -= 2.0 * (1.0 - u).ln();
                    Complex64::from_polar(r2.sqrt(), theta)
                });
                (log_q_inv + self.log_norm - self.n as f64 * det_lambda(&z).ln()).exp()
            }
            SamplingLaw::Radial => {
                let dim = 2 * rows * cols;
                let num = self.radial_num.as_ref().unwrap().sample(rng);
                let den = self.radial_den.as_ref().unwrap().sample(rng);
                let r2 = num / den;
                if !r2.is_finite() {
                    // den underflowed; the weight decays along every ray
                    return 0.0;
                }
                let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
                let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                let scale = r2.sqrt() / norm;
                let z = ComplexMatrix::from_fn(rows, cols, |i, j| {
                    let idx = 2 * (i * cols + j);
                    Complex64::new(g[idx] * scale, g[idx + 1] * scale)
                });
                (self.beta * r2.ln_1p() + self.log_norm - self.n as f64 * det_lambda(&z).ln())
                    .exp()
            }
        }
    }
}

/// Monte-Carlo estimate of `Vol(G_{k,n})` with the default [`SamplingLaw::Radial`].
pub fn mc_volume(k: usize, n: usize, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    mc_volume_with(k, n, samples, seed, SamplingLaw::default())
}

/// Monte-Carlo estimate of `Vol(G_{k,n})`.
///
/// Samples are split into fixed-size chunks, chunk `c` drawing from stream `c`
/// of the seeded generator; per-chunk moments are merged in chunk order, so
/// the result is bit-reproducible for any worker count.
pub fn mc_volume_with(
    k: usize,
    n: usize,
    samples: u64,
    seed: u64,
    law: SamplingLaw,
) -> Result<VolumeEstimate> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "Monte-Carlo volume needs 1 ≤ k ≤ n−1, got k = {k}, n = {n}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be ≥ 1".into()));
    }
    let sampler = Sampler::new(k, n, law);
    let chunks = samples.div_ceil(CHUNK);
    let partials: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c);
            let len = CHUNK.min(samples - c * CHUNK);
            let mut m = Moments::new();
            for _ in 0..len {
                m.push(sampler.weight(&mut rng));
            }
            m
        })
        .collect();
    let total = partials.into_iter().fold(Moments::new(), Moments::merge);
    let standard_error = if total.count > 1 {
        (total.m2 / (total.count - 1) as f64).sqrt() / (total.count as f64).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(VolumeEstimate {
        mean: total.mean,
        standard_error,
        samples,
        seed,
    })
}

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "quadrature order must be ≥ 1");
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    for i in 0..order.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_order
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(order: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=order {
        let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if order == 0 { 1.0 } else { p1 };
    let d = order as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

const PANEL_ORDER: usize = 4;

/// Composite Gauss–Legendre on `[a, b]` with `panels` equal panels.
fn composite_gl(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(PANEL_ORDER);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let left = a + p as f64 * h;
            let mid = left + 0.5 * h;
            nodes
                .iter()
                .zip(&weights)
                .map(|(&x, &w)| w * f(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// Maps simplex-style coordinates `(ξ₁, …, ξ_{n−1})` to the radial squares
/// `(r₁, …, r_{n−1})`: `r_j = ξ₁⋯ξ_j (1 − ξ_{j+1})` and `r_{n−1} = ξ₁⋯ξ_{n−1}`.
pub fn xi_to_r(xi: &[f64]) -> Vec<f64> {
    let m = xi.len();
    let mut r = Vec::with_capacity(m);
    let mut prefix = 1.0;
    for j in 0..m {
        prefix *= xi[j];
        if j + 1 < m {
            r.push(prefix * (1.0 - xi[j + 1]));
        } else {
            r.push(prefix);
        }
    }
    r
}

/// Deterministic value of `Vol(G_{1,n}) = Vol(ℂP^{n−1})`.
///
/// With `z_j = √r_j e^{iθ_j}` the angular integrals give `π^{n−1}`; the
/// substitution [`xi_to_r`] factorises the radial part into
/// `∫₀^∞ ξ^{n−2}/(1+ξ)^n dξ · ∏_{j=2}^{n−1} ∫₀¹ ξ^{n−1−j} dξ`. The unbounded
/// factor is mapped to `(0, 1)` by `ξ = s/(1−s)`. Each factor uses composite
/// 4-point Gauss–Legendre with `grid` panels.
pub fn projective_volume_quadrature(n: usize, grid: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n ≥ 2, got {n}")));
    }
    if grid < 2 {
        return Err(Error::InvalidArgument(format!("grid must be ≥ 2, got {grid}")));
    }
    let angular = PI.powi(n as i32 - 1);
    let exponent = n as i32;
    let unbounded = composite_gl(
        |s| {
            let xi = s / (1.0 - s);
            let jac = 1.0 / ((1.0 - s) * (1.0 - s));
            xi.powi(exponent - 2) / (1.0 + xi).powi(exponent) * jac
        },
        0.0,
        1.0,
        grid,
    );
    let bounded: f64 = (2..n)
        .map(|j| {
            let p = (n - 1 - j) as i32;
            composite_gl(|x| x.powi(p), 0.0, 1.0, grid)
        })
        .product();
    Ok(angular * unbounded * bounded)
}
