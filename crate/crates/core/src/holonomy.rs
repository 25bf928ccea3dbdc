//! Adiabatic connection, curvature and holonomy of an isospectral unitary
//! family `W(λ)` acting on an `m`-fold degenerate vacuum in `ℂ^N`.
//!
//! With vacuum frame `V` (`N×m`, orthonormal columns) the connection is the
//! `m×m` matrix-valued one-form `𝒜 = V† W(λ)⁻¹ dW(λ) V`, its curvature is
//! `ℱ = d𝒜 + 𝒜∧𝒜`, and the holonomy of a loop is the path-ordered
//! exponential of `𝒜`. All derivatives are central finite differences.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannPoint;
use crate::linalg::{
    anti_hermitian_exp, pauli, unitarity_deviation, unitary_exp, ComplexMatrix, Tolerances,
};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;
/// Default number of loop segments.
pub const DEFAULT_LOOP_STEPS: usize = 4096;

/// Orthonormal frame `(v₁, …, v_m)` of the degenerate vacuum.
#[derive(Debug, Clone, PartialEq)]
pub struct VacuumFrame {
    frame: ComplexMatrix,
}

impl VacuumFrame {
    pub fn new(frame: ComplexMatrix, tol: f64) -> Result<Self> {
        let deviation = (&frame.adjoint() * &frame).max_diff(&ComplexMatrix::identity(frame.cols()));
        if deviation > tol {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { frame })
    }

    /// The first `m` standard basis vectors of `ℂ^dim`.
    pub fn standard(dim: usize, m: usize) -> Self {
        assert!(m >= 1 && m <= dim, "need 1 ≤ m ≤ dim");
        Self {
            frame: ComplexMatrix::from_fn(dim, m, |i, j| {
                Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
            }),
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.rows()
    }

    pub fn m(&self) -> usize {
        self.frame.cols()
    }

    pub fn frame(&self) -> &ComplexMatrix {
        &self.frame
    }

    /// `Σ v_j v_j†`.
    pub fn projector(&self) -> ComplexMatrix {
        (&self.frame * &self.frame.adjoint()).hermitian_part()
    }
}

/// A smooth map `λ ↦ W(λ) ∈ U(N)` with `W(base_point) = 1`.
///
/// `evaluate` must be a pure function of `λ`; connection samples along a
/// loop are computed in parallel.
pub trait UnitaryFamily: Sync {
    fn dim(&self) -> usize;
    fn param_dim(&self) -> usize;
    fn base_point(&self) -> Vec<f64>;
    fn evaluate(&self, lambda: &[f64]) -> ComplexMatrix;
}

/// A family given by a closure.
pub struct FnFamily<F> {
    dim: usize,
    base_point: Vec<f64>,
    f: F,
}

impl<F> FnFamily<F>
where
    F: Fn(&[f64]) -> ComplexMatrix + Sync,
{
    /// Checks `W(base_point) = 1` within `tol`.
    pub fn new(dim: usize, base_point: Vec<f64>, f: F, tol: f64) -> Result<Self> {
        let w0 = f(&base_point);
        let deviation = w0.max_diff(&ComplexMatrix::identity(dim));
        if w0.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(format!(
                "family returns {}x{}, expected {dim}x{dim}",
                w0.rows(),
                w0.cols()
            )));
        }
        if deviation > tol {
            return Err(Error::InvalidArgument(format!(
                "W(base point) differs from the identity by {deviation:e}"
            )));
        }
        Ok(Self { dim, base_point, f })
    }
}

impl<F> UnitaryFamily for FnFamily<F>
where
    F: Fn(&[f64]) -> ComplexMatrix + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn param_dim(&self) -> usize {
        self.base_point.len()
    }

    fn base_point(&self) -> Vec<f64> {
        self.base_point.clone()
    }

    fn evaluate(&self, lambda: &[f64]) -> ComplexMatrix {
        (self.f)(lambda)
    }
}

/// `exp(i(a₁σ₁ + a₂σ₂ + a₃σ₃))` in closed form.
fn su2_exp(a: [f64; 3]) -> ComplexMatrix {
    let r = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let (s, c) = r.sin_cos();
    // sin(r)/r, stable at r → 0
    let k = if r < 1e-8 { 1.0 - r * r / 6.0 } else { s / r };
    let i = Complex64::i();
    let (x, y, z) = (a[0] * k, a[1] * k, a[2] * k);
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(c, 0.0) + i * z,
            i * x + Complex64::new(y, 0.0),
            i * x - Complex64::new(y, 0.0),
            Complex64::new(c, 0.0) - i * z,
        ],
    )
    .expect("2x2")
}

/// Built-in families selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinFamily {
    /// `N = 2`, `m = 1`: `W(λ) = exp(i(λ₁σ₁ + λ₂σ₂)/2)`. Abelian.
    Rotation,
    /// `N = 2`, `m = 1`: `W(λ) = exp(iλ₁σ₁/2)·exp(iλ₂σ₂/2)`.
    TwoParameterSu2,
    /// `N = 4`, `m = 2`: `W(λ) = exp(i(λ₁G₁ + λ₂G₂))` with
    /// `G_μ = [[0, B_μ], [B_μ†, 0]]`, `B₁ = diag(1, 2)`, `B₂ = σ₁ + iσ₃`.
    /// Curvature samples at different points do not commute.
    DegenerateM2,
}

impl BuiltinFamily {
    pub const ALL: [BuiltinFamily; 3] = [
        BuiltinFamily::Rotation,
        BuiltinFamily::TwoParameterSu2,
        BuiltinFamily::DegenerateM2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinFamily::Rotation => "rotation",
            BuiltinFamily::TwoParameterSu2 => "two-parameter-su2",
            BuiltinFamily::DegenerateM2 => "degenerate-m2",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family '{name}'")))
    }

    /// Degeneracy of the vacuum this family is meant to act on.
    pub fn m(&self) -> usize {
        match self {
            BuiltinFamily::DegenerateM2 => 2,
            _ => 1,
        }
    }

    pub fn vacuum(&self) -> VacuumFrame {
        VacuumFrame::standard(self.dim(), self.m())
    }

    fn generators() -> [ComplexMatrix; 2] {
        let b1 = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let b2 = &pauli::sigma1() + &pauli::sigma3().scale(Complex64::i());
        let g = |b: &ComplexMatrix| {
            let mut m = ComplexMatrix::zeros(4, 4);
            m.set_block(0, 2, b);
            m.set_block(2, 0, &b.adjoint());
            m
        };
        [g(&b1), g(&b2)]
    }
}

impl UnitaryFamily for BuiltinFamily {
    fn dim(&self) -> usize {
        match self {
            BuiltinFamily::DegenerateM2 => 4,
            _ => 2,
        }
    }

    fn param_dim(&self) -> usize {
        2
    }

    fn base_point(&self) -> Vec<f64> {
        vec![0.0, 0.0]
    }

    fn evaluate(&self, l: &[f64]) -> ComplexMatrix {
        match self {
            BuiltinFamily::Rotation => su2_exp([l[0] / 2.0, l[1] / 2.0, 0.0]),
            BuiltinFamily::TwoParameterSu2 => {
                &su2_exp([l[0] / 2.0, 0.0, 0.0]) * &su2_exp([0.0, l[1] / 2.0, 0.0])
            }
            BuiltinFamily::DegenerateM2 => {
                let [g1, g2] = Self::generators();
                let h = &g1.scale_real(l[0]) + &g2.scale_real(l[1]);
                unitary_exp(&h, 1.0, Tolerances::default().linalg).expect("generator is Hermitian")
            }
        }
    }
}

/// A closed polygon in parameter space; `points[0] == points[last]` exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterLoop {
    points: Vec<Vec<f64>>,
}

impl ParameterLoop {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidArgument("a loop needs at least 2 segments".into()));
        }
        let d = points[0].len();
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::DimensionMismatch("loop points differ in dimension".into()));
        }
        if points.first() != points.last() {
            return Err(Error::OpenLoop);
        }
        Ok(Self { points })
    }

    /// Circle of `radius` about `center` in the (λ₁, λ₂) plane, counter-clockwise
    /// from angle `start_angle`, with the closing point copied exactly.
    pub fn circle(center: [f64; 2], radius: f64, start_angle: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidArgument(format!("need ≥ 2 steps, got {steps}")));
        }
        let mut points: Vec<Vec<f64>> = (0..steps)
            .map(|k| {
                let phi = start_angle + 2.0 * PI * k as f64 / steps as f64;
                vec![center[0] + radius * phi.cos(), center[1] + radius * phi.sin()]
            })
            .collect();
        points.push(points[0].clone());
        Self::new(points)
    }

    /// Circle of `radius` that starts and ends at the origin.
    pub fn circle_through_origin(radius: f64, steps: usize) -> Result<Self> {
        let mut l = Self::circle([radius, 0.0], radius, PI, steps)?;
        let n = l.points.len();
        l.points[0] = vec![0.0, 0.0];
        l.points[n - 1] = vec![0.0, 0.0];
        Ok(l)
    }

    /// `steps` zero-length segments at `point`.
    pub fn constant(point: Vec<f64>, steps: usize) -> Result<Self> {
        Self::new(vec![point; steps.max(2) + 1])
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self { points }
    }

    /// `self` then `other`; both must share the base point.
    pub fn then(&self, other: &ParameterLoop) -> Result<Self> {
        if self.points[0] != other.points[0] {
            return Err(Error::InvalidArgument("loops have different base points".into()));
        }
        let mut points = self.points.clone();
        points.extend(other.points[1..].iter().cloned());
        Ok(Self { points })
    }

    /// Splits every segment into `factor` equal pieces; the image is unchanged.
    pub fn subdivided(&self, factor: usize) -> Self {
        let factor = factor.max(1);
        let mut points = vec![self.points[0].clone()];
        for w in self.points.windows(2) {
            for s in 1..=factor {
                if s == factor {
                    points.push(w[1].clone());
                } else {
                    let t = s as f64 / factor as f64;
                    points.push(w[0].iter().zip(&w[1]).map(|(a, b)| a + t * (b - a)).collect());
                }
            }
        }
        Self { points }
    }
}

/// `𝒜_μ(λ)` for every direction μ.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionSample {
    pub point: Vec<f64>,
    pub components: Vec<ComplexMatrix>,
}

impl ConnectionSample {
    /// `max_μ ‖𝒜_μ + 𝒜_μ†‖_max`: vanishes for an exact connection.
    pub fn anti_hermitian_residue(&self) -> f64 {
        self.components
            .iter()
            .map(|a| (a + &a.adjoint()).max_abs())
            .fold(0.0, f64::max)
    }

    /// `Σ_μ 𝒜_μ dλ_μ`.
    pub fn contract(&self, dlambda: &[f64]) -> ComplexMatrix {
        let m = self.components[0].rows();
        self.components
            .iter()
            .zip(dlambda)
            .fold(ComplexMatrix::zeros(m, m), |acc, (a, &d)| &acc + &a.scale_real(d))
    }
}

fn check_pair<F: UnitaryFamily + ?Sized>(f: &F, vac: &VacuumFrame) -> Result<()> {
    if f.dim() != vac.dim() {
        return Err(Error::DimensionMismatch(format!(
            "family acts on dimension {}, vacuum lives in {}",
            f.dim(),
            vac.dim()
        )));
    }
    Ok(())
}

fn checked_eval<F: UnitaryFamily + ?Sized>(f: &F, lambda: &[f64]) -> Result<ComplexMatrix> {
    if lambda.len() != f.param_dim() {
        return Err(Error::DimensionMismatch(format!(
            "parameter point has {} coordinates, family expects {}",
            lambda.len(),
            f.param_dim()
        )));
    }
    let w = f.evaluate(lambda);
    let deviation = unitarity_deviation(&w);
    if deviation > Tolerances::default().predicate {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(w)
}

/// `P(λ) = W(λ) (Σ v_j v_j†) W(λ)⁻¹`.
pub fn projector_at<F: UnitaryFamily + ?Sized>(
    f: &F,
    vac: &VacuumFrame,
    lambda: &[f64],
) -> Result<GrassmannPoint> {
    check_pair(f, vac)?;
    let w = checked_eval(f, lambda)?;
    let p = &(&w * &vac.projector()) * &w.adjoint();
    GrassmannPoint::new(p.hermitian_part(), Tolerances::default().predicate)
}

fn shifted(lambda: &[f64], mu: usize, by: f64) -> Vec<f64> {
    let mut p = lambda.to_vec();
    p[mu] += by;
    p
}

/// `𝒜_μ = V† W(λ)† [W(λ + h e_μ) − W(λ − h e_μ)]/(2h) V`.
pub fn connection_at<F: UnitaryFamily + ?Sized>(
    f: &F,
    vac: &VacuumFrame,
    lambda: &[f64],
    h: f64,
) -> Result<ConnectionSample> {
    check_pair(f, vac)?;
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let w = checked_eval(f, lambda)?;
    let left = &vac.frame.adjoint() * &w.adjoint();
    let components = (0..f.param_dim())
        .map(|mu| {
            let plus = checked_eval(f, &shifted(lambda, mu, h))?;
            let minus = checked_eval(f, &shifted(lambda, mu, -h))?;
            let dw = (&plus - &minus).scale_real(0.5 / h);
            Ok(&(&left * &dw) * &vac.frame)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConnectionSample {
        point: lambda.to_vec(),
        components,
    })
}

/// Curvature component with its direction pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureComponent {
    pub mu: usize,
    pub nu: usize,
    pub value: ComplexMatrix,
}

/// `ℱ_{μν} = ∂_μ𝒜_ν − ∂_ν𝒜_μ + [𝒜_μ, 𝒜_ν]` for one ordered pair.
///
/// The outer derivative uses step `100·h`, keeping the nested difference
/// clear of the `ε/h²` rounding floor.
pub fn curvature_component<F: UnitaryFamily + ?Sized>(
    f: &F,
    vac: &VacuumFrame,
    lambda: &[f64],
    h: f64,
    mu: usize,
    nu: usize,
) -> Result<ComplexMatrix> {
    let d = f.param_dim();
    if mu >= d || nu >= d {
        return Err(Error::InvalidArgument(format!(
            "direction out of range for {d} parameters"
        )));
    }
    let outer = 100.0 * h;
    let deriv = |dir: usize, comp: usize| -> Result<ComplexMatrix> {
        let plus = connection_at(f, vac, &shifted(lambda, dir, outer), h)?;
        let minus = connection_at(f, vac, &shifted(lambda, dir, -outer), h)?;
        Ok((&plus.components[comp] - &minus.components[comp]).scale_real(0.5 / outer))
    };
    let a = connection_at(f, vac, lambda, h)?;
    let d_mu_a_nu = deriv(mu, nu)?;
    let d_nu_a_mu = deriv(nu, mu)?;
    Ok(&(&d_mu_a_nu - &d_nu_a_mu) + &a.components[mu].commutator(&a.components[nu]))
}

/// All `ℱ_{μν}` with `μ < ν`.
pub fn curvature_at<F: UnitaryFamily + ?Sized>(
    f: &F,
    vac: &VacuumFrame,
    lambda: &[f64],
    h: f64,
) -> Result<Vec<CurvatureComponent>> {
    let d = f.param_dim();
    if d < 2 {
        return Err(Error::InvalidArgument("curvature needs ≥ 2 parameters".into()));
    }
    let mut out = Vec::new();
    for mu in 0..d {
        for nu in mu + 1..d {
            out.push(CurvatureComponent {
                mu,
                nu,
                value: curvature_component(f, vac, lambda, h, mu, nu)?,
            });
        }
    }
    Ok(out)
}

/// How each segment's factor is formed from `X = Σ_μ 𝒜_μ(mid) Δλ_μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    /// `exp((X − X†)/2)`: every factor exactly unitary.
    Exponential,
    /// `1 + (X − X†)/2`: first order, unitarity drifts like `1/steps`.
    Euler,
}

/// Path-ordered holonomy of a loop.
#[derive(Debug, Clone, PartialEq)]
pub struct Holonomy {
    /// `Γ = F_K ⋯ F_1`: the first segment's factor is rightmost.
    pub gamma: ComplexMatrix,
    pub unitarity_deviation: f64,
    /// Largest `‖𝒜_μ + 𝒜_μ†‖_max` seen along the loop.
    pub connection_residue: f64,
    pub steps: usize,
}

/// Holonomy with the exponential integrator.
pub fn holonomy<F: UnitaryFamily + ?Sized>(
    f: &F,
    vac: &VacuumFrame,
    path: &ParameterLoop,
    h: f64,
) -> Result<Holonomy> {
    holonomy_with(f, vac, path, h, Integrator::Exponential)
}

pub fn holonomy_with<F: UnitaryFamily + ?Sized>(
    f: &F,
    vac: &VacuumFrame,
    path: &ParameterLoop,
    h: f64,
    integrator: Integrator,
) -> Result<Holonomy> {
    check_pair(f, vac)?;
    if path.points.first() != path.points.last() {
        return Err(Error::OpenLoop);
    }
    let tol = Tolerances::default().linalg;
    let segments: Vec<(ComplexMatrix, f64)> = path
        .points
        .par_windows(2)
        .map(|w| {
            let delta: Vec<f64> = w[1].iter().zip(&w[0]).map(|(b, a)| b - a).collect();
            let m = vac.m();
            if delta.iter().all(|&d| d == 0.0) {
                return Ok((ComplexMatrix::identity(m), 0.0));
            }
            let mid: Vec<f64> = w[0].iter().zip(&w[1]).map(|(a, b)| 0.5 * (a + b)).collect();
            let sample = connection_at(f, vac, &mid, h)?;
            let x = sample.contract(&delta).anti_hermitian_part();
            let factor = match integrator {
                Integrator::Exponential => anti_hermitian_exp(&x, tol)?,
                Integrator::Euler => &ComplexMatrix::identity(m) + &x,
            };
            Ok((factor, sample.anti_hermitian_residue()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut gamma = ComplexMatrix::identity(vac.m());
    let mut residue: f64 = 0.0;
    for (factor, r) in &segments {
        gamma = factor * &gamma;
        residue = residue.max(*r);
    }
    Ok(Holonomy {
        unitarity_deviation: unitarity_deviation(&gamma),
        gamma,
        connection_residue: residue,
        steps: path.steps(),
    })
}

/// One row of a step-doubling study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub steps: usize,
    pub unitarity_deviation: f64,
    /// `‖Γ(steps) − Γ(previous steps)‖_max`, absent for the first row.
    pub change: Option<f64>,
}

/// Holonomy at each step count in `steps`, recording how Γ settles.
pub fn convergence_table<F: UnitaryFamily + ?Sized>(
    f: &F,
    vac: &VacuumFrame,
    make_loop: impl Fn(usize) -> Result<ParameterLoop>,
    steps: &[usize],
    h: f64,
    integrator: Integrator,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(steps.len());
    let mut previous: Option<ComplexMatrix> = None;
    for &k in steps {
        let hol = holonomy_with(f, vac, &make_loop(k)?, h, integrator)?;
        rows.push(ConvergenceRow {
            steps: k,
            unitarity_deviation: hol.unitarity_deviation,
            change: previous.as_ref().map(|p| p.max_diff(&hol.gamma)),
        });
        previous = Some(hol.gamma);
    }
    Ok(rows)
}

/// Real dimension of the Lie algebra generated by curvature samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanProbe {
    pub spanned_dimension: usize,
    /// True iff the span is all of `u(m)` (dimension `m²`).
    pub irreducible: bool,
}

fn realify(a: &ComplexMatrix) -> Vec<f64> {
    a.as_slice().iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Adds `v` to an orthonormal real basis if it is independent; returns whether it was.
fn extend_basis(basis: &mut Vec<Vec<f64>>, mut v: Vec<f64>, tol: f64) -> bool {
    for _ in 0..2 {
        for b in basis.iter() {
            let dot: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm <= tol {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    basis.push(v);
    true
}

/// Curvature below this is finite-difference noise.
const SPAN_NOISE_FLOOR: f64 = 1e-6;
/// Directions weaker than this, relative to the largest sample, are not counted.
const SPAN_RELATIVE_TOL: f64 = 1e-4;

/// Closes the anti-Hermitian parts of `samples` under commutators (up to
/// depth 4) and reports the real dimension reached.
pub fn holonomy_span_probe(samples: &[ComplexMatrix]) -> Result<SpanProbe> {
    let Some(first) = samples.first() else {
        return Ok(SpanProbe {
            spanned_dimension: 0,
            irreducible: false,
        });
    };
    let m = first.rows();
    if samples.iter().any(|s| s.shape() != (m, m)) {
        return Err(Error::DimensionMismatch("curvature samples differ in shape".into()));
    }
    let scale = samples.iter().map(|s| s.max_abs()).fold(0.0, f64::max);
    if scale <= SPAN_NOISE_FLOOR {
        return Ok(SpanProbe {
            spanned_dimension: 0,
            irreducible: false,
        });
    }
    let tol = SPAN_RELATIVE_TOL;
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut elements: Vec<ComplexMatrix> = Vec::new();
    for s in samples {
        let x = s.anti_hermitian_part().scale_real(1.0 / scale);
        if extend_basis(&mut basis, realify(&x), tol) {
            elements.push(x);
        }
    }
    for _ in 0..4 {
        let before = elements.len();
        let mut fresh = Vec::new();
        for i in 0..before {
            for j in i + 1..before {
                let c = elements[i].commutator(&elements[j]);
                let norm = c.max_abs();
                if norm > tol {
                    let c = c.scale_real(1.0 / norm);
                    if extend_basis(&mut basis, realify(&c), tol) {
                        fresh.push(c);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        elements.extend(fresh);
    }
    Ok(SpanProbe {
        spanned_dimension: basis.len(),
        irreducible: basis.len() == m * m,
    })
}

/// Scalar `∮𝒜` for an `m = 1` family by the midpoint rule on the loop's segments.
pub fn abelian_line_integral<F: UnitaryFamily + ?Sized>(
    f: &F,
    vac: &VacuumFrame,
    path: &ParameterLoop,
    h: f64,
) -> Result<Complex64> {
    if vac.m() != 1 {
        return Err(Error::InvalidArgument("line integral needs a non-degenerate vacuum".into()));
    }
    path.points
        .windows(2)
        .map(|w| {
            let delta: Vec<f64> = w[1].iter().zip(&w[0]).map(|(b, a)| b - a).collect();
            let mid: Vec<f64> = w[0].iter().zip(&w[1]).map(|(a, b)| 0.5 * (a + b)).collect();
            Ok(connection_at(f, vac, &mid, h)?.contract(&delta)[(0, 0)])
        })
        .sum()
}
