//! Registry of deterministic verification checks.

use std::f64::consts::PI;
use std::time::Instant;

use grassvol::flag::{in_kernel, spectral_decompose, spectral_type};
use grassvol::gates::{
    basis_reflection, bit_dot, character, cnot, cnot_uniton_decomposition, column_sum,
    f1_from_repeated_cnot, f_matrix, f_recursion_error, flip_conjugator, grover_reflections,
    last_wire_walsh, repeated_cnot, row_sum, walsh_power, BasisIndex,
};
use grassvol::grassmann::{
    grassmann_volume, grassmann_volume_exact, mc_volume, projective_volume_quadrature,
    spheres_product_exact, unitary_volume_exact,
};
use grassvol::holonomy::{
    abelian_line_integral, convergence_table, curvature_at, holonomy, holonomy_span_probe,
    projector_at, BuiltinFamily, Integrator, ParameterLoop, DEFAULT_STEP,
};
use grassvol::linalg::{unitary_exp, ComplexMatrix};
use grassvol::pauli::{clock_shift, diagonalization_error, root_of_unity, vandermonde_w};
use grassvol::random::{conjugated_diagonal, haar_unitary, stream_rng};
use grassvol::synth::{
    gate_count_table, mod2_identity_check, simulate, synthesize_ccu, synthesize_cccu,
};
use grassvol::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::report::{Status, VerificationRecord};

/// Largest qubit count covered by the gate identity checks.
pub const GATE_T_MAX: usize = 4;
/// Largest clock/shift dimension covered.
pub const PAULI_N_MAX: usize = 12;
/// Shapes used for the Monte-Carlo volume checks.
pub const MC_SHAPES: [(usize, usize); 4] = [(1, 2), (1, 3), (2, 3), (2, 4)];

/// Statistical bar for the Monte-Carlo checks.
pub const MC_MAX_Z: f64 = 3.0;
pub const MC_MAX_RELATIVE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub max_error: f64,
    pub passed: bool,
}

impl Outcome {
    pub fn within(max_error: f64, tol: f64) -> Self {
        Self {
            max_error,
            passed: max_error <= tol,
        }
    }

    /// Boolean outcome: error 0 on success, 1 otherwise.
    pub fn holds(ok: bool) -> Self {
        Self {
            max_error: if ok { 0.0 } else { 1.0 },
            passed: ok,
        }
    }
}

type CheckFn = Box<dyn Fn(&Config, &mut ChaCha8Rng) -> grassvol::Result<Outcome> + Send + Sync>;

pub struct Check {
    pub id: String,
    pub anchor: &'static str,
    /// Whether the check consumes randomness.
    pub seeded: bool,
    run: CheckFn,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check").field("id", &self.id).field("anchor", &self.anchor).finish()
    }
}

/// FNV-1a of the id: a stable random stream per check, independent of run order.
fn stream_of(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

impl Check {
    fn new(
        id: impl Into<String>,
        anchor: &'static str,
        seeded: bool,
        run: impl Fn(&Config, &mut ChaCha8Rng) -> grassvol::Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            anchor,
            seeded,
            run: Box::new(run),
        }
    }

    fn fixed(
        id: impl Into<String>,
        anchor: &'static str,
        run: impl Fn(&Config) -> grassvol::Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Self::new(id, anchor, false, move |c, _| run(c))
    }

    fn seeded(
        id: impl Into<String>,
        anchor: &'static str,
        run: impl Fn(&Config, &mut ChaCha8Rng) -> grassvol::Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Self::new(id, anchor, true, run)
    }

    pub fn outcome(&self, config: &Config) -> grassvol::Result<Outcome> {
        let mut rng = stream_rng(config.seed, stream_of(&self.id));
        (self.run)(config, &mut rng)
    }

    pub fn execute(&self, config: &Config) -> VerificationRecord {
        let start = Instant::now();
        let outcome = self.outcome(config);
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let (status, max_error) = match outcome {
            Ok(o) => (if o.passed { Status::Pass } else { Status::Fail }, finite(o.max_error)),
            Err(e) => {
                eprintln!("{}: {e}", self.id);
                (Status::Fail, f64::MAX)
            }
        };
        VerificationRecord {
            check_id: self.id.clone(),
            paper_anchor: self.anchor.to_string(),
            status,
            max_error,
            runtime_ms: if config.timing { elapsed } else { 0.0 },
            seed: self.seeded.then_some(config.seed),
        }
    }
}

/// JSON has no infinities; clamp so reports stay parseable.
fn finite(x: f64) -> f64 {
    if x.is_nan() {
        f64::MAX
    } else {
        x.clamp(-f64::MAX, f64::MAX)
    }
}

fn idx(t: usize, i: usize) -> grassvol::Result<BasisIndex> {
    BasisIndex::new(t, i)
}

fn signs_matrix(n: usize, signs: &[i8], scale: f64) -> grassvol::Result<ComplexMatrix> {
    let v: Vec<f64> = signs.iter().map(|&s| s as f64 * scale).collect();
    ComplexMatrix::from_real(n, n, &v)
}

fn walsh_literal(t: usize) -> grassvol::Result<Option<ComplexMatrix>> {
    #[rustfmt::skip]
    let two: [i8; 16] = [
        1, 1, 1, 1,
        1, -1, 1, -1,
        1, 1, -1, -1,
        1, -1, -1, 1,
    ];
    #[rustfmt::skip]
    let three: [i8; 64] = [
        1, 1, 1, 1, 1, 1, 1, 1,
        1, -1, 1, -1, 1, -1, 1, -1,
        1, 1, -1, -1, 1, 1, -1, -1,
        1, -1, -1, 1, 1, -1, -1, 1,
        1, 1, 1, 1, -1, -1, -1, -1,
        1, -1, 1, -1, -1, 1, -1, 1,
        1, 1, -1, -1, -1, -1, 1, 1,
        1, -1, -1, 1, -1, 1, 1, -1,
    ];
    match t {
        2 => Ok(Some(signs_matrix(4, &two, 0.5)?)),
        3 => Ok(Some(signs_matrix(8, &three, 1.0 / 8f64.sqrt())?)),
        _ => Ok(None),
    }
}

/// Identity checks on `t` qubits.
pub fn gate_checks(t: usize) -> Vec<Check> {
    const TOL: f64 = 1e-11;
    let mut out = vec![
        Check::fixed(format!("gates.walsh.t{t}"), "walsh tensor power entries", move |c| {
            let w = walsh_power(t)?;
            let n = 1usize << t;
            let mut err: f64 = 0.0;
            if let Some(lit) = walsh_literal(t)? {
                err = err.max(w.matrix().max_diff(&lit));
            }
            let r = 1.0 / (n as f64).sqrt();
            for i in 0..n {
                for j in 0..n {
                    let s = if bit_dot(i, j).is_multiple_of(2) { r } else { -r };
                    err = err.max((w.matrix()[(i, j)] - Complex64::new(s, 0.0)).norm());
                }
            }
            Ok(Outcome::within(err, c.tolerance(TOL)))
        }),
        Check::fixed(format!("gates.walsh-involution.t{t}"), "walsh involution", move |c| {
            let w = walsh_power(t)?;
            let sq = w.matrix() * w.matrix();
            Ok(Outcome::within(sq.max_diff(&ComplexMatrix::identity(1 << t)), c.tolerance(TOL)))
        }),
        Check::fixed(format!("gates.row-sums.t{t}"), "walsh row and column sums", move |c| {
            let n = 1usize << t;
            let mut err: f64 = 0.0;
            for i in 0..n {
                let expected = if i == 0 { (n as f64).sqrt() } else { 0.0 };
                err = err.max((row_sum(idx(t, i)?)? - expected).abs());
                err = err.max((column_sum(idx(t, i)?)? - expected).abs());
            }
            Ok(Outcome::within(err, c.tolerance(TOL)))
        }),
        Check::fixed(format!("gates.characters.t{t}"), "character multiplicativity", move |_| {
            // every (i, j, k) triple
            let n = 1usize << t;
            let mut err: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let lhs = character(idx(t, i)?, idx(t, j ^ k)?)?;
                        let rhs = character(idx(t, i)?, idx(t, j)?)? * character(idx(t, i)?, idx(t, k)?)?;
                        err = err.max((lhs - rhs).abs() as f64);
                    }
                }
            }
            Ok(Outcome::within(err, 0.0))
        }),
        Check::fixed(format!("gates.character-orthogonality.t{t}"), "character orthogonality", move |_| {
            let n = 1usize << t;
            let mut err: f64 = 0.0;
            for i in 0..n {
                for i2 in 0..n {
                    let mut s = 0i64;
                    for j in 0..n {
                        s += (character(idx(t, i)?, idx(t, j)?)? * character(idx(t, i2)?, idx(t, j)?)?) as i64;
                    }
                    let want = if i == i2 { n as i64 } else { 0 };
                    err = err.max((s - want).abs() as f64);
                }
            }
            Ok(Outcome::within(err, 0.0))
        }),
        Check::fixed(format!("gates.flip-reflections.t{t}"), "flip conjugated reflection", move |c| {
            let f1 = f_matrix(t, 1)?;
            let mut err: f64 = 0.0;
            for i in 0..1usize << t {
                let u = flip_conjugator(idx(t, i)?);
                let conj = &(u.matrix() * f1.matrix()) * u.matrix();
                err = err.max(conj.max_diff(basis_reflection(idx(t, i)?).matrix()));
            }
            Ok(Outcome::within(err, c.tolerance(TOL)))
        }),
        Check::fixed(format!("gates.f-recursion.t{t}"), "reflection recursion", move |c| {
            Ok(Outcome::within(f_recursion_error(t)?, c.tolerance(TOL)))
        }),
        Check::fixed(format!("gates.grover.t{t}"), "grover reflections", move |c| {
            let n = 1usize << t;
            let mut err: f64 = 0.0;
            for i in 0..n {
                let g = grover_reflections(idx(t, i)?)?;
                err = err.max(g.marked.matrix().max_diff(basis_reflection(idx(t, i)?).matrix()));
                let s = &g.uniform;
                let norm: f64 = s.iter().map(|z| z.norm_sqr()).sum();
                err = err.max((norm - 1.0).abs());
                err = err.max((s[i] - Complex64::new(1.0 / (n as f64).sqrt(), 0.0)).norm());
                let proj = ComplexMatrix::from_fn(n, n, |a, b| s[a] * s[b].conj());
                let direct = &ComplexMatrix::identity(n) - &proj.scale_real(2.0);
                err = err.max(g.diffusion.matrix().max_diff(&direct));
            }
            Ok(Outcome::within(err, c.tolerance(TOL)))
        }),
    ];
    if t >= 2 {
        out.push(Check::fixed(
            format!("gates.repeated-cnot.t{t}"),
            "repeated cnot conjugated to a reflection",
            move |c| {
                let n = 1usize << t;
                let w = last_wire_walsh(t)?;
                let conj = &(w.matrix() * repeated_cnot(t)?.matrix()) * w.matrix();
                let err = conj.max_diff(basis_reflection(idx(t, n - 1)?).matrix());
                Ok(Outcome::within(err, c.tolerance(TOL)))
            },
        ));
        out.push(Check::fixed(
            format!("gates.f1-from-repeated-cnot.t{t}"),
            "reflection from repeated cnot",
            move |c| {
                let err = f1_from_repeated_cnot(t)?.matrix().max_diff(f_matrix(t, 1)?.matrix());
                Ok(Outcome::within(err, c.tolerance(TOL)))
            },
        ));
    }
    if t == 2 {
        out.push(Check::fixed("gates.cnot.t2", "cnot permutation matrices", |_| {
            #[rustfmt::skip]
            let first: [i8; 16] = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0];
            #[rustfmt::skip]
            let second: [i8; 16] = [1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0];
            let a = cnot(2, 1, 2)?.matrix().max_diff(&signs_matrix(4, &first, 1.0)?);
            let b = cnot(2, 2, 1)?.matrix().max_diff(&signs_matrix(4, &second, 1.0)?);
            Ok(Outcome::within(a.max(b), 0.0))
        }));
        out.push(Check::fixed("gates.cnot-uniton.t2", "cnot as a uniton", |c| {
            let d = cnot_uniton_decomposition()?;
            let err = d.reconstruction_error.max(d.diagonalization_error);
            Ok(Outcome::within(err, c.tolerance(TOL)))
        }));
    }
    out
}

pub fn grassmann_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (k, n) in MC_SHAPES {
        out.push(Check::new(format!("grassmann.mc.k{k}n{n}"), "volume identity", true, move |c, _| {
            let exact = grassmann_volume(k as u64, n as u64)?;
            let est = mc_volume(k, n, c.mc_samples, c.seed)?;
            let rel = (est.mean - exact).abs() / exact;
            Ok(Outcome {
                max_error: rel,
                passed: est.z_score(exact).abs() <= MC_MAX_Z && rel <= MC_MAX_RELATIVE,
            })
        }));
    }
    for n in 2..=6usize {
        out.push(Check::fixed(format!("grassmann.quadrature.n{n}"), "projective volume", move |c| {
            let exact = PI.powi(n as i32 - 1) / (1..n).map(|j| j as f64).product::<f64>();
            let q = projective_volume_quadrature(n, 64)?;
            Ok(Outcome::within((q - exact).abs() / exact, c.tolerance(1e-8)))
        }));
    }
    out.push(Check::fixed("grassmann.unitary-volume", "unitary volume as sphere product", |_| {
        let mut err: f64 = 0.0;
        let mut exact = true;
        for n in 1..=8u64 {
            let a = unitary_volume_exact(n)?;
            let b = spheres_product_exact(n)?;
            exact &= a == b;
            err = err.max((a.to_f64() - b.to_f64()).abs());
        }
        Ok(Outcome {
            max_error: err,
            passed: exact && err == 0.0,
        })
    }));
    out.push(Check::fixed("grassmann.symmetry", "grassmann volume symmetry", |_| {
        let mut ok = true;
        for n in 1..=12u64 {
            for k in 0..=n {
                ok &= grassmann_volume_exact(k, n)? == grassmann_volume_exact(n - k, n)?;
            }
        }
        Ok(Outcome::holds(ok))
    }));
    out
}

pub fn flag_checks() -> Vec<Check> {
    vec![
        Check::seeded("flag.kernel-classification", "spectral decomposition", |c, rng| {
            const TOL: f64 = 1e-9;
            let mut err: f64 = 0.0;
            let mut ok = true;
            for _ in 0..c.flag_trials {
                let n = rng.random_range(1..=7usize);
                let mut diag: Vec<i64> = (0..n).map(|_| rng.random_range(-3..=3)).collect();
                let x = conjugated_diagonal(rng, &diag.iter().map(|&v| v as f64).collect::<Vec<_>>());
                ok &= in_kernel(&x, c.tolerance(TOL))?;
                let d = spectral_decompose(&x)?;
                err = err
                    .max(d.orthogonality_error())
                    .max(d.completeness_error())
                    .max(d.reconstruct().max_diff(&x));
                diag.sort();
                let mut expected: Vec<(i64, usize)> = Vec::new();
                for v in diag {
                    match expected.last_mut() {
                        Some((w, m)) if *w == v => *m += 1,
                        _ => expected.push((v, 1)),
                    }
                }
                ok &= d.spectral_type.pairs() == expected.as_slice();
                let u = haar_unitary(rng, n);
                ok &= spectral_type(&(&(&u * &x) * &u.adjoint()))? == d.spectral_type;
            }
            Ok(Outcome {
                max_error: err,
                passed: ok && err <= c.tolerance(TOL),
            })
        }),
        Check::seeded("flag.perturbation-rejection", "kernel membership", |c, rng| {
            // ten times the eigenvalue rounding tolerance
            let eps = 1e-6;
            let mut accepted = 0usize;
            for _ in 0..c.flag_trials.max(1) {
                let x = conjugated_diagonal(rng, &[2.0, eps, -1.0]);
                if in_kernel(&x, 1e-9)? || spectral_type(&x).is_ok() {
                    accepted += 1;
                }
            }
            Ok(Outcome::within(accepted as f64, 0.0))
        }),
    ]
}

/// Clock/shift checks in dimension `n`.
pub fn pauli_checks(n: usize) -> Vec<Check> {
    const TOL: f64 = 1e-12;
    let mut out = vec![
        Check::fixed(format!("pauli.weyl.n{n}"), "clock shift commutation", move |c| {
            let cs = clock_shift(n)?;
            let mut err: f64 = 0.0;
            for a in 0..n {
                for b in 0..n {
                    let lhs = &cs.clock.pow(a as u32) * &cs.shift.pow(b as u32);
                    let rhs = (&cs.shift.pow(b as u32) * &cs.clock.pow(a as u32))
                        .scale(root_of_unity(n, a * b));
                    err = err.max(lhs.max_diff(&rhs));
                }
            }
            let id = ComplexMatrix::identity(n);
            err = err.max(cs.shift.pow(n as u32).max_diff(&id));
            err = err.max(cs.clock.pow(n as u32).max_diff(&id));
            Ok(Outcome::within(err, c.tolerance(TOL)))
        }),
        Check::fixed(format!("pauli.diagonalize.n{n}"), "shift diagonalisation", move |c| {
            Ok(Outcome::within(diagonalization_error(n)?, c.tolerance(TOL)))
        }),
        Check::fixed(format!("pauli.roots.n{n}"), "roots of unity", move |c| {
            let total: Complex64 = (0..n).map(|k| root_of_unity(n, k)).sum();
            let conj = (root_of_unity(n, 1).conj() - root_of_unity(n, n - 1)).norm();
            Ok(Outcome::within(total.norm().max(conj), c.tolerance(TOL)))
        }),
    ];
    if n == 3 {
        out.push(Check::fixed("pauli.worked-example.n3", "three-dimensional diagonalisation", |c| {
            let (s, s2) = (root_of_unity(3, 1), root_of_unity(3, 2));
            let o = Complex64::new(1.0, 0.0);
            let r = 1.0 / 3f64.sqrt();
            let w = ComplexMatrix::new(3, 3, vec![o, o, o, o, s2, s, o, s, s2])?.scale_real(r);
            let ws = ComplexMatrix::new(3, 3, vec![o, s, s2, o, o, o, o, s2, s])?.scale_real(r);
            let vw = vandermonde_w(3)?;
            let err = vw
                .max_diff(&w)
                .max((&vw * &clock_shift(3)?.clock).max_diff(&ws))
                .max(diagonalization_error(3)?);
            Ok(Outcome::within(err, c.tolerance(TOL)))
        }));
    }
    out
}

/// Random-unitary synthesis checks for 2 or 3 controls.
pub fn synth_random_check(controls: usize) -> Check {
    let (id, anchor, tol) = if controls == 2 {
        ("synth.ccu.random", "two-control synthesis", 1e-10)
    } else {
        ("synth.cccu.random", "three-control synthesis", 1e-9)
    };
    Check::seeded(id, anchor, move |c, rng| {
        let mut err: f64 = 0.0;
        for _ in 0..c.synth_trials {
            let u = haar_unitary(rng, 2);
            let r = if controls == 2 { synthesize_ccu(&u)? } else { synthesize_cccu(&u)? };
            err = err.max(r.max_error);
        }
        Ok(Outcome::within(err, c.tolerance(tol)))
    })
}

pub fn synth_checks() -> Vec<Check> {
    vec![
        synth_random_check(2),
        synth_random_check(3),
        Check::fixed("synth.parity-identities", "parity identities", |_| {
            Ok(Outcome::holds(mod2_identity_check(2)? && mod2_identity_check(3)?))
        }),
        Check::fixed("synth.toffoli", "toffoli from square roots", |c| {
            let r = synthesize_ccu(&grassvol::linalg::pauli::sigma1())?;
            let err = simulate(&r.circuit)?.matrix().max_diff(repeated_cnot(3)?.matrix());
            Ok(Outcome::within(err, c.tolerance(1e-12)))
        }),
        Check::fixed("synth.c3x", "three-control not from fourth roots", |c| {
            let r = synthesize_cccu(&grassvol::linalg::pauli::sigma1())?;
            let err = simulate(&r.circuit)?.matrix().max_diff(repeated_cnot(4)?.matrix());
            Ok(Outcome::within(err, c.tolerance(1e-12)))
        }),
        Check::fixed("synth.gate-counts", "gate counts", |_| {
            let t = gate_count_table(3)?;
            Ok(Outcome::holds(t[0].total == 5 && t[1].total == 17))
        }),
    ]
}

/// Radius of the circle used by the abelian holonomy checks.
pub const ABELIAN_RADIUS: f64 = 0.8;

pub fn holonomy_checks() -> Vec<Check> {
    vec![
        Check::fixed("holonomy.abelian-line-integral", "abelian holonomy", |c| {
            let f = BuiltinFamily::Rotation;
            let vac = f.vacuum();
            let path = ParameterLoop::circle_through_origin(ABELIAN_RADIUS, c.holonomy_steps)?;
            let integral = abelian_line_integral(&f, &vac, &path, DEFAULT_STEP)?;
            let gamma = holonomy(&f, &vac, &path, DEFAULT_STEP)?.gamma[(0, 0)];
            Ok(Outcome::within((gamma - integral.exp()).norm(), c.tolerance(1e-6)))
        }),
        Check::fixed("holonomy.abelian-closed-form", "abelian holonomy", |c| {
            // ∮ i sin²(r/2) dφ around the circle through the origin
            let f = BuiltinFamily::Rotation;
            let vac = f.vacuum();
            let path = ParameterLoop::circle_through_origin(ABELIAN_RADIUS, c.holonomy_steps)?;
            let expected = Complex64::new(0.0, 0.5 * PI * (1.0 - libm::j0(2.0 * ABELIAN_RADIUS)));
            let gamma = holonomy(&f, &vac, &path, DEFAULT_STEP)?.gamma[(0, 0)];
            Ok(Outcome::within((gamma - expected.exp()).norm(), c.tolerance(1e-6)))
        }),
        Check::fixed("holonomy.euler-halving", "first order step halving", |_| {
            let f = BuiltinFamily::Rotation;
            let rows = convergence_table(
                &f,
                &f.vacuum(),
                |k| ParameterLoop::circle_through_origin(ABELIAN_RADIUS, k),
                &[512, 1024, 2048, 4096],
                DEFAULT_STEP,
                Integrator::Euler,
            )?;
            // shortfall of each doubling's ratio below 2
            let worst = rows
                .windows(2)
                .map(|w| 2.0 - w[0].unitarity_deviation / w[1].unitarity_deviation)
                .fold(f64::NEG_INFINITY, f64::max);
            Ok(Outcome {
                max_error: worst.max(0.0),
                passed: worst <= 0.0,
            })
        }),
        Check::fixed("holonomy.trivial-loop", "trivial loop", |c| {
            let mut err: f64 = 0.0;
            for f in BuiltinFamily::ALL {
                let vac = f.vacuum();
                let path = ParameterLoop::constant(vec![0.4, -0.2], 16)?;
                let g = holonomy(&f, &vac, &path, DEFAULT_STEP)?.gamma;
                err = err.max(g.max_diff(&ComplexMatrix::identity(vac.m())));
            }
            Ok(Outcome::within(err, c.tolerance(1e-12)))
        }),
        Check::fixed("holonomy.reversal", "loop reversal", |c| {
            let mut err: f64 = 0.0;
            for f in BuiltinFamily::ALL {
                let vac = f.vacuum();
                let path = ParameterLoop::circle([0.2, -0.1], 0.7, 0.3, 2048)?;
                let g = holonomy(&f, &vac, &path, DEFAULT_STEP)?.gamma;
                let back = holonomy(&f, &vac, &path.reversed(), DEFAULT_STEP)?.gamma;
                err = err.max((&back * &g).max_diff(&ComplexMatrix::identity(vac.m())));
            }
            Ok(Outcome::within(err, c.tolerance(1e-8)))
        }),
        Check::fixed("holonomy.irreducibility", "holonomy irreducibility", |_| {
            let f = BuiltinFamily::DegenerateM2;
            let vac = f.vacuum();
            let samples = [[0.3, 0.2], [0.7, -0.4], [-0.5, 0.9]]
                .iter()
                .map(|p| Ok(curvature_at(&f, &vac, p, DEFAULT_STEP)?[0].value.clone()))
                .collect::<grassvol::Result<Vec<_>>>()?;
            Ok(Outcome::holds(holonomy_span_probe(&samples)?.irreducible))
        }),
        Check::fixed("holonomy.projector-kernel", "projector in exponential kernel", |c| {
            let mut err: f64 = 0.0;
            for f in BuiltinFamily::ALL {
                let vac = f.vacuum();
                let p = projector_at(&f, &vac, &[0.3, -1.1])?;
                let e = unitary_exp(p.matrix(), 2.0 * PI, 1e-12)?;
                err = err.max(e.max_diff(&ComplexMatrix::identity(p.n())));
            }
            Ok(Outcome::within(err, c.tolerance(1e-10)))
        }),
    ]
}

/// Every check, sorted by id.
pub fn registry() -> Vec<Check> {
    let mut all = grassmann_checks();
    for t in 1..=GATE_T_MAX {
        all.extend(gate_checks(t));
    }
    all.extend(flag_checks());
    for n in 2..=PAULI_N_MAX {
        all.extend(pauli_checks(n));
    }
    all.extend(synth_checks());
    all.extend(holonomy_checks());
    all.sort_by(|a, b| a.id.cmp(&b.id));
    all
}

pub fn check_ids() -> Vec<String> {
    registry().into_iter().map(|c| c.id).collect()
}
