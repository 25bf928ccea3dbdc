use std::f64::consts::PI;

use grassvol::holonomy::{
    abelian_line_integral, connection_at, convergence_table, curvature_at, curvature_component,
    holonomy, holonomy_span_probe, holonomy_with, projector_at, BuiltinFamily, FnFamily,
    Integrator, ParameterLoop, UnitaryFamily, VacuumFrame, DEFAULT_STEP,
};
use grassvol::flag::in_kernel;
use grassvol::linalg::{is_projection, unitary_exp, ComplexMatrix};
use grassvol::Complex64;

const H: f64 = DEFAULT_STEP;

fn bessel_j0_by_trapezoid(x: f64) -> f64 {
    // periodic analytic integrand: the trapezoid rule converges geometrically
    let n = 400;
    let s: f64 = (0..n).map(|k| (x * (PI * k as f64 / n as f64).sin()).cos()).sum();
    s / n as f64
}

#[test]
fn abelian_loop_matches_closed_form() {
    let f = BuiltinFamily::Rotation;
    let vac = f.vacuum();
    for r in [0.3, 0.8, 1.5] {
        let path = ParameterLoop::circle_through_origin(r, 10_000).unwrap();
        let j0 = libm::j0(2.0 * r);
        assert!((j0 - bessel_j0_by_trapezoid(2.0 * r)).abs() <= 1e-13);
        let expected = Complex64::new(0.0, 0.5 * PI * (1.0 - j0));
        let integral = abelian_line_integral(&f, &vac, &path, H).unwrap();
        assert!((integral - expected).norm() <= 1e-6, "R = {r}: {integral} vs {expected}");
        let gamma = holonomy(&f, &vac, &path, H).unwrap().gamma[(0, 0)];
        assert!((gamma - expected.exp()).norm() <= 1e-6);
    }
}

#[test]
fn reversed_loop_gives_inverse() {
    for f in BuiltinFamily::ALL {
        let vac = f.vacuum();
        let path = ParameterLoop::circle([0.2, -0.1], 0.7, 0.3, 2048).unwrap();
        let g = holonomy(&f, &vac, &path, H).unwrap().gamma;
        let back = holonomy(&f, &vac, &path.reversed(), H).unwrap().gamma;
        let prod = &back * &g;
        assert!(prod.max_diff(&ComplexMatrix::identity(vac.m())) <= 1e-8, "{}", f.name());
    }
}

#[test]
fn concatenated_loops_multiply() {
    let f = BuiltinFamily::DegenerateM2;
    let vac = f.vacuum();
    let a = ParameterLoop::circle_through_origin(0.6, 2048).unwrap();
    let b = ParameterLoop::new(
        ParameterLoop::circle([0.0, 0.5], 0.5, -PI / 2.0, 2048)
            .unwrap()
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| if i == 0 || i == 2048 { vec![0.0, 0.0] } else { p.clone() })
            .collect(),
    )
    .unwrap();
    let ga = holonomy(&f, &vac, &a, H).unwrap().gamma;
    let gb = holonomy(&f, &vac, &b, H).unwrap().gamma;
    let gab = holonomy(&f, &vac, &a.then(&b).unwrap(), H).unwrap().gamma;
    assert!(gab.max_diff(&(&gb * &ga)) <= 1e-12);
}

#[test]
fn subdivision_barely_moves_the_holonomy() {
    let f = BuiltinFamily::TwoParameterSu2;
    let vac = f.vacuum();
    let path = ParameterLoop::circle([0.0, 0.0], 1.0, 0.0, 4096).unwrap();
    let g1 = holonomy(&f, &vac, &path, H).unwrap().gamma;
    let g2 = holonomy(&f, &vac, &path.subdivided(3), H).unwrap().gamma;
    assert!(g1.max_diff(&g2) <= 1e-6);
}

#[test]
fn constant_loop_is_identity() {
    for f in BuiltinFamily::ALL {
        let vac = f.vacuum();
        let path = ParameterLoop::constant(vec![0.4, -0.2], 16).unwrap();
        let g = holonomy(&f, &vac, &path, H).unwrap().gamma;
        assert!(g.max_diff(&ComplexMatrix::identity(vac.m())) <= 1e-12);
    }
}

#[test]
fn projectors_and_connection_are_well_formed() {
    for f in BuiltinFamily::ALL {
        let vac = f.vacuum();
        for lambda in [[0.0, 0.0], [0.3, -1.1], [2.0, 0.5]] {
            let p = projector_at(&f, &vac, &lambda).unwrap();
            assert!(is_projection(p.matrix(), 1e-10));
            assert_eq!(p.rank(), vac.m());
            assert!(in_kernel(p.matrix(), 1e-9).unwrap());
            let e = unitary_exp(p.matrix(), 2.0 * PI, 1e-12).unwrap();
            assert!(e.max_diff(&ComplexMatrix::identity(f.dim())) <= 1e-10);
            let a = connection_at(&f, &vac, &lambda, H).unwrap();
            assert!(a.anti_hermitian_residue() <= 1e-8);
        }
    }
}

#[test]
fn curvature_is_antisymmetric_and_anti_hermitian() {
    for f in BuiltinFamily::ALL {
        let vac = f.vacuum();
        let lambda = [0.4, 0.9];
        let f01 = curvature_component(&f, &vac, &lambda, H, 0, 1).unwrap();
        let f10 = curvature_component(&f, &vac, &lambda, H, 1, 0).unwrap();
        assert!((&f01 + &f10).max_abs() <= 1e-6);
        assert!((&f01 + &f01.adjoint()).max_abs() <= 1e-6);
        assert!(curvature_component(&f, &vac, &lambda, H, 0, 0).unwrap().max_abs() <= 1e-6);
    }
}

#[test]
fn abelian_curvature_matches_area_density() {
    // for the rotation family A = i sin²(r/2) dφ, so F₁₂ = i sin(r)/(2r)
    let f = BuiltinFamily::Rotation;
    let vac = f.vacuum();
    for (x, y) in [(0.5f64, 0.2f64), (-0.3, 1.0)] {
        let r = x.hypot(y);
        let got = curvature_at(&f, &vac, &[x, y], H).unwrap()[0].value[(0, 0)];
        let want = Complex64::new(0.0, r.sin() / (2.0 * r));
        assert!((got - want).norm() <= 1e-6, "{got} vs {want}");
    }
}

#[test]
fn degenerate_family_holonomy_spans_u2() {
    let f = BuiltinFamily::DegenerateM2;
    let vac = f.vacuum();
    let samples: Vec<ComplexMatrix> = [[0.3, 0.2], [0.7, -0.4], [-0.5, 0.9]]
        .iter()
        .map(|p| curvature_at(&f, &vac, p, H).unwrap()[0].value.clone())
        .collect();
    let probe = holonomy_span_probe(&samples).unwrap();
    assert!(probe.irreducible, "span dimension {}", probe.spanned_dimension);
    let small = holonomy_span_probe(&samples[..1]).unwrap();
    assert!(small.spanned_dimension < probe.spanned_dimension);

    let abelian = BuiltinFamily::Rotation;
    let av = abelian.vacuum();
    let a_samples: Vec<ComplexMatrix> = [[0.3, 0.2], [0.7, -0.4]]
        .iter()
        .map(|p| curvature_at(&abelian, &av, p, H).unwrap()[0].value.clone())
        .collect();
    assert_eq!(holonomy_span_probe(&a_samples).unwrap().spanned_dimension, 1);
}

#[test]
fn euler_unitarity_error_halves_per_doubling() {
    let f = BuiltinFamily::Rotation;
    let vac = f.vacuum();
    let rows = convergence_table(
        &f,
        &vac,
        |k| ParameterLoop::circle_through_origin(0.8, k),
        &[512, 1024, 2048, 4096],
        H,
        Integrator::Euler,
    )
    .unwrap();
    for w in rows.windows(2) {
        let ratio = w[0].unitarity_deviation / w[1].unitarity_deviation;
        assert!((1.8..=2.2).contains(&ratio), "ratio {ratio} at {} steps", w[1].steps);
    }
    let exp = holonomy_with(
        &f,
        &vac,
        &ParameterLoop::circle_through_origin(0.8, 512).unwrap(),
        H,
        Integrator::Exponential,
    )
    .unwrap();
    assert!(exp.unitarity_deviation <= 1e-12);
}

#[test]
fn custom_family_and_mismatches() {
    let fam = FnFamily::new(
        2,
        vec![0.0],
        |l: &[f64]| {
            ComplexMatrix::from_diag(&[Complex64::from_polar(1.0, l[0]), Complex64::new(1.0, 0.0)])
        },
        1e-10,
    )
    .unwrap();
    assert_eq!(fam.param_dim(), 1);
    let vac = VacuumFrame::standard(2, 1);
    let path = ParameterLoop::new(vec![vec![0.0], vec![1.0], vec![0.0]]).unwrap();
    // there and back again along a line encloses nothing
    let g = holonomy(&fam, &vac, &path, H).unwrap().gamma;
    assert!((g[(0, 0)] - Complex64::new(1.0, 0.0)).norm() <= 1e-9);
    assert!(holonomy(&fam, &VacuumFrame::standard(4, 1), &path, H).is_err());
    assert!(ParameterLoop::new(vec![vec![0.0], vec![1.0], vec![0.5]]).is_err());
    assert!(BuiltinFamily::from_name("nope").is_err());
    assert_eq!(BuiltinFamily::from_name("degenerate-m2").unwrap(), BuiltinFamily::DegenerateM2);
}
