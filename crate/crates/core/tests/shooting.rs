use std::f64::consts::FRAC_PI_2;

use jumpspec::profile::JumpingProfile;
use jumpspec::shoot::{
    continue_branch, default_starts, find_nodal, integrate, integrate_with_breaks, lattice_starts, solve_halflinear,
    solve_nonlinear, trajectory_nodal_class, Forcing, Nonlinearity, ShootOptions, Solution,
};
use jumpspec::solvability::{nonsolvable_forcing, ForcingFunction};
use jumpspec::spectrum;
use jumpspec::{ProblemSpec, Sign};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sine_error(step: f64) -> f64 {
    let t = integrate(|_, u| u, 0.0, 1.0, step).unwrap();
    (t.endpoint().0 - 2f64.sin()).abs()
}

#[test]
fn integrator_is_fourth_order() {
    let (e1, e2) = (sine_error(0.02), sine_error(0.01));
    assert!(e1 / e2 >= 12.0, "ratio {}", e1 / e2);

    // across kinks, against the exact profile
    let p = JumpingProfile::new(3.0, 1.0).unwrap();
    let (c, d) = p.psi(-1.0);
    let err = |h: f64| {
        let t = integrate(|_, u: f64| 9.0 * u.max(0.0) - (-u).max(0.0), c, d, h).unwrap();
        (t.endpoint().0 - p.psi(1.0).0).abs()
    };
    assert!(err(0.02) / err(0.01) >= 12.0, "kinked ratio {}", err(0.02) / err(0.01));
}

/// Boundary residuals, and a three-point second difference against the ODE.
///
/// The second difference errs by `step^2 / 12 * |u^(4)|`, and
/// `|u^(4)| <= lip |u''| + |h''|`; forcing terms used here have `|h''| <= 40`.
/// Triples straddling a jump of the forcing (`skip`) or a zero of `u` are left out.
fn certify(spec: &ProblemSpec, s: &Solution, rhs: impl Fn(f64, f64) -> f64, lip: f64, skip: &[f64]) {
    let t = &s.trajectory;
    let amp = t.amplitude();
    let u = |x: f64| t.value_at(x);
    assert!(spec.minus().residual(u(-1.0), u).abs() <= 1e-8 * (1.0 + amp));
    assert!(spec.plus().residual(u(1.0), u).abs() <= 1e-8 * (1.0 + amp));
    let (g, v) = (t.grid(), t.values());
    let top = g.iter().zip(v).map(|(x, u)| rhs(*x, *u).abs()).fold(0.0, f64::max);
    let mut checked = 0;
    for i in 1..g.len() - 1 {
        let (h1, h2) = (g[i] - g[i - 1], g[i + 1] - g[i]);
        let straddles = skip.iter().any(|b| *b >= g[i - 1] && *b <= g[i + 1]);
        if (h1 - h2).abs() > 1e-12 || v[i - 1] * v[i + 1] <= 0.0 || straddles {
            continue;
        }
        let second = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h1 * h1);
        let tol = h1 * h1 * (1.0 + lip * top + 40.0);
        assert!((second + rhs(g[i], v[i])).abs() <= tol, "x = {}", g[i]);
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn constant_forcing_parabola() {
    let spec = ProblemSpec::dirichlet();
    let sols = solve_halflinear(&spec, 1.0, 1.0, 0.0, &Forcing::parse("one").unwrap(), &default_starts(), &ShootOptions::default()).unwrap();
    assert_eq!(sols.len(), 1);
    let t = &sols[0].trajectory;
    for (x, u) in t.grid().iter().zip(t.values()) {
        assert!((u - (1.0 - x * x) / 2.0).abs() <= 1e-8);
    }
    certify(&spec, &sols[0], |_, _| 1.0, 0.0, &[]);
}

#[test]
fn cosine_solution_at_lambda_five() {
    let spec = ProblemSpec::dirichlet();
    let sols = solve_halflinear(&spec, 1.0, 1.0, 5.0, &Forcing::Constant(1.0), &default_starts(), &ShootOptions::default()).unwrap();
    assert_eq!(sols.len(), 1);
    let r5 = 5f64.sqrt();
    let t = &sols[0].trajectory;
    for (x, u) in t.grid().iter().zip(t.values()) {
        assert!((u - ((r5 * x).cos() / (5.0 * r5.cos()) - 0.2)).abs() <= 1e-7);
    }
    certify(&spec, &sols[0], |_, u| 5.0 * u + 1.0, 5.0, &[]);
}

#[test]
fn split_interval_forcing_defeats_the_lattice() {
    let spec = ProblemSpec::dirichlet();
    let f = nonsolvable_forcing(&spec, 4.0, 1.0, 1.0).unwrap();
    let opts = ShootOptions::default();
    let none = solve_halflinear(&spec, 4.0, 1.0, 1.0, &Forcing::Step(f), &default_starts(), &opts).unwrap();
    assert!(none.is_empty());
    // the opposite sign is solvable, so the search itself is not blind
    let flipped = ForcingFunction { x0: f.x0, level: -f.level };
    let some = solve_halflinear(&spec, 4.0, 1.0, 1.0, &Forcing::Step(flipped), &default_starts(), &opts).unwrap();
    assert!(!some.is_empty());
    for s in &some {
        certify(&spec, s, |x, u| 4.0 * u.max(0.0) - (-u).max(0.0) + flipped.eval(x), 4.0, &[f.x0]);
    }
}

#[test]
fn sign_definite_forcing_with_two_solutions() {
    let spec = ProblemSpec::dirichlet();
    let opts = ShootOptions::default();
    let mut best = 0;
    for mu in [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
        let h = Forcing::custom(move |x| mu * (FRAC_PI_2 * x).cos());
        let sols = solve_halflinear(&spec, 4.0, 1.0, 1.0, &h, &default_starts(), &opts).unwrap();
        for s in &sols {
            certify(&spec, s, |x, u| 4.0 * u.max(0.0) - (-u).max(0.0) + mu * (FRAC_PI_2 * x).cos(), 4.0, &[]);
        }
        best = best.max(sols.len());
        if sols.len() >= 2 {
            let d = sols[0].trajectory.sup_distance(&sols[1].trajectory, 201);
            assert!(d > 1e-3);
        }
    }
    assert!(best >= 2);
}

#[test]
fn off_spectrum_homogeneous_problem_has_only_zero() {
    let spec = ProblemSpec::new(vec![0.1], vec![0.2], vec![0.3], vec![-0.4]).unwrap();
    let (a, b) = (2.0, 0.7);
    let opts = ShootOptions::default();
    for he in spectrum::half_eigenvalues(&spec, a, b, 2).unwrap() {
        let sols = solve_halflinear(&spec, a, b, he.lambda + 1e-3, &Forcing::Zero, &lattice_starts(5, 0.1), &opts).unwrap();
        assert_eq!(sols.len(), 1, "({}, {})", he.k, he.nu);
        // 1e-3 from the spectrum the residual map has a singular value near
        // 1e-3, so a 1e-10 residual pins zero only to about 1e-7
        assert!(sols[0].trajectory.amplitude() < 1e-6);

        // on the spectrum, the half-eigenfunction start shoots to a solution
        let p = JumpingProfile::from_coefficients(a, b).unwrap();
        let (c, d) = p.w(he.s, he.delta, -1.0);
        let scale = 1.0 / p.sup_norm(he.s, he.delta, -1.0, 1.0);
        let lambda = he.lambda;
        let t = integrate_with_breaks(
            |_, u: f64| lambda * (a * u.max(0.0) - b * (-u).max(0.0)),
            scale * c,
            scale * d,
            opts.step,
            &[0.2, -0.4],
        )
        .unwrap();
        let u = |x: f64| t.value_at(x);
        assert!(spec.minus().residual(u(-1.0), u).abs() <= 1e-7);
        assert!(spec.plus().residual(u(1.0), u).abs() <= 1e-7);
        assert_eq!(trajectory_nodal_class(&t), (he.k, he.nu));
    }
}

#[test]
fn identity_nonlinearity_matches_halflinear() {
    let spec = ProblemSpec::dirichlet();
    let opts = ShootOptions::default();
    let h = Forcing::Constant(1.0);
    let a = solve_halflinear(&spec, 1.0, 1.0, 1.0, &h, &default_starts(), &opts).unwrap();
    let b = solve_nonlinear(&spec, &Nonlinearity::linear(1.0).unwrap(), &h, &default_starts(), &opts).unwrap();
    assert_eq!((a.len(), b.len()), (1, 1));
    assert!(a[0].trajectory.sup_distance(&b[0].trajectory, 201) < 1e-9);
}

#[test]
fn large_forcing_defeats_a_perturbed_jumping_term() {
    // f = 4 s^+ - s^- + 0.2 atan(s): at infinity this is the split instance
    let spec = ProblemSpec::dirichlet();
    let nl = Nonlinearity::parse("atan_shift:4,1,0.2").unwrap();
    let f = nonsolvable_forcing(&spec, nl.f_plus_inf(), nl.f_minus_inf(), 1.0).unwrap();
    let scale = 50.0;
    let starts = lattice_starts(21, 10.0 * scale);
    let opts = ShootOptions::default();
    let h = Forcing::Step(ForcingFunction { x0: f.x0, level: scale * f.level });
    assert!(solve_nonlinear(&spec, &nl, &h, &starts, &opts).unwrap().is_empty());
    let h = Forcing::Step(ForcingFunction { x0: f.x0, level: -scale * f.level });
    assert!(!solve_nonlinear(&spec, &nl, &h, &starts, &opts).unwrap().is_empty());
}

#[test]
fn nodal_solutions_on_a_three_point_problem() {
    let spec = ProblemSpec::new(vec![], vec![], vec![0.3], vec![0.5]).unwrap();
    let nl = Nonlinearity::rational_bump(10.0, 1.0).unwrap();
    for nu in Sign::BOTH {
        let sol = find_nodal(&spec, &nl, 1, nu, 2000).unwrap();
        assert_eq!(trajectory_nodal_class(&sol.trajectory), (1, nu));
        certify(&spec, &sol, |_, u| nl.eval(u), 10.0, &[]);
    }
}

#[test]
fn second_nodal_solution_dirichlet() {
    // lambda_2 = pi^2 < 10, so the condition holds for k = 2 as well
    let nl = Nonlinearity::rational_bump(10.0, 1.0).unwrap();
    let sol = find_nodal(&ProblemSpec::dirichlet(), &nl, 2, Sign::Plus, 4000).unwrap();
    assert_eq!(trajectory_nodal_class(&sol.trajectory), (2, Sign::Plus));
    assert!(sol.state.max_residual() <= 1e-6);
}

#[test]
fn branch_keeps_its_nodal_class() {
    let spec = ProblemSpec::new(vec![0.2], vec![0.0], vec![], vec![]).unwrap();
    let nl = Nonlinearity::rational_bump(10.0, 1.0).unwrap();
    let pts = continue_branch(&spec, &nl, 1, Sign::Minus, 60).unwrap();
    let nl = &nl;
    let rhs_of = |lambda: f64| move |_: f64, u: f64| lambda * nl.eval(u);
    for p in &pts {
        let t = integrate_with_breaks(rhs_of(p.lambda), p.c, p.d, 2e-3, &[0.0]).unwrap();
        assert_eq!(trajectory_nodal_class(&t), (1, Sign::Minus));
        assert!((t.amplitude() - p.amplitude).abs() <= 1e-12 * (1.0 + p.amplitude));
    }
    assert!(pts.windows(2).all(|w| w[1].amplitude > w[0].amplitude));
}

/// A random trigonometric forcing with `|h| <= bound` and `|h''| < 40`.
fn random_forcing(seed: u64, bound: f64) -> Forcing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms: Vec<(f64, f64, f64)> = (1..=3)
        .map(|j| (rng.gen_range(-bound..bound) / 3.0, j as f64 * FRAC_PI_2, rng.gen_range(0.0..6.3)))
        .collect();
    Forcing::custom(move |x| terms.iter().map(|(c, w, ph)| c * (w * x + ph).sin()).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn gap_at_infinity_gives_existence(seed in any::<u64>(), c in -1.0f64..1.0) {
        // f_inf = f_-inf = 5 puts 1 between lambda_1 / 5 and lambda_2 / 5
        let nl = Nonlinearity::atan_shift(5.0, 5.0, c).unwrap();
        let spec = ProblemSpec::dirichlet();
        let h = random_forcing(seed, 3.0);
        let sols = solve_nonlinear(&spec, &nl, &h, &lattice_starts(7, 10.0), &ShootOptions::default()).unwrap();
        prop_assert!(!sols.is_empty());
        for s in &sols {
            certify(&spec, s, |x, u| nl.eval(u) + h.eval(x), 6.0, &[]);
        }
    }

    #[test]
    fn halflinear_solutions_are_certified(
        lambda in 0.1f64..20.0,
        seed in any::<u64>(),
        x in 0.0f64..0.6,
        eta in -0.9f64..0.9,
    ) {
        let spec = ProblemSpec::new(vec![x], vec![eta], vec![], vec![]).unwrap();
        let h = random_forcing(seed, 2.0);
        let sols = solve_halflinear(&spec, 1.5, 0.8, lambda, &h, &lattice_starts(5, 10.0), &ShootOptions::default()).unwrap();
        for s in &sols {
            certify(&spec, s, |xx, u| lambda * (1.5 * u.max(0.0) - 0.8 * (-u).max(0.0)) + h.eval(xx), 1.5 * lambda, &[]);
        }
    }
}
