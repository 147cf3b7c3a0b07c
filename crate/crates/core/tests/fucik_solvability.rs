use std::f64::consts::{FRAC_PI_2, PI};

use jumpspec::fucik;
use jumpspec::profile::JumpingProfile;
use jumpspec::residual;
use jumpspec::solvability::{classify_lambda, IntervalKind};
use jumpspec::spectrum;
use jumpspec::{ProblemSpec, Sign};
use proptest::prelude::*;

fn three_point() -> ProblemSpec {
    ProblemSpec::new(vec![0.2], vec![0.4], vec![0.5], vec![0.0]).unwrap()
}

#[test]
fn traced_points_lie_on_the_spectrum() {
    let spec = three_point();
    let grid = fucik::chebyshev_theta_grid(9, 0.05);
    for ((k, nu), curve) in fucik::trace_all(&spec, 3, &grid).unwrap() {
        for s in curve {
            let l = spectrum::half_eigenvalue(&spec, s.point_a, s.point_b, k, nu).unwrap().lambda;
            assert!((l - 1.0).abs() <= 1e-8, "({k},{nu}) theta {} gives {l}", s.theta);
        }
    }
}

#[test]
fn diagonal_crossings_are_linear_eigenvalues() {
    let spec = three_point();
    let lin = spectrum::linear_eigenvalues(&spec, 3).unwrap();
    for k in 1..=3 {
        let (x, y) = fucik::diagonal_crossing(&spec, k).unwrap();
        assert!((x - lin[k - 1]).abs() <= 1e-8 * lin[k - 1]);
        assert_eq!(x, y);
    }
}

#[test]
fn dirichlet_curves_have_the_bump_equation() {
    // a point (a, b) is on sigma_{k,nu} iff j pi / sqrt(a) + j' pi / sqrt(b) = 2
    let grid = fucik::chebyshev_theta_grid(11, 0.05);
    for ((k, nu), curve) in fucik::trace_all(&ProblemSpec::dirichlet(), 4, &grid).unwrap() {
        let (first, second) = (k.div_ceil(2) as f64, (k / 2) as f64);
        let (j, jp) = if nu == Sign::Plus { (first, second) } else { (second, first) };
        for s in curve {
            let lhs = j * PI / s.point_a.sqrt() + jp * PI / s.point_b.sqrt();
            assert!((lhs - 2.0).abs() < 1e-9);
        }
    }
}

#[test]
fn higher_curves_escape_at_both_ends() {
    let spec = ProblemSpec::dirichlet();
    for k in 2..=3 {
        for nu in Sign::BOTH {
            let mid = fucik::trace_curve(&spec, k, nu, &[std::f64::consts::FRAC_PI_4]).unwrap()[0].lambda;
            let ends = fucik::trace_curve(&spec, k, nu, &[0.005, FRAC_PI_2 - 0.005]).unwrap();
            for e in ends {
                assert!(e.lambda > 5.0 * mid, "({k},{nu}) theta {}", e.theta);
            }
        }
    }
}

#[test]
fn b_sign_matches_interval_kind_on_a_grid() {
    let spec = ProblemSpec::dirichlet();
    let (a, b) = (4.0, 1.0);
    let mut last_gap_degree: Option<(usize, i32)> = None;
    let mut gaps_seen = 0;
    for i in 1..=200 {
        let lambda = 40.0 * i as f64 / 200.0 + 0.013;
        let c = classify_lambda(&spec, a, b, lambda).unwrap();
        let p = JumpingProfile::from_coefficients(a, b).unwrap();
        let bv = residual::b_value(&p, lambda.sqrt(), &spec).unwrap();
        match c.kind {
            IntervalKind::Gap(k) => {
                assert!(bv < 0.0, "lambda {lambda}: gap {k} but B = {bv}");
                let deg = c.degree.unwrap();
                assert_eq!(deg, if k % 2 == 0 { 1 } else { -1 });
                if let Some((prev_k, prev_deg)) = last_gap_degree {
                    if prev_k != k {
                        assert_eq!(deg, -prev_deg);
                        gaps_seen += 1;
                    }
                }
                last_gap_degree = Some((k, deg));
            }
            IntervalKind::Split(_) => {
                assert!(bv > 0.0, "lambda {lambda}: split but B = {bv}");
                assert_eq!(c.degree, Some(0));
            }
            IntervalKind::NearHalfEigenvalue(..) => {}
        }
    }
    assert!(gaps_seen >= 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn b_sign_agrees_with_classification(
        x in 0.0f64..0.8,
        eta in -0.9f64..0.9,
        a in 0.3f64..4.0,
        b in 0.3f64..4.0,
        lambda in 0.05f64..30.0,
    ) {
        let spec = ProblemSpec::new(vec![], vec![], vec![x], vec![eta]).unwrap();
        let c = classify_lambda(&spec, a, b, lambda).unwrap();
        let want = match c.kind {
            IntervalKind::Gap(_) => Some(Sign::Minus),
            IntervalKind::Split(_) => Some(Sign::Plus),
            IntervalKind::NearHalfEigenvalue(..) => None,
        };
        if want.is_some() {
            prop_assert_eq!(c.b_sign, want);
        }
    }
}
