use approx::assert_relative_eq;
use proptest::prelude::*;

use fraclap::ball_solver::solve_ball;
use fraclap::counterexample::exterior_sign_check;
use fraclap::order::gamma_ball;
use fraclap::{frac_s_smooth, BallProblem, KernelContext, Point, QuadSpec, RadialPolyBump};

fn point_in_ball(dim: usize) -> impl Strategy<Value = Point> {
    (prop::collection::vec(-1.0f64..1.0, dim), 0.0f64..0.95).prop_map(move |(v, r)| {
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-3);
        Point::new(&v.iter().map(|c| c * r / n).collect::<Vec<_>>()).unwrap()
    })
}

fn order() -> impl Strategy<Value = f64> {
    prop_oneof![
        0.05f64..4.0,
        (1u32..4).prop_map(f64::from),
        (1u32..8).prop_map(|k| k as f64 / 2.0)
    ]
}

fn case(dim: usize) -> impl Strategy<Value = (f64, Point, Point)> {
    (order(), point_in_ball(dim), point_in_ball(dim)).prop_filter("distinct", |(_, x, y)| x.dist(y) > 1e-3)
}

fn rotate(p: &Point, a: f64) -> Point {
    let (s, c) = a.sin_cos();
    Point::new(&[c * p.get(0) - s * p.get(1), s * p.get(0) + c * p.get(1)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn green_is_symmetric_and_positive((s, x, y) in case(3)) {
        let ctx = KernelContext::new(3, s).unwrap();
        let a = ctx.green(&x, &y).unwrap();
        let b = ctx.green(&y, &x).unwrap();
        prop_assert!(a > 0.0);
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn green_is_rotation_invariant((s, x, y) in case(2), angle in 0.0f64..6.3) {
        let ctx = KernelContext::new(2, s).unwrap();
        let a = ctx.green(&x, &y).unwrap();
        let b = ctx.green(&rotate(&x, angle), &rotate(&y, angle)).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-10);
    }

    #[test]
    fn green_vanishes_outside_ball(s in order(), t in 1.0f64..3.0, y in point_in_ball(1)) {
        let ctx = KernelContext::new(1, s).unwrap();
        prop_assert_eq!(ctx.green(&Point::on_axis(1, t), &y).unwrap(), 0.0);
    }

    #[test]
    fn martin_kernel_is_positive(s in order(), x in point_in_ball(2), a in 0.0f64..6.3) {
        let ctx = KernelContext::new(2, s).unwrap();
        let theta = Point::new(&[a.cos(), a.sin()]).unwrap();
        prop_assert!(ctx.martin(&x, &theta).unwrap() > 0.0);
    }

    /// Homogeneous fundamental solutions scale exactly; the logarithmic ones
    /// pick up the polynomial `kappa (lambda r)^(2s-N) ln lambda`.
    #[test]
    fn fundamental_scaling(dim in 1usize..4, s in order(), r in 0.1f64..5.0, lambda in 0.2f64..5.0) {
        let ctx = KernelContext::new(dim, s).unwrap();
        let p = 2.0 * s - dim as f64;
        let scaled = ctx.fundamental_radial(lambda * r);
        let mut expected = lambda.powf(p) * ctx.fundamental_radial(r);
        if ctx.consts.log_branch {
            expected += ctx.consts.kappa_fund * (lambda * r).powf(p) * lambda.ln();
        }
        assert_relative_eq!(scaled, expected, max_relative = 1e-9, epsilon = 1e-12 * scaled.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn torsion_matches_closed_form(s in order(), x in point_in_ball(1)) {
        let ctx = KernelContext::new(1, s).unwrap();
        let u = solve_ball(&BallProblem::constant(ctx, 1.0), &x).unwrap();
        let exact = gamma_ball(1, s) * (1.0 - x.norm_sq()).powf(s);
        prop_assert!(u > 0.0);
        assert_relative_eq!(u, exact, max_relative = 1e-7);
    }

    #[test]
    fn ball_solver_is_linear(s in order(), a in -3.0f64..3.0, b in -3.0f64..3.0, x in point_in_ball(1)) {
        let ctx = KernelContext::new(1, s).unwrap();
        let f = RadialPolyBump::single(Point::on_axis(1, 0.2), 0.5, 1.0, 3.0).unwrap();
        let g = RadialPolyBump::single(Point::on_axis(1, 0.2), 0.5, 1.0, 1.5).unwrap();
        let h = f.scaled(a).add(&g.scaled(b)).unwrap();
        let u = |r: RadialPolyBump| solve_ball(&BallProblem::bump(ctx.clone(), r).unwrap(), &x).unwrap();
        let (uf, ug) = (u(f.clone()), u(g.clone()));
        let lhs = u(h);
        let scale = (a * uf).abs() + (b * ug).abs();
        // Each solve is accurate to rel_tol * |u| + abs_tol.
        let tol = 1e-8 * scale + 4.0 * QuadSpec::default().abs_tol * (1.0 + a.abs() + b.abs());
        prop_assert!((lhs - a * uf - b * ug).abs() <= tol, "{lhs} vs {}", a * uf + b * ug);
    }

    #[test]
    fn frac_laplacian_commutes_with_translation(s in 0.1f64..2.9, shift in -2.0f64..2.0, t in -1.5f64..1.5) {
        let ctx = KernelContext::new(1, s).unwrap();
        let g = RadialPolyBump::single(Point::origin(1), 0.5, 1.0, 2.0 * s.ceil() + 2.0).unwrap();
        let moved = g.translated(&Point::on_axis(1, shift));
        let a = frac_s_smooth(&g, &Point::on_axis(1, t), &ctx).unwrap();
        let b = frac_s_smooth(&moved, &Point::on_axis(1, t + shift), &ctx).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-7, epsilon = 1e-12);
    }

    #[test]
    fn exterior_sign_follows_parity(k in 0u32..3, frac in 0.1f64..0.9, t in 0.6f64..5.0) {
        let s = k as f64 + frac;
        let ctx = KernelContext::new(1, s).unwrap();
        let g = RadialPolyBump::single(Point::origin(1), 0.5, 1.0, 2.0 * k as f64 + 4.0).unwrap();
        let r = exterior_sign_check(&g, &ctx, &[Point::on_axis(1, t), Point::on_axis(1, -t)]).unwrap();
        prop_assert!(r.all_match, "{:?}", r.values);
    }

    #[test]
    fn nested_spec_scales_tolerances(factor in 1e-3f64..1e3) {
        let base = QuadSpec::default();
        let n = base.nested(factor);
        assert_relative_eq!(n.rel_tol, base.rel_tol * factor, max_relative = 1e-12);
        assert_relative_eq!(n.abs_tol, base.abs_tol * factor, max_relative = 1e-12);
    }
}
